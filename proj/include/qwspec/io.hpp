#pragma once

#include <string>

#include <json.hpp>

#include "qwspec/spectral.hpp"
#include "qwspec/subspace.hpp"
#include "qwspec/walk_model.hpp"

namespace qwspec {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j, const std::string& name);

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json model_to_json(const WalkModel& model);

/// Rebuilds a model from its stored dA, dB and S. The remaining stored
/// matrices must agree with what those three imply; dB = dA S is *not*
/// enforced here so that broken models can be inspected by verify.
WalkModel model_from_json(const Json& j);

bool is_walk_model_json(const Json& j);
/// {"dA": matrix, "S": matrix, "tol_op": optional}
bool is_abstract_input_json(const Json& j);

Json report_to_json(const SpectralReport& rep, bool embed_eigenbases = false);
/// Eigenbases of every report item, for the sidecar file.
Json eigenbases_to_json(const SpectralReport& rep);

/// re,im,mult,origin per item.
std::string spectrum_csv(const SpectralReport& rep);

/// Human-readable table, one row per distinct eigenvalue of U.
std::string spectrum_table(const SpectralReport& rep);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

Json parse_json_file(const std::string& path);

}  // namespace qwspec
