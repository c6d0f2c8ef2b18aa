#include <fstream>
#include <sstream>

#include "qwspec/errors.hpp"
#include "qwspec/io.hpp"

namespace qwspec {

namespace {
constexpr const char* kModelFormat = "qwspec-walk-model";
}

Json matrix_to_json(const CMatrix& a) {
  Json data = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) data.push_back({a(i, j).real(), a(i, j).imag()});
  }
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["data"] = std::move(data);
  return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& name) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::ParseError, "matrix '" + name + "': " + why);
  };
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw bad("expected {\"rows\", \"cols\", \"data\"}");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw bad("rows and cols must be integers");
  }
  const auto rows = j["rows"].get<Index>();
  const auto cols = j["cols"].get<Index>();
  const Json& data = j["data"];
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    throw bad("data length does not match rows*cols");
  }
  CMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const Json& z = data[static_cast<std::size_t>(i * cols + k)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw bad("entries must be [re, im] pairs");
      }
      a(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return a;
}

Json subspace_to_json(const Subspace& s) {
  Json out;
  out["ambient_dim"] = s.ambient_dim();
  out["dim"] = s.dim();
  out["rank_tol"] = s.rank_tol();
  out["basis"] = matrix_to_json(s.basis());
  return out;
}

Subspace subspace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("basis")) throw Error(ErrorKind::ParseError, "subspace needs a basis");
  return Subspace(matrix_from_json(j["basis"], "basis"), j.value("rank_tol", 0.0));
}

Json model_to_json(const WalkModel& model) {
  const ModelProvenance& p = model.provenance();
  Json prov;
  prov["source"] = p.source;
  prov["weight_scheme"] = p.weight_scheme;
  prov["graph_hash"] = p.graph_hash;
  if (p.seed) prov["seed"] = *p.seed;
  if (p.graph) {
    Json g;
    g["vertex_count"] = p.graph->vertex_count();
    Json edges = Json::array();
    for (const auto& [u, v] : p.graph->edges()) edges.push_back({u, v});
    g["edges"] = std::move(edges);
    g["vertex_ids"] = p.vertex_ids;
    prov["graph"] = std::move(g);
  }

  Json out;
  out["format"] = kModelFormat;
  out["version"] = 1;
  out["dimensions"] = {{"n", model.n()}, {"m", model.m()}};
  out["tolerances"] = {{"tol_op", model.tol_op()}};
  out["provenance"] = std::move(prov);
  Json mats;
  mats["dA"] = matrix_to_json(model.dA());
  mats["dB"] = matrix_to_json(model.dB());
  mats["S"] = matrix_to_json(model.S());
  mats["C"] = matrix_to_json(model.C());
  mats["U"] = matrix_to_json(model.U());
  mats["T"] = matrix_to_json(model.T());
  mats["Ttilde"] = matrix_to_json(model.Ttilde());
  mats["L"] = matrix_to_json(model.L());
  out["matrices"] = std::move(mats);
  return out;
}

bool is_walk_model_json(const Json& j) {
  return j.is_object() && j.value("format", std::string{}) == kModelFormat;
}

bool is_abstract_input_json(const Json& j) {
  return j.is_object() && j.contains("dA") && j.contains("S") && !j.contains("format");
}

WalkModel model_from_json(const Json& j) {
  if (!is_walk_model_json(j)) throw Error(ErrorKind::ParseError, "not a walk model document");
  if (!j.contains("matrices") || !j["matrices"].is_object()) {
    throw Error(ErrorKind::ParseError, "walk model has no matrices");
  }
  const Json& mats = j["matrices"];
  auto need = [&](const char* name) {
    if (!mats.contains(name)) throw Error(ErrorKind::ParseError, std::string("walk model lacks matrix ") + name);
    return matrix_from_json(mats[name], name);
  };

  double tol_op = 0.0;
  if (j.contains("tolerances") && j["tolerances"].contains("tol_op")) {
    tol_op = j["tolerances"]["tol_op"].get<double>();
  }
  CMatrix dA = need("dA");
  if (!(tol_op > 0.0)) tol_op = default_tol_op(dA.cols());

  ModelProvenance prov;
  if (j.contains("provenance")) {
    const Json& p = j["provenance"];
    prov.source = p.value("source", std::string("abstract"));
    prov.weight_scheme = p.value("weight_scheme", std::string{});
    prov.graph_hash = p.value("graph_hash", std::string{});
    if (p.contains("seed")) prov.seed = p["seed"].get<std::uint64_t>();
    if (p.contains("graph")) {
      const Json& g = p["graph"];
      std::vector<Edge> edges;
      for (const Json& e : g.at("edges")) edges.emplace_back(e.at(0).get<Index>(), e.at(1).get<Index>());
      prov.graph = Digraph::from_edges(g.at("vertex_count").get<Index>(), edges);
      if (g.contains("vertex_ids")) prov.vertex_ids = g["vertex_ids"].get<std::vector<std::int64_t>>();
    }
  }

  WalkModel model = WalkModel::assemble(std::move(dA), need("dB"), need("S"), tol_op, std::move(prov));
  if (model.provenance().graph && model.provenance().graph->arc_count() != model.m()) {
    throw Error(ErrorKind::DimensionMismatch, "recorded graph does not match the model dimensions");
  }

  const std::pair<const char*, const CMatrix*> derived[] = {
      {"C", &model.C()}, {"U", &model.U()}, {"T", &model.T()}, {"Ttilde", &model.Ttilde()}, {"L", &model.L()}};
  for (const auto& [name, mat] : derived) {
    if (!mats.contains(name)) continue;
    const CMatrix stored = matrix_from_json(mats[name], name);
    if (stored.rows() != mat->rows() || stored.cols() != mat->cols() ||
        (stored - *mat).norm() > tol_op * std::max(1.0, mat->norm())) {
      throw Error(ErrorKind::ModelInvariantViolation,
                  std::string("stored ") + name + " disagrees with the operator implied by dA, dB, S");
    }
  }
  return model;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": invalid JSON: " + e.what());
  }
}

}  // namespace qwspec
