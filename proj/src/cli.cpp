#include "qwspec/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwspec/errors.hpp"
#include "qwspec/graph.hpp"
#include "qwspec/io.hpp"
#include "qwspec/random_graph.hpp"
#include "qwspec/spectral.hpp"
#include "qwspec/walk_model.hpp"

namespace qwspec {
namespace {

struct RunConfig {
  std::string input;
  std::string weights = "auto";  // auto | grover | file
  bool abstract = false;

  std::optional<double> tol_norm;
  std::optional<double> tol_op;
  std::optional<double> rank_tol;
  std::optional<double> cluster_tol;
  std::optional<double> tol_match;
  std::optional<double> tol_sub;
  std::optional<double> tol_spec;

  std::string output;
  std::string report_path;
  std::string csv_path;
  std::string eigenbasis_path;
  bool embed_eigenbases = false;
  bool skip_lemmas = false;

  Index random_vertices = 0;
  std::uint64_t seed = 0;
  double edge_probability = 0.3;

  std::optional<std::string> lambda;
  std::optional<double> mu;
};

struct LoadedModel {
  WalkModel model;
  std::optional<Digraph> graph;  // unset for abstract models
  std::string stem;
};

Tolerances tolerances_of(const RunConfig& cfg) {
  Tolerances t;
  if (cfg.tol_norm) t.tol_norm = *cfg.tol_norm;
  t.rank_tol = cfg.rank_tol;
  if (cfg.cluster_tol) t.cluster_tol = *cfg.cluster_tol;
  if (cfg.tol_match) t.tol_match = *cfg.tol_match;
  if (cfg.tol_sub) t.tol_sub = *cfg.tol_sub;
  if (cfg.tol_spec) t.tol_spec = *cfg.tol_spec;
  return t;
}

std::optional<double> effective_tol_op(const RunConfig& cfg) {
  if (cfg.tol_op) return cfg.tol_op;
  if (const char* env = std::getenv("QWSPEC_TOL_OP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorKind::ParseError, std::string("QWSPEC_TOL_OP is not a positive number: ") + env);
    }
    return v;
  }
  return std::nullopt;
}

std::string stem_of(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  // c3.model.json -> c3
  if (const auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return stem.empty() ? "model" : stem;
}

WalkModel model_from_graph(const GraphInput& in, const RunConfig& cfg) {
  const double tol_norm = cfg.tol_norm.value_or(kDefaultTolNorm);
  const auto tol_op = effective_tol_op(cfg);
  std::string scheme = cfg.weights;
  if (scheme == "auto") scheme = in.weights ? "file" : "grover";
  WeightFunction w;
  if (scheme == "grover") {
    w = grover_weights(in.graph);
  } else {
    if (!in.weights) throw Error(ErrorKind::ParseError, "--weights file given but the input carries no weights");
    w = *in.weights;
  }
  const auto check = validate_weights(in.graph, w, tol_norm);
  if (!check.pass) {
    std::ostringstream os;
    if (!check.zero_weight_arcs.empty()) {
      os << "weight of arc " << check.zero_weight_arcs.front() << " is zero";
    } else {
      os << "weights at vertex " << in.vertex_ids[static_cast<std::size_t>(check.worst_vertex)]
         << " have squared-norm defect " << check.max_defect << " > tol_norm " << tol_norm;
    }
    throw Error(ErrorKind::AssumptionViolated, os.str());
  }
  WalkModel model = build_model(in.graph, w, tol_op, scheme, tol_norm);
  ModelProvenance prov = model.provenance();
  prov.vertex_ids = in.vertex_ids;
  return WalkModel::assemble(model.dA(), model.dB(), model.S(), model.tol_op(), std::move(prov));
}

LoadedModel load_random(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  Digraph g = random_connected_graph(cfg.random_vertices, cfg.edge_probability, rng);
  const bool grover = cfg.weights == "grover";
  const WeightFunction w = grover ? grover_weights(g) : random_szegedy_weights(g, rng);
  WalkModel base = build_model(g, w, effective_tol_op(cfg), grover ? "grover" : "random");
  ModelProvenance prov = base.provenance();
  prov.source = "random";
  prov.seed = cfg.seed;
  for (Index v = 0; v < g.vertex_count(); ++v) prov.vertex_ids.push_back(v);
  WalkModel model = WalkModel::assemble(base.dA(), base.dB(), base.S(), base.tol_op(), std::move(prov));
  std::string stem = "random-n" + std::to_string(cfg.random_vertices) + "-seed" + std::to_string(cfg.seed);
  return {std::move(model), std::move(g), std::move(stem)};
}

LoadedModel load_input(const RunConfig& cfg) {
  if (cfg.random_vertices > 0) return load_random(cfg);
  if (cfg.input.empty()) throw Error(ErrorKind::ParseError, "no input given (path or --random N)");
  const std::filesystem::path path(cfg.input);
  const std::string stem = stem_of(cfg.input);

  if (path.extension() == ".json") {
    const Json doc = parse_json_file(cfg.input);
    if (is_walk_model_json(doc)) {
      WalkModel model = model_from_json(doc);
      std::optional<Digraph> g;
      if (!cfg.abstract) g = model.provenance().graph;
      return {std::move(model), std::move(g), stem};
    }
    if (is_abstract_input_json(doc)) {
      std::optional<double> tol_op = effective_tol_op(cfg);
      if (!tol_op && doc.contains("tol_op")) tol_op = doc["tol_op"].get<double>();
      return {build_abstract_model(matrix_from_json(doc["dA"], "dA"), matrix_from_json(doc["S"], "S"), tol_op),
              std::nullopt, stem};
    }
  }
  GraphInput in = load_graph(path);
  WalkModel model = model_from_graph(in, cfg);
  std::optional<Digraph> g;
  if (!cfg.abstract) g = in.graph;
  return {std::move(model), std::move(g), stem};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorKind::ParseError, "failed writing " + path);
}

void add_tolerance_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol-norm", cfg.tol_norm, "weight normalization tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-op", cfg.tol_op, "operator identity tolerance (env QWSPEC_TOL_OP)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rank-tol", cfg.rank_tol, "relative numerical-rank threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--cluster-tol", cfg.cluster_tol, "eigenvalue clustering tolerance for T")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-match", cfg.tol_match, "angular tolerance matching eigenvalues of U")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-sub", cfg.tol_sub, "projector distance tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-spec", cfg.tol_spec, "eigenvector residual tolerance")->check(CLI::PositiveNumber);
}

void add_input_flags(CLI::App* cmd, RunConfig& cfg, bool positional_required) {
  auto* opt = cmd->add_option("input", cfg.input, "edge list, graph JSON, model JSON or abstract {dA,S} JSON");
  if (positional_required) opt->required();
  cmd->add_option("--weights", cfg.weights, "weight scheme")
      ->check(CLI::IsMember({"auto", "grover", "file"}));
  cmd->add_flag("--abstract", cfg.abstract, "treat the model as abstract (no graph corollary)");
}

void add_random_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--random", cfg.random_vertices, "random connected graph with N vertices")
      ->check(CLI::Range(Index{2}, Index{100000}));
  cmd->add_option("--seed", cfg.seed, "PRNG seed for --random");
  cmd->add_option("--edge-prob", cfg.edge_probability, "edge probability for --random")
      ->check(CLI::Range(1e-9, 1.0));
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  LoadedModel lm = load_input(cfg);
  const std::string path = cfg.output.empty() ? lm.stem + ".model.json" : cfg.output;
  write_file(path, dump(model_to_json(lm.model)));
  out << "wrote " << path << " (n=" << lm.model.n() << ", m=" << lm.model.m()
      << ", tol_op=" << lm.model.tol_op() << ")\n";
  return kExitOk;
}

void print_verdicts(const SpectralReport& rep, std::ostream& out) {
  char line[256];
  for (const auto& [name, v] : rep.verdicts.entries()) {
    std::snprintf(line, sizeof line, "%-4s %-34s residual=%-12.3e threshold=%.3e", v.pass ? "PASS" : "FAIL",
                  name.c_str(), v.residual, v.threshold);
    out << line;
    if (!v.detail.empty()) out << "  (" << v.detail << ")";
    out << '\n';
  }
}

void print_summary(const SpectralReport& rep, std::ostream& out) {
  out << "m_plus=" << rep.m_plus << " m_minus=" << rep.m_minus;
  if (rep.corollary) out << " M_plus=" << rep.corollary->M_plus << " M_minus=" << rep.corollary->M_minus;
  out << " dim(Im L)=" << rep.inherited_dim << " dim(birth)=" << rep.birth_dim << '\n';
  for (const std::string& w : rep.warnings) out << "warning: " << w << '\n';
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  LoadedModel lm = load_input(cfg);
  ReportOptions opts;
  opts.tolerances = tolerances_of(cfg);
  opts.verify_lemmas = !cfg.skip_lemmas;
  const SpectralReport rep = full_report(lm.model, lm.graph ? &*lm.graph : nullptr, opts);

  const std::string report_path = cfg.report_path.empty() ? lm.stem + ".report.json" : cfg.report_path;
  const std::string csv_path = cfg.csv_path.empty() ? lm.stem + ".spectrum.csv" : cfg.csv_path;
  write_file(report_path, dump(report_to_json(rep, cfg.embed_eigenbases)));
  write_file(csv_path, spectrum_csv(rep));
  if (!cfg.eigenbasis_path.empty()) write_file(cfg.eigenbasis_path, dump(eigenbases_to_json(rep)));

  out << spectrum_table(rep);
  print_summary(rep, out);
  const auto failed = rep.verdicts.failures();
  if (!failed.empty()) {
    out << failed.size() << " verdict(s) failed:";
    for (const auto& f : failed) out << ' ' << f;
    out << '\n';
    return kExitVerdictFailure;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  LoadedModel lm = load_input(cfg);
  ReportOptions opts;
  opts.tolerances = tolerances_of(cfg);
  const SpectralReport rep = full_report(lm.model, lm.graph ? &*lm.graph : nullptr, opts);
  if (!cfg.report_path.empty()) write_file(cfg.report_path, dump(report_to_json(rep, cfg.embed_eigenbases)));
  print_verdicts(rep, out);
  print_summary(rep, out);
  const bool ok = rep.verdicts.all_pass();
  out << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok ? kExitOk : kExitVerdictFailure;
}

Complex parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    std::size_t ua = 0;
    std::size_t ub = 0;
    const double re = std::stod(a, &ua);
    const double im = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "--lambda expects re[,im], got '" + text + "'");
  }
}

int cmd_eigvec(const RunConfig& cfg, std::ostream& out) {
  if (cfg.lambda.has_value() == cfg.mu.has_value()) {
    throw Error(ErrorKind::ParseError, "eigvec needs exactly one of --lambda or --mu");
  }
  LoadedModel lm = load_input(cfg);
  ReportOptions opts;
  opts.tolerances = tolerances_of(cfg);
  opts.verify_lemmas = false;
  const SpectralReport rep = full_report(lm.model, lm.graph ? &*lm.graph : nullptr, opts);
  const Tolerances& tol = opts.tolerances;

  Json doc;
  Json items = Json::array();
  if (cfg.lambda) {
    const Complex lambda = parse_lambda(*cfg.lambda);
    if (std::abs(lambda) == 0.0) throw Error(ErrorKind::DomainError, "lambda must be nonzero");
    doc["query"] = {{"lambda", {lambda.real(), lambda.imag()}}};
    for (const EigItem& it : rep.items) {
      if (angular_distance(it.value, lambda) > tol.tol_match || std::abs(std::abs(lambda) - 1.0) > tol.tol_spec) continue;
      items.push_back({{"re", it.value.real()}, {"im", it.value.imag()}, {"origin", origin_name(it.origin)},
                       {"eigenbasis", subspace_to_json(it.eigenbasis)}});
    }
  } else {
    doc["query"] = {{"mu", *cfg.mu}};
    for (const TCluster& c : rep.spectrum_T) {
      if (std::abs(c.mu - *cfg.mu) <= tol.cluster_tol) doc["T_eigenbasis"] = subspace_to_json(c.eigenbasis);
    }
    for (const EigItem& it : rep.items) {
      if (!it.source_mu || std::abs(*it.source_mu - *cfg.mu) > tol.cluster_tol) continue;
      items.push_back({{"re", it.value.real()}, {"im", it.value.imag()}, {"origin", origin_name(it.origin)},
                       {"eigenbasis", subspace_to_json(it.eigenbasis)}});
    }
  }
  const bool found = !items.empty();
  doc["items"] = std::move(items);
  if (cfg.output.empty()) {
    out << dump(doc);
  } else {
    write_file(cfg.output, dump(doc));
    out << "wrote " << cfg.output << '\n';
  }
  if (!found) {
    throw Error(ErrorKind::DomainError, "no eigenspace matches the query");
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of Szegedy / Grover quantum walks on graphs", "qwspec"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* build = app.add_subcommand("build", "build a walk model and write it as JSON");
  add_input_flags(build, cfg, true);
  add_tolerance_flags(build, cfg);
  build->add_option("-o,--output", cfg.output, "model JSON path (default <stem>.model.json)");

  auto* spectrum = app.add_subcommand("spectrum", "spectrum and eigenspaces of U with verdicts");
  add_input_flags(spectrum, cfg, false);
  add_tolerance_flags(spectrum, cfg);
  add_random_flags(spectrum, cfg);
  spectrum->add_option("--report", cfg.report_path, "report JSON path (default <stem>.report.json)");
  spectrum->add_option("--csv", cfg.csv_path, "spectrum CSV path (default <stem>.spectrum.csv)");
  spectrum->add_option("--eigenbasis-out", cfg.eigenbasis_path, "eigenbasis sidecar JSON path");
  spectrum->add_flag("--embed-eigenbases", cfg.embed_eigenbases, "embed eigenbases in the report");
  spectrum->add_flag("--no-verify-lemmas", cfg.skip_lemmas, "skip the operator-identity suite");

  auto* verify = app.add_subcommand("verify", "run every identity and the oracle cross-check");
  add_input_flags(verify, cfg, false);
  add_tolerance_flags(verify, cfg);
  add_random_flags(verify, cfg);
  verify->add_option("--report", cfg.report_path, "also write the report JSON here");

  auto* eigvec = app.add_subcommand("eigvec", "dump the eigenbasis for an eigenvalue lambda of U or mu of T");
  add_input_flags(eigvec, cfg, false);
  add_tolerance_flags(eigvec, cfg);
  add_random_flags(eigvec, cfg);
  eigvec->add_option("--lambda", cfg.lambda, "eigenvalue of U as re[,im]");
  eigvec->add_option("--mu", cfg.mu, "eigenvalue of T");
  eigvec->add_option("-o,--output", cfg.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ParseError " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*build) return cmd_build(cfg, out);
    if (*spectrum) return cmd_spectrum(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*eigvec) return cmd_eigvec(cfg, out);
  } catch (const Error& e) {
    err << e.name() << ' ' << e.what() << '\n';
    return is_input_error(e.kind()) ? kExitInputError : kExitNumericalError;
  } catch (const nlohmann::json::exception& e) {
    err << "ParseError " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "NumericalError " << e.what() << '\n';
    return kExitNumericalError;
  }
  return kExitInputError;
}

}  // namespace qwspec
