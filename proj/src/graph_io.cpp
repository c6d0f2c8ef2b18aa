#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qwspec/errors.hpp"
#include "qwspec/graph.hpp"

namespace qwspec {
namespace {

struct RawEdge {
  std::int64_t u;
  std::int64_t v;
  std::optional<Complex> w_uv;
  std::optional<Complex> w_vu;
  std::size_t line;
};

Error line_error(ErrorKind kind, std::size_t line, const std::string& msg) {
  return Error(kind, "line " + std::to_string(line) + ": " + msg);
}

std::int64_t parse_vertex_id(std::string_view tok, std::size_t line) {
  std::int64_t id = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || id < 0) {
    throw line_error(ErrorKind::ParseError, line,
                     "expected a nonnegative integer vertex id, got '" + std::string(tok) + "'");
  }
  return id;
}

double parse_real(std::string_view tok, std::size_t line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw line_error(ErrorKind::ParseError, line, "malformed number '" + std::string(tok) + "'");
  }
  return x;
}

// "re" or "re,im"
Complex parse_weight(std::string_view tok, std::size_t line) {
  const auto comma = tok.find(',');
  if (comma == std::string_view::npos) return {parse_real(tok, line), 0.0};
  return {parse_real(tok.substr(0, comma), line), parse_real(tok.substr(comma + 1), line)};
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Shared back half of both parsers: compaction, duplicate/self-loop checks
// with source positions, canonical ordering, and weight placement.
GraphInput assemble(const std::vector<RawEdge>& raw, const std::vector<std::int64_t>& declared,
                    const char* where) {
  if (raw.empty()) throw Error(ErrorKind::ParseError, "graph has no edges");

  GraphInput in;
  std::map<std::int64_t, Index> compact;
  auto intern = [&](std::int64_t id) {
    auto [it, inserted] = compact.try_emplace(id, static_cast<Index>(in.vertex_ids.size()));
    if (inserted) in.vertex_ids.push_back(id);
    return it->second;
  };
  for (std::int64_t id : declared) intern(id);

  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  std::vector<Edge> edges;
  for (const RawEdge& r : raw) {
    if (r.u == r.v) {
      throw Error(ErrorKind::SelfLoopForbidden, std::string(where) + " " + std::to_string(r.line) +
                                                    ": self-loop on vertex " + std::to_string(r.u));
    }
    const auto key = std::minmax(r.u, r.v);
    if (auto [it, inserted] = seen.try_emplace(key, r.line); !inserted) {
      throw Error(ErrorKind::DuplicateEdge,
                  std::string(where) + " " + std::to_string(r.line) + ": edge " +
                      std::to_string(key.first) + " " + std::to_string(key.second) +
                      " repeats " + where + " " + std::to_string(it->second));
    }
    const Index a = intern(r.u);
    const Index b = intern(r.v);
    edges.emplace_back(a, b);
  }

  const auto n = static_cast<Index>(in.vertex_ids.size());
  std::vector<Index> degree(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  for (Index v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 0) {
      throw Error(ErrorKind::IsolatedVertex,
                  "declared vertex " + std::to_string(in.vertex_ids[static_cast<std::size_t>(v)]) +
                      " has no incident edge");
    }
  }
  in.graph = Digraph::from_edges(n, edges);

  const bool any_weight = raw.front().w_uv.has_value();
  for (const RawEdge& r : raw) {
    if (r.w_uv.has_value() != any_weight) {
      throw Error(ErrorKind::ParseError, std::string(where) + " " + std::to_string(r.line) +
                                             ": weights must be given on every edge or none");
    }
  }
  if (any_weight) {
    std::map<std::pair<Index, Index>, Complex> by_arc;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      by_arc[{edges[i].first, edges[i].second}] = *raw[i].w_uv;
      by_arc[{edges[i].second, edges[i].first}] = *raw[i].w_vu;
    }
    WeightFunction w;
    for (const Arc& a : in.graph.arcs()) w.values.push_back(by_arc.at({a.origin, a.terminus}));
    in.weights = std::move(w);
  }
  return in;
}

}  // namespace

GraphInput parse_graph(std::string_view text) {
  std::vector<RawEdge> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') {
      if (eol == text.size()) break;
      continue;
    }
    if (toks.size() != 2 && toks.size() != 4) {
      throw line_error(ErrorKind::ParseError, line_no,
                       "expected 'u v' or 'u v w_uv w_vu', got " + std::to_string(toks.size()) +
                           " fields");
    }
    RawEdge r{parse_vertex_id(toks[0], line_no), parse_vertex_id(toks[1], line_no), {}, {},
              line_no};
    if (toks.size() == 4) {
      r.w_uv = parse_weight(toks[2], line_no);
      r.w_vu = parse_weight(toks[3], line_no);
    }
    raw.push_back(r);
    if (eol == text.size()) break;
  }
  return assemble(raw, {}, "line");
}

GraphInput parse_graph_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    throw Error(ErrorKind::ParseError, "JSON graph needs an \"edges\" array");
  }

  auto as_id = [](const json& j, std::size_t idx) -> std::int64_t {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
      throw Error(ErrorKind::ParseError,
                  "edge " + std::to_string(idx) + ": vertex ids must be nonnegative integers");
    }
    return j.get<std::int64_t>();
  };

  std::vector<RawEdge> raw;
  std::size_t idx = 0;
  for (const json& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw Error(ErrorKind::ParseError, "edge " + std::to_string(idx) + ": expected [u, v]");
    }
    raw.push_back({as_id(e[0], idx), as_id(e[1], idx), {}, {}, idx});
    ++idx;
  }

  std::vector<std::int64_t> declared;
  if (doc.contains("vertices")) {
    std::size_t k = 0;
    for (const json& v : doc["vertices"]) declared.push_back(as_id(v, k++));
  }

  GraphInput in = assemble(raw, declared, "edge");

  if (doc.contains("weights")) {
    const json& wj = doc["weights"];
    if (!wj.is_object()) throw Error(ErrorKind::ParseError, "\"weights\" must be an object");
    WeightFunction w;
    w.values.assign(static_cast<std::size_t>(in.graph.arc_count()), Complex(0.0, 0.0));
    std::vector<bool> have(w.values.size(), false);
    for (const auto& [key, val] : wj.items()) {
      Index arc = -1;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), arc);
      if (ec != std::errc() || ptr != key.data() + key.size() || arc < 0 ||
          arc >= in.graph.arc_count()) {
        throw Error(ErrorKind::ParseError, "weight key '" + key + "' is not an arc index");
      }
      if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number()) {
        throw Error(ErrorKind::ParseError, "weight for arc " + key + " must be [re, im]");
      }
      w.values[static_cast<std::size_t>(arc)] = {val[0].get<double>(), val[1].get<double>()};
      have[static_cast<std::size_t>(arc)] = true;
    }
    for (std::size_t e = 0; e < have.size(); ++e) {
      if (!have[e]) throw Error(ErrorKind::ParseError, "missing weight for arc " + std::to_string(e));
    }
    in.weights = std::move(w);
  }
  return in;
}

GraphInput load_graph(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  if (path.extension() == ".json") return parse_graph_json(ss.str());
  return parse_graph(ss.str());
}

}  // namespace qwspec
