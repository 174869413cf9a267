#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/path.hpp"
#include "pph/persistence.hpp"
#include "pph/scalar.hpp"

namespace pph::io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
  out << text;
}

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string comment;  // text after '#', if any
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}, {}};
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      line.comment = std::string(raw.substr(hash + 1));
      raw = raw.substr(0, hash);
    }
    std::istringstream ss{std::string(raw)};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty() || !line.comment.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] inline void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(Errc::parse, source + ":" + std::to_string(line) + ": " + msg);
}

inline Rational positive_weight(const std::string& source, std::size_t line, const std::string& tok) {
  Rational w;
  try {
    w = parse_rational(tok);
  } catch (const Error&) {
    fail(source, line, "bad weight '" + tok + "'");
  }
  if (sgn(w) <= 0) fail(source, line, "weight must be positive, got '" + tok + "'");
  return w;
}

}  // namespace detail

// .wdg: `v <id>` declares a vertex, `e <src> <dst> <weight>` a weighted edge.
inline WeightedDigraph parse_wdg(std::string_view text, const std::string& source = "<wdg>") {
  VertexTable names;
  std::map<Edge, Rational> weights;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t.empty()) continue;
    if (t[0] == "v" && t.size() == 2) {
      names.intern(t[1]);
    } else if (t[0] == "e" && t.size() == 4) {
      if (t[1] == t[2]) detail::fail(source, line.number, "self-loop at '" + t[1] + "'");
      Vertex a = names.intern(t[1]), b = names.intern(t[2]);
      auto w = detail::positive_weight(source, line.number, t[3]);
      if (!weights.emplace(Edge{a, b}, w).second) detail::fail(source, line.number, "duplicate edge " + t[1] + " -> " + t[2]);
    } else {
      detail::fail(source, line.number, "expected 'v <id>' or 'e <src> <dst> <weight>'");
    }
  }
  std::set<Edge> edges;
  for (const auto& [e, w] : weights) edges.insert(e);
  return WeightedDigraph(Digraph(std::move(names), std::move(edges)), std::move(weights));
}

inline std::string format_wdg(const WeightedDigraph& g) {
  std::ostringstream out;
  const auto& names = g.names();
  for (Vertex v = 0; v < names.size(); ++v) out << "v " << names.name(v) << "\n";
  for (const auto& [e, w] : g.weights())
    out << "e " << names.name(e.first) << " " << names.name(e.second) << " " << format_rational(w) << "\n";
  return out.str();
}

// .wpc: `closure auto|strict`, `p <v0> ... <vk>` allowed paths, `w <u> <v> <weight>`.
// Weights are required on exactly the 1-paths of the (closed) complex.
inline WeightedPathComplex parse_wpc(std::string_view text, const std::string& source = "<wpc>") {
  VertexTable names;
  std::vector<ElementaryPath> paths;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> weight_lines;
  std::vector<Rational> weight_values;
  bool auto_closure = false, seen_header = false;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t.empty()) continue;
    if (t[0] == "closure" && t.size() == 2) {
      if (seen_header) detail::fail(source, line.number, "duplicate closure header");
      if (t[1] != "auto" && t[1] != "strict") detail::fail(source, line.number, "closure must be 'auto' or 'strict'");
      auto_closure = t[1] == "auto";
      seen_header = true;
    } else if (t[0] == "p" && t.size() >= 2) {
      std::vector<Vertex> vs;
      for (std::size_t i = 1; i < t.size(); ++i) vs.push_back(names.intern(t[i]));
      paths.emplace_back(std::move(vs));
    } else if (t[0] == "w" && t.size() == 4) {
      weight_lines.push_back({line.number, {t[1], t[2]}});
      weight_values.push_back(detail::positive_weight(source, line.number, t[3]));
    } else {
      detail::fail(source, line.number, "expected 'closure auto|strict', 'p <v0> ... <vk>' or 'w <u> <v> <weight>'");
    }
  }
  PathComplex complex(names, paths);
  if (auto_closure) {
    complex = truncation_closure(names, paths);
  } else if (auto report = validate(complex); !report.ok()) {
    throw Error(Errc::parse, source + ": path complex is not truncation-closed: " + report.violations.front());
  }
  std::map<Edge, Rational> weights;
  for (std::size_t k = 0; k < weight_lines.size(); ++k) {
    const auto& [number, uv] = weight_lines[k];
    auto a = complex.names().find(uv.first), b = complex.names().find(uv.second);
    if (!a || !b || !complex.contains(ElementaryPath{*a, *b}))
      detail::fail(source, number, "weight on '" + uv.first + " " + uv.second + "', which is not an allowed 1-path");
    if (!weights.emplace(Edge{*a, *b}, weight_values[k]).second)
      detail::fail(source, number, "duplicate weight for '" + uv.first + " " + uv.second + "'");
  }
  for (const auto& e : complex.paths(1))
    if (!weights.contains({e[0], e[1]}))
      throw Error(Errc::parse, source + ": missing weight for allowed 1-path '" + e.to_string(complex.names()) + "'");
  return WeightedPathComplex(std::move(complex), std::move(weights));
}

inline std::string format_wpc(const WeightedPathComplex& w) {
  std::ostringstream out;
  out << "closure strict\n";
  const auto& c = w.complex();
  for (int n = 0; n <= c.top_degree(); ++n)
    for (const auto& p : c.paths(n)) out << "p " << p.to_string(c.names()) << "\n";
  for (const auto& [e, x] : w.weights())
    out << "w " << c.names().name(e.first) << " " << c.names().name(e.second) << " " << format_rational(x) << "\n";
  return out.str();
}

// .dgm: `# dim=<p> field=<rat|F<p>>` then `<birth> <death>` per bar, `inf` for ∞.
struct DiagramFile {
  PersistenceDiagram diagram;
  std::string field;
};

inline std::string format_dgm(const PersistenceDiagram& d, const Field& f) {
  std::ostringstream out;
  out << "# dim=" << d.degree() << " field=" << f.name() << "\n";
  for (const auto& p : d.points()) out << format_rational(p.birth) << " " << p.death.to_string() << "\n";
  return out.str();
}

inline DiagramFile parse_dgm(std::string_view text, const std::string& source = "<dgm>") {
  auto lines = detail::tokenize(text);
  if (lines.empty() || !lines.front().tokens.empty()) throw Error(Errc::parse, source + ":1: missing '# dim=<p> field=<f>' header");
  std::istringstream hs(lines.front().comment);
  int dim = -1;
  std::string field;
  for (std::string kv; hs >> kv;) {
    if (kv.rfind("dim=", 0) == 0) {
      try {
        dim = std::stoi(kv.substr(4));
      } catch (...) {
        detail::fail(source, lines.front().number, "bad dim");
      }
    } else if (kv.rfind("field=", 0) == 0) {
      field = kv.substr(6);
    }
  }
  if (dim < 0 || field.empty()) detail::fail(source, lines.front().number, "header must give dim=<p> and field=<f>");
  try {
    Field::parse(field);
  } catch (const Error&) {
    detail::fail(source, lines.front().number, "bad field '" + field + "'");
  }
  std::vector<DiagramPoint> pts;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& t = lines[k].tokens;
    if (t.empty()) continue;
    if (t.size() != 2) detail::fail(source, lines[k].number, "expected '<birth> <death>'");
    try {
      Rational b = parse_rational(t[0]);
      Extended d = Extended::parse(t[1]);
      if (!d.is_infinite() && d.value() < b) detail::fail(source, lines[k].number, "death before birth");
      pts.push_back({b, d});
    } catch (const Error& e) {
      if (e.code() == Errc::parse && std::string(e.what()).find(source) == 0) throw;
      detail::fail(source, lines[k].number, "bad bar '" + t[0] + " " + t[1] + "'");
    }
  }
  return {PersistenceDiagram(dim, std::move(pts)), field};
}

// .vmap: `<src-vertex> <dst-vertex>` per line, total on the source vertex set.
inline VertexMap parse_vmap(std::string_view text, const VertexTable& src, const VertexTable& dst, const std::string& source = "<vmap>") {
  constexpr Vertex unset = static_cast<Vertex>(-1);
  std::vector<Vertex> table(src.size(), unset);
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t.empty()) continue;
    if (t.size() != 2) detail::fail(source, line.number, "expected '<src-vertex> <dst-vertex>'");
    auto a = src.find(t[0]);
    auto b = dst.find(t[1]);
    if (!a) detail::fail(source, line.number, "unknown source vertex '" + t[0] + "'");
    if (!b) detail::fail(source, line.number, "unknown target vertex '" + t[1] + "'");
    if (table[*a] != unset) detail::fail(source, line.number, "vertex '" + t[0] + "' mapped twice");
    table[*a] = *b;
  }
  for (Vertex v = 0; v < src.size(); ++v)
    if (table[v] == unset) throw Error(Errc::parse, source + ": vertex '" + src.name(v) + "' is not mapped");
  return VertexMap(dst.size(), std::move(table));
}

inline std::string format_vmap(const VertexMap& f, const VertexTable& src, const VertexTable& dst) {
  std::ostringstream out;
  for (Vertex v = 0; v < f.domain_size(); ++v) out << src.name(v) << " " << dst.name(f(v)) << "\n";
  return out.str();
}

}  // namespace pph::io
