#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pph/error.hpp"
#include "pph/path.hpp"
#include "pph/scalar.hpp"

namespace pph {

using Edge = std::pair<Vertex, Vertex>;

// Finite loopless directed graph.
class Digraph {
 public:
  Digraph() = default;
  Digraph(VertexTable vertices, std::set<Edge> edges) : names_(std::move(vertices)), edges_(std::move(edges)) {
    for (const auto& [a, b] : edges_) {
      if (a == b) throw Error(Errc::domain, "self-loop at vertex '" + names_.name(a) + "'");
      if (a >= names_.size() || b >= names_.size()) throw Error(Errc::domain, "edge endpoint outside the vertex set");
    }
  }

  const VertexTable& names() const noexcept { return names_; }
  std::size_t vertex_count() const noexcept { return names_.size(); }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(Vertex a, Vertex b) const { return edges_.contains({a, b}); }
  // a ⇒̄ b: equal, or joined by an edge a -> b.
  bool equal_or_edge(Vertex a, Vertex b) const { return a == b || has_edge(a, b); }

  std::vector<std::vector<Vertex>> out_neighbours() const {
    std::vector<std::vector<Vertex>> adj(vertex_count());
    for (const auto& [a, b] : edges_) adj[a].push_back(b);
    return adj;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.names_ == b.names_ && a.edges_ == b.edges_; }

 private:
  VertexTable names_;
  std::set<Edge> edges_;
};

inline Digraph complete_digraph(const VertexTable& names) {
  std::set<Edge> e;
  for (Vertex a = 0; a < names.size(); ++a)
    for (Vertex b = 0; b < names.size(); ++b)
      if (a != b) e.insert({a, b});
  return Digraph(names, std::move(e));
}

// Digraph with strictly positive rational weights on exactly its edges.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(Digraph g, std::map<Edge, Rational> w) : graph_(std::move(g)), weights_(std::move(w)) {
    if (weights_.size() != graph_.edges().size()) throw Error(Errc::weight, "weights must be given on exactly the edge set");
    for (auto& [e, x] : weights_) {
      x.canonicalize();
      if (!graph_.edges().contains(e)) throw Error(Errc::weight, "weight on a non-edge");
      if (sgn(x) <= 0) throw Error(Errc::weight, "edge weights must be positive");
    }
  }

  const Digraph& graph() const noexcept { return graph_; }
  const VertexTable& names() const noexcept { return graph_.names(); }
  const std::map<Edge, Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(Vertex a, Vertex b) const {
    auto it = weights_.find({a, b});
    if (it == weights_.end()) throw Error(Errc::weight, "no edge " + names().name(a) + " -> " + names().name(b));
    return it->second;
  }

  WeightedDigraph with_weights(std::map<Edge, Rational> w) const { return WeightedDigraph(graph_, std::move(w)); }

 private:
  Digraph graph_;
  std::map<Edge, Rational> weights_;
};

// A set of allowed elementary paths, graded by degree. Constructed as given;
// use validate() to check truncation closure.
class PathComplex {
 public:
  PathComplex() = default;
  PathComplex(VertexTable names, std::span<const ElementaryPath> paths) : names_(std::move(names)) {
    for (const auto& p : paths) insert(p);
  }

  const VertexTable& names() const noexcept { return names_; }
  std::size_t vertex_count() const noexcept { return names_.size(); }

  // Highest degree with a stored path; -1 when empty.
  int top_degree() const noexcept { return static_cast<int>(strata_.size()) - 1; }

  const std::set<ElementaryPath>& paths(int n) const {
    static const std::set<ElementaryPath> none;
    static const std::set<ElementaryPath> minus_one{ElementaryPath{}};
    if (n == -1) return minus_one;
    if (n < 0 || n > top_degree()) return none;
    return strata_[static_cast<std::size_t>(n)];
  }

  bool contains(const ElementaryPath& p) const {
    if (p.empty()) return true;
    return paths(p.degree()).contains(p);
  }

  std::size_t path_count() const {
    std::size_t n = 0;
    for (const auto& s : strata_) n += s.size();
    return n;
  }

  std::vector<ElementaryPath> all_paths() const {
    std::vector<ElementaryPath> out;
    for (const auto& s : strata_) out.insert(out.end(), s.begin(), s.end());
    return out;
  }

  // No allowed path contains a repeated consecutive vertex.
  bool is_regular() const {
    for (const auto& s : strata_)
      for (const auto& p : s)
        if (!p.is_regular()) return false;
    return true;
  }

  void insert(const ElementaryPath& p) {
    if (p.empty()) return;
    for (auto v : p.vertices())
      if (v >= names_.size()) throw Error(Errc::domain, "path vertex outside the vertex set");
    auto n = static_cast<std::size_t>(p.degree());
    if (strata_.size() <= n) strata_.resize(n + 1);
    strata_[n].insert(p);
  }

  // Copy keeping only paths of degree <= n.
  PathComplex truncated(int n) const {
    PathComplex out;
    out.names_ = names_;
    for (int k = 0; k <= std::min(n, top_degree()); ++k)
      for (const auto& p : paths(k)) out.insert(p);
    return out;
  }

  friend bool operator==(const PathComplex& a, const PathComplex& b) {
    if (!(a.names_ == b.names_)) return false;
    int top = std::max(a.top_degree(), b.top_degree());
    for (int n = 0; n <= top; ++n)
      if (a.paths(n) != b.paths(n)) return false;
    return true;
  }

 private:
  VertexTable names_;
  std::vector<std::set<ElementaryPath>> strata_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Checks truncation closure and that P_0 is the whole vertex set.
inline ValidationReport validate(const PathComplex& p) {
  ValidationReport r;
  const auto& names = p.names();
  for (Vertex v = 0; v < names.size(); ++v)
    if (!p.contains(ElementaryPath{v})) r.violations.push_back("missing vertex path '" + names.name(v) + "'");
  std::set<ElementaryPath> reported;
  for (int n = 1; n <= p.top_degree(); ++n)
    for (const auto& path : p.paths(n))
      for (auto t : {path.drop_back(), path.drop_front()})
        if (!p.contains(t) && reported.insert(t).second)
          r.violations.push_back("missing truncation '" + t.to_string(names) + "' of '" + path.to_string(names) + "'");
  return r;
}

// Every subsequence (not just contiguous truncation) of an allowed path is allowed.
inline bool is_perfect(const PathComplex& p) {
  for (int n = 1; n <= p.top_degree(); ++n)
    for (const auto& path : p.paths(n))
      for (std::size_t q = 0; q < path.length(); ++q)
        if (!p.contains(path.face(q))) return false;
  return true;
}

// All walks of length <= max_dim along edges.
inline PathComplex path_complex_from_digraph(const Digraph& g, int max_dim) {
  if (max_dim < 0) throw Error(Errc::usage, "max_dim must be non-negative");
  auto adj = g.out_neighbours();
  PathComplex out(g.names(), {});
  std::vector<ElementaryPath> layer;
  for (Vertex v = 0; v < g.vertex_count(); ++v) layer.push_back(ElementaryPath{v});
  for (int n = 0; n <= max_dim && !layer.empty(); ++n) {
    std::vector<ElementaryPath> next;
    for (const auto& p : layer) {
      out.insert(p);
      if (n == max_dim) continue;
      for (auto w : adj[p.back()]) {
        auto vs = p.vertices();
        vs.push_back(w);
        next.emplace_back(std::move(vs));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Smallest truncation-closed set containing `paths`. The vertex table of the
// result is `universe` restricted to vertices that occur, in the same order.
inline PathComplex truncation_closure(const VertexTable& universe, std::span<const ElementaryPath> paths) {
  std::vector<bool> used(universe.size(), false);
  for (const auto& p : paths)
    for (auto v : p.vertices()) {
      if (v >= universe.size()) throw Error(Errc::domain, "path vertex outside the vertex set");
      used[v] = true;
    }
  VertexTable names;
  std::vector<Vertex> remap(universe.size(), 0);
  for (Vertex v = 0; v < universe.size(); ++v)
    if (used[v]) remap[v] = names.intern(universe.name(v));
  PathComplex out(names, {});
  for (const auto& p : paths) {
    std::vector<Vertex> vs;
    for (auto v : p.vertices()) vs.push_back(remap[v]);
    for (std::size_t len = 1; len <= vs.size(); ++len)
      for (std::size_t i = 0; i + len <= vs.size(); ++i)
        out.insert(ElementaryPath(std::vector<Vertex>(vs.begin() + static_cast<long>(i), vs.begin() + static_cast<long>(i + len))));
  }
  return out;
}

inline PathComplex truncation_closure(const PathComplex& p) {
  auto all = p.all_paths();
  return truncation_closure(p.names(), all);
}

// Closure of P_deg ∪ P_{deg+1}: the part of P that determines H_deg.
inline PathComplex grounded_truncation(const PathComplex& p, int deg) {
  if (deg < 0) throw Error(Errc::usage, "degree must be non-negative");
  std::vector<ElementaryPath> gen;
  for (int n : {deg, deg + 1}) gen.insert(gen.end(), p.paths(n).begin(), p.paths(n).end());
  return truncation_closure(p.names(), gen);
}

// Each simplex contributes the path listing its vertices in increasing `rank`.
inline PathComplex path_complex_from_simplicial(const VertexTable& names, std::span<const std::set<Vertex>> simplices,
                                                std::span<const long> rank) {
  if (rank.size() != names.size()) throw Error(Errc::order, "vertex ranking must cover every vertex");
  std::set<long> seen(rank.begin(), rank.end());
  if (seen.size() != rank.size()) throw Error(Errc::order, "vertex ranking is not injective");
  std::set<std::set<Vertex>> all(simplices.begin(), simplices.end());
  for (const auto& s : all) {
    if (s.empty()) continue;
    for (auto v : s) {
      if (v >= names.size()) throw Error(Errc::domain, "simplex vertex outside the vertex set");
      auto face = s;
      face.erase(v);
      if (!face.empty() && !all.contains(face)) throw Error(Errc::closure, "simplex set is not closed under taking faces");
    }
  }
  PathComplex out(names, {});
  for (const auto& s : all) {
    if (s.empty()) continue;
    std::vector<Vertex> vs(s.begin(), s.end());
    std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
    out.insert(ElementaryPath(std::move(vs)));
  }
  return out;
}

// Path complex with strictly positive rational weights on exactly its 1-paths.
class WeightedPathComplex {
 public:
  WeightedPathComplex() = default;
  WeightedPathComplex(PathComplex p, std::map<Edge, Rational> w) : complex_(std::move(p)), weights_(std::move(w)) {
    if (weights_.size() != complex_.paths(1).size()) throw Error(Errc::weight, "weights must be given on exactly the allowed 1-paths");
    for (auto& [e, x] : weights_) {
      x.canonicalize();
      if (!complex_.contains(ElementaryPath{e.first, e.second})) throw Error(Errc::weight, "weight on a path that is not an allowed 1-path");
      if (sgn(x) <= 0) throw Error(Errc::weight, "1-path weights must be positive");
    }
  }

  const PathComplex& complex() const noexcept { return complex_; }
  const VertexTable& names() const noexcept { return complex_.names(); }
  const std::map<Edge, Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(Vertex a, Vertex b) const {
    auto it = weights_.find({a, b});
    if (it == weights_.end()) throw Error(Errc::weight, "no allowed 1-path " + names().name(a) + " " + names().name(b));
    return it->second;
  }

  WeightedPathComplex with_weights(std::map<Edge, Rational> w) const { return WeightedPathComplex(complex_, std::move(w)); }

 private:
  PathComplex complex_;
  std::map<Edge, Rational> weights_;
};

}  // namespace pph
