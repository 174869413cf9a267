#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/path.hpp"
#include "pph/scalar.hpp"

namespace pph {

// G^δ: same vertices, edges of weight <= δ.
inline Digraph edge_sublevel(const WeightedDigraph& g, const Rational& delta) {
  std::set<Edge> kept;
  for (const auto& [e, w] : g.weights())
    if (w <= delta) kept.insert(e);
  return Digraph(g.names(), std::move(kept));
}

// Sum of the n edge weights along an n-path; 0 for 0-paths.
inline Rational path_length(const ElementaryPath& p, const std::map<Edge, Rational>& weights) {
  Rational len = 0;
  for (std::size_t i = 1; i < p.length(); ++i) {
    auto it = weights.find({p[i - 1], p[i]});
    if (it == weights.end()) throw Error(Errc::weight, "path step without a weight");
    len += it->second;
  }
  return len;
}

inline Rational path_length(const ElementaryPath& p, const WeightedPathComplex& w) { return path_length(p, w.weights()); }

// P^δ: all vertices, and the higher paths of length <= δ.
inline PathComplex path_sublevel(const WeightedPathComplex& p, const Rational& delta) {
  PathComplex out(p.names(), {});
  const auto& c = p.complex();
  for (int n = 0; n <= c.top_degree(); ++n)
    for (const auto& path : c.paths(n))
      if (n == 0 || path_length(path, p.weights()) <= delta) out.insert(path);
  return out;
}

// Strictly increasing critical values, starting at 0.
class FiltrationIndex {
 public:
  FiltrationIndex() : values_{Rational(0)} {}
  explicit FiltrationIndex(std::vector<Rational> values) : values_(std::move(values)) {
    for (auto& v : values_) v.canonicalize();
    if (values_.empty() || values_.front() != 0) throw Error(Errc::usage, "critical values must start at 0");
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (!(values_[i - 1] < values_[i])) throw Error(Errc::usage, "critical values must be strictly increasing");
  }

  // {0} ∪ values, sorted and deduplicated. Negative values are rejected.
  static FiltrationIndex from_values(std::vector<Rational> values) {
    values.emplace_back(0);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.front() < 0) throw Error(Errc::usage, "filtration values must be non-negative");
    return FiltrationIndex(std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_.at(i); }
  const std::vector<Rational>& values() const noexcept { return values_; }

  // Index of the largest critical value <= delta (delta >= 0).
  std::size_t floor_index(const Rational& delta) const {
    if (delta < 0) throw Error(Errc::domain, "filtration parameter must be non-negative");
    auto it = std::upper_bound(values_.begin(), values_.end(), delta);
    return static_cast<std::size_t>(it - values_.begin()) - 1;
  }
  std::size_t index_of(const Rational& v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) throw Error(Errc::domain, "value is not a critical value");
    return static_cast<std::size_t>(it - values_.begin());
  }

  friend bool operator==(const FiltrationIndex&, const FiltrationIndex&) = default;

 private:
  std::vector<Rational> values_;
};

inline FiltrationIndex critical_values(const WeightedDigraph& g) {
  std::vector<Rational> vs;
  for (const auto& [e, w] : g.weights()) vs.push_back(w);
  return FiltrationIndex::from_values(std::move(vs));
}

// Lengths of all allowed paths of degree <= max_dim (all stored degrees when max_dim < 0).
inline FiltrationIndex critical_values(const WeightedPathComplex& p, int max_dim = -1) {
  std::vector<Rational> vs;
  const auto& c = p.complex();
  int top = max_dim < 0 ? c.top_degree() : std::min(max_dim, c.top_degree());
  for (int n = 1; n <= top; ++n)
    for (const auto& path : c.paths(n)) vs.push_back(path_length(path, p.weights()));
  return FiltrationIndex::from_values(std::move(vs));
}

// A nested family of path complexes indexed by critical values, stored as the
// final complex plus the index at which each path enters.
class FilteredComplex {
 public:
  FilteredComplex(FiltrationIndex index, PathComplex full, std::map<ElementaryPath, std::size_t> entry)
      : index_(std::move(index)), full_(std::move(full)), entry_(std::move(entry)) {
    for (const auto& p : full_.all_paths()) {
      auto it = entry_.find(p);
      if (it == entry_.end()) throw Error(Errc::usage, "filtered complex path without an entry index");
      if (it->second >= index_.size()) throw Error(Errc::usage, "entry index out of range");
    }
    check_snapshots_closed();
  }

  // Builds from explicit snapshots; throws nesting_violation unless each is
  // contained in the next.
  static FilteredComplex from_snapshots(FiltrationIndex index, std::span<const PathComplex> snapshots) {
    if (snapshots.size() != index.size()) throw Error(Errc::usage, "one snapshot per critical value is required");
    std::map<ElementaryPath, std::size_t> entry;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      if (!(snapshots[i].names() == snapshots.back().names()))
        throw Error(Errc::nesting_violation, "snapshots have different vertex sets");
      for (const auto& p : snapshots[i].all_paths()) entry.try_emplace(p, i);
      if (i > 0)
        for (const auto& p : snapshots[i - 1].all_paths())
          if (!snapshots[i].contains(p))
            throw Error(Errc::nesting_violation, "snapshot " + std::to_string(i - 1) + " is not contained in snapshot " + std::to_string(i));
    }
    return FilteredComplex(std::move(index), snapshots.back(), std::move(entry));
  }

  const FiltrationIndex& index() const noexcept { return index_; }
  const PathComplex& full() const noexcept { return full_; }
  std::size_t entry(const ElementaryPath& p) const { return entry_.at(p); }
  const Rational& value(std::size_t i) const { return index_[i]; }

  PathComplex snapshot(std::size_t i) const {
    PathComplex out(full_.names(), {});
    for (const auto& [p, e] : entry_)
      if (e <= i) out.insert(p);
    return out;
  }
  PathComplex snapshot_at(const Rational& delta) const { return snapshot(index_.floor_index(delta)); }

 private:
  void check_snapshots_closed() const {
    for (const auto& [p, e] : entry_) {
      if (p.length() < 2) continue;
      for (const auto& t : {p.drop_back(), p.drop_front()}) {
        auto it = entry_.find(t);
        if (it == entry_.end() || it->second > e)
          throw Error(Errc::nesting_violation, "a snapshot is not truncation-closed");
      }
    }
  }

  FiltrationIndex index_;
  PathComplex full_;
  std::map<ElementaryPath, std::size_t> entry_;
};

// Edge-level filtration of P(G), truncated at max_dim. A walk enters at its
// heaviest edge.
inline FilteredComplex edge_filtration(const WeightedDigraph& g, int max_dim) {
  auto index = critical_values(g);
  auto full = path_complex_from_digraph(g.graph(), max_dim);
  std::map<ElementaryPath, std::size_t> entry;
  for (const auto& p : full.all_paths()) {
    Rational heaviest = 0;
    for (std::size_t i = 1; i < p.length(); ++i) heaviest = std::max(heaviest, g.weight(p[i - 1], p[i]));
    entry.emplace(p, index.index_of(heaviest));
  }
  return FilteredComplex(std::move(index), std::move(full), std::move(entry));
}

// Path sublevel filtration; paths above max_dim are dropped (max_dim < 0 keeps all).
inline FilteredComplex path_filtration(const WeightedPathComplex& w, int max_dim = -1) {
  auto index = critical_values(w, max_dim);
  auto full = max_dim < 0 ? w.complex() : w.complex().truncated(max_dim);
  std::map<ElementaryPath, std::size_t> entry;
  for (const auto& p : full.all_paths()) entry.emplace(p, index.index_of(path_length(p, w.weights())));
  return FilteredComplex(std::move(index), std::move(full), std::move(entry));
}

}  // namespace pph
