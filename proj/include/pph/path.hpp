#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pph/error.hpp"
#include "pph/scalar.hpp"

namespace pph {

using Vertex = std::uint32_t;

// Interns opaque vertex names to dense integers in first-seen order.
class VertexTable {
 public:
  VertexTable() = default;
  explicit VertexTable(std::vector<std::string> names) {
    for (auto& n : names) intern(n);
  }

  Vertex intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<Vertex>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::optional<Vertex> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Vertex at(const std::string& name) const {
    auto v = find(name);
    if (!v) throw Error(Errc::domain, "unknown vertex '" + name + "'");
    return *v;
  }
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const VertexTable& a, const VertexTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
};

// An elementary n-path: n+1 vertices. The empty path is the (-1)-path e.
class ElementaryPath {
 public:
  ElementaryPath() = default;
  explicit ElementaryPath(std::vector<Vertex> vs) : vs_(std::move(vs)) {}
  ElementaryPath(std::initializer_list<Vertex> vs) : vs_(vs) {}

  int degree() const noexcept { return static_cast<int>(vs_.size()) - 1; }
  std::size_t length() const noexcept { return vs_.size(); }
  bool empty() const noexcept { return vs_.empty(); }
  const std::vector<Vertex>& vertices() const noexcept { return vs_; }
  Vertex operator[](std::size_t i) const { return vs_[i]; }
  Vertex front() const { return vs_.front(); }
  Vertex back() const { return vs_.back(); }

  bool is_regular() const noexcept {
    for (std::size_t i = 1; i < vs_.size(); ++i)
      if (vs_[i] == vs_[i - 1]) return false;
    return true;
  }

  // The path with vertex q removed.
  ElementaryPath face(std::size_t q) const {
    std::vector<Vertex> out;
    out.reserve(vs_.size() - 1);
    for (std::size_t i = 0; i < vs_.size(); ++i)
      if (i != q) out.push_back(vs_[i]);
    return ElementaryPath(std::move(out));
  }

  ElementaryPath subpath(std::size_t first, std::size_t count) const {
    return ElementaryPath(std::vector<Vertex>(vs_.begin() + static_cast<long>(first),
                                              vs_.begin() + static_cast<long>(first + count)));
  }
  ElementaryPath drop_front() const { return subpath(1, vs_.size() - 1); }
  ElementaryPath drop_back() const { return subpath(0, vs_.size() - 1); }

  std::string to_string(const VertexTable& names) const {
    if (vs_.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
      if (i) s += ' ';
      s += names.name(vs_[i]);
    }
    return s;
  }

  friend auto operator<=>(const ElementaryPath&, const ElementaryPath&) = default;
  friend bool operator==(const ElementaryPath&, const ElementaryPath&) = default;

 private:
  std::vector<Vertex> vs_;
};

// A finite linear combination of elementary paths of one degree. Terms are kept
// in lexicographic order and zero coefficients are never stored.
class FormalChain {
 public:
  FormalChain(Field f, int degree) : field_(f), degree_(degree) {}

  static FormalChain of(Field f, const ElementaryPath& p) {
    FormalChain c(f, p.degree());
    c.add(p, Scalar::one(f));
    return c;
  }

  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<ElementaryPath, Scalar>& terms() const noexcept { return terms_; }

  Scalar coefficient(const ElementaryPath& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  void add(const ElementaryPath& p, const Scalar& coeff) {
    if (p.degree() != degree_)
      throw Error(Errc::degree, "path of degree " + std::to_string(p.degree()) + " added to a degree " + std::to_string(degree_) + " chain");
    if (coeff.field() != field_) throw Error(Errc::mode_mismatch, "coefficient over a different field");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(p, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FormalChain& operator+=(const FormalChain& o) {
    check_compatible(o);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  FormalChain& operator-=(const FormalChain& o) {
    check_compatible(o);
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  FormalChain& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }
  friend FormalChain operator+(FormalChain a, const FormalChain& b) { return a += b; }
  friend FormalChain operator-(FormalChain a, const FormalChain& b) { return a -= b; }
  friend FormalChain operator*(const Scalar& s, FormalChain c) { return c *= s; }

  friend bool operator==(const FormalChain& a, const FormalChain& b) {
    return a.field_ == b.field_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  // Drops every non-regular term (projection R ⊕ I -> R).
  FormalChain regular_part() const {
    FormalChain out(field_, degree_);
    for (const auto& [p, c] : terms_)
      if (p.is_regular()) out.terms_.emplace(p, c);
    return out;
  }

  bool is_regular() const {
    for (const auto& [p, c] : terms_)
      if (!p.is_regular()) return false;
    return true;
  }

  // Text form "c·v0 v1 ... vn + c·... - c·...", or "0" for the zero chain.
  std::string to_string(const VertexTable& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      std::string coeff = c.to_string();
      bool neg = c.is_rational() && sgn(c.rational()) < 0;
      if (neg) coeff.erase(0, 1);
      if (first)
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      s += coeff + "·" + p.to_string(names);
      first = false;
    }
    return s;
  }

 private:
  void check_compatible(const FormalChain& o) const {
    if (o.field_ != field_) throw Error(Errc::mode_mismatch, "chains over different fields");
    if (o.degree_ != degree_) throw Error(Errc::degree, "chains of different degree");
  }

  Field field_;
  int degree_;
  std::map<ElementaryPath, Scalar> terms_;
};

// Non-regular boundary: alternating sum of all faces.
inline FormalChain boundary_nr(const FormalChain& c) {
  FormalChain out(c.field(), c.degree() - 1);
  if (c.degree() < 0) return out;
  for (const auto& [p, coeff] : c.terms()) {
    for (std::size_t q = 0; q < p.length(); ++q) {
      Scalar s = q % 2 == 0 ? coeff : -coeff;
      out.add(p.face(q), s);
    }
  }
  return out;
}

// Regular boundary: the non-regular boundary with non-regular faces deleted.
inline FormalChain boundary_reg(const FormalChain& c) {
  if (!c.is_regular()) throw Error(Errc::regularity, "regular boundary applied to a non-regular path");
  FormalChain out(c.field(), c.degree() - 1);
  if (c.degree() < 0) return out;
  for (const auto& [p, coeff] : c.terms()) {
    for (std::size_t q = 0; q < p.length(); ++q) {
      ElementaryPath f = p.face(q);
      if (!f.is_regular()) continue;
      out.add(f, q % 2 == 0 ? coeff : -coeff);
    }
  }
  return out;
}

// Sum of coefficients of a 0-chain (Λ_0 -> K). Not used by homology, which is non-reduced.
inline Scalar augmentation(const FormalChain& c) {
  if (c.degree() != 0) throw Error(Errc::degree, "augmentation is defined on 0-chains");
  Scalar s = Scalar::zero(c.field());
  for (const auto& [p, coeff] : c.terms()) s += coeff;
  return s;
}

enum class BoundaryMode { regular, non_regular };

// A total map from a domain of vertex ids to a codomain of vertex ids.
class VertexMap {
 public:
  VertexMap() = default;
  VertexMap(std::size_t codomain_size, std::vector<Vertex> table) : codomain_size_(codomain_size), table_(std::move(table)) {
    for (auto v : table_)
      if (v >= codomain_size_) throw Error(Errc::domain, "vertex map image outside the codomain");
  }
  static VertexMap identity(std::size_t n) {
    std::vector<Vertex> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Vertex>(i);
    return VertexMap(n, std::move(t));
  }
  static VertexMap constant(std::size_t domain_size, std::size_t codomain_size, Vertex target) {
    return VertexMap(codomain_size, std::vector<Vertex>(domain_size, target));
  }

  std::size_t domain_size() const noexcept { return table_.size(); }
  std::size_t codomain_size() const noexcept { return codomain_size_; }
  const std::vector<Vertex>& table() const noexcept { return table_; }

  Vertex operator()(Vertex v) const {
    if (v >= table_.size()) throw Error(Errc::domain, "vertex " + std::to_string(v) + " outside the map's domain");
    return table_[v];
  }
  ElementaryPath operator()(const ElementaryPath& p) const {
    std::vector<Vertex> out;
    out.reserve(p.length());
    for (auto v : p.vertices()) out.push_back((*this)(v));
    return ElementaryPath(std::move(out));
  }

  // (g ∘ f)(v) = g(f(v)); `*this` is f.
  VertexMap then(const VertexMap& g) const {
    if (g.domain_size() != codomain_size_) throw Error(Errc::domain, "composing maps with mismatched domain/codomain");
    std::vector<Vertex> t;
    t.reserve(table_.size());
    for (auto v : table_) t.push_back(g(v));
    return VertexMap(g.codomain_size(), std::move(t));
  }

  bool is_identity() const {
    if (codomain_size_ != table_.size()) return false;
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (table_[i] != i) return false;
    return true;
  }

  friend bool operator==(const VertexMap&, const VertexMap&) = default;

 private:
  std::size_t codomain_size_ = 0;
  std::vector<Vertex> table_;
};

// f_* on chains. In regular mode, terms whose image is non-regular map to 0.
inline FormalChain induced_map(const VertexMap& f, const FormalChain& c, BoundaryMode mode) {
  FormalChain out(c.field(), c.degree());
  for (const auto& [p, coeff] : c.terms()) {
    ElementaryPath img = f(p);
    if (mode == BoundaryMode::regular && !img.is_regular()) continue;
    out.add(img, coeff);
  }
  return out;
}

inline FormalChain boundary(const FormalChain& c, BoundaryMode mode) {
  return mode == BoundaryMode::regular ? boundary_reg(c) : boundary_nr(c);
}

}  // namespace pph
