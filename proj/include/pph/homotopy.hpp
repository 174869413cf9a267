#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/filtration.hpp"
#include "pph/path.hpp"
#include "pph/scalar.hpp"

namespace pph {

// f_0, ..., f_m; consecutive maps are one-step homotopic once verified.
using HomotopyChain = std::vector<VertexMap>;

// ---------------------------------------------------------------------------
// Digraphs

// Every edge i -> j goes to f(i) ⇒̄ f(j).
inline bool is_digraph_map(const VertexMap& f, const Digraph& g, const Digraph& h) {
  if (f.domain_size() != g.vertex_count() || f.codomain_size() != h.vertex_count()) return false;
  for (const auto& [a, b] : g.edges())
    if (!h.equal_or_edge(f(a), f(b))) return false;
  return true;
}

// Box product: (x, y) -> (x', y') iff x = x' and y -> y', or y = y' and x -> x'.
// Vertex (x, y) has id x * |Y| + y and name "(x,y)".
inline Digraph digraph_product(const Digraph& gx, const Digraph& gy) {
  const auto ny = static_cast<Vertex>(gy.vertex_count());
  VertexTable names;
  for (Vertex x = 0; x < gx.vertex_count(); ++x)
    for (Vertex y = 0; y < ny; ++y) names.intern("(" + gx.names().name(x) + "," + gy.names().name(y) + ")");
  std::set<Edge> edges;
  for (Vertex x = 0; x < gx.vertex_count(); ++x)
    for (const auto& [y, y2] : gy.edges()) edges.insert({x * ny + y, x * ny + y2});
  for (const auto& [x, x2] : gx.edges())
    for (Vertex y = 0; y < ny; ++y) edges.insert({x * ny + y, x2 * ny + y});
  return Digraph(std::move(names), std::move(edges));
}

// The line digraph 0 -> 1.
inline Digraph interval_digraph() { return Digraph(VertexTable({"0", "1"}), {{0, 1}}); }

// f ≃₁ g: f(x) ⇒̄ g(x) for all x, or g(x) ⇒̄ f(x) for all x.
inline bool one_step_homotopic_digraph(const VertexMap& f, const VertexMap& g, const Digraph& src, const Digraph& dst) {
  if (!is_digraph_map(f, src, dst) || !is_digraph_map(g, src, dst))
    throw Error(Errc::morphism, "one-step homotopy test on maps that are not digraph maps");
  bool forward = true, backward = true;
  for (Vertex x = 0; x < src.vertex_count(); ++x) {
    forward = forward && dst.equal_or_edge(f(x), g(x));
    backward = backward && dst.equal_or_edge(g(x), f(x));
  }
  return forward || backward;
}

// max |w_H(φx, φx') - w_G(x, x')| over edges x -> x' whose image is an edge; 0 if none.
inline Rational dis_digraph(const VertexMap& f, const WeightedDigraph& g, const WeightedDigraph& h) {
  Rational best = 0;
  for (const auto& [e, w] : g.weights()) {
    Vertex a = f(e.first), b = f(e.second);
    if (!h.graph().has_edge(a, b)) continue;
    best = std::max(best, Rational(abs(h.weight(a, b) - w)));
  }
  return best;
}

// Largest weight of an edge f(x) -> g(x) or g(x) -> f(x) in h; 0 if none.
inline Rational cod_digraph(const VertexMap& f, const VertexMap& g, const WeightedDigraph& h) {
  if (f.domain_size() != g.domain_size()) throw Error(Errc::domain, "codistortion of maps with different domains");
  Rational best = 0;
  for (Vertex x = 0; x < f.domain_size(); ++x) {
    Vertex a = f(x), b = g(x);
    if (h.graph().has_edge(a, b)) best = std::max(best, h.weight(a, b));
    if (h.graph().has_edge(b, a)) best = std::max(best, h.weight(b, a));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Path complexes

// Every allowed path goes to an allowed path or to a non-regular one.
inline bool is_weak_morphism(const VertexMap& f, const PathComplex& p, const PathComplex& s) {
  if (f.domain_size() != p.vertex_count() || f.codomain_size() != s.vertex_count()) return false;
  for (int n = 0; n <= p.top_degree(); ++n)
    for (const auto& path : p.paths(n)) {
      ElementaryPath img = f(path);
      if (img.is_regular() && !s.contains(img)) return false;
    }
  return true;
}

// P × I on V ∪ V': P, its primed copy, and every i_0..i_k i_k'..i_n' for
// i_0..i_n in P, then closed under truncation. Primed vertex v has id v + |V|.
inline PathComplex product_with_I(const PathComplex& p) {
  const auto n = static_cast<Vertex>(p.vertex_count());
  VertexTable names = p.names();
  std::set<std::string> taken(names.names().begin(), names.names().end());
  for (Vertex v = 0; v < n; ++v) {
    std::string primed = p.names().name(v) + "'";
    while (taken.contains(primed)) primed += "'";
    taken.insert(primed);
    names.intern(primed);
  }
  std::vector<ElementaryPath> gen;
  for (const auto& path : p.all_paths()) {
    const auto& vs = path.vertices();
    gen.push_back(path);
    std::vector<Vertex> primed;
    for (auto v : vs) primed.push_back(v + n);
    gen.emplace_back(primed);
    for (std::size_t k = 0; k < vs.size(); ++k) {
      std::vector<Vertex> hat(vs.begin(), vs.begin() + static_cast<long>(k + 1));
      for (std::size_t j = k; j < vs.size(); ++j) hat.push_back(vs[j] + n);
      gen.emplace_back(std::move(hat));
    }
  }
  auto closed = truncation_closure(names, gen);
  // Closure drops unused vertices; every vertex of P and P' occurs, so ids are unchanged.
  return closed;
}

// Vertex map on V ∪ V' equal to f on V and g on V'.
inline VertexMap cylinder_map(const VertexMap& f, const VertexMap& g) {
  std::vector<Vertex> t = f.table();
  t.insert(t.end(), g.table().begin(), g.table().end());
  return VertexMap(f.codomain_size(), std::move(t));
}

// Certifies a weak one-step homotopy between f and g by testing the canonical
// map P × I -> S in both orders. A false result means "not certified".
inline bool one_step_weak_homotopic(const VertexMap& f, const VertexMap& g, const PathComplex& p, const PathComplex& s) {
  if (!is_weak_morphism(f, p, s) || !is_weak_morphism(g, p, s))
    throw Error(Errc::morphism, "weak homotopy test on maps that are not weak morphisms");
  auto cyl = product_with_I(p);
  return is_weak_morphism(cylinder_map(f, g), cyl, s) || is_weak_morphism(cylinder_map(g, f), cyl, s);
}

// max |len(f(e)) - len(e)| over e in P_n with f(e) regular; dis_0 = 0.
inline Rational dis_pc(const VertexMap& f, int n, const WeightedPathComplex& p, const WeightedPathComplex& s) {
  if (n < 0) throw Error(Errc::degree, "distortion degree must be non-negative");
  Rational best = 0;
  if (n == 0) return best;
  for (const auto& e : p.complex().paths(n)) {
    ElementaryPath img = f(e);
    if (!img.is_regular()) continue;
    best = std::max(best, Rational(abs(path_length(img, s.weights()) - path_length(e, p.weights()))));
  }
  return best;
}

// Largest weight of an allowed 1-path f(x) g(x) or g(x) f(x) in s; 0 if none.
inline Rational cod_pc(const VertexMap& f, const VertexMap& g, const WeightedPathComplex& s) {
  if (f.domain_size() != g.domain_size()) throw Error(Errc::domain, "codistortion of maps with different domains");
  Rational best = 0;
  for (Vertex x = 0; x < f.domain_size(); ++x) {
    Vertex a = f(x), b = g(x);
    if (a == b) continue;
    if (auto it = s.weights().find({a, b}); it != s.weights().end()) best = std::max(best, it->second);
    if (auto it = s.weights().find({b, a}); it != s.weights().end()) best = std::max(best, it->second);
  }
  return best;
}

// The grounded truncation together with the restricted weights.
inline WeightedPathComplex weighted_grounded_truncation(const WeightedPathComplex& w, int deg) {
  PathComplex bar = grounded_truncation(w.complex(), deg);
  std::map<Edge, Rational> weights;
  for (const auto& e : bar.paths(1)) {
    const auto& names = bar.names();
    Vertex a = w.names().at(names.name(e[0])), b = w.names().at(names.name(e[1]));
    weights.emplace(Edge{e[0], e[1]}, w.weight(a, b));
  }
  return WeightedPathComplex(std::move(bar), std::move(weights));
}

// ---------------------------------------------------------------------------
// Stability bounds

// The individual terms of a stability bound, for reporting.
struct BoundTerms {
  Rational dis_phi = 0;
  Rational dis_psi = 0;
  Rational half_dis_f = 0;  // ½ max over interior f_k (digraph bound only)
  Rational half_dis_g = 0;
  Rational half_f = 0;      // ½ max over links of the f chain (cod, or dis+cod for complexes)
  Rational half_g = 0;
  Rational eta = 0;
};

namespace detail {

// Empty chain stands for the single map start (which must then be the identity).
inline HomotopyChain normalised_chain(const HomotopyChain& chain, const VertexMap& start) {
  return chain.empty() ? HomotopyChain{start} : chain;
}

template <class IsMorphism, class IsLink>
void verify_chain(const HomotopyChain& chain, const VertexMap& start, const std::string& label, IsMorphism is_morphism, IsLink is_link) {
  for (std::size_t k = 0; k < chain.size(); ++k)
    if (!is_morphism(chain[k]))
      throw Error(Errc::morphism, label + " chain map " + std::to_string(k) + " is not a morphism");
  if (!(chain.front() == start))
    throw Error(Errc::chain_endpoint, label + " chain does not start at the composite of the equivalence maps");
  if (!chain.back().is_identity()) throw Error(Errc::chain_endpoint, label + " chain does not end at the identity");
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (!is_link(chain[k - 1], chain[k]))
      throw Error(Errc::homotopy_verification,
                  label + " chain link " + std::to_string(k) + " (maps " + std::to_string(k - 1) + " -> " + std::to_string(k) + ") is not a one-step homotopy");
}

}  // namespace detail

// Bound on d_B(D_p(G), D_p(H)) under the edge filtration, given a verified
// homotopy equivalence φ: G -> H, ψ: H -> G with ψφ = f_0 ≃₁ ... ≃₁ f_m = id and
// φψ = g_0 ≃₁ ... ≃₁ g_m' = id. Interior dis terms range over k = 1..m-1 and
// cod terms over k = 1..m.
inline BoundTerms stability_bound_digraph_terms(const VertexMap& phi, const VertexMap& psi, const HomotopyChain& fchain_in,
                                                const HomotopyChain& gchain_in, const WeightedDigraph& g, const WeightedDigraph& h) {
  const auto& G = g.graph();
  const auto& H = h.graph();
  if (!is_digraph_map(phi, G, H)) throw Error(Errc::morphism, "phi is not a digraph map G -> H");
  if (!is_digraph_map(psi, H, G)) throw Error(Errc::morphism, "psi is not a digraph map H -> G");
  auto fchain = detail::normalised_chain(fchain_in, phi.then(psi));
  auto gchain = detail::normalised_chain(gchain_in, psi.then(phi));
  detail::verify_chain(
      fchain, phi.then(psi), "f", [&](const VertexMap& m) { return is_digraph_map(m, G, G); },
      [&](const VertexMap& a, const VertexMap& b) { return one_step_homotopic_digraph(a, b, G, G); });
  detail::verify_chain(
      gchain, psi.then(phi), "g", [&](const VertexMap& m) { return is_digraph_map(m, H, H); },
      [&](const VertexMap& a, const VertexMap& b) { return one_step_homotopic_digraph(a, b, H, H); });

  BoundTerms t;
  t.dis_phi = dis_digraph(phi, g, h);
  t.dis_psi = dis_digraph(psi, h, g);
  const Rational half(1, 2);
  for (std::size_t k = 1; k + 1 < fchain.size(); ++k) t.half_dis_f = std::max(t.half_dis_f, Rational(half * dis_digraph(fchain[k], g, g)));
  for (std::size_t k = 1; k + 1 < gchain.size(); ++k) t.half_dis_g = std::max(t.half_dis_g, Rational(half * dis_digraph(gchain[k], h, h)));
  for (std::size_t k = 1; k < fchain.size(); ++k) t.half_f = std::max(t.half_f, Rational(half * cod_digraph(fchain[k - 1], fchain[k], g)));
  for (std::size_t k = 1; k < gchain.size(); ++k) t.half_g = std::max(t.half_g, Rational(half * cod_digraph(gchain[k - 1], gchain[k], h)));
  t.eta = std::max({t.dis_phi, t.dis_psi, t.half_dis_f, t.half_dis_g, t.half_f, t.half_g});
  return t;
}

inline Rational stability_bound_digraph(const VertexMap& phi, const VertexMap& psi, const HomotopyChain& fchain, const HomotopyChain& gchain,
                                        const WeightedDigraph& g, const WeightedDigraph& h) {
  return stability_bound_digraph_terms(phi, psi, fchain, gchain, g, h).eta;
}

// Bound on d_B(D_p(P), D_p(S)) under the path sublevel filtration. All maps act
// on the grounded truncations P̄ = pbar, S̄ = sbar (see weighted_grounded_truncation),
// and chain links are certified with one_step_weak_homotopic.
inline BoundTerms stability_bound_pc_terms(const VertexMap& phi, const VertexMap& psi, const HomotopyChain& fchain_in,
                                           const HomotopyChain& gchain_in, const WeightedPathComplex& pbar, const WeightedPathComplex& sbar,
                                           int deg) {
  if (deg < 0) throw Error(Errc::degree, "degree must be non-negative");
  const auto& P = pbar.complex();
  const auto& S = sbar.complex();
  if (!is_weak_morphism(phi, P, S)) throw Error(Errc::morphism, "phi is not a weak morphism of the grounded truncations");
  if (!is_weak_morphism(psi, S, P)) throw Error(Errc::morphism, "psi is not a weak morphism of the grounded truncations");
  auto fchain = detail::normalised_chain(fchain_in, phi.then(psi));
  auto gchain = detail::normalised_chain(gchain_in, psi.then(phi));
  detail::verify_chain(
      fchain, phi.then(psi), "f", [&](const VertexMap& m) { return is_weak_morphism(m, P, P); },
      [&](const VertexMap& a, const VertexMap& b) { return one_step_weak_homotopic(a, b, P, P); });
  detail::verify_chain(
      gchain, psi.then(phi), "g", [&](const VertexMap& m) { return is_weak_morphism(m, S, S); },
      [&](const VertexMap& a, const VertexMap& b) { return one_step_weak_homotopic(a, b, S, S); });

  BoundTerms t;
  for (int i = 1; i <= deg + 1; ++i) {
    t.dis_phi = std::max(t.dis_phi, dis_pc(phi, i, pbar, sbar));
    t.dis_psi = std::max(t.dis_psi, dis_pc(psi, i, sbar, pbar));
  }
  const Rational half(1, 2);
  auto link_term = [&](const HomotopyChain& chain, const WeightedPathComplex& w) {
    Rational best = 0;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      Rational inner = 0;
      for (int l = 0; l <= deg; ++l)
        inner = std::max(inner, Rational(dis_pc(chain[k - 1], l, w, w) + dis_pc(chain[k], deg - l, w, w)));
      best = std::max(best, Rational(half * (inner + cod_pc(chain[k - 1], chain[k], w))));
    }
    return best;
  };
  t.half_f = link_term(fchain, pbar);
  t.half_g = link_term(gchain, sbar);
  t.eta = std::max({t.dis_phi, t.dis_psi, t.half_f, t.half_g});
  return t;
}

inline Rational stability_bound_pc(const VertexMap& phi, const VertexMap& psi, const HomotopyChain& fchain, const HomotopyChain& gchain,
                                   const WeightedPathComplex& pbar, const WeightedPathComplex& sbar, int deg) {
  return stability_bound_pc_terms(phi, psi, fchain, gchain, pbar, sbar, deg).eta;
}

// Right-hand side of the identity-map corollaries: max |Δw| over edges.
inline Rational max_weight_change(const WeightedDigraph& a, const WeightedDigraph& b) {
  if (!(a.graph() == b.graph())) throw Error(Errc::domain, "weight comparison needs identical underlying digraphs");
  Rational best = 0;
  for (const auto& [e, w] : a.weights()) best = std::max(best, Rational(abs(w - b.weights().at(e))));
  return best;
}

// max over allowed paths e of |len_a(e) - len_b(e)|, paths up to max_dim (all when < 0).
inline Rational max_length_change(const WeightedPathComplex& a, const WeightedPathComplex& b, int max_dim = -1) {
  if (!(a.complex() == b.complex())) throw Error(Errc::domain, "length comparison needs identical underlying complexes");
  Rational best = 0;
  const auto& c = a.complex();
  int top = max_dim < 0 ? c.top_degree() : std::min(max_dim, c.top_degree());
  for (int n = 1; n <= top; ++n)
    for (const auto& e : c.paths(n)) best = std::max(best, Rational(abs(path_length(e, a.weights()) - path_length(e, b.weights()))));
  return best;
}

}  // namespace pph
