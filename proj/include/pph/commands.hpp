#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "pph/bottleneck.hpp"
#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/filtration.hpp"
#include "pph/homology.hpp"
#include "pph/homotopy.hpp"
#include "pph/io.hpp"
#include "pph/persistence.hpp"
#include "pph/plot.hpp"

// Implementations behind the `pph` command-line tool. Each command returns the
// text it would print; errors are thrown as pph::Error.
namespace pph::cli {

enum class FiltrationKind { edge, path };

inline FiltrationKind parse_filtration(const std::string& s) {
  if (s == "edge") return FiltrationKind::edge;
  if (s == "path") return FiltrationKind::path;
  throw Error(Errc::usage, "--filtration must be 'edge' or 'path'");
}

struct RunConfig {
  std::vector<std::string> inputs;
  FiltrationKind filtration = FiltrationKind::edge;
  int dim = 0;
  Field field = Field::rational();
  std::string out;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  Rational eps = 0;
  bool witness = false;
  bool check = false;
  std::optional<Rational> delta;
  // bound
  std::string phi, psi;
  std::vector<std::string> fchain, gchain;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (dim < 0) throw Error(Errc::usage, "--dim must be non-negative");
    if (eps < 0) throw Error(Errc::usage, "--eps must be non-negative");
    if (trials == 0) throw Error(Errc::usage, "--trials must be at least 1");
  }
};

using WeightedInput = std::variant<WeightedDigraph, WeightedPathComplex>;

inline bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Loads a .wdg or .wpc file and checks it matches the filtration kind.
inline WeightedInput load_input(const std::string& path, FiltrationKind kind) {
  if (has_suffix(path, ".wdg")) {
    if (kind != FiltrationKind::edge) throw Error(Errc::usage, "'" + path + "' is a weighted digraph; use --filtration edge");
    return io::parse_wdg(io::read_file(path), path);
  }
  if (has_suffix(path, ".wpc")) {
    if (kind != FiltrationKind::path) throw Error(Errc::usage, "'" + path + "' is a weighted path complex; use --filtration path");
    return io::parse_wpc(io::read_file(path), path);
  }
  throw Error(Errc::usage, "input '" + path + "' must end in .wdg or .wpc");
}

// D_p of a weighted digraph under the edge filtration (P(G^δ) up to degree p+1).
inline PersistenceDiagram compute_diagram(const WeightedDigraph& g, int p, const Field& f = Field::rational()) {
  return persistence_diagram(edge_filtration(g, p + 1), p, f);
}

// D_p of a weighted path complex under the path sublevel filtration.
inline PersistenceDiagram compute_diagram(const WeightedPathComplex& w, int p, const Field& f = Field::rational()) {
  return persistence_diagram(path_filtration(w, p + 1), p, f);
}

inline PersistenceDiagram compute_diagram(const WeightedInput& in, int p, const Field& f = Field::rational()) {
  return std::visit([&](const auto& x) { return compute_diagram(x, p, f); }, in);
}

inline std::string cmd_diagram(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.inputs.size() != 1) throw Error(Errc::usage, "diagram takes exactly one input");
  auto in = load_input(cfg.inputs[0], cfg.filtration);
  return io::format_dgm(compute_diagram(in, cfg.dim, cfg.field), cfg.field);
}

// dim H_n for n = 0..dim of the complex at scale delta (the full complex if unset).
inline std::string cmd_homology(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.inputs.size() != 1) throw Error(Errc::usage, "homology takes exactly one input");
  auto in = load_input(cfg.inputs[0], cfg.filtration);
  PathComplex complex = std::visit(
      [&](const auto& x) -> PathComplex {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, WeightedDigraph>) {
          const auto& g = cfg.delta ? edge_sublevel(x, *cfg.delta) : x.graph();
          return path_complex_from_digraph(g, cfg.dim + 1);
        } else {
          return cfg.delta ? path_sublevel(x, *cfg.delta) : x.complex();
        }
      },
      in);
  auto dims = homology_dims(complex, cfg.dim, cfg.field);
  std::ostringstream out;
  for (std::size_t n = 0; n < dims.size(); ++n) out << "H" << n << " " << dims[n] << "\n";
  return out.str();
}

inline std::string cmd_bottleneck(const std::string& text1, const std::string& text2, bool witness, const std::string& name1 = "<dgm>",
                                  const std::string& name2 = "<dgm>") {
  auto a = io::parse_dgm(text1, name1);
  auto b = io::parse_dgm(text2, name2);
  if (a.diagram.degree() != b.diagram.degree())
    throw Error(Errc::degree, "diagrams have different degrees (" + std::to_string(a.diagram.degree()) + " vs " +
                                  std::to_string(b.diagram.degree()) + ")");
  auto r = bottleneck(a.diagram, b.diagram);
  std::ostringstream out;
  out << r.distance.to_string() << "\n";
  if (witness) {
    std::vector<bool> used1(a.diagram.size()), used2(b.diagram.size());
    auto show = [](const DiagramPoint& p) { return "(" + format_rational(p.birth) + ", " + p.death.to_string() + ")"; };
    for (auto [i, j] : r.witness.pairs) {
      used1[i] = used2[j] = true;
      out << "match " << show(a.diagram.points()[i]) << " " << show(b.diagram.points()[j]) << "\n";
    }
    for (std::size_t i = 0; i < used1.size(); ++i)
      if (!used1[i]) out << "diagonal 1 " << show(a.diagram.points()[i]) << "\n";
    for (std::size_t j = 0; j < used2.size(); ++j)
      if (!used2[j]) out << "diagonal 2 " << show(b.diagram.points()[j]) << "\n";
  }
  return out.str();
}

struct BoundReport {
  BoundTerms terms;
  std::optional<Extended> bottleneck;  // set when checked
  bool holds = true;
  std::string text;
};

// Evaluates the stability bound for a supplied homotopy equivalence; with
// check, also computes both diagrams and compares d_B against it.
inline BoundReport cmd_bound(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.inputs.size() != 2) throw Error(Errc::usage, "bound takes two inputs");
  if (cfg.phi.empty() || cfg.psi.empty()) throw Error(Errc::usage, "bound needs --phi and --psi");
  auto first = load_input(cfg.inputs[0], cfg.filtration);
  auto second = load_input(cfg.inputs[1], cfg.filtration);
  BoundReport r;
  auto load_chain = [](const std::vector<std::string>& files, const VertexTable& names) {
    HomotopyChain chain;
    for (const auto& f : files) chain.push_back(io::parse_vmap(io::read_file(f), names, names, f));
    return chain;
  };
  if (cfg.filtration == FiltrationKind::edge) {
    const auto& g = std::get<WeightedDigraph>(first);
    const auto& h = std::get<WeightedDigraph>(second);
    auto phi = io::parse_vmap(io::read_file(cfg.phi), g.names(), h.names(), cfg.phi);
    auto psi = io::parse_vmap(io::read_file(cfg.psi), h.names(), g.names(), cfg.psi);
    r.terms = stability_bound_digraph_terms(phi, psi, load_chain(cfg.fchain, g.names()), load_chain(cfg.gchain, h.names()), g, h);
  } else {
    auto pbar = weighted_grounded_truncation(std::get<WeightedPathComplex>(first), cfg.dim);
    auto sbar = weighted_grounded_truncation(std::get<WeightedPathComplex>(second), cfg.dim);
    auto phi = io::parse_vmap(io::read_file(cfg.phi), pbar.names(), sbar.names(), cfg.phi);
    auto psi = io::parse_vmap(io::read_file(cfg.psi), sbar.names(), pbar.names(), cfg.psi);
    r.terms = stability_bound_pc_terms(phi, psi, load_chain(cfg.fchain, pbar.names()), load_chain(cfg.gchain, sbar.names()), pbar, sbar,
                                       cfg.dim);
  }
  std::ostringstream out;
  out << "eta " << format_rational(r.terms.eta) << "\n";
  out << "terms dis_phi=" << format_rational(r.terms.dis_phi) << " dis_psi=" << format_rational(r.terms.dis_psi)
      << " half_dis_f=" << format_rational(r.terms.half_dis_f) << " half_dis_g=" << format_rational(r.terms.half_dis_g)
      << " half_link_f=" << format_rational(r.terms.half_f) << " half_link_g=" << format_rational(r.terms.half_g) << "\n";
  if (cfg.check) {
    auto d1 = compute_diagram(first, cfg.dim, cfg.field);
    auto d2 = compute_diagram(second, cfg.dim, cfg.field);
    r.bottleneck = bottleneck_distance(d1, d2);
    r.holds = *r.bottleneck <= Extended(r.terms.eta);
    out << "d_B " << r.bottleneck->to_string() << "\n";
    out << (r.holds ? "check ok d_B <= eta" : "check FAILED d_B > eta") << "\n";
  }
  r.text = out.str();
  return r;
}

// ---------------------------------------------------------------------------
// Perturbation fuzzing

// SplitMix64; per-trial seeds are splitmix(seed + trial), and each trial draws
// from std::mt19937_64 (whose output sequence is fixed by the standard).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Each weight moves by eps * k / 1000 for k uniform in [-1000, 1000]; a result
// <= 0 is clamped to w / 2 (still within eps of w). The perturbed weights are
// written out and re-parsed as exact decimals.
inline std::map<Edge, Rational> perturb_weights(const std::map<Edge, Rational>& w, const Rational& eps, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  std::map<Edge, Rational> out;
  for (const auto& [e, x] : w) {
    auto k = static_cast<long>(rng() % 2001) - 1000;
    Rational step(k, 1000);
    step.canonicalize();
    Rational y = x + eps * step;
    if (sgn(y) <= 0) y = x / 2;
    out.emplace(e, parse_rational(format_rational(y)));
  }
  return out;
}

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Extended distance;
  Rational bound;
  bool violation = false;
};

struct PerturbReport {
  std::vector<TrialResult> trials;
  Rational max_ratio = 0;
  std::size_t violations = 0;
  std::string text;
};

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Runs `trials` weight perturbations of `base` within ±eps and checks
// d_B(D_p(base), D_p(perturbed)) <= the identity-map corollary bound.
inline PerturbReport run_perturbation(const WeightedInput& base, int dim, const Rational& eps, std::size_t trials, std::uint64_t seed,
                                      const Field& f = Field::rational(), unsigned threads = 0) {
  if (eps < 0) throw Error(Errc::usage, "eps must be non-negative");
  const auto base_diagram = compute_diagram(base, dim, f);
  PerturbReport r;
  r.trials.resize(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    TrialResult& tr = r.trials[t];
    tr.trial = t;
    tr.seed = splitmix64(seed + t);
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          T moved = x.with_weights(perturb_weights(x.weights(), eps, tr.seed));
          if constexpr (std::is_same_v<T, WeightedDigraph>) {
            moved = io::parse_wdg(io::format_wdg(moved));
            tr.bound = max_weight_change(x, moved);
          } else {
            moved = io::parse_wpc(io::format_wpc(moved));
            tr.bound = max_length_change(x, moved);
          }
          tr.distance = bottleneck_distance(base_diagram, compute_diagram(moved, dim, f));
        },
        base);
    tr.violation = !(tr.distance <= Extended(tr.bound));
  });
  std::ostringstream out;
  for (const auto& tr : r.trials) {
    if (tr.violation) ++r.violations;
    if (!tr.distance.is_infinite() && sgn(tr.bound) > 0) r.max_ratio = std::max(r.max_ratio, Rational(tr.distance.value() / tr.bound));
    out << "trial " << tr.trial << " seed=" << tr.seed << " d_B=" << tr.distance.to_string() << " bound=" << format_rational(tr.bound)
        << (tr.violation ? " VIOLATION" : "") << "\n";
  }
  out << "summary trials=" << trials << " violations=" << r.violations << " max_ratio=" << format_rational(r.max_ratio) << "\n";
  r.text = out.str();
  return r;
}

inline PerturbReport cmd_perturb(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.inputs.size() != 1) throw Error(Errc::usage, "perturb takes exactly one input");
  return run_perturbation(load_input(cfg.inputs[0], cfg.filtration), cfg.dim, cfg.eps, cfg.trials, cfg.seed, cfg.field, cfg.threads);
}

inline std::string cmd_plot(const std::string& dgm_text, const std::string& name = "<dgm>") {
  return diagram_svg(io::parse_dgm(dgm_text, name).diagram);
}

}  // namespace pph::cli
