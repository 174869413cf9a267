// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace pph;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " (" << secs << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s" << (in_time ? "" : " EXCEEDED");
  line << ")";
  std::cout << line.str() << std::endl;
}

// Counts mismatches and remembers the first one.
struct Tally {
  std::size_t checks = 0, bad = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && bad++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (bad == 0) return {true, summary + ", " + std::to_string(checks) + " checks"};
    return {false, std::to_string(bad) + "/" + std::to_string(checks) + " mismatches; first: " + first};
  }
};

Outcome boundary_laws() {
  gen::Rng rng(1001);
  Tally t;
  for (const Field& f : {Field::rational(), Field::prime(3)})
    for (int k = 0; k < 1000; ++k) {
      int d = gen::uniform(rng, 0, 5);
      auto nr = gen::random_chain(rng, f, 5, d, false);
      t.expect(boundary_nr(boundary_nr(nr)).is_zero(), "∂nr∂nr != 0 on " + nr.to_string(gen::names(5)));
      auto reg = gen::random_chain(rng, f, 5, d, true);
      t.expect(boundary_reg(boundary_reg(reg)).is_zero(), "∂∂ != 0 on " + reg.to_string(gen::names(5)));
    }
  return t.outcome("1000 chains of degree <= 5 per field (rat, F3), both boundaries");
}

Outcome omega_homology_oracle() {
  gen::Rng rng(1002);
  Tally t;
  for (int k = 0; k < 200; ++k) {
    int n = gen::uniform(rng, 1, 8);
    auto g = gen::random_digraph(rng, n, 0.3);
    auto p = path_complex_from_digraph(g, 3);
    auto oc = oracle::walks(n, gen::int_edges(g), 3);
    auto dims = homology_dims(p, 2);
    for (int d = 0; d <= 2; ++d) {
      auto tag = "digraph " + std::to_string(k) + " degree " + std::to_string(d);
      t.expect(omega_basis(p, d).dim() == oracle::omega(oc, d).size(), tag + " dim Ω");
      t.expect(dims[static_cast<std::size_t>(d)] == oracle::homology(oc, d), tag + " dim H");
    }
  }
  return t.outcome("200 digraphs (<= 8 vertices, p = 0.3), degrees 0..2");
}

Outcome curated_values() {
  auto walks = [](int n, std::set<Edge> e) { return path_complex_from_digraph(Digraph(gen::names(n), std::move(e)), 3); };
  auto owalks = [](int n, std::set<std::pair<int, int>> e) { return oracle::walks(n, e, 3); };
  Tally t;
  auto tri = walks(3, {{0, 1}, {1, 2}, {0, 2}});
  auto otri = owalks(3, {{0, 1}, {1, 2}, {0, 2}});
  t.expect(oracle::homology(otri, 1) == 0 && oracle::omega(otri, 2).size() == 1, "oracle triangle");
  t.expect(homology_dims(tri, 1)[1] == 0 && omega_basis(tri, 2).dim() == 1, "triangle H1 = 0, dim Ω2 = 1");
  auto sq = walks(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto osq = owalks(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  t.expect(oracle::homology(osq, 1) == 0 && oracle::omega(osq, 2).size() == 1, "oracle square");
  auto o2 = omega_basis(sq, 2);
  bool square_ok = o2.dim() == 1 && homology_dims(sq, 1)[1] == 0;
  if (square_ok) {
    auto c = o2.chain(0);
    c *= c.coefficient({0, 1, 3}).inverse();
    square_ok = c.to_string(sq.names()) == "1·v0 v1 v3 - 1·v0 v2 v3";
  }
  t.expect(square_ok, "square H1 = 0, Ω2 = span{e_013 - e_023}");
  auto cyc = walks(3, {{0, 1}, {1, 2}, {2, 0}});
  t.expect(oracle::homology(owalks(3, {{0, 1}, {1, 2}, {2, 0}}), 1) == 1, "oracle 3-cycle");
  t.expect(homology_dims(cyc, 1)[1] == 1, "3-cycle H1 = 1");
  for (int k = 1; k <= 6; ++k) {
    t.expect(oracle::homology(owalks(k, {}), 0) == static_cast<std::size_t>(k), "oracle edgeless");
    t.expect(homology_dims(walks(k, {}), 0)[0] == static_cast<std::size_t>(k), "edgeless k = " + std::to_string(k));
  }
  return t.outcome("triangle, square, 3-cycle, edgeless k = 1..6");
}

Outcome functoriality() {
  gen::Rng rng(1004);
  Tally t;
  // Edges of the source compatible with every map in `maps` (as digraph maps into `target`).
  auto compatible_edges = [&](int n, const Digraph& target, const std::vector<VertexMap>& maps, double p) {
    std::set<Edge> e;
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
      for (Vertex b = 0; b < static_cast<Vertex>(n); ++b) {
        if (a == b || !gen::coin(rng, p)) continue;
        bool ok = true;
        for (const auto& m : maps) ok = ok && target.equal_or_edge(m(a), m(b));
        if (ok) e.insert({a, b});
      }
    return Digraph(gen::names(n), e);
  };
  for (int k = 0; k < 100; ++k) {
    int nk = gen::uniform(rng, 2, 5), nh = gen::uniform(rng, 2, 5), ng = gen::uniform(rng, 2, 5);
    auto K = gen::random_digraph(rng, nk, 0.5);
    auto g = gen::random_map(rng, static_cast<std::size_t>(nh), static_cast<std::size_t>(nk));
    auto H = compatible_edges(nh, K, {g}, 0.7);
    auto f = gen::random_map(rng, static_cast<std::size_t>(ng), static_cast<std::size_t>(nh));
    auto G = compatible_edges(ng, H, {f}, 0.7);
    if (!is_digraph_map(f, G, H) || !is_digraph_map(g, H, K)) {
      t.expect(false, "generator produced a non-map");
      continue;
    }
    ChainComplexSnapshot cg(path_complex_from_digraph(G, 2), 2), ch(path_complex_from_digraph(H, 2), 2), ck(path_complex_from_digraph(K, 2), 2);
    auto mf = induced_chain_map(f, cg, ch), mg = induced_chain_map(g, ch, ck), mgf = induced_chain_map(f.then(g), cg, ck);
    for (int d = 0; d <= 1; ++d)
      t.expect(homology_map(mgf, cg, ck, d) == homology_map(mg, ch, ck, d) * homology_map(mf, cg, ch, d),
               "pair " + std::to_string(k) + " degree " + std::to_string(d));
  }
  for (int k = 0; k < 50; ++k) {
    int nh = gen::uniform(rng, 2, 5), ng = gen::uniform(rng, 2, 5);
    auto H = gen::random_digraph(rng, nh, 0.5);
    auto f = gen::random_map(rng, static_cast<std::size_t>(ng), static_cast<std::size_t>(nh));
    // g(x) is f(x) or an out-neighbour of f(x).
    auto adj = H.out_neighbours();
    std::vector<Vertex> gt;
    for (Vertex x = 0; x < static_cast<Vertex>(ng); ++x) {
      const auto& nb = adj[f(x)];
      int c = gen::uniform(rng, 0, static_cast<int>(nb.size()));
      gt.push_back(c == 0 ? f(x) : nb[static_cast<std::size_t>(c - 1)]);
    }
    VertexMap g(static_cast<std::size_t>(nh), gt);
    auto G = compatible_edges(ng, H, {f, g}, 0.7);
    if (!one_step_homotopic_digraph(f, g, G, H)) {
      t.expect(false, "generator produced a non-homotopic pair");
      continue;
    }
    ChainComplexSnapshot cg(path_complex_from_digraph(G, 2), 2), ch(path_complex_from_digraph(H, 2), 2);
    auto mf = induced_chain_map(f, cg, ch), mg = induced_chain_map(g, cg, ch);
    for (int d = 0; d <= 1; ++d)
      t.expect(homology_map(mf, cg, ch, d) == homology_map(mg, cg, ch, d), "homotopic pair " + std::to_string(k) + " degree " + std::to_string(d));
  }
  return t.outcome("100 composable map pairs, 50 one-step homotopic pairs, degrees 0..1");
}

Outcome persistence_correctness() {
  gen::Rng rng(1005);
  Tally t;
  for (int k = 0; k < 100; ++k) {
    int n = gen::uniform(rng, 2, 6);
    auto g = gen::random_weighted(rng, gen::random_digraph(rng, n, 0.4), 5);
    for (int p : {0, 1}) {
      auto fc = edge_filtration(g, p + 1);
      auto d = persistence_diagram(fc, p);
      for (std::size_t i = 0; i < fc.index().size(); ++i)
        for (std::size_t j = i; j < fc.index().size(); ++j)
          t.expect(bars_spanning(d, fc.value(i), fc.value(j)) == betti_persistence_oracle(fc, p, i, j),
                   "digraph " + std::to_string(k) + " p=" + std::to_string(p) + " (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return t.outcome("100 filtered digraphs (<= 6 vertices), p in {0,1}, all critical pairs");
}

Outcome bottleneck_correctness() {
  gen::Rng rng(1006);
  Tally t;
  for (int k = 0; k < 500; ++k) {
    auto a = gen::random_bars(rng, 6), b = gen::random_bars(rng, 6);
    auto da = gen::to_diagram(0, a), db = gen::to_diagram(0, b);
    auto r = bottleneck(da, db);
    t.expect(r.distance == gen::to_extended(oracle::bottleneck_partial(a, b)), "pair " + std::to_string(k));
    t.expect(matching_cost(da, db, r.witness) == r.distance, "witness " + std::to_string(k));
  }
  for (int k = 0; k < 200; ++k) {
    auto a = gen::to_diagram(0, gen::random_bars(rng, 6)), b = gen::to_diagram(0, gen::random_bars(rng, 6)),
         c = gen::to_diagram(0, gen::random_bars(rng, 6));
    auto ab = bottleneck_distance(a, b), ba = bottleneck_distance(b, a), bc = bottleneck_distance(b, c), ac = bottleneck_distance(a, c);
    t.expect(bottleneck_distance(a, a) == Extended(Rational(0)), "identity " + std::to_string(k));
    t.expect(ab == ba, "symmetry " + std::to_string(k));
    t.expect(ab.is_infinite() || bc.is_infinite() || ac <= Extended(Rational(ab.value() + bc.value())), "triangle " + std::to_string(k));
    t.expect((ab == Extended(Rational(0))) == (a == b), "separation " + std::to_string(k));
  }
  return t.outcome("500 pairs vs exhaustive matching, 200 metric triples");
}

template <class Make>
Outcome stability_corollary(std::uint64_t seed, Make make) {
  gen::Rng rng(seed);
  Tally t;
  Rational worst = 0;
  for (int k = 0; k < 10; ++k) {
    auto base = make(rng);
    for (const Rational& eps : {Rational(1, 10), Rational(1, 4)})
      for (int p : {0, 1}) {
        auto r = cli::run_perturbation(base, p, eps, 100, seed * 1000 + static_cast<std::uint64_t>(k));
        worst = std::max(worst, r.max_ratio);
        for (const auto& tr : r.trials)
          t.expect(!tr.violation, "base " + std::to_string(k) + " eps " + format_rational(eps) + " p " + std::to_string(p) + " trial seed " +
                                      std::to_string(tr.seed));
      }
  }
  return t.outcome("10 bases x 100 trials x eps {1/10,1/4} x p {0,1}, zero violations, max d_B/bound " + format_rational(worst));
}

std::string vmap_text(const VertexMap& f, const VertexTable& src, const VertexTable& dst) { return io::format_vmap(f, src, dst); }

Outcome full_theorem(const fs::path& dir) {
  gen::Rng rng(1009);
  Tally t;
  Rational worst = 0;
  auto check = [&](const std::string& tag, const std::string& g_text, const std::string& h_text, const std::string& phi,
                   const std::string& psi, const std::vector<std::string>& fchain, const std::vector<std::string>& gchain) {
    auto write = [&](const std::string& name, const std::string& text) {
      auto p = (dir / (tag + "-" + name)).string();
      io::write_file(p, text);
      return p;
    };
    cli::RunConfig cfg;
    cfg.inputs = {write("g.wdg", g_text), write("h.wdg", h_text)};
    cfg.phi = write("phi.vmap", phi);
    cfg.psi = write("psi.vmap", psi);
    for (std::size_t i = 0; i < fchain.size(); ++i) cfg.fchain.push_back(write("f" + std::to_string(i) + ".vmap", fchain[i]));
    for (std::size_t i = 0; i < gchain.size(); ++i) cfg.gchain.push_back(write("g" + std::to_string(i) + ".vmap", gchain[i]));
    cfg.check = true;
    for (int p : {0, 1}) {
      cfg.dim = p;
      auto r = cli::cmd_bound(cfg);
      t.expect(r.holds, tag + " p=" + std::to_string(p) + ": d_B " + r.bottleneck->to_string() + " > eta " + format_rational(r.terms.eta));
      if (!r.bottleneck->is_infinite() && sgn(r.terms.eta) > 0) worst = std::max(worst, Rational(r.bottleneck->value() / r.terms.eta));
    }
  };
  // Cones over a random base, collapsed to a point.
  for (int k = 0; k < 10; ++k) {
    int nb = gen::uniform(rng, 2, 5);
    auto base = gen::random_digraph(rng, nb, 0.4);
    const auto apex = static_cast<Vertex>(nb);
    std::map<Edge, Rational> w;
    for (const auto& e : base.edges()) w.emplace(e, Rational(gen::uniform(rng, 1, 12), 4));
    for (Vertex v = 0; v < apex; ++v) w.emplace(k % 2 == 0 ? Edge{apex, v} : Edge{v, apex}, Rational(gen::uniform(rng, 1, 12), 4));
    std::set<Edge> edges;
    for (const auto& [e, x] : w) edges.insert(e);
    WeightedDigraph g(Digraph(gen::names(nb + 1), edges), w);
    WeightedDigraph h(Digraph(VertexTable({"*"}), {}), {});
    auto phi = VertexMap::constant(g.names().size(), 1, 0), psi = VertexMap::constant(1, g.names().size(), apex);
    check("cone" + std::to_string(k), io::format_wdg(g), "v *\n", vmap_text(phi, g.names(), h.names()), vmap_text(psi, h.names(), g.names()),
          {vmap_text(phi.then(psi), g.names(), g.names()), vmap_text(VertexMap::identity(g.names().size()), g.names(), g.names())}, {});
  }
  // Complete digraphs with arbitrary vertex maps; any two maps into a complete digraph are one-step homotopic.
  for (int k = 0; k < 10; ++k) {
    int n = gen::uniform(rng, 2, 5), m = gen::uniform(rng, 2, 5);
    auto g = gen::random_weighted(rng, complete_digraph(gen::names(n)), 12, 4);
    auto h = gen::random_weighted(rng, complete_digraph(gen::names(m)), 12, 4);
    auto phi = gen::random_map(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    auto psi = gen::random_map(rng, static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    check("complete" + std::to_string(k), io::format_wdg(g), io::format_wdg(h), vmap_text(phi, g.names(), h.names()),
          vmap_text(psi, h.names(), g.names()),
          {vmap_text(phi.then(psi), g.names(), g.names()), vmap_text(VertexMap::identity(static_cast<std::size_t>(n)), g.names(), g.names())},
          {vmap_text(psi.then(phi), h.names(), h.names()), vmap_text(VertexMap::identity(static_cast<std::size_t>(m)), h.names(), h.names())});
  }
  return t.outcome("10 cones + 10 complete-digraph pairs, p in {0,1}, max d_B/eta " + format_rational(worst));
}

Outcome determinism(const fs::path& dir) {
  gen::Rng rng(1010);
  Tally t;
  auto g = gen::random_weighted(rng, gen::random_digraph(rng, 6, 0.35), 12, 4);
  auto h = g.with_weights(cli::perturb_weights(g.weights(), Rational(1, 4), 99));
  auto w = gen::random_weighted(rng, gen::random_path_complex(rng, 6, 3, 8), 12, 4);
  auto gp = (dir / "g.wdg").string(), hp = (dir / "h.wdg").string(), wp = (dir / "w.wpc").string(), idp = (dir / "id.vmap").string();
  io::write_file(gp, io::format_wdg(g));
  io::write_file(hp, io::format_wdg(h));
  io::write_file(wp, io::format_wpc(w));
  io::write_file(idp, io::format_vmap(VertexMap::identity(g.names().size()), g.names(), g.names()));

  // In-process: every command twice, and perturbation with 1 vs many threads.
  auto twice = [&](const std::string& what, const std::function<std::string()>& fn) { t.expect(fn() == fn(), what); };
  cli::RunConfig dg;
  dg.inputs = {gp};
  dg.dim = 1;
  cli::RunConfig dp;
  dp.inputs = {wp};
  dp.filtration = cli::FiltrationKind::path;
  dp.dim = 1;
  twice("diagram edge", [&] { return cli::cmd_diagram(dg); });
  twice("diagram path", [&] { return cli::cmd_diagram(dp); });
  twice("homology", [&] { return cli::cmd_homology(dg); });
  auto d1 = cli::cmd_diagram(dg);
  cli::RunConfig dh = dg;
  dh.inputs = {hp};
  auto d2 = cli::cmd_diagram(dh);
  twice("bottleneck", [&] { return cli::cmd_bottleneck(d1, d2, true); });
  twice("plot", [&] { return cli::cmd_plot(d1); });
  cli::RunConfig b = dg;
  b.inputs = {gp, hp};
  b.phi = b.psi = idp;
  b.check = true;
  twice("bound", [&] { return cli::cmd_bound(b).text; });
  t.expect(cli::run_perturbation(g, 1, Rational(1, 4), 30, 7, Field::rational(), 1).text ==
               cli::run_perturbation(g, 1, Rational(1, 4), 30, 7, Field::rational(), 8).text,
           "perturb thread-count independence");
  t.expect(cli::run_perturbation(w, 1, Rational(1, 4), 30, 7).text == cli::run_perturbation(w, 1, Rational(1, 4), 30, 7).text, "perturb path");

  // Through the binary: byte-identical outputs from two runs.
  const std::string bin = PPH_BINARY;
  std::vector<std::string> commands{"diagram " + gp + " --dim 1",
                                    "diagram " + wp + " --filtration path --dim 1",
                                    "diagram " + gp + " --dim 0 --field F5",
                                    "homology " + gp + " --dim 2",
                                    "bound " + gp + " " + hp + " --phi " + idp + " --psi " + idp + " --dim 1 --check",
                                    "perturb " + gp + " --dim 1 --eps 0.25 --trials 40 --seed 123",
                                    "perturb " + wp + " --filtration path --dim 1 --eps 0.1 --trials 20 --seed 5"};
  auto dgm = (dir / "d.dgm").string();
  io::write_file(dgm, d1);
  commands.push_back("bottleneck " + dgm + " " + dgm + " --witness");
  commands.push_back("plot " + dgm);
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outs[2];
    for (int r = 0; r < 2; ++r) {
      auto out = (dir / ("run" + std::to_string(i) + "-" + std::to_string(r) + ".txt")).string();
      int rc = std::system((bin + " " + commands[i] + " >" + out + " 2>&1").c_str());
      t.expect(rc == 0, "exit status of: " + commands[i]);
      outs[r] = io::read_file(out);
    }
    t.expect(!outs[0].empty() && outs[0] == outs[1], "binary output differs: " + commands[i]);
  }
  return t.outcome("every command twice in-process and via the binary");
}

}  // namespace

int main() {
  auto dir = fs::temp_directory_path() / "pph-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  criterion(1, "boundary laws", 5, boundary_laws);
  criterion(2, "Ω/H oracle equivalence", 60, omega_homology_oracle);
  criterion(3, "curated homology values", 0, curated_values);
  criterion(4, "functoriality and homotopy invariance", 0, functoriality);
  criterion(5, "persistence vs rank oracle", 120, persistence_correctness);
  criterion(6, "bottleneck correctness", 0, bottleneck_correctness);
  criterion(7, "stability corollary (digraphs, F_e)", 300, [] {
    return stability_corollary(1007, [](gen::Rng& rng) {
      return gen::random_weighted(rng, gen::random_digraph(rng, gen::uniform(rng, 4, 8), 0.3), 12, 4);
    });
  });
  criterion(8, "stability corollary (path complexes, F_p)", 300, [] {
    return stability_corollary(1008, [](gen::Rng& rng) {
      PathComplex p = gen::random_path_complex(rng, gen::uniform(rng, 4, 8), 3, 8);
      while (p.top_degree() < 3) p = gen::random_path_complex(rng, gen::uniform(rng, 4, 8), 3, 8);
      return gen::random_weighted(rng, p, 12, 4);
    });
  });
  criterion(9, "full stability theorem (bound --check)", 0, [&] { return full_theorem(dir); });
  criterion(10, "determinism", 0, [&] { return determinism(dir); });

  fs::remove_all(dir);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
