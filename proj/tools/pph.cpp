#include <CLI11.hpp>

#include <iostream>

#include "pph/pph.hpp"

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    pph::io::write_file(out, text);
}

int run(int argc, char** argv) {
  using namespace pph;
  CLI::App app{"Persistent path homology of weighted digraphs and path complexes"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  std::string filtration = "edge", field = "rat", eps = "0", delta;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--filtration", filtration, "edge (.wdg) or path (.wpc)");
    sub->add_option("--dim", cfg.dim, "homology degree");
    sub->add_option("--field", field, "rat or F<p>");
  };
  auto* diagram = app.add_subcommand("diagram", "write the persistence diagram of one input");
  diagram->add_option("input", cfg.inputs)->required()->expected(1);
  diagram->add_option("--out", cfg.out, "output path (default stdout)");
  common(diagram);

  auto* homology = app.add_subcommand("homology", "path homology dimensions at one scale");
  homology->add_option("input", cfg.inputs)->required()->expected(1);
  homology->add_option("--delta", delta, "scale (default: the whole complex)");
  homology->add_option("--out", cfg.out);
  common(homology);

  auto* bneck = app.add_subcommand("bottleneck", "exact bottleneck distance of two .dgm files");
  bneck->add_option("inputs", cfg.inputs)->required()->expected(2);
  bneck->add_flag("--witness", cfg.witness, "print an optimal matching");
  bneck->add_option("--out", cfg.out);

  auto* bound = app.add_subcommand("bound", "stability bound for a homotopy equivalence");
  bound->add_option("inputs", cfg.inputs)->required()->expected(2);
  bound->add_option("--phi", cfg.phi, "vertex map first -> second")->required();
  bound->add_option("--psi", cfg.psi, "vertex map second -> first")->required();
  bound->add_option("--fchain", cfg.fchain, "maps from psi∘phi to id on the first input")->delimiter(',');
  bound->add_option("--gchain", cfg.gchain, "maps from phi∘psi to id on the second input")->delimiter(',');
  bound->add_flag("--check", cfg.check, "also compute d_B and compare");
  bound->add_option("--out", cfg.out);
  common(bound);

  auto* perturb = app.add_subcommand("perturb", "fuzz the stability corollary with random weight perturbations");
  perturb->add_option("input", cfg.inputs)->required()->expected(1);
  perturb->add_option("--eps", eps, "perturbation radius");
  perturb->add_option("--trials", cfg.trials);
  perturb->add_option("--seed", cfg.seed);
  perturb->add_option("--out", cfg.out);
  common(perturb);

  auto* plot = app.add_subcommand("plot", "render a .dgm file as SVG");
  plot->add_option("input", cfg.inputs)->required()->expected(1);
  plot->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << "\n";
    return 2;
  }

  try {
    cfg.filtration = cli::parse_filtration(filtration);
    cfg.field = Field::parse(field);
    cfg.eps = parse_rational(eps);
    if (!delta.empty()) cfg.delta = parse_rational(delta);
    if (*diagram) {
      emit(cli::cmd_diagram(cfg), cfg.out);
    } else if (*homology) {
      emit(cli::cmd_homology(cfg), cfg.out);
    } else if (*bneck) {
      emit(cli::cmd_bottleneck(io::read_file(cfg.inputs[0]), io::read_file(cfg.inputs[1]), cfg.witness, cfg.inputs[0], cfg.inputs[1]),
           cfg.out);
    } else if (*bound) {
      auto r = cli::cmd_bound(cfg);
      emit(r.text, cfg.out);
      if (!r.holds) throw Error(Errc::violation, "d_B = " + r.bottleneck->to_string() + " exceeds eta = " + format_rational(r.terms.eta));
    } else if (*perturb) {
      auto r = cli::cmd_perturb(cfg);
      emit(r.text, cfg.out);
      for (const auto& t : r.trials)
        if (t.violation)
          throw Error(Errc::violation, "trial " + std::to_string(t.trial) + " d_B = " + t.distance.to_string() + " > bound " +
                                           format_rational(t.bound) + " (reproduce with --seed " + std::to_string(cfg.seed) +
                                           ", trial seed " + std::to_string(t.seed) + ")");
    } else if (*plot) {
      emit(cli::cmd_plot(io::read_file(cfg.inputs[0]), cfg.inputs[0]), cfg.out);
    }
  } catch (const Error& e) {
    std::cerr << "error[" << e.kind() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
