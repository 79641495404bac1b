#include <iostream>

#include <CLI11.hpp>

#include "cfet/cli.hpp"

int main(int argc, char** argv) {
  using namespace cfet::cli;
  CLI::App app{"Commutator-free exponential time propagation"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration document");
    sub->add_option("--out", opt.out, "output path (default: stdout)");
    sub->add_option("--workers", opt.workers, "worker threads for grid points")
        ->check(CLI::Range(1, 1024));
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&](const std::uint64_t& s) {
          opt.seed = s;
          opt.seed_given = true;
        },
        "seed for random initial states");
  };
  auto* propagate = app.add_subcommand("propagate", "propagate one configuration, trajectory CSV");
  auto* bench = app.add_subcommand("bench", "error-effort sweep over a grid, CSV");
  auto* verify = app.add_subcommand("verify", "symbolic checks of the Magnus table and schemes");
  auto* stability = app.add_subcommand("stability", "Mathieu stability chart, CSV");
  auto* schemes = app.add_subcommand("schemes", "list registered schemes");
  for (auto* s : {propagate, bench, verify, stability, schemes}) common(s);
  schemes->add_flag("--dump", opt.dump, "emit scheme documents");
  schemes->add_option("--name", opt.name, "restrict to one scheme");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*propagate) return cmd_propagate(opt, std::cout, std::cerr);
    if (*bench) return cmd_bench(opt, std::cout, std::cerr);
    if (*verify) return cmd_verify(opt, std::cout, std::cerr);
    if (*stability) return cmd_stability(opt, std::cout, std::cerr);
    if (*schemes) return cmd_schemes(opt, std::cout, std::cerr);
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const cfet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
