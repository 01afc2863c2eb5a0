// Command-line front end: runs named verification suites and emits JSON
// reports, or tracks branch-point trajectories to CSV.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error,
// 3 numerical non-convergence.

#include "vct/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{
      "vct-verify: verification suites for the cyclic-quotient /"
      " vanishing-cycle / quiver / Landau-Ginzburg toolkit"};
  app.set_config("--config")->configurable(false);

  std::string suite;
  app.add_option("suite", suite,
                 "one of: cqs, gram, braid, quiver, normalize, critical, "
                 "branch, monodromy, sturm, palais-smale, pick, all, "
                 "trajectory")
      ->required();

  vct::SuiteParams p;
  std::string out;
  double angle = 1.0;  // fraction of a full turn, for trajectory
  app.add_option("--k", p.k, "odd k of the X_{k+1} family")->configurable();
  app.add_option("--n", p.n, "order of the cyclic quotient");
  app.add_option("--q", p.q, "weight of the cyclic quotient");
  app.add_option("--s", p.s, "deformation parameter");
  app.add_option("--delta", p.delta,
                 "perturbation of P; 0 uses the distinct-q_i default");
  app.add_option("--steps", p.steps, "path discretization steps");
  app.add_option("--tol", p.tol, "root solver tolerance");
  app.add_option("--t0", p.t0, "path start on the real axis (0 = automatic)");
  app.add_option("--angle", angle, "trajectory rotation, fraction of 2 pi");
  app.add_option("--seed", p.seed, "random seed for specializations/sampling");
  app.add_option("--out", out, "output file (JSON report or CSV trajectory)");
  app.add_flag("--timings", p.timings, "include timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (suite == "trajectory") {
      auto spec = vct::detail::spec_from(p, p.k, p.s);
      double rout = std::pow(1.0 / (4.0 * p.s), 1.0 / (p.k - 2));
      vct::Cplx t0(p.t0 > 0 ? p.t0 : 0.2 * rout, 0);
      auto path = vct::circle_path(t0, 2 * std::numbers::pi * angle, p.steps);
      auto tr = vct::track_roots(spec, path);
      if (out.empty()) {
        vct::write_trajectory_csv(tr, std::cout);
      } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot open " + out);
        vct::write_trajectory_csv(tr, os);
      }
      return 0;
    }

    auto report = vct::run_suite(suite, p);
    std::string dump = report.to_json().dump(2);
    if (!out.empty()) {
      std::ofstream os(out);
      if (!os) throw std::runtime_error("cannot open " + out);
      os << dump << "\n";
    } else {
      std::cout << dump << "\n";
    }
    for (const auto& c : report.checks)
      std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << report.suite << ": "
                << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                << "\n";
    return report.pass() ? 0 : 1;
  } catch (const vct::convergence_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const vct::invalid_input& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
