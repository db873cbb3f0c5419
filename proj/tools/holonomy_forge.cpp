// holonomy_forge: command-line front end for the holonomy library.
//
//   holonomy_forge verify-structures
//   holonomy_forge orbifold-analyze <file.orb>
//   holonomy_forge orbifold-betti <file.orb>
//   holonomy_forge estimates-check [file.est]
//   holonomy_forge spin7-demo [file.ywp]
//   holonomy_forge report --json <path>
//
// Exit codes: 0 all findings pass, 1 a finding failed, 2 input error,
// 3 unsupported model.

#include "holonomy/orbifold.hpp"
#include "holonomy/pipelines.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using holonomy::report::Status;

template <class Report>
int emit(Report& rep, const std::string& json_path, bool with_timing, double elapsed_ms) {
  if (with_timing) rep.timing_ms = elapsed_ms;
  std::cout << rep.to_text();
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return holonomy::report::exit_code(Status::input_error);
    }
    out << rep.to_json().dump(2) << "\n";
  }
  return holonomy::report::exit_code(rep.status());
}

}  // namespace

int main(int argc, char** argv) {
  namespace pl = holonomy::pipelines;
  namespace sf = holonomy::specfile;

  CLI::App app{"Exact checks for torus-orbifold G2 and Spin(7) constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  bool with_timing = false;
  app.add_option("--json", json_path, "write the run report as JSON to this path");
  app.add_flag("--with-timing", with_timing, "include wall-clock time in the report");

  std::string orb_file, est_file, wps_file;
  auto* verify = app.add_subcommand("verify-structures", "canonical forms and their SU(m) identities");
  auto* analyze = app.add_subcommand("orbifold-analyze", "group, fixed loci and singular set of T^n/Γ");
  analyze->add_option("file", orb_file, "orbifold spec")->required();
  auto* betti = app.add_subcommand("orbifold-betti", "Betti numbers of T^n/Γ and of its resolution");
  betti->add_option("file", orb_file, "orbifold spec")->required();
  auto* est = app.add_subcommand("estimates-check", "perturbation hypotheses and induction closure");
  est->add_option("file", est_file, "estimates file (default: bundled)");
  auto* demo = app.add_subcommand("spin7-demo", "the order-8 group G, complex frames and the weighted example");
  demo->add_option("file", wps_file, "weighted hypersurface file (default: bundled)");
  auto* rep = app.add_subcommand("report", "every pipeline on the bundled assets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help prints and exits 0; usage errors count as input errors.
    return app.exit(e) == 0 ? 0 : holonomy::report::exit_code(Status::input_error);
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    if (*rep) {
      holonomy::report::Bundle b = pl::full_report();
      return emit(b, json_path, with_timing, elapsed());
    }
    holonomy::report::RunReport r;
    if (*verify) r = pl::verify_structures();
    else if (*analyze) r = pl::orbifold_analyze(sf::read_file(orb_file));
    else if (*betti)
      r = pl::orbifold_betti(sf::read_file(orb_file), pl::read_asset("ade_table"), pl::read_asset("g2_betti_pairs.txt"));
    else if (*est)
      r = pl::estimates_check(est_file.empty() ? pl::read_asset("estimates_default.est") : sf::read_file(est_file));
    else if (*demo)
      r = pl::spin7_demo(wps_file.empty() ? pl::read_asset("wps_degree12.ywp") : sf::read_file(wps_file));
    return emit(r, json_path, with_timing, elapsed());
  } catch (const holonomy::UnsupportedModel& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return holonomy::report::exit_code(Status::unsupported);
  } catch (const holonomy::orbifold::StructureNotPreserved& e) {
    std::cerr << "finding failed: " << e.what() << "\n";
    return holonomy::report::exit_code(Status::finding_failed);
  } catch (const std::exception& e) {
    // Parse, validation, dimension and file errors.
    std::cerr << "input error: " << e.what() << "\n";
    return holonomy::report::exit_code(Status::input_error);
  }
}
