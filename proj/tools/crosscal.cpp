#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "crosscal/knot.hpp"
#include "crosscal/report.hpp"

namespace {

int thread_count_from_env() {
  const char* v = std::getenv("CROSSCAL_THREADS");
  if (!v) return 1;
  const int t = std::atoi(v);
  return t > 0 ? t : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Stdout carries exactly one JSON document; --out redirects it to a file.
void emit(const crosscal::Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical verification of vector cross products, calibrated planes, "
      "and knot-space transgression"};
  app.require_subcommand(1);

  std::string structure;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  long samples = 1000;
  int restarts = 50;
  int k = 0;
  std::string objective = "instanton";
  std::string knot_check = "all";
  double theta = 0.0;
  std::string in_path;
  std::string out_path;
  bool verbose = false;
  bool deterministic = false;
  int circle_m = 0;
  int sphere_subdiv = -1;

  const std::string selector_help =
      "structure selector: complex:m | volume:n | g2 | spin7 | cy:n | hk:m";

  CLI::App* tables = app.add_subcommand(
      "tables", "Emit structure constants, octonion table, and symmetry dimension");
  tables->add_option("--structure", structure, selector_help)->required();
  tables->add_option("--out", out_path, "write the report to a file");
  tables->add_flag("--deterministic", deterministic, "omit the timestamp");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the full identity/check suite for a structure");
  verify->add_option("--structure", structure, selector_help)->required();
  verify->add_option("--seed", seed, "root seed for sampled checks");
  verify->add_option("--tol", tol, "tolerance for calibration predicates");
  verify->add_option("--samples", samples, "sample count per sampled check");
  verify->add_option("--theta", theta, "phase for the hk model-instanton check");
  verify->add_option("--out", out_path, "write the report to a file");
  verify->add_flag("--verbose", verbose, "no-op (witness data is always included)");
  verify->add_flag("--deterministic", deterministic, "omit the timestamp");

  CLI::App* find = app.add_subcommand(
      "find", "Search the Grassmannian for instanton or brane planes");
  find->add_option("--structure", structure, selector_help)->required();
  find->add_option("--seed", seed, "root seed for restarts");
  find->add_option("--tol", tol, "convergence tolerance on the objective");
  find->add_option("--restarts", restarts, "number of seeded restarts");
  find->add_option("--k", k, "plane dimension (default: natural dimension)");
  find->add_option("--objective", objective, "instanton | brane");
  find->add_option("--theta", theta, "recorded phase parameter");
  find->add_option("--out", out_path, "write the report to a file");
  find->add_flag("--verbose", verbose, "include per-restart histories");
  find->add_flag("--deterministic", deterministic, "omit the timestamp");

  CLI::App* knotc = app.add_subcommand(
      "knot", "Run knot-space checks on a built-in or loaded knot");
  knotc->add_option("--structure", structure, selector_help)->required();
  knotc->add_option("--seed", seed, "root seed for sampled fields");
  knotc->add_option("--tol", tol, "isotropy/containment tolerance");
  knotc->add_option("--samples", samples, "random field pairs for sampled checks");
  knotc->add_option("--objective", knot_check,
                    "check: compat | isotropy | quotient | inequality | "
                    "hamiltonian | all");
  knotc->add_option("--theta", theta, "recorded phase parameter");
  knotc->add_option("--in", in_path, "load a knot from JSON");
  knotc->add_option("--circle", circle_m, "build a circle with this many vertices");
  knotc->add_option("--sphere", sphere_subdiv,
                    "build a subdivided-octahedron sphere (0 = octahedron)");
  knotc->add_option("--out", out_path, "write the report to a file");
  knotc->add_flag("--verbose", verbose, "no-op (witness data is always included)");
  knotc->add_flag("--deterministic", deterministic, "omit the timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, std::cerr, std::cerr);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    crosscal::Json report;
    if (tables->parsed()) {
      report = crosscal::tables_report(structure, deterministic);
    } else if (verify->parsed()) {
      crosscal::SuiteOptions opt;
      opt.samples = samples;
      opt.seed = seed;
      opt.tol = tol;
      opt.theta = theta;
      report = crosscal::verify_report(structure, opt, deterministic);
    } else if (find->parsed()) {
      crosscal::FindOptions opt;
      opt.objective = objective;
      opt.k = k;
      opt.config.restarts = restarts;
      opt.config.tol = tol;
      opt.config.seed = seed;
      opt.threads = thread_count_from_env();
      opt.verbose = verbose;
      report = crosscal::find_report(structure, opt, deterministic);
    } else {
      std::optional<crosscal::DiscretizedKnot> knot;
      const int sources = (in_path.empty() ? 0 : 1) + (circle_m > 0 ? 1 : 0) +
                          (sphere_subdiv >= 0 ? 1 : 0);
      if (sources != 1)
        throw std::invalid_argument(
            "choose exactly one knot source: --in, --circle, or --sphere");
      if (!in_path.empty()) {
        knot = crosscal::knot_from_json(read_file(in_path));
      } else if (circle_m > 0) {
        knot = crosscal::build_knot_for_selector(structure, crosscal::KnotShape::Circle,
                                                 circle_m);
      } else {
        knot = crosscal::build_knot_for_selector(structure, crosscal::KnotShape::Sphere,
                                                 sphere_subdiv);
      }
      crosscal::KnotOptions opt;
      opt.check = knot_check;
      opt.seed = seed;
      opt.tol = tol;
      opt.samples = samples;
      report = crosscal::knot_report(structure, *knot, opt, deterministic);
    }
    emit(report, out_path);
    return crosscal::report_pass(report) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
