#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "crosscal/knot.hpp"
#include "crosscal/optimize.hpp"
#include "crosscal/tensor.hpp"

namespace crosscal {

using Json = nlohmann::ordered_json;

// One row of a verification report.  `witnesses` carries optional
// check-specific diagnostics (worst frame, probe values, ...).
struct CheckReport {
  std::string check;
  long samples = 0;
  double max_residual = 0.0;
  bool pass = false;
  Json witnesses = Json::object();
};

Json check_to_json(const CheckReport& c);

// Serialization for alternating tensors.  Terms are emitted sorted
// lexicographically by index list so reports are order-normalized.
Json tensor_to_json(const AlternatingTensor& a);
AlternatingTensor tensor_from_json(const Json& j);
Json complex_tensor_to_json(const ComplexAlternatingTensor& a);

struct SuiteOptions {
  long samples = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  double theta = 0.0;  // phase for the hyperkahler model-instanton check
};

// True if the selector names a complex structure family (cy:n / hk:m).
bool is_complex_selector(const std::string& selector);

// Check suites behind `verify`.  The selector is one of
// complex:m | volume:n | g2 | spin7 | cy:n | hk:m.
std::vector<CheckReport> verify_checks(const std::string& selector,
                                       const SuiteOptions& opt);

// Full report documents (envelope + payload).  When `deterministic` is set
// no timestamp field is emitted.
Json verify_report(const std::string& selector, const SuiteOptions& opt,
                   bool deterministic);
Json tables_report(const std::string& selector, bool deterministic);

struct FindOptions {
  std::string objective = "instanton";  // instanton | brane
  int k = 0;                            // 0 = default dimension for objective
  OptimizerConfig config;
  int threads = 1;
  bool verbose = false;  // include per-restart summaries
};

Json find_report(const std::string& selector, const FindOptions& opt,
                 bool deterministic);

struct KnotOptions {
  std::string check = "all";  // compat|isotropy|quotient|inequality|hamiltonian|all
  std::uint64_t seed = 1;
  double tol = 1e-8;
  long samples = 1000;
};

// Knot-space checks for a discretized knot against the selected structure.
// For cy:n selectors the knot is expected in the real slice convention used
// by the built-in builders (see README); the checks that need the ambient
// complex structure embed it accordingly.
std::vector<CheckReport> knot_checks(const std::string& selector,
                                     const DiscretizedKnot& knot,
                                     const KnotOptions& opt);

Json knot_report(const std::string& selector, const DiscretizedKnot& knot,
                 const KnotOptions& opt, bool deterministic);

// Builds a circle (param = vertex count) or sphere (param = subdivision
// level) and embeds it isometrically into the ambient space of the selector:
// leading coordinates for real structures, the real slice (x^1, x^2, x^3)
// for cy:n.  Throws if the shape's dimension does not fit the selector.
DiscretizedKnot build_knot_for_selector(const std::string& selector,
                                        KnotShape shape, int param);

// Reads the "pass" field of a report document.
bool report_pass(const Json& report);

}  // namespace crosscal
