#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ptspec/potential.hpp"

namespace ptspec {

struct CheckResult {
  std::string id;           // stable identifier, e.g. "reflectionless"
  std::string description;  // what was measured
  double value;             // measured quantity (worst case over the sweep)
  double threshold;         // pass bound (inf = finiteness only)
  bool pass;
};

struct VerifyOptions {
  unsigned workers = 0;
  bool quick = false;  // trimmed sweeps for smoke testing
};

/// Run the full verification suite (one entry per criterion).
std::vector<CheckResult> run_acceptance(const VerifyOptions& options = {});

/// Machine-readable report: array of {check_id, property, value, threshold, pass}.
void write_report_json(const std::filesystem::path& path,
                       const std::vector<CheckResult>& results);

/// Independent point-spectrum oracle: bisection on the matching Wronskian of
/// decaying solutions shot from both ends. Returns eigenvalues ordered by
/// decreasing mu (i.e. -1, -4, ... for the unit-scale integer family).
std::vector<double> shooting_point_spectrum(const Potential& pot, double mu_max,
                                            double boundary = 12.0, int scan_points = 80,
                                            double tol = 1e-9);

}  // namespace ptspec
