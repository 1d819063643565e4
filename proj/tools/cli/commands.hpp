#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deltacasimir/deltacasimir.hpp"

namespace deltacasimir::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerifyFailed = 3;

enum class Command { profile, verify, convergence, convert };

struct RunConfig {
  Command command = Command::convert;
  std::optional<Coupling> coupling;
  double rmin = 0.1;
  double rmax = 10.0;
  std::size_t rcount = 5;
  GridScale rscale = GridScale::log;
  ShapeKind shape = ShapeKind::ball;
  double shape_param = 1.0;
  std::vector<double> lambdas{0.5, 0.1, 0.01, 0.001};
  double radius = 1.0;  // |x| for the convergence table
  bool use_table = false;
  quad::QuadratureConfig quad;
  std::optional<double> threshold;  // overrides every verify threshold
  std::string out;                  // empty: standard output
};

struct CheckResult {
  std::string name;
  double max_dev = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// The verification suite run by `verify`, in report order.
std::vector<CheckResult> run_checks(const RunConfig& cfg);

/// `CHECK <name> max_dev=<v> tol=<t> <PASS|FAIL>`
std::string format_check(const CheckResult& c);

int cmd_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convert(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deltacasimir::cli
