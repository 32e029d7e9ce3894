#ifndef QSTAR_CLI_HPP
#define QSTAR_CLI_HPP

/// \file cli.hpp
/// The `qstar` command line front end as a library, so it can be driven
/// from tests without spawning processes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstar/classify.hpp"
#include "qstar/qarith.hpp"

namespace qstar::cli {

enum class Command { QNum, BoundsTable, Check, Generate, FsSweep, LimitCompare, Bernardi };
enum class Format { Csv, Json };

const char* to_string(Command c);

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailVerdict = 1;
inline constexpr int kInputError = 2;

struct RunConfig {
  Command command = Command::QNum;

  int p = 1;
  double q = 0.5;
  double mu = 0;
  double A = 1;
  double B = -1;
  double eta = 1;
  int N = 8;
  double r = 0.9;
  int m = 720;
  std::uint64_t seed = 0;
  LambdaConvention convention = LambdaConvention::LimitConsistent;
  Format format = Format::Csv;
  std::optional<std::filesystem::path> input_path;
  std::optional<std::filesystem::path> output_path;

  int n = 1;                   // qnum
  double lambda_from = -2;     // fs-sweep grid, inclusive
  double lambda_to = 2;
  double lambda_step = 0.1;
  double eps = 1e-6;           // limit-compare: q = 1 - eps
  int per_degree = 50;         // corpus members per Schwarz degree 1..4
  KernelForm kernel = KernelForm::Printed;

  // Axes fixed on the command line. Table commands sweep the default grid
  // along the others.
  bool fixed_p = false;
  bool fixed_q = false;
  bool fixed_mu = false;
  bool fixed_AB = false;
};

/// Bad command line; the message is meant for the user.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses arguments (without the program name) and validates every
/// parameter. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed configuration. Output goes to config.output_path when
/// set, to `out` otherwise; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with --help handling and error-to-status mapping.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qstar::cli

#endif  // QSTAR_CLI_HPP
