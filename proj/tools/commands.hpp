#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adembed/bench_classifier.hpp"

namespace adembed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Every parameter a subcommand may read. Unset optionals take the
/// subcommand's default; resolve() fills them in.
struct RunConfig {
  std::string command;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> m_pool;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;
  std::optional<double> rho;
  std::optional<double> delta;
  std::optional<double> grid;
  std::string out;
  std::string reference = "entry";
  std::string method = "adaptive";
  std::size_t k = 10;
  std::optional<std::size_t> count;
  double margin = clf::kDefaultMargin;
  std::size_t n_true = 100;
  std::size_t n_false = 1000;
  std::string features_path;
  std::string model_path;
  std::string inject_fault;
  std::size_t threads = 0;

  // Applies per-command defaults and range checks (throws DomainError).
  void resolve();
};

std::string cmd_curve(const RunConfig& cfg);
std::string cmd_curve3(const RunConfig& cfg);
std::string cmd_roc(const RunConfig& cfg);
std::string cmd_classify(const RunConfig& cfg);
std::string cmd_synth(const RunConfig& cfg);

struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<std::string> verify_property_names();
std::vector<PropertyResult> cmd_verify(const RunConfig& cfg);
std::string format_verify_report(const std::vector<PropertyResult>& results);

// Echo of the resolved configuration, one "# key=value" line per field.
std::string config_header(const RunConfig& cfg);

// Parses argv-style arguments (without the program name), runs the
// subcommand and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adembed::cli
