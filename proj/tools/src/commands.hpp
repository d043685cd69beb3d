#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace citenorm::cli {

struct AnalyzeOptions {
  std::string publications;
  std::string citations;
  int year = 1999;
  int window = 10;
  std::vector<double> top_fractions;  // first entry drives the main report
  std::int64_t min_field_size = 1000;
  bool exclude_uncited = false;
  std::string doc_types = "article";  // comma separated
  std::string band = "0.09,0.11";
  double bin_width = 0.005;
  std::string corr = "pearson";
  std::string ecdf_fields;  // optional comma list overriding the default pick
  std::string out_dir = ".";
};

struct SimulateOptions {
  std::string model;  // universal | poisson-lognormal | heterogeneous
  std::string spec_path;
  std::optional<double> sigma;
  std::optional<double> target_q90;
  bool larger_root = false;
  int year = 1999;
  int horizon = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

struct CompareYearsOptions {
  std::string report_a;
  std::string report_b;
  std::string corr = "pearson";
  std::string out_dir = ".";
};

struct PlotOptions {
  std::string in_dir;
  std::string out_dir;  // empty -> <in>/plots
  bool log_x = false;
};

int cmd_analyze(const AnalyzeOptions& opt);
int cmd_simulate(const SimulateOptions& opt);
int cmd_compare_years(const CompareYearsOptions& opt);
int cmd_plot(const PlotOptions& opt);

/// Front end: parses argv (subcommands analyze / simulate / compare-years /
/// plot) and dispatches. Exit codes: 0 success, 1 parse or validation
/// failure, 2 degenerate statistics.
int run_cli(std::vector<std::string> args);
int run_cli(int argc, const char* const* argv);

}  // namespace citenorm::cli
