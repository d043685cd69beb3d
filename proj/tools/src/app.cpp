#include <iostream>

#include <CLI11.hpp>

#include "citenorm/errors.hpp"
#include "citenorm/version.hpp"
#include "commands.hpp"

namespace citenorm::cli {

namespace {

void add_out_option(CLI::App* cmd, std::string& out_dir) {
  cmd->add_option("--out", out_dir, "output directory")
      ->envname("CITENORM_OUT")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"field-normalized citation distribution analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  auto* analyze = app.add_subcommand(
      "analyze", "rescale a corpus, classify top-k publications, report dispersion");
  analyze->add_option("--publications", analyze_opt.publications, "publications CSV")
      ->required();
  analyze->add_option("--citations", analyze_opt.citations, "citations CSV")->required();
  analyze->add_option("--year", analyze_opt.year, "publication year under analysis")->required();
  analyze->add_option("--window", analyze_opt.window, "citation window length in years")
      ->capture_default_str();
  analyze
      ->add_option("--top", analyze_opt.top_fractions,
                   "top fraction; repeatable, first value drives the main report")
      ->expected(1)
      ->allow_extra_args(false);
  analyze->add_option("--min-field-size", analyze_opt.min_field_size,
                      "exclude fields with fewer members")
      ->capture_default_str();
  analyze->add_flag("--exclude-uncited", analyze_opt.exclude_uncited,
                    "drop zero-citation publications before all statistics");
  analyze->add_option("--doc-types", analyze_opt.doc_types, "admitted doc types, comma separated")
      ->capture_default_str();
  analyze->add_option("--band", analyze_opt.band, "out-of-band bounds LO,HI")
      ->capture_default_str();
  analyze->add_option("--bin-width", analyze_opt.bin_width, "proportion histogram bin width")
      ->capture_default_str();
  analyze->add_option("--corr", analyze_opt.corr, "correlation method: pearson|spearman")
      ->capture_default_str();
  analyze->add_option("--ecdf-fields", analyze_opt.ecdf_fields,
                      "comma list of fields to emit ecdf files for (default: 3 lowest + 3 "
                      "highest top-share)");
  add_out_option(analyze, analyze_opt.out_dir);

  SimulateOptions simulate_opt;
  auto* simulate = app.add_subcommand("simulate", "generate a seeded synthetic corpus");
  simulate
      ->add_option("--model", simulate_opt.model,
                   "universal | poisson-lognormal | heterogeneous")
      ->required();
  simulate->add_option("--spec", simulate_opt.spec_path, "field-spec CSV")->required();
  auto* sigma_opt =
      simulate->add_option("--sigma", simulate_opt.sigma, "global lognormal shape");
  simulate
      ->add_option("--target-q90", simulate_opt.target_q90,
                   "solve the global sigma so the mean-1 lognormal 90th percentile hits this")
      ->excludes(sigma_opt);
  simulate->add_flag("--larger-root", simulate_opt.larger_root,
                     "take the larger sigma root when solving --target-q90");
  simulate->add_option("--year", simulate_opt.year, "publication year")->capture_default_str();
  simulate->add_option("--horizon", simulate_opt.horizon, "citing-year horizon")
      ->capture_default_str();
  simulate->add_option("--seed", simulate_opt.seed, "generator seed")->capture_default_str();
  add_out_option(simulate, simulate_opt.out_dir);

  CompareYearsOptions compare_opt;
  auto* compare = app.add_subcommand("compare-years",
                                     "join two analysis reports on field_id and correlate");
  compare->add_option("--a", compare_opt.report_a, "first report.json")->required();
  compare->add_option("--b", compare_opt.report_b, "second report.json")->required();
  compare->add_option("--corr", compare_opt.corr, "correlation method: pearson|spearman")
      ->capture_default_str();
  add_out_option(compare, compare_opt.out_dir);

  PlotOptions plot_opt;
  auto* plot = app.add_subcommand("plot", "render plot-data CSVs as static SVG");
  plot->add_option("--in", plot_opt.in_dir, "directory with plot-data files")->required();
  plot->add_option("--out", plot_opt.out_dir, "output directory (default <in>/plots)");
  plot->add_flag("--log-x", plot_opt.log_x, "log-scale the ecdf score axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_opt);
    if (app.got_subcommand(simulate)) return cmd_simulate(simulate_opt);
    if (app.got_subcommand(compare)) return cmd_compare_years(compare_opt);
    if (app.got_subcommand(plot)) return cmd_plot(plot_opt);
  } catch (const degenerate_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) argv.push_back(arg.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace citenorm::cli
