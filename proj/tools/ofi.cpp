// Command-line front end: audit, scenario, dist, verify.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ofi/commands.hpp"
#include "ofi/rational.hpp"

namespace {

ofi::Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return ofi::parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(flag, "expected a fraction or decimal, got '" + text + "'");
  }
}

std::vector<std::string> split_order(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cmd = ofi::commands;

  CLI::App app{"Objective fairness index and disparate impact auditing"};
  app.require_subcommand(1);

  std::string ofi_threshold = "3/10";
  std::string di_low = "4/5";
  std::string di_high = "5/4";
  unsigned workers = cmd::default_workers();

  // audit
  cmd::AuditOptions audit;
  std::string order;
  std::string delimiter = ",";
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  auto* a = app.add_subcommand("audit", "Audit a labeled-prediction dataset");
  a->add_option("--input", audit.input, "Input file ('-' for stdin)")->default_val("-");
  a->add_option("--group-col", audit.schema.group_column, "Group column")->default_val("group");
  a->add_option("--label-col", audit.schema.label_column, "Label column")->default_val("label");
  a->add_option("--pred-col", audit.schema.prediction_column, "Prediction column")
      ->default_val("prediction");
  a->add_option("--delimiter", delimiter, "Field delimiter (one character)")->default_val(",");
  a->add_flag("--flip", audit.flip, "Complement labels and predictions before aggregating");
  a->add_option("--ofi-threshold", ofi_threshold, "OFI no-bias band half-width")
      ->default_val("3/10");
  a->add_option("--di-low", di_low, "Lower DI band limit")->default_val("4/5");
  a->add_option("--di-high", di_high, "Upper DI band limit")->default_val("5/4");
  a->add_option("--order", order, "Comma-separated group order (default lexicographic)");
  a->add_option("--out-report", audit.out_report, "Report JSON path (default stdout)");
  a->add_option("--out-heatmap-ofi", audit.out_heatmap_ofi, "OFI heatmap SVG path");
  a->add_option("--out-heatmap-di", audit.out_heatmap_di, "DI heatmap SVG path");
  a->add_option("--out-grid-csv", audit.out_grid_csv,
                "Grid CSV path; writes <stem>.ofi.csv and <stem>.di.csv");
  auto* sample_opt = a->add_option("--sample", sample, "Sample this many records first");
  auto* seed_opt = a->add_option("--seed", seed, "Seed for --sample");
  sample_opt->needs(seed_opt);
  a->add_option("--workers", workers, "Worker threads (unused by audit)");

  // scenario
  std::vector<std::int64_t> cells;
  auto* s = app.add_subcommand("scenario", "Compare two confusion matrices: TP FN FP TN TP FN FP TN");
  s->add_option("cells", cells, "tp fn fp tn of group i, then of group j")
      ->expected(8)
      ->required();
  s->add_option("--ofi-threshold", ofi_threshold, "OFI no-bias band half-width")
      ->default_val("3/10");
  s->add_option("--di-low", di_low, "Lower DI band limit")->default_val("4/5");
  s->add_option("--di-high", di_high, "Upper DI band limit")->default_val("5/4");

  // dist
  cmd::DistOptions dist;
  auto* d = app.add_subcommand("dist", "Marginal-benefit distribution over all matrices of size n");
  d->add_option("--n", dist.n, "Sample count n")->required();
  d->add_option("--out", dist.out_csv, "CSV output path (default stdout)");

  // verify
  cmd::VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check closed forms against brute-force enumeration");
  v->add_option("--n-min", verify.n_min, "Smallest n")->default_val(1);
  v->add_option("--n-max", verify.n_max, "Largest n (at most 200)")->default_val(40);
  v->add_option("--workers", workers, "Worker threads");

  try {
    app.parse(argc, argv);
    if (a->parsed() || s->parsed()) {
      audit.config.ofi_threshold = rational_flag(ofi_threshold, "--ofi-threshold");
      audit.config.di_band = ofi::DiBand{rational_flag(di_low, "--di-low"),
                                         rational_flag(di_high, "--di-high")};
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (a->parsed()) {
    if (delimiter.size() != 1) {
      std::cerr << "audit: config: --delimiter must be a single character\n";
      return cmd::kFailure;
    }
    audit.schema.delimiter = delimiter[0];
    audit.config.group_order = split_order(order);
    if (*sample_opt) audit.sample = sample;
    if (*seed_opt) audit.seed = seed;
    return cmd::run_audit(audit, std::cin, std::cout, std::cerr);
  }
  if (s->parsed()) {
    cmd::ScenarioOptions opt;
    opt.first = ofi::BinaryConfusion{cells[0], cells[1], cells[2], cells[3]};
    opt.second = ofi::BinaryConfusion{cells[4], cells[5], cells[6], cells[7]};
    opt.ofi_threshold = audit.config.ofi_threshold;
    opt.di_band = audit.config.di_band;
    return cmd::run_scenario(opt, std::cout, std::cerr);
  }
  if (d->parsed()) return cmd::run_dist(dist, std::cout, std::cerr);
  verify.workers = workers;
  return cmd::run_verify(verify, std::cout, std::cerr);
}
