#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ofi/audit.hpp"
#include "ofi/combinatorics.hpp"
#include "ofi/errors.hpp"
#include "ofi/heatmap.hpp"
#include "ofi/ingestion.hpp"
#include "ofi/metrics.hpp"
#include "ofi/rational.hpp"
#include "ofi/report_io.hpp"
#include "ofi/verification.hpp"

// The four subcommands of the `ofi` tool, written against streams so they
// can be driven from tests. Each returns the process exit status.
namespace ofi::commands {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct AuditOptions {
  std::string input;  // empty or "-" reads `in`
  Schema schema;
  bool flip = false;
  AuditConfig config;
  std::optional<std::size_t> sample;
  std::optional<std::uint64_t> seed;
  std::string out_report;  // empty writes the report to `out`
  std::string out_heatmap_ofi;
  std::string out_heatmap_di;
  std::string out_grid_csv;
};

// "grid.csv" -> {"grid.ofi.csv", "grid.di.csv"}.
inline std::array<std::string, 2> grid_csv_paths(const std::string& path) {
  std::string stem = path;
  if (stem.size() > 4 && stem.ends_with(".csv")) stem.resize(stem.size() - 4);
  return {stem + ".ofi.csv", stem + ".di.csv"};
}

namespace detail {

struct StageError {
  std::string stage;
  std::string message;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw Error("failed writing '" + path + "'");
}

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw StageError{name, e.what()};
  }
}

}  // namespace detail

inline int run_audit(const AuditOptions& opt, std::istream& in, std::ostream& out,
                     std::ostream& err) {
  using detail::stage;
  try {
    stage("config", [&] {
      opt.config.validate();
      if (opt.sample && !opt.seed) throw ConfigError("--sample requires --seed");
      return 0;
    });

    auto records = stage("parse", [&] {
      if (opt.input.empty() || opt.input == "-") return parse_records(in, opt.schema);
      std::ifstream file(opt.input, std::ios::binary);
      if (!file) throw Error("cannot open '" + opt.input + "'");
      return parse_records(file, opt.schema);
    });
    if (opt.flip) records = flip_polarity(std::move(records));
    if (opt.sample) {
      records = stage("sample", [&] { return sample_records(records, *opt.sample, *opt.seed); });
    }
    const auto table = stage("aggregate", [&] { return aggregate(records); });
    const auto report = stage("report", [&] { return build_report(table, opt.config); });

    stage("write", [&] {
      const auto text = serialize_report(report);
      if (opt.out_report.empty()) {
        out << text;
      } else {
        detail::write_file(opt.out_report, text);
      }
      if (!opt.out_heatmap_ofi.empty()) {
        detail::write_file(opt.out_heatmap_ofi, render_heatmap(report.ofi_grid));
      }
      if (!opt.out_heatmap_di.empty()) {
        detail::write_file(opt.out_heatmap_di, render_heatmap(report.di_grid));
      }
      if (!opt.out_grid_csv.empty()) {
        const auto paths = grid_csv_paths(opt.out_grid_csv);
        detail::write_file(paths[0], grid_to_csv(report.ofi_grid));
        detail::write_file(paths[1], grid_to_csv(report.di_grid));
      }
      return 0;
    });
  } catch (const detail::StageError& e) {
    err << "audit: " << e.stage << ": " << e.message << '\n';
    return kFailure;
  }
  return kOk;
}

struct ScenarioOptions {
  BinaryConfusion first;
  BinaryConfusion second;
  Rational ofi_threshold = kDefaultOfiThreshold;
  DiBand di_band;
};

inline std::string exact_and_decimal(const Rational& r) {
  return to_fraction_string(r) + " (" + to_decimal_string(r) + ")";
}

inline int run_scenario(const ScenarioOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    require_nonempty(opt.first, "group i");
    require_nonempty(opt.second, "group j");
    if (opt.ofi_threshold <= 0) throw ConfigError("OFI threshold must be positive");
    opt.di_band.validate();

    std::ostringstream s;
    for (const auto& [name, cm] : {std::pair{"i", opt.first}, std::pair{"j", opt.second}}) {
      s << "group " << name << ": tp=" << cm.tp << " fn=" << cm.fn << " fp=" << cm.fp
        << " tn=" << cm.tn << " n=" << cm.n() << '\n'
        << "  b    = " << exact_and_decimal(benefit(cm)) << '\n'
        << "  E[b] = " << exact_and_decimal(expected_benefit(cm)) << '\n'
        << "  B    = " << exact_and_decimal(marginal_benefit(cm)) << '\n';
    }
    const auto o = ofi(opt.first, opt.second);
    const auto d = disparate_impact(opt.first, opt.second);
    const auto ov = ofi_verdict(o, opt.ofi_threshold);
    const auto dv = four_fifths_verdict(d, opt.di_band);
    s << "OFI  = " << exact_and_decimal(o) << "  verdict: " << to_string(ov) << " (threshold "
      << to_fraction_string(opt.ofi_threshold) << ")\n";
    s << "DI   = ";
    switch (d.kind()) {
      case DiScore::Kind::Finite: s << exact_and_decimal(*d.value()); break;
      case DiScore::Kind::UndefinedContextualOne:
        s << "undefined, contextual 1 (1.00)";
        break;
      case DiScore::Kind::UndefinedZeroDenominator: s << "undefined (zero denominator)"; break;
    }
    s << "  verdict: " << to_string(dv) << " (band [" << to_fraction_string(opt.di_band.low)
      << ", " << to_fraction_string(opt.di_band.high) << "])\n";
    s << "diagnosis: " << to_string(diagnose(o, opt.ofi_threshold, dv)) << '\n';
    out << s.str();
  } catch (const std::exception& e) {
    err << "scenario: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

// The counting-based distribution is O(n^2); beyond this it stops being a
// desk-scale computation.
inline constexpr std::int64_t kMaxDistN = 100000;

struct DistOptions {
  std::int64_t n = 0;
  std::string out_csv;  // empty writes to `out`
};

inline int run_dist(const DistOptions& opt, std::ostream& out, std::ostream& err) {
  namespace cb = combinatorics;
  try {
    if (opt.n < 1) throw DomainError("n must be >= 1");
    if (opt.n > kMaxDistN) {
      throw DomainError("n must be <= " + std::to_string(kMaxDistN));
    }
    const auto dist = cb::marginal_benefit_distribution(opt.n);
    const auto stats = cb::b_stats(opt.n);

    std::ostringstream s;
    s << "score_numerator,score_denominator,multiplicity\n";
    for (const auto& [score, count] : dist.as_map()) {
      s << score.numerator() << ',' << score.denominator() << ',' << count << '\n';
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# n=%lld total=%llu mean=%s variance=%s (%.6f) std=%.6f mode=%s "
                  "triangular_std=%.6f\n",
                  static_cast<long long>(opt.n), static_cast<unsigned long long>(dist.total()),
                  to_fraction_string(stats.mean).c_str(),
                  to_fraction_string(stats.variance).c_str(), to_double(stats.variance), stats.std,
                  to_fraction_string(dist.mode()).c_str(), cb::triangular_reference_std());
    s << buf;

    if (opt.out_csv.empty()) {
      out << s.str();
    } else {
      detail::write_file(opt.out_csv, s.str());
      out << buf;
    }
  } catch (const std::exception& e) {
    err << "dist: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

struct VerifyOptions {
  std::int64_t n_min = 1;
  std::int64_t n_max = 40;
  unsigned workers = 1;
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<verification::IdentityReport> reports;
  try {
    reports = verification::run(opt.n_min, opt.n_max, opt.workers);
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << '\n';
    return kFailure;
  }
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << verification::describe(r.identity) << "  [n="
        << opt.n_min << ".." << opt.n_max << "]";
    if (!r.passed) {
      out << "  failing n:";
      for (auto n : r.failing_n) out << ' ' << n;
    }
    out << '\n';
  }
  out << (all ? "all identities hold\n" : "some identities FAILED\n");
  return all ? kOk : kFailure;
}

}  // namespace ofi::commands
