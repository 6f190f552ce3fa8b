#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ofi/errors.hpp"
#include "ofi/ingestion.hpp"
#include "ofi/metrics.hpp"
#include "ofi/rational.hpp"

// Pairwise OFI / DI grids over every pair of groups, with verdicts and a
// combined diagnosis per ordered pair.
namespace ofi {

enum class Metric { Ofi, Di };

inline std::string_view to_string(Metric m) { return m == Metric::Ofi ? "OFI" : "DI"; }

// Square grid; cell (i, j) is the metric of group_order[i] versus
// group_order[j]. OFI grids hold Rational cells, DI grids hold DiScore cells.
struct PairwiseMatrix {
  using Cell = std::variant<Rational, DiScore>;

  Metric metric = Metric::Ofi;
  std::vector<std::string> group_order;
  std::vector<Cell> cells;  // row-major

  std::size_t size() const noexcept { return group_order.size(); }

  const Cell& at(std::size_t i, std::size_t j) const { return cells.at(i * size() + j); }
  const Rational& ofi_at(std::size_t i, std::size_t j) const { return std::get<Rational>(at(i, j)); }
  const DiScore& di_at(std::size_t i, std::size_t j) const { return std::get<DiScore>(at(i, j)); }

  // Shape and cell-type checks. Throws Error when malformed.
  void validate() const {
    if (group_order.empty()) throw Error("pairwise matrix is empty");
    if (cells.size() != size() * size()) throw Error("pairwise matrix is not square");
    for (const auto& c : cells) {
      const bool ok = metric == Metric::Ofi ? std::holds_alternative<Rational>(c)
                                            : std::holds_alternative<DiScore>(c);
      if (!ok) throw Error("pairwise matrix cell type does not match its metric");
    }
  }

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;
};

// OFI: zero diagonal, antisymmetric. DI: diagonal is 1 (finite, or contextual
// for a group with no positive predictions), finite off-diagonal pairs are
// reciprocal.
inline bool satisfies_grid_invariants(const PairwiseMatrix& m) {
  m.validate();
  const auto k = m.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (m.metric == Metric::Ofi) {
        if (m.ofi_at(i, j) != -m.ofi_at(j, i)) return false;
        continue;
      }
      const auto& a = m.di_at(i, j);
      const auto& b = m.di_at(j, i);
      if (i == j) {
        if (a != DiScore::finite(1) && a != DiScore::undefined_contextual_one()) return false;
      } else if (a.is_finite() && b.is_finite() && *a.value() * *b.value() != 1) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

inline std::vector<std::string> resolve_order(const GroupTable& table,
                                              const std::vector<std::string>& requested) {
  if (table.groups.size() < 2) throw InsufficientGroupsError(table.groups.size());
  if (requested.empty()) {
    std::vector<std::string> order;
    for (const auto& [name, cm] : table.groups) order.push_back(name);
    return order;
  }
  std::set<std::string> seen;
  for (const auto& g : requested) {
    if (!table.groups.contains(g)) throw ConfigError("unknown group in order: '" + g + "'");
    if (!seen.insert(g).second) throw ConfigError("duplicate group in order: '" + g + "'");
  }
  if (requested.size() < 2) throw InsufficientGroupsError(requested.size());
  return requested;
}

}  // namespace detail

// Group order is lexicographic unless `order` names the groups to use.
inline PairwiseMatrix pairwise(const GroupTable& table, Metric metric,
                               const std::vector<std::string>& order = {}) {
  PairwiseMatrix m;
  m.metric = metric;
  m.group_order = detail::resolve_order(table, order);
  m.cells.reserve(m.size() * m.size());
  for (const auto& gi : m.group_order) {
    const auto& a = table.groups.at(gi);
    for (const auto& gj : m.group_order) {
      const auto& b = table.groups.at(gj);
      if (metric == Metric::Ofi) {
        m.cells.emplace_back(ofi(a, b));
      } else {
        m.cells.emplace_back(disparate_impact(a, b));
      }
    }
  }
  return m;
}

enum class Diagnosis {
  // |OFI| above threshold: the decision procedure itself treats the groups
  // differently.
  AlgorithmicBias,
  // |OFI| within threshold but DI outside its band: the disparity comes from
  // outside the decision procedure.
  SystemicDisparity,
  NoFinding,
};

inline std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::AlgorithmicBias: return "algorithmic_bias";
    case Diagnosis::SystemicDisparity: return "systemic_disparity";
    case Diagnosis::NoFinding: return "no_finding";
  }
  return "?";
}

inline Diagnosis diagnose(const Rational& ofi_value, const Rational& threshold,
                          BiasVerdict di_verdict) {
  if (abs(ofi_value) > threshold) return Diagnosis::AlgorithmicBias;
  if (indicates_bias(di_verdict)) return Diagnosis::SystemicDisparity;
  return Diagnosis::NoFinding;
}

struct AuditConfig {
  Rational ofi_threshold = kDefaultOfiThreshold;
  DiBand di_band;
  std::vector<std::string> group_order;  // empty: lexicographic

  void validate() const {
    if (ofi_threshold <= 0) throw ConfigError("OFI threshold must be positive");
    di_band.validate();
  }
};

struct GroupSummary {
  std::string name;
  BinaryConfusion confusion;
  Rational benefit;
  Rational expected_benefit;
  Rational marginal_benefit;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

struct PairFinding {
  std::string first;
  std::string second;
  Rational ofi;
  DiScore di = DiScore::undefined_contextual_one();
  BiasVerdict ofi_verdict = BiasVerdict::NoBiasIndicated;
  BiasVerdict di_verdict = BiasVerdict::NoBiasIndicated;
  Diagnosis diagnosis = Diagnosis::NoFinding;

  friend bool operator==(const PairFinding&, const PairFinding&) = default;
};

struct AuditReport {
  std::int64_t record_count = 0;
  std::vector<GroupSummary> groups;  // in grid order
  PairwiseMatrix ofi_grid;
  PairwiseMatrix di_grid;
  std::vector<PairFinding> pairs;  // every ordered pair i != j, row-major
  Rational ofi_threshold = kDefaultOfiThreshold;
  DiBand di_band;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

inline AuditReport build_report(const GroupTable& table, const AuditConfig& config = {}) {
  config.validate();
  AuditReport report;
  report.ofi_grid = pairwise(table, Metric::Ofi, config.group_order);
  report.di_grid = pairwise(table, Metric::Di, report.ofi_grid.group_order);
  report.ofi_threshold = config.ofi_threshold;
  report.di_band = config.di_band;
  report.record_count = table.total.n();

  const auto& order = report.ofi_grid.group_order;
  for (const auto& name : order) {
    const auto& cm = table.groups.at(name);
    report.groups.push_back(
        GroupSummary{name, cm, benefit(cm), expected_benefit(cm), marginal_benefit(cm)});
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (i == j) continue;
      PairFinding f;
      f.first = order[i];
      f.second = order[j];
      f.ofi = report.ofi_grid.ofi_at(i, j);
      f.di = report.di_grid.di_at(i, j);
      f.ofi_verdict = ofi_verdict(f.ofi, config.ofi_threshold);
      f.di_verdict = four_fifths_verdict(f.di, config.di_band);
      f.diagnosis = diagnose(f.ofi, config.ofi_threshold, f.di_verdict);
      report.pairs.push_back(std::move(f));
    }
  }
  return report;
}

}  // namespace ofi
