#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "ofi/audit.hpp"
#include "ofi/errors.hpp"
#include "ofi/metrics.hpp"
#include "ofi/rational.hpp"

// JSON serialization of audit reports and CSV export of pairwise grids.
// Rationals are written as {"num", "den", "approx"}; only num/den are read
// back. Keys come out sorted, so output is byte-stable.
namespace ofi {

namespace json_detail {

using nlohmann::json;

inline json rational(const Rational& r) {
  return json{{"num", r.numerator()}, {"den", r.denominator()}, {"approx", to_double(r)}};
}

inline Rational rational(const json& j) {
  const auto den = j.at("den").get<std::int64_t>();
  if (den <= 0) throw Error("rational with non-positive denominator");
  return Rational(j.at("num").get<std::int64_t>(), den);
}

inline json di(const DiScore& d) {
  json j{{"kind", std::string(to_string(d.kind()))}};
  if (d.kind() == DiScore::Kind::Finite) j["value"] = rational(*d.value());
  if (d.kind() == DiScore::Kind::UndefinedContextualOne) j["contextual_value"] = 1;
  return j;
}

inline DiScore di(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == to_string(DiScore::Kind::Finite)) return DiScore::finite(rational(j.at("value")));
  if (kind == to_string(DiScore::Kind::UndefinedContextualOne)) {
    return DiScore::undefined_contextual_one();
  }
  if (kind == to_string(DiScore::Kind::UndefinedZeroDenominator)) {
    return DiScore::undefined_zero_denominator();
  }
  throw Error("unknown DI kind '" + kind + "'");
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& j, const Enum (&values)[N]) {
  const auto text = j.get<std::string>();
  for (auto v : values) {
    if (to_string(v) == text) return v;
  }
  throw Error("unknown enum value '" + text + "'");
}

inline constexpr BiasVerdict kVerdicts[] = {BiasVerdict::BiasTowardFirst,
                                            BiasVerdict::BiasTowardSecond,
                                            BiasVerdict::NoBiasIndicated, BiasVerdict::Undefined};
inline constexpr Diagnosis kDiagnoses[] = {Diagnosis::AlgorithmicBias,
                                           Diagnosis::SystemicDisparity, Diagnosis::NoFinding};

inline json confusion(const BinaryConfusion& cm) {
  return json{{"tp", cm.tp}, {"fn", cm.fn}, {"fp", cm.fp}, {"tn", cm.tn}};
}

inline BinaryConfusion confusion(const json& j) {
  return BinaryConfusion{j.at("tp").get<std::int64_t>(), j.at("fn").get<std::int64_t>(),
                         j.at("fp").get<std::int64_t>(), j.at("tn").get<std::int64_t>()};
}

inline json grid(const PairwiseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      row.push_back(m.metric == Metric::Ofi ? rational(m.ofi_at(i, j)) : di(m.di_at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return json{{"metric", std::string(to_string(m.metric))},
              {"group_order", m.group_order},
              {"cells", std::move(rows)}};
}

inline PairwiseMatrix grid(const json& j, Metric expected) {
  PairwiseMatrix m;
  m.metric = j.at("metric").get<std::string>() == "OFI" ? Metric::Ofi : Metric::Di;
  if (m.metric != expected) throw Error("grid metric mismatch");
  m.group_order = j.at("group_order").get<std::vector<std::string>>();
  for (const auto& row : j.at("cells")) {
    for (const auto& cell : row) {
      if (m.metric == Metric::Ofi) {
        m.cells.emplace_back(rational(cell));
      } else {
        m.cells.emplace_back(di(cell));
      }
    }
  }
  m.validate();
  return m;
}

}  // namespace json_detail

inline nlohmann::json report_to_json(const AuditReport& r) {
  using namespace json_detail;
  json sizes = json::object();
  json groups = json::array();
  for (const auto& g : r.groups) {
    sizes[g.name] = g.confusion.n();
    groups.push_back(json{{"name", g.name},
                          {"confusion", confusion(g.confusion)},
                          {"benefit", rational(g.benefit)},
                          {"expected_benefit", rational(g.expected_benefit)},
                          {"marginal_benefit", rational(g.marginal_benefit)}});
  }
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(json{{"first", p.first},
                         {"second", p.second},
                         {"ofi", rational(p.ofi)},
                         {"di", di(p.di)},
                         {"ofi_verdict", std::string(to_string(p.ofi_verdict))},
                         {"di_verdict", std::string(to_string(p.di_verdict))},
                         {"diagnosis", std::string(to_string(p.diagnosis))}});
  }
  return json{
      {"dataset", {{"record_count", r.record_count}, {"group_sizes", std::move(sizes)}}},
      {"config",
       {{"ofi_threshold", rational(r.ofi_threshold)},
        {"di_band", {{"low", rational(r.di_band.low)}, {"high", rational(r.di_band.high)}}}}},
      {"groups", std::move(groups)},
      {"grids", {{"ofi", grid(r.ofi_grid)}, {"di", grid(r.di_grid)}}},
      {"pairs", std::move(pairs)},
  };
}

inline AuditReport report_from_json(const nlohmann::json& j) {
  using namespace json_detail;
  AuditReport r;
  r.record_count = j.at("dataset").at("record_count").get<std::int64_t>();
  const auto& cfg = j.at("config");
  r.ofi_threshold = rational(cfg.at("ofi_threshold"));
  r.di_band = DiBand{rational(cfg.at("di_band").at("low")), rational(cfg.at("di_band").at("high"))};
  for (const auto& g : j.at("groups")) {
    r.groups.push_back(GroupSummary{g.at("name").get<std::string>(), confusion(g.at("confusion")),
                                    rational(g.at("benefit")),
                                    rational(g.at("expected_benefit")),
                                    rational(g.at("marginal_benefit"))});
  }
  r.ofi_grid = grid(j.at("grids").at("ofi"), Metric::Ofi);
  r.di_grid = grid(j.at("grids").at("di"), Metric::Di);
  for (const auto& p : j.at("pairs")) {
    PairFinding f;
    f.first = p.at("first").get<std::string>();
    f.second = p.at("second").get<std::string>();
    f.ofi = rational(p.at("ofi"));
    f.di = di(p.at("di"));
    f.ofi_verdict = parse_enum(p.at("ofi_verdict"), kVerdicts);
    f.di_verdict = parse_enum(p.at("di_verdict"), kVerdicts);
    f.diagnosis = parse_enum(p.at("diagnosis"), kDiagnoses);
    r.pairs.push_back(std::move(f));
  }
  return r;
}

inline std::string serialize_report(const AuditReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

// Inverse of serialize_report. Throws Error on malformed input.
inline AuditReport parse_report(const std::string& text) {
  try {
    return report_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Exact values as fractions. Undefined DI cells are "undef"; the contextual
// DI of two zero-rate groups is "ctx:1".
inline std::string grid_to_csv(const PairwiseMatrix& m) {
  m.validate();
  std::ostringstream out;
  out << to_string(m.metric);
  for (const auto& g : m.group_order) out << ',' << detail::csv_field(g);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << detail::csv_field(m.group_order[i]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      out << ',';
      if (m.metric == Metric::Ofi) {
        out << to_fraction_string(m.ofi_at(i, j));
      } else {
        const auto& d = m.di_at(i, j);
        switch (d.kind()) {
          case DiScore::Kind::Finite: out << to_fraction_string(*d.value()); break;
          case DiScore::Kind::UndefinedContextualOne: out << "ctx:1"; break;
          case DiScore::Kind::UndefinedZeroDenominator: out << "undef"; break;
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ofi
