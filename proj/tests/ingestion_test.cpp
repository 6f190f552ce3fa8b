#include "ofi/ingestion.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ofi/metrics.hpp"

namespace ofi {
namespace {

std::vector<PredictionRecord> parse(const std::string& text, const Schema& schema = {}) {
  std::istringstream in(text);
  return parse_records(in, schema);
}

std::vector<PredictionRecord> repeat(const std::string& g, bool label, bool pred, int count) {
  return std::vector<PredictionRecord>(static_cast<std::size_t>(count), {g, label, pred});
}

std::vector<PredictionRecord> concat(std::initializer_list<std::vector<PredictionRecord>> parts) {
  std::vector<PredictionRecord> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

TEST(ParseRecords, MapsConfiguredColumns) {
  const Schema schema{"race", "two_year_recid", "prediction", ','};
  const auto records = parse("race,two_year_recid,prediction\nAfrican-American,0,1\n", schema);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0], (PredictionRecord{"African-American", false, true}));
}

TEST(ParseRecords, PreservesOrderAndTrims) {
  const auto records = parse(
      "label,group,prediction,extra\n"
      "1, a ,1,x\n"
      "0,b,0,y\r\n"
      "\n"
      "1,a, 0 ,z\n"
      "0,\"b\",1,w\n");
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0], (PredictionRecord{"a", true, true}));
  EXPECT_EQ(records[1], (PredictionRecord{"b", false, false}));
  EXPECT_EQ(records[2], (PredictionRecord{"a", true, false}));
  EXPECT_EQ(records[3], (PredictionRecord{"b", false, true}));
}

TEST(ParseRecords, QuotedDelimiterAndCustomDelimiter) {
  const auto quoted = parse("group,label,prediction\n\"Smith, J\",1,1\n");
  EXPECT_EQ(quoted[0].group, "Smith, J");
  const auto tabbed = parse("group\tlabel\tprediction\nx\t0\t1\n", Schema{"group", "label", "prediction", '\t'});
  EXPECT_EQ(tabbed[0], (PredictionRecord{"x", false, true}));
}

TEST(ParseRecords, GroupsAreCaseSensitive) {
  const auto table = aggregate(parse("group,label,prediction\nWhite,1,1\nwhite,1,1\n"));
  EXPECT_EQ(table.groups.size(), 2u);
}

TEST(ParseRecords, MissingColumn) {
  try {
    parse("group,label,pred\na,1,1\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), "prediction");
  }
}

TEST(ParseRecords, NonBinaryValueReportsRow) {
  try {
    parse("group,label,prediction\na,1,1\nb,0,yes\n");
    FAIL();
  } catch (const RowError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_NE(std::string(e.what()).find("yes"), std::string::npos);
  }
  EXPECT_THROW(parse("group,label,prediction\na,2,1\n"), RowError);
  EXPECT_THROW(parse("group,label,prediction\na,,1\n"), RowError);
}

TEST(ParseRecords, MissingGroupIsRejected) {
  EXPECT_THROW(parse("group,label,prediction\n  ,1,1\n"), RowError);
  EXPECT_THROW(parse("group,label,prediction\na,1\n"), RowError);
}

TEST(ParseRecords, EmptyInput) {
  EXPECT_THROW(parse(""), EmptyDatasetError);
  EXPECT_THROW(parse("group,label,prediction\n"), EmptyDatasetError);
  EXPECT_THROW(parse("group,label,prediction\n\n\n"), EmptyDatasetError);
}

TEST(FlipPolarity, ComplementsAndIsInvolution) {
  const std::vector<PredictionRecord> records{{"g", true, false}, {"h", false, false}};
  const auto flipped = flip_polarity(records);
  EXPECT_EQ(flipped[0], (PredictionRecord{"g", false, true}));
  EXPECT_EQ(flipped[1], (PredictionRecord{"h", true, true}));
  EXPECT_EQ(flip_polarity(flipped), records);
}

TEST(FlipPolarity, SwapsCellsOnTwentyRecordFixture) {
  const auto records = concat({repeat("a", true, true, 3), repeat("a", true, false, 2),
                               repeat("a", false, true, 4), repeat("a", false, false, 1),
                               repeat("b", true, true, 1), repeat("b", true, false, 5),
                               repeat("b", false, true, 0), repeat("b", false, false, 4)});
  ASSERT_EQ(records.size(), 20u);
  const auto plain = aggregate(records);
  const auto flipped = aggregate(flip_polarity(records));
  for (const auto& [g, cm] : plain.groups) {
    const auto& f = flipped.groups.at(g);
    EXPECT_EQ(f.tp, cm.tn);
    EXPECT_EQ(f.tn, cm.tp);
    EXPECT_EQ(f.fp, cm.fn);
    EXPECT_EQ(f.fn, cm.fp);
    EXPECT_EQ(marginal_benefit(f), -marginal_benefit(cm));
  }
}

TEST(Aggregate, ReferenceScenarioA) {
  const auto records = concat({repeat("i", true, true, 1), repeat("i", false, false, 5),
                               repeat("j", true, true, 7), repeat("j", false, true, 1),
                               repeat("j", false, false, 10)});
  const auto table = aggregate(records);
  EXPECT_EQ(table.groups.at("i"), (BinaryConfusion{1, 0, 0, 5}));
  EXPECT_EQ(table.groups.at("j"), (BinaryConfusion{7, 0, 1, 10}));
  EXPECT_EQ(table.total, (BinaryConfusion{8, 0, 1, 15}));
}

TEST(Aggregate, SingleRecord) {
  const auto table = aggregate({{"g", true, false}});
  EXPECT_EQ(table.groups.at("g"), (BinaryConfusion{0, 1, 0, 0}));
}

TEST(Aggregate, Empty) { EXPECT_THROW(aggregate({}), EmptyDatasetError); }

TEST(Aggregate, Properties) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> group(0, 4);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PredictionRecord> records(1 + trial % 97);
    for (auto& r : records) r = {"g" + std::to_string(group(rng)), coin(rng), coin(rng)};
    const auto table = aggregate(records);

    std::int64_t total = 0;
    BinaryConfusion sum;
    for (const auto& [g, cm] : table.groups) {
      total += cm.n();
      sum += cm;
      std::int64_t preds = 0;
      std::int64_t labels = 0;
      std::int64_t members = 0;
      for (const auto& r : records) {
        if (r.group != g) continue;
        ++members;
        preds += r.prediction;
        labels += r.label;
      }
      ASSERT_EQ(benefit(cm), Rational(preds, members));
      ASSERT_EQ(expected_benefit(cm), Rational(labels, members));
    }
    ASSERT_EQ(total, static_cast<std::int64_t>(records.size()));
    ASSERT_EQ(sum, table.total);

    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ASSERT_EQ(aggregate(shuffled), table);

    const auto flipped = aggregate(flip_polarity(records));
    for (const auto& [g, cm] : table.groups) {
      ASSERT_EQ(marginal_benefit(flipped.groups.at(g)), -marginal_benefit(cm));
    }
  }
}

TEST(GroupTable, FromMatricesRejectsEmptyGroups) {
  EXPECT_THROW(GroupTable::from_matrices({{"a", {1, 0, 0, 0}}, {"b", {}}}), EmptyGroupError);
  const auto t = GroupTable::from_matrices({{"a", {1, 2, 3, 4}}, {"b", {4, 3, 2, 1}}});
  EXPECT_EQ(t.total, (BinaryConfusion{5, 5, 5, 5}));
}

TEST(SampleRecords, DeterministicSubsetInOriginalOrder) {
  std::vector<PredictionRecord> records;
  for (int i = 0; i < 100; ++i) records.push_back({"g" + std::to_string(i), i % 2 == 0, i % 3 == 0});
  const auto a = sample_records(records, 60, 7);
  const auto b = sample_records(records, 60, 7);
  const auto c = sample_records(records, 60, 8);
  EXPECT_EQ(a.size(), 60u);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  auto pos = [&](const PredictionRecord& r) {
    return std::find(records.begin(), records.end(), r) - records.begin();
  };
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(pos(a[i - 1]), pos(a[i]));
  EXPECT_EQ(sample_records(records, 100, 1), records);
  EXPECT_TRUE(sample_records(records, 0, 1).empty());
  EXPECT_THROW(sample_records(records, 101, 1), ConfigError);
}

TEST(SampleRecords, RoughlyUniform) {
  std::vector<PredictionRecord> records;
  for (int i = 0; i < 10; ++i) records.push_back({std::to_string(i), false, false});
  std::vector<int> hits(10, 0);
  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    for (const auto& r : sample_records(records, 3, seed)) ++hits[std::stoul(r.group)];
  }
  // Expected 1500 each; 5 sigma is about 160.
  for (int h : hits) EXPECT_NEAR(h, 1500, 160);
}

}  // namespace
}  // namespace ofi
