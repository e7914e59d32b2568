#include <gtest/gtest.h>

#include "ahp/format.hpp"
#include "ahp/hierarchy.hpp"
#include "fixtures/bank_study.hpp"

using ahp::GroupMap;

TEST(Hierarchy, ValidateAndChildren) {
  const auto h = fixture::hierarchy();
  EXPECT_NO_THROW(h.validate());
  EXPECT_EQ(h.children(h.goal), fixture::kCriteria);
  EXPECT_EQ(h.children("Resources"), fixture::kBanks);
  EXPECT_TRUE(h.is_node("Technology"));
  EXPECT_FALSE(h.is_node("NB1"));
  EXPECT_THROW(h.children("nowhere"), ahp::Error);

  ahp::Hierarchy dup{"g", {"a", "a"}, {}};
  EXPECT_THROW(dup.validate(), ahp::Error);
  ahp::Hierarchy no_criteria{"g", {}, {"x"}};
  EXPECT_THROW(no_criteria.validate(), ahp::Error);
}

TEST(Synthesize, BankScoresFromPublishedInputs) {
  const auto s = ahp::synthesize(fixture::hierarchy(), fixture::local_priorities());
  const std::map<std::string, double> expected = {
      {"NB1", 0.065563}, {"NB2", 0.063352}, {"BB1", 0.062812}, {"BB2", 0.06119},
      {"PB1", 0.060047}, {"PB2", 0.062918}, {"HB1", 0.063401}, {"HB2", 0.062344},
      {"FB1", 0.060087}, {"FB2", 0.063429}, {"GB1", 0.063917}, {"GB2", 0.063254},
      {"SB1", 0.062576}, {"SB2", 0.063324}, {"IB1", 0.059242}, {"IB2", 0.062544}};
  for (const auto& [bank, v] : expected) EXPECT_NEAR(s.score(bank), v, 1e-12) << bank;
  EXPECT_EQ(s.ranking.front(), "NB1");
  EXPECT_EQ(s.ranking.back(), "IB1");
  EXPECT_EQ(ahp::format_half_up(s.score("NB1"), 3), "0.066");
  EXPECT_EQ(ahp::format_half_up(s.score("GB1"), 3), "0.064");
}

TEST(Synthesize, ScoresSumToOneWhenColumnsDo) {
  const auto s = ahp::synthesize(fixture::hierarchy(), fixture::local_priorities());
  double total = 0;
  for (const auto& a : s.scores) total += a.score;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Synthesize, SingleCriterionReturnsItsColumn) {
  ahp::Hierarchy h{"g", {"only"}, {"x", "y"}};
  ahp::LocalPriorities lp{{Eigen::VectorXd::Ones(1), {"only"}, ahp::PriorityMethod::Direct}, {}};
  lp.per_criterion.emplace("only", ahp::PriorityVectord{Eigen::Vector2d(0.7, 0.3), {"x", "y"},
                                                        ahp::PriorityMethod::Direct});
  const auto s = ahp::synthesize(h, lp);
  EXPECT_DOUBLE_EQ(s.score("x"), 0.7);
  EXPECT_EQ(s.ranking, (std::vector<std::string>{"x", "y"}));
}

TEST(Synthesize, ShapeErrors) {
  auto lp = fixture::local_priorities();
  lp.per_criterion.erase("Technology");
  EXPECT_THROW(ahp::synthesize(fixture::hierarchy(), lp), ahp::Error);

  auto bad_sum = fixture::local_priorities();
  bad_sum.criteria_weights.weights(0) += 0.01;
  EXPECT_THROW(ahp::synthesize(fixture::hierarchy(), bad_sum), ahp::Error);
}

TEST(Rank, TiesBreakByName) {
  const auto s = ahp::make_global_scores({{"b", 0.3}, {"a", 0.3}, {"c", 0.4}});
  EXPECT_EQ(s.ranking, (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(ahp::rank(s), s.ranking);
}

TEST(Rollup, PublishedColumnCountryMeans) {
  const auto r = ahp::rollup_mean(fixture::published_scores(), fixture::kCountries, 3);
  EXPECT_NEAR(r.group("Norway").mean, 0.0645, 1e-12);
  EXPECT_NEAR(r.group("Germany").mean, 0.0635, 1e-12);
  EXPECT_NEAR(r.group("Italy").mean, 0.061, 1e-12);
  // 0.0645 is a true half and rounds up.
  EXPECT_EQ(ahp::format_half_up(r.group("Norway").mean, 3), "0.065");
  EXPECT_EQ(r.groups.front().name, "Norway");
  EXPECT_EQ(r.group("Norway").rank, 1);
  EXPECT_EQ(r.group("Germany").rank, 2);
  EXPECT_EQ(r.group("Hungary").rank, r.group("Spain").rank);
  EXPECT_EQ(r.groups.back().name, "Italy");
}

TEST(Rollup, SynthesizedCountryMeans) {
  const auto s = ahp::synthesize(fixture::hierarchy(), fixture::local_priorities());
  const auto r = ahp::rollup_mean(s, fixture::kCountries, 3);
  EXPECT_NEAR(r.group("Norway").mean, 0.0644575, 1e-12);
  EXPECT_NEAR(r.group("Poland").mean, 0.0614825, 1e-12);
  EXPECT_EQ(r.group("Norway").rank, 1);
  EXPECT_EQ(r.group("Germany").rank, 1);
  EXPECT_EQ(r.group("Hungary").rank, 3);
  EXPECT_EQ(r.group("Spain").rank, 3);
}

TEST(Rollup, SingletonGroupsEqualScores) {
  const auto s = ahp::synthesize(fixture::hierarchy(), fixture::local_priorities());
  GroupMap singles;
  for (const auto& b : fixture::kBanks) singles.push_back({b, {b}});
  const auto r = ahp::rollup_mean(s, singles);
  for (const auto& b : fixture::kBanks) EXPECT_EQ(r.group(b).mean, s.score(b));
  EXPECT_EQ(r.groups.front().name, "NB1");
}

TEST(Rollup, CompetitionRanking) {
  const auto s = ahp::make_global_scores({{"a", 0.5}, {"b", 0.2}, {"c", 0.2}, {"d", 0.1}});
  const auto r = ahp::rollup_mean(s, {{"A", {"a"}}, {"B", {"b"}}, {"C", {"c"}}, {"D", {"d"}}});
  EXPECT_EQ(r.group("A").rank, 1);
  EXPECT_EQ(r.group("B").rank, 2);
  EXPECT_EQ(r.group("C").rank, 2);
  EXPECT_EQ(r.group("D").rank, 4);
}

TEST(Rollup, PartitionErrors) {
  const auto s = ahp::make_global_scores({{"a", 0.5}, {"b", 0.5}});
  auto code = [&](const GroupMap& g) {
    try {
      ahp::rollup_mean(s, g);
    } catch (const ahp::Error& e) {
      return e.code();
    }
    return ahp::ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({{"G", {"a", "zz"}}, {"H", {"b"}}}), ahp::ErrorCode::UnknownAlternative);
  EXPECT_EQ(code({{"G", {"a", "b"}}, {"H", {"b"}}}), ahp::ErrorCode::OverlappingGroups);
  EXPECT_EQ(code({{"G", {"a"}}}), ahp::ErrorCode::ShapeMismatch);
  EXPECT_EQ(code({{"G", {"a", "b"}}, {"H", {}}}), ahp::ErrorCode::ShapeMismatch);
}
