#pragma once

// Published bank business-model study: the 24-component literature pool, the
// nine-component group weights, per-criterion bank priorities and the
// reported overall scores.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ahp/io.hpp"

namespace fixture {

inline const std::vector<std::string> kCriteria = {
    "Value Proposition", "Core Competency", "Financial Aspects",
    "Business Processes", "Target Customers", "Resources",
    "Technology", "Customer Interface", "Partner Network"};

inline const std::vector<double> kCriteriaWeights = {0.129, 0.127, 0.123, 0.120, 0.113,
                                                     0.110, 0.109, 0.094, 0.075};

inline const std::vector<std::string> kBanks = {"NB1", "NB2", "BB1", "BB2", "PB1", "PB2",
                                                "HB1", "HB2", "FB1", "FB2", "GB1", "GB2",
                                                "SB1", "SB2", "IB1", "IB2"};

// Rows follow kBanks, columns follow kCriteria.
inline const std::array<std::array<double, 9>, 16> kLocal = {{
    {0.067, 0.063, 0.068, 0.064, 0.066, 0.063, 0.064, 0.069, 0.067},
    {0.062, 0.064, 0.066, 0.061, 0.068, 0.061, 0.065, 0.061, 0.061},
    {0.064, 0.065, 0.066, 0.061, 0.057, 0.063, 0.069, 0.059, 0.059},
    {0.054, 0.062, 0.064, 0.068, 0.058, 0.059, 0.067, 0.059, 0.059},
    {0.063, 0.059, 0.059, 0.058, 0.059, 0.059, 0.061, 0.066, 0.056},
    {0.057, 0.066, 0.059, 0.064, 0.063, 0.063, 0.066, 0.062, 0.069},
    {0.069, 0.058, 0.067, 0.060, 0.069, 0.063, 0.059, 0.065, 0.059},
    {0.068, 0.061, 0.062, 0.064, 0.065, 0.059, 0.059, 0.062, 0.059},
    {0.054, 0.060, 0.058, 0.063, 0.058, 0.060, 0.066, 0.061, 0.063},
    {0.067, 0.056, 0.066, 0.065, 0.066, 0.068, 0.058, 0.059, 0.066},
    {0.070, 0.062, 0.059, 0.061, 0.063, 0.068, 0.062, 0.066, 0.065},
    {0.066, 0.069, 0.064, 0.062, 0.059, 0.061, 0.063, 0.059, 0.065},
    {0.067, 0.062, 0.062, 0.062, 0.062, 0.060, 0.062, 0.066, 0.059},
    {0.054, 0.068, 0.061, 0.062, 0.062, 0.069, 0.065, 0.067, 0.064},
    {0.055, 0.060, 0.053, 0.063, 0.065, 0.061, 0.056, 0.056, 0.067},
    {0.063, 0.065, 0.066, 0.062, 0.060, 0.063, 0.058, 0.063, 0.062},
}};

// Overall business-model score as printed, per bank.
inline const std::vector<double> kPublishedScores = {0.066, 0.063, 0.063, 0.061, 0.060, 0.063,
                                                     0.063, 0.062, 0.060, 0.063, 0.064, 0.063,
                                                     0.062, 0.064, 0.060, 0.062};

inline const ahp::GroupMap kCountries = {
    {"Norway", {"NB1", "NB2"}},  {"UK", {"BB1", "BB2"}},      {"Poland", {"PB1", "PB2"}},
    {"Hungary", {"HB1", "HB2"}}, {"France", {"FB1", "FB2"}},  {"Germany", {"GB1", "GB2"}},
    {"Spain", {"SB1", "SB2"}},   {"Italy", {"IB1", "IB2"}}};

// Country means as reported at three decimals.
inline const std::vector<std::pair<std::string, double>> kPublishedCountryMeans = {
    {"Norway", 0.064}, {"Germany", 0.064}, {"Hungary", 0.063}, {"Spain", 0.063},
    {"UK", 0.062},     {"Poland", 0.062},  {"France", 0.062},  {"Italy", 0.061}};

inline const std::vector<std::string> kPoolNames = {
    "Value proposition",       "Financial domain",     "Business processes",
    "Distribution channel",    "Market segment",       "Core competencies",
    "Supply chain management", "Resources",            "Value chain structure",
    "Customer interface",      "Strategy",             "Partner Network",
    "Organizational form",     "Governance form",      "Market communication",
    "Technology",              "Competitive position", "Empowered employee",
    "Mission",                 "Value exchange",       "Market model",
    "Implementation model",    "Thread model",         "Knowledge management"};

// Number of literature sources citing each pool component.
inline const std::vector<int> kPoolSourceCounts = {17, 15, 12, 11, 7, 6, 5, 5, 4, 3, 3, 3,
                                                   2,  2,  2,  1,  1, 1, 1, 1, 1, 1, 1, 1};

inline std::string item_id(std::size_t row) {
  return (row < 9 ? "i0" : "i") + std::to_string(row + 1);
}

// The nine components the panel settled on.
inline const std::vector<std::string> kShortlist = {"i01", "i02", "i03", "i05", "i06",
                                                    "i08", "i10", "i12", "i16"};

inline ahp::ItemPool item_pool() {
  ahp::ItemPool pool;
  for (std::size_t i = 0; i < kPoolNames.size(); ++i) {
    pool.items.push_back({item_id(i), kPoolNames[i], "", {}});
  }
  return pool;
}

inline ahp::Hierarchy hierarchy() {
  return {"Sustainable bank business model", kCriteria, kBanks};
}

inline ahp::PriorityVectord criteria_weights() {
  Eigen::VectorXd w(9);
  for (int i = 0; i < 9; ++i) w(i) = kCriteriaWeights[std::size_t(i)];
  return {w, kCriteria, ahp::PriorityMethod::Direct};
}

inline ahp::LocalPriorities local_priorities() {
  ahp::LocalPriorities lp{criteria_weights(), {}};
  for (std::size_t c = 0; c < kCriteria.size(); ++c) {
    Eigen::VectorXd v(16);
    for (std::size_t b = 0; b < kBanks.size(); ++b) v(Eigen::Index(b)) = kLocal[b][c];
    lp.per_criterion.emplace(kCriteria[c], ahp::PriorityVectord{v, kBanks, ahp::PriorityMethod::Direct});
  }
  return lp;
}

inline ahp::GlobalScores published_scores() {
  std::vector<ahp::ScoredAlternative> s;
  for (std::size_t b = 0; b < kBanks.size(); ++b) s.push_back({kBanks[b], kPublishedScores[b]});
  return ahp::make_global_scores(std::move(s));
}

// A study carrying the weights and bank priorities directly, with country groups.
inline ahp::Study study() {
  ahp::Study s;
  s.title = "Sustainability of bank business models";
  s.hierarchy = hierarchy();
  s.item_pool = item_pool();
  s.criteria_weights = criteria_weights();
  const auto lp = local_priorities();
  s.alternative_priorities = lp.per_criterion;
  s.groups = kCountries;
  return s;
}

inline ahp::Panel panel() {
  ahp::Panel p;
  for (int e = 1; e <= 16; ++e) p.experts.push_back((e < 10 ? "E0" : "E") + std::to_string(e));
  return p;
}

// Scripted sixteen-expert selections. Three runner-up components start above
// the majority line and drop out over the next two rounds, so the retained
// set shrinks 12 -> 10 -> 9 -> 9.
inline ahp::ItemSet scripted_vote(int round, const std::string& expert) {
  const int e = std::stoi(expert.substr(1)) - 1;
  auto quota = [&](const std::string& id) {
    for (const auto& s : kShortlist) {
      if (s == id) return 14;
    }
    if (id == "i04") return round == 1 ? 10 : round == 2 ? 9 : 5;
    if (id == "i07") return round == 1 ? 9 : 5;
    if (id == "i11") return round == 1 ? 8 : round == 2 ? 7 : 4;
    return 3;
  };
  ahp::ItemSet pick;
  for (std::size_t i = 0; i < kPoolNames.size(); ++i) {
    const std::string id = item_id(i);
    if ((e + int(i) * 5) % 16 < quota(id)) pick.insert(id);
  }
  return pick;
}

}  // namespace fixture
