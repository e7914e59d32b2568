#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ahp/format.hpp"
#include "ahp/io.hpp"

namespace ahp {

json to_json(const PriorityVectord& v) {
  json weights = json::object();
  for (Index i = 0; i < v.size(); ++i) weights[v.labels[std::size_t(i)]] = v.weights(i);
  return {{"method", std::string(to_string(v.method))}, {"weights", std::move(weights)}};
}

json to_json(const ConsistencyReport& r) {
  return {{"n", r.n},           {"lambda_max", r.lambda_max}, {"ci", r.ci},
          {"ri", r.ri},         {"cr", r.cr},                 {"threshold", r.threshold},
          {"accepted", r.accepted}};
}

json to_json(const FilterReport& r) {
  json rejected = json::array();
  for (const auto& x : r.rejected) {
    rejected.push_back({{"respondent", x.respondent_id}, {"node", x.node}, {"cr", x.cr}});
  }
  return {{"total", r.total},         {"accepted", r.accepted}, {"salvaged", r.salvaged},
          {"threshold", r.threshold}, {"rejected", std::move(rejected)}};
}

json to_json(const GlobalScores& s) {
  json scores = json::object();
  for (const auto& a : s.scores) scores[a.name] = a.score;
  return {{"scores", std::move(scores)}, {"ranking", s.ranking}};
}

json to_json(const GroupRollup& r) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"name", g.name}, {"members", g.members}, {"mean", g.mean}, {"rank", g.rank}});
  }
  return {{"groups", std::move(groups)}};
}

namespace {

std::size_t width_of(const std::vector<std::string>& names, std::size_t floor) {
  std::size_t w = floor;
  for (const auto& n : names) w = std::max(w, n.size());
  return w;
}

}  // namespace

Report emit_report(const ReportInput& in, int decimals) {
  Report report;
  json& doc = report.document;
  doc["kind"] = "report";
  std::ostringstream t;
  auto fmt = [&](double v) { return format_half_up(v, decimals); };
  const std::size_t num_w = std::size_t(decimals) + 3;

  if (in.criteria_weights) {
    const auto& w = *in.criteria_weights;
    std::vector<Index> order(std::size_t(w.size()));
    for (Index i = 0; i < w.size(); ++i) order[std::size_t(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (w.weights(a) != w.weights(b)) return w.weights(a) > w.weights(b);
      return w.labels[std::size_t(a)] < w.labels[std::size_t(b)];
    });
    const std::size_t name_w = width_of(w.labels, 9);
    json rows = json::array();
    t << "Criteria weights\n"
      << std::left << std::setw(6) << "Rank" << std::setw(int(name_w + 2)) << "Criterion"
      << std::right << std::setw(int(num_w)) << "Weight" << "\n";
    int rank = 0;
    for (Index i : order) {
      const auto& name = w.labels[std::size_t(i)];
      rows.push_back({{"rank", ++rank}, {"name", name}, {"weight", w.weights(i)}});
      t << std::left << std::setw(6) << rank << std::setw(int(name_w + 2)) << name << std::right
        << std::setw(int(num_w)) << fmt(w.weights(i)) << "\n";
    }
    t << std::left << std::setw(6) << "" << std::setw(int(name_w + 2)) << "Total" << std::right
      << std::setw(int(num_w)) << fmt(w.weights.sum()) << "\n";
    doc["criteria"] = std::move(rows);
    doc["criteria_total"] = w.weights.sum();
    doc["criteria_method"] = std::string(to_string(w.method));
  }

  if (in.filter) {
    const auto& f = *in.filter;
    doc["filter"] = to_json(f);
    t << (t.tellp() > 0 ? "\n" : "") << "Screening: " << f.accepted << " of " << f.total
      << " accepted at CR <= " << format_roundtrip(f.threshold);
    const auto ids = f.rejected_respondents();
    if (!ids.empty()) t << "; " << ids.size() << " rejected";
    t << "\n";
    for (const auto& r : f.rejected) {
      t << "  rejected " << r.respondent_id << " at " << r.node << " (CR " << fmt(r.cr) << ")\n";
    }
  }

  if (in.hierarchy && in.local && in.scores && !in.hierarchy->alternatives.empty()) {
    const auto& h = *in.hierarchy;
    const std::size_t alt_w = width_of(h.alternatives, 11);
    std::vector<std::size_t> col_w;
    for (const auto& c : h.criteria) col_w.push_back(std::max(c.size(), num_w));
    json grid_rows = json::array();
    std::vector<double> totals(h.criteria.size(), 0.0);
    double score_total = 0.0;
    t << (t.tellp() > 0 ? "\n" : "") << "Alternative scores\n"
      << std::left << std::setw(int(alt_w + 2)) << "Alternative";
    for (std::size_t c = 0; c < h.criteria.size(); ++c)
      t << std::right << std::setw(int(col_w[c] + 2)) << h.criteria[c];
    t << std::setw(int(num_w + 2)) << "Score" << "\n";
    for (const auto& alt : h.alternatives) {
      json local = json::array();
      t << std::left << std::setw(int(alt_w + 2)) << alt;
      for (std::size_t c = 0; c < h.criteria.size(); ++c) {
        const double v = in.local->per_criterion.at(h.criteria[c]).weight(alt);
        totals[c] += v;
        local.push_back(v);
        t << std::right << std::setw(int(col_w[c] + 2)) << fmt(v);
      }
      const double s = in.scores->score(alt);
      score_total += s;
      t << std::setw(int(num_w + 2)) << fmt(s) << "\n";
      grid_rows.push_back({{"alternative", alt}, {"local", std::move(local)}, {"score", s}});
    }
    t << std::left << std::setw(int(alt_w + 2)) << "Total";
    for (std::size_t c = 0; c < h.criteria.size(); ++c)
      t << std::right << std::setw(int(col_w[c] + 2)) << fmt(totals[c]);
    t << std::setw(int(num_w + 2)) << fmt(score_total) << "\n";
    doc["grid"] = {{"criteria", h.criteria},
                   {"rows", std::move(grid_rows)},
                   {"column_totals", totals},
                   {"score_total", score_total}};
  }

  if (in.scores) {
    doc["scores"] = to_json(*in.scores);
    t << (t.tellp() > 0 ? "\n" : "") << "Ranking\n";
    int pos = 0;
    for (const auto& name : in.scores->ranking) {
      t << std::right << std::setw(4) << ++pos << "  " << std::left << std::setw(12) << name
        << std::right << std::setw(int(num_w)) << fmt(in.scores->score(name)) << "\n";
    }
  }

  if (in.rollup) {
    doc["rollup"] = to_json(*in.rollup);
    std::vector<std::string> names;
    for (const auto& g : in.rollup->groups) names.push_back(g.name);
    const std::size_t name_w = width_of(names, 5);
    t << (t.tellp() > 0 ? "\n" : "") << "Group means\n"
      << std::left << std::setw(6) << "Rank" << std::setw(int(name_w + 2)) << "Group" << std::right
      << std::setw(int(num_w)) << "Mean" << "  Members\n";
    for (const auto& g : in.rollup->groups) {
      t << std::left << std::setw(6) << g.rank << std::setw(int(name_w + 2)) << g.name
        << std::right << std::setw(int(num_w)) << fmt(g.mean) << "  ";
      for (std::size_t i = 0; i < g.members.size(); ++i) t << (i ? ", " : "") << g.members[i];
      t << "\n";
    }
  }

  if (t.tellp() == 0) t << "Nothing to report\n";
  report.table = t.str();
  return report;
}

}  // namespace ahp
