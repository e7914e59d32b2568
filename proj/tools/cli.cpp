#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ahp/format.hpp"
#include "ahp/pipeline.hpp"
#include "ahp/random_index.hpp"
#include "ahp/service.hpp"

namespace ahp::cli {
namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

std::filesystem::path base_dir(const std::string& study_path) {
  return std::filesystem::path(study_path).parent_path();
}

void write_json(const std::string& path, const json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// validate ---------------------------------------------------------------

int cmd_validate(Context& ctx, const std::string& study_path) {
  const Study study = read_study_file(study_path);
  const JudgmentScale scale = JudgmentScale::saaty(study.config.strict_scale);
  std::size_t matrices = 0;
  int violations = 0;
  for (const auto& set : study.judgments) {
    for (const auto& [node, m] : set.matrices) {
      ++matrices;
      for (const auto& v : validate(m, scale).violations) {
        ++violations;
        ctx.err << set.respondent_id << " " << node << ": " << v.message << "\n";
      }
    }
  }
  ctx.out << "schema_version " << study.schema_version << "\n"
          << "criteria " << study.hierarchy.criteria.size() << "\n"
          << "alternatives " << study.hierarchy.alternatives.size() << "\n"
          << "items " << study.item_pool.items.size() << "\n"
          << "experts " << study.panel.size() << "\n"
          << "rounds " << study.rounds.size() << "\n"
          << "respondents " << study.judgments.size() << "\n"
          << "matrices " << matrices << "\n";
  return violations == 0 ? kExitOk : kExitValidation;
}

// priorities --------------------------------------------------------------

struct PrioritiesArgs {
  std::string study;
  std::string node;
  std::string method;
  std::optional<double> threshold;
  std::string out;
};

int cmd_priorities(Context& ctx, const PrioritiesArgs& a) {
  const Study study = read_study_file(a.study);
  const std::string node = a.node.empty() ? study.hierarchy.goal : a.node;
  if (!study.hierarchy.is_node(node)) {
    ctx.err << "error: unknown node '" << node << "'\n";
    return kExitValidation;
  }
  const PriorityMethod method =
      a.method.empty() ? study.config.method : parse_priority_method(a.method);
  const double threshold = a.threshold.value_or(study.config.threshold);
  const RandomIndexTable ri = resolve_ri_table(study, base_dir(a.study));
  const auto& labels = study.hierarchy.children(node);

  ctx.out << std::left << std::setw(14) << "respondent";
  for (const auto& l : labels) ctx.out << " " << std::setw(std::max<int>(7, int(l.size()))) << l;
  ctx.out << "  lambda_max     CI     CR  accepted\n";

  json rows = json::array();
  for (const auto& set : study.judgments) {
    auto it = set.matrices.find(node);
    if (it == set.matrices.end()) continue;
    const Analysis<double> an = analyze(it->second, method, ri, threshold);
    ctx.out << std::left << std::setw(14) << set.respondent_id;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      ctx.out << " " << std::setw(std::max<int>(7, int(labels[i].size())))
              << format_half_up(an.priorities.weights(Index(i)), 3);
    }
    ctx.out << std::right << std::setw(12) << format_half_up(an.consistency.lambda_max, 3)
            << std::setw(7) << format_half_up(an.consistency.ci, 3) << std::setw(7)
            << format_half_up(an.consistency.cr, 3) << "  "
            << (an.consistency.accepted ? "yes" : "no") << "\n";
    rows.push_back({{"respondent", set.respondent_id},
                    {"weights", to_json(an.priorities)},
                    {"consistency", to_json(an.consistency)}});
  }
  if (!a.out.empty()) {
    write_json(a.out, {{"kind", "priorities"},
                       {"node", node},
                       {"method", std::string(to_string(method))},
                       {"threshold", threshold},
                       {"respondents", std::move(rows)}});
  }
  return kExitOk;
}

// aggregate ---------------------------------------------------------------

struct AggregateArgs {
  std::string study;
  std::string node;
  std::optional<double> threshold;
  std::string method;
  std::string out;
};

int cmd_aggregate(Context& ctx, const AggregateArgs& a) {
  const Study study = read_study_file(a.study);
  const std::string node = a.node.empty() ? study.hierarchy.goal : a.node;
  if (!study.hierarchy.is_node(node)) {
    ctx.err << "error: unknown node '" << node << "'\n";
    return kExitValidation;
  }
  FilterOptions options = filter_options(study, a.threshold);
  if (!a.method.empty()) options.method = parse_priority_method(a.method);
  const RandomIndexTable ri = resolve_ri_table(study, base_dir(a.study));
  if (study.judgments.empty()) {
    ctx.err << "error: empty panel, no judgments to aggregate\n";
    return kExitValidation;
  }
  const NodePriorities np = group_priorities(study.judgments, node, options, ri);
  const auto rejected = np.report.rejected_respondents();
  ctx.out << "accepted: " << np.report.accepted << " of " << np.report.total << "\n"
          << "rejected: " << rejected.size() << "\n";
  ReportInput in;
  in.criteria_weights = np.group;
  in.filter = np.report;
  const Report report = emit_report(in);
  ctx.out << "\n" << report.table;
  if (!a.out.empty()) {
    json doc = report.document;
    doc["node"] = node;
    write_json(a.out, doc);
  }
  return kExitOk;
}

// synthesize --------------------------------------------------------------

int cmd_synthesize(Context& ctx, const std::string& study_path, std::optional<double> threshold,
                   const std::string& out_path) {
  const Study study = read_study_file(study_path);
  if (study.hierarchy.alternatives.empty()) {
    ctx.err << "error: no alternatives in the hierarchy; nothing to synthesize\n";
    return kExitValidation;
  }
  const RandomIndexTable ri = resolve_ri_table(study, base_dir(study_path));
  const FilterOptions options = filter_options(study, threshold);
  ReportInput in;
  std::optional<FilterReport> filter;
  in.criteria_weights = study_criteria_weights(study, options, ri, &filter);
  in.filter = filter;
  in.hierarchy = study.hierarchy;
  in.local = study_local_priorities(study, options, ri);
  in.scores = synthesize(study.hierarchy, *in.local);
  if (!study.groups.empty()) in.rollup = rollup_mean(*in.scores, study.groups, 3);
  const Report report = emit_report(in);
  ctx.out << report.table;
  if (!out_path.empty()) write_json(out_path, report.document);
  return kExitOk;
}

// ri-estimate -------------------------------------------------------------

struct RiArgs {
  int order = 0;
  int max_order = 0;
  std::int64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

int cmd_ri_estimate(Context& ctx, const RiArgs& a) {
  if (!a.seed) {
    ctx.err << "error: --seed is required for reproducible estimates\n";
    return kExitValidation;
  }
  if ((a.order == 0) == (a.max_order == 0)) {
    ctx.err << "error: give exactly one of --order or --max-order\n";
    return kExitValidation;
  }
  RandomIndexOptions options;
  options.threads = a.threads;
  std::vector<RIEstimate> estimates;
  std::optional<RandomIndexTable> table;
  if (a.order) {
    estimates.push_back(estimate_random_index(a.order, a.samples, *a.seed, options));
  } else {
    table = estimate_random_index_table(a.max_order, a.samples, *a.seed, &estimates, options);
  }
  ctx.out << std::left << std::setw(4) << "n" << std::right << std::setw(18) << "RI"
          << std::setw(16) << "std_error" << std::setw(12) << "samples" << "\n";
  for (const auto& e : estimates) {
    ctx.out << std::left << std::setw(4) << e.n << std::right << std::setw(18)
            << format_roundtrip(e.mean_ci) << std::setw(16) << format_half_up(e.std_error, 6)
            << std::setw(12) << e.samples << "\n";
  }
  if (!a.out.empty()) {
    if (!table) {
      std::map<int, double> values{{a.order, estimates.front().mean_ci}};
      table.emplace(std::move(values), RIProvenance::DerivedMonteCarlo);
    }
    json doc = random_index_table_to_json(*table, estimates);
    write_json(a.out, doc);
  }
  return kExitOk;
}

// delphi ------------------------------------------------------------------

struct DelphiArgs {
  std::string study;
  std::string expert;
  std::string items;
  std::string comment;
  std::optional<double> fraction;
};

int cmd_delphi(Context& ctx, const std::string& action, const DelphiArgs& a) {
  Study study = read_study_file(a.study);
  if (a.fraction) study.config.retention_fraction = *a.fraction;
  DelphiStudy delphi = delphi_state(study);
  if (action == "open") {
    const auto& round = delphi.open_round();
    ctx.out << "round " << round.round_number << " open\n";
    for (const auto& [item, count] : round.feedback) ctx.out << "  " << item << " " << count << "\n";
  } else if (action == "vote") {
    std::optional<std::string> comment;
    if (!a.comment.empty()) comment = a.comment;
    const auto items = split_list(a.items);
    delphi.record_vote(a.expert, ItemSet(items.begin(), items.end()), comment);
    ctx.out << "vote recorded for round " << delphi.open()->round_number << "\n";
  } else if (action == "close") {
    const CloseResult r = delphi.close_round();
    ctx.out << "round " << delphi.last_closed()->round_number << " closed\n"
            << "retained " << r.retained.size() << (r.converged ? " (converged)" : "") << "\n";
    for (const auto& item : r.retained) ctx.out << "  " << item << "\n";
  } else {
    for (const auto& r : delphi.rounds()) {
      ctx.out << "round " << r.round_number << " " << to_string(r.status) << " voters "
              << r.votes.size();
      if (r.status == RoundStatus::Closed) {
        ctx.out << " retained " << r.retained.size() << (r.converged ? " converged" : "");
      }
      ctx.out << "\n";
    }
    if (delphi.rounds().empty()) ctx.out << "no rounds\n";
    return kExitOk;
  }
  store_delphi(study, delphi);
  write_study_file(a.study, study);
  return kExitOk;
}

// import ------------------------------------------------------------------

int cmd_import(Context& ctx, const std::string& study_path, const std::string& csv_path,
               const std::string& out_path) {
  Study study = read_study_file(study_path);
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + csv_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto sets = parse_judgments_csv(buf.str(), study.hierarchy);
  for (auto& s : sets) {
    auto it = std::find_if(study.judgments.begin(), study.judgments.end(),
                           [&](const JudgmentSet& j) { return j.respondent_id == s.respondent_id; });
    if (it == study.judgments.end()) {
      study.judgments.push_back(std::move(s));
    } else {
      for (auto& [node, m] : s.matrices) it->matrices.insert_or_assign(node, std::move(m));
    }
  }
  // round-trip through the parser so the merged study is fully validated
  study = parse_study(emit_study(study));
  write_study_file(out_path.empty() ? study_path : out_path, study);
  ctx.out << "imported " << sets.size() << " respondent(s)\n";
  return kExitOk;
}

// serve -------------------------------------------------------------------

int cmd_serve(Context& ctx, const std::string& study_path, const std::string& host,
              std::optional<int> port, const std::string& facilitator, bool snapshot) {
  const Study study = read_study_file(study_path);
  if (!port) {
    if (const char* env = std::getenv("AHP_PORT")) port = std::atoi(env);
  }
  const int p = port.value_or(8080);
  const RandomIndexTable ri = resolve_ri_table(study, base_dir(study_path));
  Session session(study, snapshot ? std::optional<std::filesystem::path>(study_path) : std::nullopt,
                  ri, facilitator);
  ctx.err << "serving " << study_path << " on " << host << ":" << p << "\n";
  if (!serve(session, host, p)) {
    ctx.err << "error: cannot listen on " << host << ":" << p << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Group AHP toolkit: Delphi shortlisting, pairwise priorities, consistency "
               "screening, aggregation and synthesis.\n"
               "Flags override the study file's config, which overrides built-in defaults."};
  app.name("ahp");
  app.require_subcommand(1);

  std::string study_path;
  std::function<int()> action;

  auto* validate_cmd = app.add_subcommand("validate", "Parse a study and check every matrix");
  validate_cmd->add_option("--study", study_path, "Study JSON")->required();
  validate_cmd->callback([&] { action = [&] { return cmd_validate(ctx, study_path); }; });

  PrioritiesArgs pa;
  auto* prio = app.add_subcommand("priorities", "Per-respondent weights and consistency");
  prio->add_option("--study", pa.study, "Study JSON")->required();
  prio->add_option("--node", pa.node, "Hierarchy node (default: goal)");
  prio->add_option("--method", pa.method, "eigenvector | geometric")
      ->check(CLI::IsMember({"eigenvector", "geometric"}));
  prio->add_option("--threshold", pa.threshold, "CR acceptance threshold (default 0.12)");
  prio->add_option("--out", pa.out, "Write machine-readable JSON here");
  prio->callback([&] { action = [&] { return cmd_priorities(ctx, pa); }; });

  AggregateArgs aa;
  auto* agg = app.add_subcommand("aggregate", "Screen by CR and aggregate the panel");
  agg->add_option("--study", aa.study, "Study JSON")->required();
  agg->add_option("--node", aa.node, "Hierarchy node (default: goal)");
  agg->add_option("--threshold", aa.threshold, "CR acceptance threshold (default 0.12)");
  agg->add_option("--method", aa.method, "eigenvector | geometric")
      ->check(CLI::IsMember({"eigenvector", "geometric"}));
  agg->add_option("--out", aa.out, "Write machine-readable JSON here");
  agg->callback([&] { action = [&] { return cmd_aggregate(ctx, aa); }; });

  std::optional<double> syn_threshold;
  std::string syn_out;
  auto* syn = app.add_subcommand("synthesize", "Global alternative scores and group means");
  syn->add_option("--study", study_path, "Study JSON")->required();
  syn->add_option("--threshold", syn_threshold, "CR acceptance threshold (default 0.12)");
  syn->add_option("--out", syn_out, "Write machine-readable JSON here");
  syn->callback([&] { action = [&] { return cmd_synthesize(ctx, study_path, syn_threshold, syn_out); }; });

  RiArgs ra;
  auto* ri = app.add_subcommand("ri-estimate", "Monte Carlo random index");
  ri->add_option("--order", ra.order, "Single order 1..15")->check(CLI::Range(1, 15));
  ri->add_option("--max-order", ra.max_order, "Orders 1..N as a table")->check(CLI::Range(1, 15));
  ri->add_option("--samples", ra.samples, "Samples per order")->check(CLI::PositiveNumber);
  ri->add_option("--seed", ra.seed, "RNG seed (required)");
  ri->add_option("--threads", ra.threads, "Worker threads (0 = all cores)");
  ri->add_option("--out", ra.out, "Write a random index table JSON here");
  ri->callback([&] { action = [&] { return cmd_ri_estimate(ctx, ra); }; });

  DelphiArgs da;
  std::string delphi_action;
  auto* del = app.add_subcommand("delphi", "Manage Delphi rounds stored in a study file");
  del->add_option("action", delphi_action, "open | vote | close | status")
      ->required()
      ->check(CLI::IsMember({"open", "vote", "close", "status"}));
  del->add_option("--study", da.study, "Study JSON (updated in place)")->required();
  del->add_option("--expert", da.expert, "Expert id (vote)");
  del->add_option("--items", da.items, "Comma-separated item ids (vote)");
  del->add_option("--comment", da.comment, "Free-text remark relayed anonymously (vote)");
  del->add_option("--fraction", da.fraction, "Retention fraction (close)");
  del->callback([&] {
    if (delphi_action == "vote" && da.expert.empty()) throw CLI::ValidationError("--expert is required for vote");
    action = [&] { return cmd_delphi(ctx, delphi_action, da); };
  });

  std::string csv_path, import_out;
  auto* imp = app.add_subcommand("import", "Merge CSV questionnaire rows into a study");
  imp->add_option("--study", study_path, "Study JSON")->required();
  imp->add_option("--csv", csv_path, "CSV: respondent,node,first,second,side,magnitude")->required();
  imp->add_option("--out", import_out, "Output study (default: update in place)");
  imp->callback([&] { action = [&] { return cmd_import(ctx, study_path, csv_path, import_out); }; });

  std::string host = "127.0.0.1", facilitator;
  std::optional<int> port;
  bool no_snapshot = false;
  auto* srv = app.add_subcommand("serve", "HTTP session service for the elicitation UI");
  srv->add_option("--study", study_path, "Study JSON")->required();
  srv->add_option("--host", host, "Bind address");
  srv->add_option("--port", port, "Port (default $AHP_PORT or 8080)");
  srv->add_option("--facilitator-token", facilitator, "Token required to open/close rounds");
  srv->add_flag("--no-snapshot", no_snapshot, "Do not write mutations back to the study file");
  srv->callback([&] {
    action = [&] { return cmd_serve(ctx, study_path, host, port, facilitator, !no_snapshot); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitValidation;
  }

  try {
    return action ? action() : kExitValidation;
  } catch (const StudyError& e) {
    err << "error: " << to_string(e.code()) << "\n";
    for (const auto& i : e.issues()) err << "  " << i.location << ": " << i.message << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ahp::cli
