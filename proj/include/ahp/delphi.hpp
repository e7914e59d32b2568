#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ahp/error.hpp"

namespace ahp {

struct PoolItem {
  std::string id;
  std::string name;
  std::string description;
  std::vector<std::string> sources;

  friend bool operator==(const PoolItem&, const PoolItem&) = default;
};

struct ItemPool {
  std::vector<PoolItem> items;

  void validate() const;
  bool contains(const std::string& id) const;

  friend bool operator==(const ItemPool&, const ItemPool&) = default;
};

/// Expert ids are never exposed to other experts; see RoundFeedback.
struct Panel {
  std::vector<std::string> experts;

  void validate() const;
  bool contains(const std::string& id) const;

  friend bool operator==(const Panel&, const Panel&) = default;
};

enum class RoundStatus { Open, Closed };

std::string_view to_string(RoundStatus s) noexcept;

using ItemSet = std::set<std::string>;
using SelectionCounts = std::map<std::string, int>;

struct DelphiRound {
  int round_number = 1;
  RoundStatus status = RoundStatus::Open;
  std::map<std::string, ItemSet> votes;  // expert -> selection
  std::vector<std::string> comments;     // unattributed, kept sorted
  SelectionCounts feedback;              // previous round's counts
  ItemSet retained;                      // set when closed
  bool converged = false;

  SelectionCounts counts() const;

  friend bool operator==(const DelphiRound&, const DelphiRound&) = default;
};

/// What an expert sees when a round opens: counts and free-text remarks from
/// the previous round, with no identities.
struct RoundFeedback {
  int round_number = 0;
  SelectionCounts counts;
  std::vector<std::string> comments;
  int voters = 0;
};

struct DelphiConfig {
  double retention_fraction = 0.5;
  int max_rounds = 5;

  friend bool operator==(const DelphiConfig&, const DelphiConfig&) = default;
};

struct CloseResult {
  ItemSet retained;
  bool converged;
};

/// Items selected by at least ceil(fraction * voters) experts.
ItemSet retained_items(const SelectionCounts& counts, int voters, double fraction);

/// Round state machine over a fixed pool and panel. Not thread-safe; callers
/// serialize mutations.
class DelphiStudy {
 public:
  DelphiStudy(ItemPool pool, Panel panel, DelphiConfig config = {},
              std::vector<DelphiRound> history = {});

  const DelphiRound& open_round();
  void record_vote(const std::string& expert, const ItemSet& selection,
                   std::optional<std::string> comment = std::nullopt);
  CloseResult close_round();
  CloseResult close_round(double retention_fraction);

  const std::vector<DelphiRound>& rounds() const noexcept { return rounds_; }
  const DelphiRound* open() const noexcept;
  const DelphiRound* last_closed() const noexcept;
  RoundFeedback feedback() const;

  const ItemPool& pool() const noexcept { return pool_; }
  const Panel& panel() const noexcept { return panel_; }
  const DelphiConfig& config() const noexcept { return config_; }

 private:
  DelphiRound& require_open();

  ItemPool pool_;
  Panel panel_;
  DelphiConfig config_;
  std::vector<DelphiRound> rounds_;
};

struct ShortlistResult {
  ItemSet retained;
  int rounds_run = 0;
  bool converged = false;
  std::vector<ItemSet> history;  // retained set after each round
};

/// Supplies one expert's selection for a round given only anonymous feedback.
using VoteSource =
    std::function<ItemSet(int round, const std::string& expert, const RoundFeedback& feedback)>;

/// Open/vote/close until the retained set repeats or max_rounds is reached.
ShortlistResult run_study(const ItemPool& pool, const Panel& panel, const VoteSource& votes,
                          double retention_fraction = 0.5, int max_rounds = 5);

}  // namespace ahp
