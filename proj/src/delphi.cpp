#include "ahp/delphi.hpp"

#include <algorithm>
#include <cmath>

namespace ahp {

std::string_view to_string(RoundStatus s) noexcept {
  return s == RoundStatus::Open ? "open" : "closed";
}

void ItemPool::validate() const {
  if (items.empty()) throw Error(ErrorCode::InvalidArgument, "item pool is empty");
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (item.id.empty()) throw Error(ErrorCode::InvalidArgument, "item id is empty");
    if (!ids.insert(item.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate item id '" + item.id + "'");
    }
  }
}

bool ItemPool::contains(const std::string& id) const {
  return std::any_of(items.begin(), items.end(), [&](const PoolItem& i) { return i.id == id; });
}

void Panel::validate() const {
  if (experts.size() < 2) throw Error(ErrorCode::InvalidPanel, "panel needs at least 2 experts");
  std::set<std::string> ids(experts.begin(), experts.end());
  if (ids.size() != experts.size()) throw Error(ErrorCode::InvalidPanel, "duplicate expert id");
}

bool Panel::contains(const std::string& id) const {
  return std::find(experts.begin(), experts.end(), id) != experts.end();
}

SelectionCounts DelphiRound::counts() const {
  SelectionCounts out;
  for (const auto& [expert, selection] : votes)
    for (const auto& item : selection) ++out[item];
  return out;
}

ItemSet retained_items(const SelectionCounts& counts, int voters, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "retention fraction must lie in (0, 1]");
  }
  // Guard against products like 0.1 * 30 = 3.0000000000000004.
  const int needed = int(std::ceil(fraction * voters - 1e-9));
  ItemSet out;
  for (const auto& [item, count] : counts)
    if (count >= needed && count > 0) out.insert(item);
  return out;
}

DelphiStudy::DelphiStudy(ItemPool pool, Panel panel, DelphiConfig config,
                         std::vector<DelphiRound> history)
    : pool_(std::move(pool)),
      panel_(std::move(panel)),
      config_(config),
      rounds_(std::move(history)) {
  pool_.validate();
  panel_.validate();
  if (config_.max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
  retained_items({}, 1, config_.retention_fraction);
  for (std::size_t i = 0; i < rounds_.size(); ++i) {
    const auto& r = rounds_[i];
    if (r.round_number != int(i) + 1) {
      throw Error(ErrorCode::InvalidArgument, "rounds must be numbered 1..k");
    }
    if (r.status == RoundStatus::Open && i + 1 != rounds_.size()) {
      throw Error(ErrorCode::PreviousRoundOpen, "only the last round may be open");
    }
    for (const auto& [expert, selection] : r.votes) {
      if (!panel_.contains(expert)) throw Error(ErrorCode::UnknownExpert, expert);
      for (const auto& item : selection)
        if (!pool_.contains(item)) throw Error(ErrorCode::UnknownItem, item);
    }
  }
}

const DelphiRound* DelphiStudy::open() const noexcept {
  if (!rounds_.empty() && rounds_.back().status == RoundStatus::Open) return &rounds_.back();
  return nullptr;
}

const DelphiRound* DelphiStudy::last_closed() const noexcept {
  for (auto it = rounds_.rbegin(); it != rounds_.rend(); ++it)
    if (it->status == RoundStatus::Closed) return &*it;
  return nullptr;
}

const DelphiRound& DelphiStudy::open_round() {
  if (open()) throw Error(ErrorCode::PreviousRoundOpen, "close the current round first");
  if (int(rounds_.size()) >= config_.max_rounds) {
    throw Error(ErrorCode::MaxRoundsExceeded,
                "study already ran " + std::to_string(config_.max_rounds) + " rounds");
  }
  DelphiRound next;
  next.round_number = int(rounds_.size()) + 1;
  if (const DelphiRound* prev = last_closed()) next.feedback = prev->counts();
  rounds_.push_back(std::move(next));
  return rounds_.back();
}

DelphiRound& DelphiStudy::require_open() {
  if (rounds_.empty()) throw Error(ErrorCode::NoOpenRound, "no round has been opened");
  if (rounds_.back().status != RoundStatus::Open) {
    throw Error(ErrorCode::RoundClosed, "round " + std::to_string(rounds_.back().round_number) +
                                            " is closed");
  }
  return rounds_.back();
}

void DelphiStudy::record_vote(const std::string& expert, const ItemSet& selection,
                              std::optional<std::string> comment) {
  DelphiRound& round = require_open();
  if (!panel_.contains(expert)) throw Error(ErrorCode::UnknownExpert, "unknown expert");
  for (const auto& item : selection) {
    if (!pool_.contains(item)) throw Error(ErrorCode::UnknownItem, "unknown item '" + item + "'");
  }
  round.votes[expert] = selection;
  if (comment && !comment->empty()) {
    round.comments.insert(std::upper_bound(round.comments.begin(), round.comments.end(), *comment),
                          std::move(*comment));
  }
}

CloseResult DelphiStudy::close_round() { return close_round(config_.retention_fraction); }

CloseResult DelphiStudy::close_round(double retention_fraction) {
  DelphiRound& round = require_open();
  if (round.votes.empty()) throw Error(ErrorCode::NoVotes, "no votes recorded");
  ItemSet retained = retained_items(round.counts(), int(round.votes.size()), retention_fraction);
  const DelphiRound* prev = last_closed();
  const bool converged = prev != nullptr && prev->retained == retained;
  round.retained = retained;
  round.converged = converged;
  round.status = RoundStatus::Closed;
  return {std::move(retained), converged};
}

RoundFeedback DelphiStudy::feedback() const {
  RoundFeedback fb;
  if (const DelphiRound* prev = last_closed()) {
    fb.round_number = prev->round_number;
    fb.counts = prev->counts();
    fb.comments = prev->comments;
    fb.voters = int(prev->votes.size());
  }
  return fb;
}

ShortlistResult run_study(const ItemPool& pool, const Panel& panel, const VoteSource& votes,
                          double retention_fraction, int max_rounds) {
  if (max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
  DelphiStudy study(pool, panel, DelphiConfig{retention_fraction, max_rounds});
  ShortlistResult result;
  while (int(study.rounds().size()) < max_rounds) {
    const RoundFeedback fb = study.feedback();
    const int round = study.open_round().round_number;
    for (const auto& expert : panel.experts) study.record_vote(expert, votes(round, expert, fb));
    CloseResult closed = study.close_round();
    result.history.push_back(closed.retained);
    result.rounds_run = round;
    result.retained = std::move(closed.retained);
    if (closed.converged) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace ahp
