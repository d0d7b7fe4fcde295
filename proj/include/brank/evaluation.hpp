#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brank/simulator.hpp"

namespace brank {

/// One ranked slot's observed outcome. Engagement reward gates the
/// down-session value on the click: Re = clicked ? R : 0.
struct SlotOutcome {
  double predicted = 0.0;  // model score for the slot
  bool clicked = false;
  double reward = 0.0;  // down-session value R, >= 0

  double engagement() const { return clicked ? reward : 0.0; }
};

/// One served page in model order, attributed to a user.
struct EvaluationPage {
  std::string user_id;
  std::vector<SlotOutcome> slots;  // at most kPageSlots
};

// Discounted cumulative gain over the page: sum of Re_i / log2(i + 1) with
// i counted from 1. At most kPageSlots values; negative values are an
// ArgumentError.
double dcg_at_5(std::span<const double> engagement);

// DCG of the model's order divided by the DCG of the ideal order (all
// engagement values sorted descending, truncated to the page size). Pages
// with zero ideal DCG have no defined ratio and yield nullopt. ranked must
// be a sub-multiset of all_for_user.
std::optional<double> ndcg_at_5(std::span<const double> ranked,
                                std::span<const double> all_for_user);

struct MetricsReport {
  double mse = 0.0;
  double mae = 0.0;
  double ndcg_at_5 = 0.0;  // mean over counted users
  int64_t n_users_counted = 0;
  int64_t n_users_skipped = 0;  // users whose every page had zero ideal DCG
  int64_t n_pages = 0;
  int64_t n_records = 0;
};

// Aggregates pages per the serving protocol: NDCG per page, averaged per
// user, then across users; zero-IDCG pages are skipped (users with no
// scoreable page are counted skipped). MSE/MAE run over every slot's
// (predicted, engagement) pair. Empty input is an ArgumentError.
MetricsReport evaluate_pages(std::span<const EvaluationPage> pages);

std::vector<EvaluationPage> pages_from_log(std::span<const LoggedImpression> log);
MetricsReport evaluate_log(std::span<const LoggedImpression> log);

/// A checkpoint's validation score, used for model selection.
struct ValidationSnapshot {
  int epoch = 0;
  double ndcg = 0.0;
};

// Index of the snapshot with the best validation NDCG; ties go to the
// earliest epoch. Empty input is an ArgumentError.
int select_best(std::span<const ValidationSnapshot> snapshots);

/// Percentage delta against a baseline; undefined when the baseline metric
/// is zero.
struct RelativeDelta {
  double percent = 0.0;
  bool defined = false;
};

struct RelativeReport {
  RelativeDelta mse;
  RelativeDelta mae;
  RelativeDelta ndcg;
};

// 100 * (candidate - baseline) / baseline per metric. Negative deltas mean
// reduction (an improvement for the losses); positive NDCG deltas mean
// improvement.
RelativeReport relative_report(const MetricsReport& candidate, const MetricsReport& baseline);

}  // namespace brank
