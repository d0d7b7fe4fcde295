#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "brank/embeddings.hpp"
#include "brank/features.hpp"
#include "brank/models.hpp"
#include "brank/rng.hpp"

namespace brank {

// The page being simulated has a fixed number of content slots.
constexpr int kPageSlots = 5;

// Rewards are attributed within the session only.
constexpr int64_t kAttributionWindowSeconds = 1800;

// Fixed reference clock for the synthetic world; history timestamps are in
// the weeks before this instant.
constexpr int64_t kSimulationNow = 1750000000;

struct SyntheticCustomer {
  std::string customer_id;
  std::vector<double> goal;  // unit vector in category space
  double price_sensitivity = 0.5;  // in [0, 1]
  bool prime_member = false;
  std::vector<EngagementEvent> history;  // timestamps non-decreasing
};

/// Parametric behavior model. Click probability at slot s (0-based) is
/// position_bias[s] * sigmoid(affinity_weight * cos(goal, content) +
/// base_logit); the value of a click is lognormal, scaled by
/// (1 + cos) / 2. Every term is closed-form integrable, so the oracle
/// ranking needs no simulation.
struct ClickModel {
  double affinity_weight = 3.0;  // >= 0
  std::vector<double> position_bias{1.0, 0.85, 0.7, 0.55, 0.4};
  double base_logit = -1.5;
  double reward_log_mean = 1.0;   // lognormal mu of the click value
  double reward_log_sigma = 0.5;  // lognormal sigma, > 0

  // position_bias must have kPageSlots entries, non-increasing, within
  // [0, 1], first entry positive. Throws ArgumentError.
  void validate() const;
};

struct RewardRecord {
  int64_t impression_id = 0;
  std::string customer_id;
  std::string widget_id;
  int slot = 1;  // 1-based page position
  bool clicked = false;
  double reward = 0.0;  // down-session value; 0 unless clicked
  int64_t attribution_window_s = kAttributionWindowSeconds;
};

struct EnvironmentConfig {
  int n_customers = 2000;
  int n_categories = 50;
  int n_products = 500;
  int n_widgets = 40;
  int category_dim = 16;
  int item_dim = 24;
  int products_per_widget = 8;
  double theme_noise = 0.3;
  ClickModel click_model{};

  void validate() const;
};

/// The fully built synthetic world: catalog and embedding tables, the
/// customer population, and the widget inventory with precomputed content
/// embeddings. Deterministic for a fixed (config, seed).
struct Environment {
  EnvironmentConfig cfg;
  SyntheticTables tables;
  std::vector<SyntheticCustomer> customers;
  std::vector<ContentWidget> widgets;
  std::map<std::string, std::vector<double>> widget_embeddings;
  std::map<std::string, int> widget_index;    // widget_id -> index in widgets
  std::map<std::string, int> customer_index;  // customer_id -> index
  std::vector<std::string> product_ids;       // catalog order
  std::vector<std::string> category_ids;      // table order
  int64_t now = kSimulationNow;

  const SyntheticCustomer& customer(const std::string& id) const;  // LookupError
  const ContentWidget& widget(const std::string& id) const;        // LookupError
};

Environment build_environment(const EnvironmentConfig& cfg, uint64_t seed);

// Goals are sampled as noisy blends of category vectors, so they live near
// the same planted theme structure the categories do. Histories hold
// Poisson(20) events drawn with softmax(cos(goal, category)/0.2) bias over
// the catalog.
std::vector<SyntheticCustomer> generate_population(int n_customers,
                                                   const SyntheticTables& tables,
                                                   uint64_t seed);

double sigmoid(double x);

// cos(goal, content embedding); the planted affinity the models must learn.
double affinity(const SyntheticCustomer& customer, std::span<const double> content_embedding);

// Closed-form expected down-session value of a widget if shown in slot 1:
// position_bias[0] * sigmoid(a * cos + b) * E[lognormal] * (1 + cos) / 2.
double expected_slot1_value(double affinity_cos, const ClickModel& model);

// Rolls clicks and rewards for one served page (<= kPageSlots entries).
// One record per slot, in slot order. Unknown widget id -> LookupError.
std::vector<RewardRecord> simulate_impression(const SyntheticCustomer& customer,
                                              const RankedList& ranked, const Environment& env,
                                              Rng& rng, int64_t impression_id);

// Ground-truth ranking by exact expected slot-1 value; ties break by
// ascending widget_id (same rule as rank_candidates).
RankedList oracle_rank(const SyntheticCustomer& customer,
                       const std::vector<ContentWidget>& candidates, const Environment& env);

struct RankingRequest {
  int64_t impression_id = 0;
  std::string customer_id;
  ContextMap customer_context;
  ContextMap shopping_context;
  std::vector<std::string> candidate_ids;
  int k = kPageSlots;
};

/// One served impression: the request, the slate actually shown, and the
/// per-slot outcome records.
struct LoggedImpression {
  RankingRequest request;
  RankedList ranked;
  std::vector<RewardRecord> records;
};

using RankPolicy = std::function<RankedList(const RankingRequest&, Rng&)>;

// Ignores scores entirely and serves a uniformly random slate; the
// exploration data source for offline training.
RankPolicy uniform_policy(const Environment& env);

// Greedy slate by expected slot-1 value; the skyline policy for evaluation.
RankPolicy oracle_policy(const Environment& env);

// Resolves candidate ids against the inventory. Unknown id -> LookupError.
std::vector<ContentWidget> widgets_by_ids(const Environment& env,
                                          std::span<const std::string> ids);

// Context assembly shared by the simulator and the serving path.
ContextMap customer_context_of(const SyntheticCustomer& customer, int64_t now);
ContextMap shopping_context_sample(Rng& rng, const Environment& env);

struct EpisodeConfig {
  int n_impressions = 0;
  int candidates_per_request = 10;  // in [kPageSlots, n_widgets]
};

// Serves n impressions to uniformly drawn customers under the given policy.
// Deterministic for fixed (environment, config, seed); a policy failure
// aborts the episode with a SimulationError naming the impression.
std::vector<LoggedImpression> run_episode_batch(const RankPolicy& policy, const Environment& env,
                                                const EpisodeConfig& cfg, uint64_t seed);

}  // namespace brank
