#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "brank/evaluation.hpp"
#include "brank/io.hpp"
#include "brank/models.hpp"
#include "brank/simulator.hpp"

namespace brank {

// ---------------------------------------------------------------------------
// Feature store
// ---------------------------------------------------------------------------

/// Precomputed per-customer and per-widget model inputs, indexed in
/// environment order. One instance backs both dataset assembly and online
/// scoring; it is immutable after construction, so concurrent reads are safe.
/// Unknown customers fall back to cold-start zeros with an empty history.
struct FeatureStore {
  int hash_dim = 0;
  int category_dim = 0;
  int item_dim = 0;
  uint64_t hash_seed = 0;
  ContextSchema schema;

  std::vector<std::vector<double>> category_profiles;  // env.customers order
  std::vector<std::vector<double>> item_profiles;
  std::vector<Matrix> histories;  // item_dim x n_events, trailing window
  std::vector<std::vector<double>> widget_contents;  // env.widgets order

  std::vector<double> zero_category;
  std::vector<double> zero_item;
  Matrix empty_history;
};

FeatureStore build_feature_store(const Environment& env, const RunConfig& cfg);

// Hashed categorical tokens for one (request, widget) pair.
std::vector<HashedToken> request_tokens(const FeatureStore& store, const ContextMap& customer_ctx,
                                        const ContextMap& shopping_ctx,
                                        const ContentWidget& widget);

// ---------------------------------------------------------------------------
// Dataset assembly
// ---------------------------------------------------------------------------

// One sample per slot record; reward is the logged down-session value.
// Customers or widgets the environment doesn't know raise LookupError.
Dataset build_dataset(const FeatureStore& store, const Environment& env,
                      std::span<const LoggedImpression> log);

// All clicked samples plus an equal count of uniformly drawn unclicked ones
// (shuffled); falls back to every index when one class is empty.
std::vector<int> balanced_indices(const Dataset& data, Rng& rng);

// ---------------------------------------------------------------------------
// Model bundle: one trained model of any supported type
// ---------------------------------------------------------------------------

struct ModelBundle {
  std::string model_type;  // linear|ffn|din|split_attention
  FeatureMode mode = FeatureMode::full;
  std::unique_ptr<LinearBandit> linear;   // set iff model_type == "linear"
  std::unique_ptr<NeuralRanker> neural;   // set otherwise
};

// Fresh untrained model per cfg.model_type; neural initialization is seeded
// from cfg.seed.
ModelBundle make_bundle(const RunConfig& cfg);

// In-place training. The linear bandit absorbs every sample exactly (token
// updates); neural models run mini-batch Adam on the class-balanced subset
// when cfg.training.balance_classes is set. Returns the per-epoch loss trace
// (empty for the bandit).
LossTrace train_bundle(ModelBundle& bundle, const Dataset& data, const RunConfig& cfg);

// Score one candidate for a request. Forward-only; safe to call concurrently
// on a frozen bundle.
double score_candidate(const ModelBundle& bundle, const FeatureStore& store,
                       const Environment& env, const ContextMap& customer_ctx,
                       const ContextMap& shopping_ctx, const std::string& customer_id,
                       const ContentWidget& widget);

// Wraps a trained bundle as a slate policy with per-slot epsilon
// exploration. The bundle and store must outlive the policy.
RankPolicy bundle_policy(const ModelBundle& bundle, const FeatureStore& store,
                         const Environment& env, double epsilon);

// ---------------------------------------------------------------------------
// Checkpoint transfer
// ---------------------------------------------------------------------------

CheckpointData bundle_checkpoint(ModelBundle& bundle, const RunConfig& cfg);

// Rebuilds a bundle shaped by the checkpoint's own model type and feature
// mode (cfg supplies the hyperparameters). Name or shape mismatches raise
// FormatError.
ModelBundle bundle_from_checkpoint(const CheckpointData& data, const RunConfig& cfg);

// ---------------------------------------------------------------------------
// End-to-end runs
// ---------------------------------------------------------------------------

struct EvalOutcome {
  MetricsReport metrics;
  std::vector<LoggedImpression> log;
};

// Serves cfg.episodes.eval_impressions under the bundle at `epsilon` and
// scores the realized pages. Deterministic for fixed (env, cfg, seed, bundle).
EvalOutcome evaluate_bundle(const ModelBundle& bundle, const FeatureStore& store,
                            const Environment& env, const RunConfig& cfg, double epsilon,
                            uint64_t seed);

// Seed tags for the pipeline's derived streams.
inline constexpr uint64_t kSeedTagTrainLog = 0x51e;
inline constexpr uint64_t kSeedTagEvalLog = 0xe7a;
inline constexpr uint64_t kSeedTagModelInit = 0xb0d31;
inline constexpr uint64_t kSeedTagBalance = 0xba1a;

}  // namespace brank
