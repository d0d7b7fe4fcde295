#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brank/embeddings.hpp"
#include "brank/features.hpp"
#include "brank/matrix.hpp"
#include "brank/optim.hpp"
#include "brank/rng.hpp"
#include "brank/tape.hpp"

namespace brank {

// ---------------------------------------------------------------------------
// Bayesian linear bandit (the production baseline)
// ---------------------------------------------------------------------------

struct LinearBanditConfig {
  int dim = 128;
  double noise_variance = 1.0;  // observation noise of the reward model
  double prior_scale = 1.0;     // prior precision = prior_scale * I
};

/// Bayesian linear regression over the categorical feature with lazy
/// posterior-mean refresh: observations accumulate into the precision matrix
/// and the evidence vector; the mean is solved on demand via Cholesky (the
/// precision is never inverted explicitly).
class LinearBandit {
 public:
  explicit LinearBandit(const LinearBanditConfig& cfg);

  void observe(std::span<const double> x, double reward);
  void observe_tokens(std::span<const HashedToken> tokens, double reward);

  const Matrix& posterior_mean() const;  // (dim, 1)
  const Matrix& precision() const { return precision_; }
  const LinearBanditConfig& config() const { return cfg_; }
  int64_t n_observations() const { return n_obs_; }
  void set_observation_count(int64_t n) { n_obs_ = n; }  // checkpoint restore

  double mean_score(std::span<const double> x) const;
  // One posterior draw of the weight vector; score a whole request with a
  // single draw.
  Matrix sample_weights(Rng& rng) const;
  double thompson_score(std::span<const double> x, Rng& rng) const;

  // Checkpoint support: named state matrices in a fixed order.
  std::vector<std::pair<std::string, Matrix*>> state_entries();

  void after_state_load();  // re-derive cached factors from loaded state

 private:
  void refresh() const;

  LinearBanditConfig cfg_;
  Matrix precision_;  // dim x dim, SPD
  Matrix evidence_;   // dim x 1, running sum of x * reward / noise_variance
  int64_t n_obs_ = 0;
  mutable bool dirty_ = true;
  mutable Matrix mean_;           // dim x 1
  mutable Matrix chol_precision_; // lower factor, for posterior draws
};

// ---------------------------------------------------------------------------
// Training data layout shared by the neural rankers
// ---------------------------------------------------------------------------

/// Which feature channels a model consumes: `categorical` zeroes the
/// personalization sources (profiles and content embedding), `full` keeps
/// everything.
enum class FeatureMode { categorical, full };

FeatureMode parse_feature_mode(std::string_view name);
std::string_view feature_mode_name(FeatureMode m);

/// Column-oriented training set. Customer- and widget-level vectors are
/// stored once and referenced by index, so samples stay small.
struct Dataset {
  int hash_dim = 0;
  int category_dim = 0;
  int item_dim = 0;

  std::vector<std::vector<double>> customer_category_profiles;
  std::vector<std::vector<double>> customer_item_profiles;
  // Per customer: engaged item vectors as columns (item_dim x n_events),
  // already truncated to the trailing window the attention model consumes.
  std::vector<Matrix> customer_histories;
  std::vector<std::vector<double>> widget_contents;  // category_dim each

  struct Sample {
    std::vector<HashedToken> tokens;
    int32_t customer = 0;
    int32_t widget = 0;
    double reward = 0.0;
  };
  std::vector<Sample> samples;

  int size() const { return static_cast<int>(samples.size()); }
  void validate() const;  // index bounds, dims; throws ArgumentError
};

// Dense per-source batch matrices (sources as columns). In categorical mode
// the personalization matrices are zero.
Matrix batch_categorical(const Dataset& data, std::span<const int> idx);
Matrix batch_category_profiles(const Dataset& data, std::span<const int> idx, FeatureMode mode);
Matrix batch_item_profiles(const Dataset& data, std::span<const int> idx, FeatureMode mode);
Matrix batch_contents(const Dataset& data, std::span<const int> idx, FeatureMode mode);
Matrix batch_rewards(const Dataset& data, std::span<const int> idx);  // 1 x m

// ---------------------------------------------------------------------------
// Neural rankers
// ---------------------------------------------------------------------------

/// A single candidate's assembled inputs for forward-only scoring.
struct CandidateInput {
  std::vector<double> categorical;
  std::vector<double> category_profile;
  std::vector<double> item_profile;
  std::vector<double> content;
  const Matrix* history = nullptr;  // item_dim x n_events; only the attention
                                    // ranker reads it
};

/// Common surface of the tape-trained models. Forward passes only read
/// parameter values, so concurrent predict() calls on one frozen instance
/// are safe; training must own the instance exclusively.
class NeuralRanker {
 public:
  virtual ~NeuralRanker() = default;

  virtual std::string_view type_name() const = 0;
  virtual FeatureMode feature_mode() const = 0;
  // Batched training forward: predictions as a (1, m) node.
  virtual NodePtr forward_batch(GradientTape& tape, const Dataset& data,
                                std::span<const int> idx) = 0;
  virtual double predict(const CandidateInput& input) = 0;
  virtual std::vector<Parameter*> parameters() = 0;
};

struct FfnConfig {
  int hidden1 = 128;
  int hidden2 = 64;
};

/// Plain feed-forward regressor on the concatenated feature vector.
class FfnRanker : public NeuralRanker {
 public:
  FfnRanker(int hash_dim, int category_dim, int item_dim, FeatureMode mode, const FfnConfig& cfg,
            uint64_t seed);

  std::string_view type_name() const override { return "ffn"; }
  FeatureMode feature_mode() const override { return mode_; }
  NodePtr forward_batch(GradientTape& tape, const Dataset& data,
                        std::span<const int> idx) override;
  double predict(const CandidateInput& input) override;
  std::vector<Parameter*> parameters() override;

  int input_dim() const { return input_dim_; }

 private:
  NodePtr forward_input(GradientTape& tape, const NodePtr& x);

  FeatureMode mode_;
  int hash_dim_, category_dim_, item_dim_, input_dim_;
  FfnConfig cfg_;
  Parameter w1_, b1_, w2_, b2_, w3_, b3_;
};

struct DinConfig {
  int activation_hidden = 32;
  int top_hidden = 64;
  int max_events = 50;
};

/// Engagement-history attention ranker: a small activation network scores
/// each engaged item against the candidate, softmax over events pools them
/// into an interest vector, and a top perceptron regresses the reward.
class DinRanker : public NeuralRanker {
 public:
  DinRanker(int hash_dim, int category_dim, int item_dim, FeatureMode mode, const DinConfig& cfg,
            uint64_t seed);

  std::string_view type_name() const override { return "din"; }
  FeatureMode feature_mode() const override { return mode_; }
  NodePtr forward_batch(GradientTape& tape, const Dataset& data,
                        std::span<const int> idx) override;
  double predict(const CandidateInput& input) override;
  std::vector<Parameter*> parameters() override;

  // Attention weights over events for one candidate (diagnostics/tests).
  std::vector<double> attention_weights(const CandidateInput& input);

  int candidate_dim() const { return candidate_dim_; }

 private:
  NodePtr forward_one(GradientTape& tape, const Matrix& history, const NodePtr& candidate,
                      const NodePtr& top_extra, NodePtr* attention_out);

  FeatureMode mode_;
  int hash_dim_, category_dim_, item_dim_;
  int candidate_dim_;  // categorical (+ content in full mode)
  int top_extra_dim_;  // profiles in full mode, else 0
  DinConfig cfg_;
  Parameter act_w1_, act_b1_, act_w2_, act_b2_;
  Parameter top_w1_, top_b1_, top_w2_, top_b2_;
};

struct SplitAttentionConfig {
  int length = 64;      // L, the shared channel-row width
  int radix = 2;        // parallel splits per cardinal group
  int cardinality = 1;  // channel groups; must divide the channel count
  int blocks = 2;
  int bottleneck = 16;  // attention bottleneck width
};

/// Split-channel attention ranker. Each block transforms every channel row
/// with radix-many dense maps, pools them, and re-weights the splits with a
/// per-channel softmax computed from the pooled cross-channel summary; a
/// residual connection preserves the input. Global average pooling over the
/// row width feeds the regression head.
class SplitAttentionRanker : public NeuralRanker {
 public:
  SplitAttentionRanker(int hash_dim, int category_dim, int item_dim, FeatureMode mode,
                       const SplitAttentionConfig& cfg, uint64_t seed);

  std::string_view type_name() const override { return "split_attention"; }
  FeatureMode feature_mode() const override { return mode_; }
  NodePtr forward_batch(GradientTape& tape, const Dataset& data,
                        std::span<const int> idx) override;
  double predict(const CandidateInput& input) override;
  std::vector<Parameter*> parameters() override;

  const SplitAttentionConfig& config() const { return cfg_; }
  ChannelProjections& projections() { return proj_; }

  // Attention weights recorded by the latest forward when enabled: one
  // (channel_rows, radix) matrix per block and cardinal group, block-major.
  void set_capture_attention(bool on) { capture_attention_ = on; }
  const std::vector<Matrix>& captured_attention() const { return captured_attention_; }

  // Applies one block's first cardinal group to a stacked transposed map
  // (length x group_channels*m) outside any batch plumbing; used by the
  // degeneracy tests.
  Matrix apply_block_forward(int block, const Matrix& stacked_t, int n_channels);

  // Zeroes a block's split transforms (weights and biases); with radix = 1
  // this reduces the block to the identity map.
  void zero_block_transforms(int block);

 private:
  // One cardinal group's parameters within a block.
  struct Group {
    std::vector<Parameter> split_w;  // radix entries, each (L, L)
    std::vector<Parameter> split_b;  // radix entries, each (L, 1)
    Parameter attn_w1, attn_b1;      // (bottleneck, group_channels), (bottleneck, 1)
    Parameter attn_w2, attn_b2;      // (group_channels*radix, bottleneck), (.., 1)
  };
  struct Block {
    std::vector<Group> groups;
  };

  NodePtr apply_block(GradientTape& tape, Block& block, int group, const NodePtr& stacked_t,
                      int n_channels, int m);
  NodePtr forward_map(GradientTape& tape, const std::vector<NodePtr>& channel_cols, int m);
  NodePtr forward_sources(GradientTape& tape, const Matrix& categorical,
                          const Matrix& category_profile, const Matrix& item_profile,
                          const Matrix& content);

  FeatureMode mode_;
  int hash_dim_, category_dim_, item_dim_;
  SplitAttentionConfig cfg_;
  ChannelProjections proj_;
  std::vector<Block> blocks_;
  Parameter head_w_, head_b_;
  bool capture_attention_ = false;
  std::vector<Matrix> captured_attention_;
};

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct TrainConfig {
  int epochs = 1;
  int batch_size = 32;
  int max_steps = 0;  // optimizer-step cap across all epochs; 0 = uncapped
  AdamConfig adam{};
  uint64_t seed = 0;
};

struct LossTrace {
  std::vector<double> epoch_mean_loss;
};

// Mini-batch MSE training, deterministic under cfg.seed. The optional
// epoch_end callback sees (epoch index, mean loss) after each epoch.
// Non-finite loss aborts with a TrainError naming epoch and batch.
LossTrace train_neural(NeuralRanker& model, const Dataset& data, const TrainConfig& cfg,
                       const std::function<void(int, double)>& epoch_end = {});

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

struct RankedEntry {
  std::string widget_id;
  double score = 0.0;
  bool explored = false;
};

struct RankedList {
  std::vector<RankedEntry> entries;
  // Candidates dropped because scoring failed: (widget_id, reason).
  std::vector<std::pair<std::string, std::string>> excluded;
};

// Scores every candidate, sorts descending (ties by ascending widget_id),
// then with probability epsilon per slot swaps in a uniformly random
// not-yet-placed candidate and flags it. Candidates whose score_fn throws
// are excluded and reported, not silently dropped.
RankedList rank_candidates(const std::vector<ContentWidget>& candidates, int k,
                           const std::function<double(const ContentWidget&)>& score_fn,
                           double epsilon, Rng& rng);

}  // namespace brank
