#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "brank/embeddings.hpp"
#include "brank/matrix.hpp"
#include "brank/rng.hpp"
#include "brank/tape.hpp"

namespace brank {

using ContextMap = std::map<std::string, std::string>;

/// Registered context vocabulary. Customer, shopping, and content contexts
/// each carry their own key set; the sets are disjoint so a key names its
/// context unambiguously. Cross pairs list key combinations hashed jointly —
/// they are what makes the combination non-linear.
struct ContextSchema {
  std::set<std::string> customer_keys;
  std::set<std::string> shopping_keys;
  std::set<std::string> content_keys;
  std::vector<std::pair<std::string, std::string>> cross_pairs;

  static ContextSchema default_schema();

  // Throws SchemaError naming the first offending key.
  void validate(const ContextMap& customer, const ContextMap& shopping,
                const ContextMap& content) const;
};

/// One hashed token: a bucket in [0, dim) and a +-1 sign.
struct HashedToken {
  int32_t bucket = 0;
  int8_t sign = 1;

  bool operator==(const HashedToken&) const = default;
  bool operator<(const HashedToken& o) const {
    return bucket != o.bucket ? bucket < o.bucket : sign < o.sign;
  }
};

uint64_t fnv1a64(std::string_view s);

// Hashes one token string to (bucket, sign) under the seed.
HashedToken hash_token(std::string_view token, int dim, uint64_t hash_seed);

// Signed feature hashing of all contexts: one "key=value" token per present
// key plus one "ka=va&kb=vb" token per registered cross pair whose keys are
// both present (pair keys ordered lexicographically). Tokens are returned
// sorted, so downstream accumulation order never depends on input key order.
std::vector<HashedToken> hash_context_tokens(const ContextMap& customer,
                                             const ContextMap& shopping,
                                             const ContextMap& content,
                                             const ContextSchema& schema, int dim,
                                             uint64_t hash_seed);

// Dense form: sums token signs into their buckets.
std::vector<double> build_categorical_feature(const ContextMap& customer,
                                              const ContextMap& shopping,
                                              const ContextMap& content,
                                              const ContextSchema& schema, int dim,
                                              uint64_t hash_seed);

std::vector<double> tokens_to_dense(const std::vector<HashedToken>& tokens, int dim);

// Channel indices of the fused feature map (channels x length).
inline constexpr int kChannelCategorical = 0;
inline constexpr int kChannelCategoryProfile = 1;
inline constexpr int kChannelItemProfile = 2;
inline constexpr int kChannelContent = 3;
inline constexpr int kNumChannels = 4;

/// Raw per-candidate feature sources, one per channel.
struct FeatureBundle {
  std::vector<double> categorical;       // hash_dim
  std::vector<double> category_profile;  // category_dim
  std::vector<double> item_profile;      // item_dim
  std::vector<double> content;           // category_dim
};

/// Learned biasless linear maps taking each source into a common length-L
/// row of the channel map. Trained jointly with the ranker that consumes it.
struct ChannelProjections {
  Parameter categorical;       // L x hash_dim
  Parameter category_profile;  // L x category_dim
  Parameter item_profile;      // L x item_dim
  Parameter content;           // L x category_dim

  ChannelProjections() = default;
  ChannelProjections(int length, int hash_dim, int category_dim, int item_dim, Rng& rng);

  int length() const { return categorical.value.rows(); }
  std::vector<Parameter*> parameters();
};

// Forward-only channel map (kNumChannels x L); row c = projection of source c.
// Rows are independent: perturbing one source leaves the other rows
// bit-identical.
Matrix build_channel_map(const FeatureBundle& bundle, const ChannelProjections& proj);

}  // namespace brank
