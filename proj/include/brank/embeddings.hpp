#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brank/rng.hpp"

namespace brank {

struct Product {
  std::string product_id;
  std::string category_id;
  std::string brand_id;
};

/// Immutable product index; ids are unique.
class Catalog {
 public:
  void add(Product p);
  const Product& product(const std::string& id) const;  // unknown id -> LookupError
  bool has(const std::string& id) const { return products_.count(id) > 0; }
  size_t size() const { return products_.size(); }
  const std::map<std::string, Product>& products() const { return products_; }

 private:
  std::map<std::string, Product> products_;
};

enum class EventType { view = 0, click = 1, purchase = 2 };

EventType parse_event_type(std::string_view name);  // unknown name -> SchemaError
std::string_view event_type_name(EventType t);

struct EngagementEvent {
  std::string customer_id;
  std::string product_id;
  EventType event_type = EventType::view;
  int64_t timestamp = 0;  // seconds since epoch
};

// Canonical event order: (timestamp, product_id, event_type). Aggregation
// sorts by this before reducing, which makes it exactly permutation-invariant.
bool event_before(const EngagementEvent& a, const EngagementEvent& b);

enum class EmbeddingLevel { category, item };

/// id -> fixed-dim vector. All vectors share dim and have L2 norm in (0, 10].
class EmbeddingTable {
 public:
  EmbeddingTable(EmbeddingLevel level, int dim);

  void insert(const std::string& id, std::vector<double> vec);
  const std::vector<double>& lookup(const std::string& id) const;  // LookupError
  bool has(const std::string& id) const { return vectors_.count(id) > 0; }

  EmbeddingLevel level() const { return level_; }
  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  const std::map<std::string, std::vector<double>>& entries() const { return vectors_; }

 private:
  EmbeddingLevel level_;
  int dim_;
  std::map<std::string, std::vector<double>> vectors_;
};

/// Customer taste vectors: a coarse category-space profile and a finer
/// item-space profile, both unit norm (or zero for empty histories).
struct CustomerRepresentation {
  std::vector<double> category_profile;  // dim d_cat
  std::vector<double> item_profile;      // dim d_item
};

struct ContentWidget {
  std::string widget_id;
  std::string widget_type;  // e.g. "deals", "buy-again"
  std::vector<std::string> product_ids;
  std::map<std::string, std::string> content_context;
};

struct AggregationConfig {
  double view_weight = 1.0;
  double click_weight = 2.0;
  double purchase_weight = 4.0;
  double half_life_seconds = 7.0 * 86400.0;
};

double event_type_weight(EventType t, const AggregationConfig& cfg);

struct SyntheticTables {
  Catalog catalog;
  EmbeddingTable category_table{EmbeddingLevel::category, 2};
  EmbeddingTable item_table{EmbeddingLevel::item, 2};
};

// Generates a catalog plus category- and item-level embedding tables with
// planted structure: category vectors lie on the unit sphere concentrated
// near a random 2-plane (so pairwise category affinity is effectively a
// function of two coordinates and stays learnable at small scale), and each
// item vector is its category vector padded to d_item plus N(0, 0.1^2) noise,
// renormalized. theme_noise sets the off-plane spread of categories.
SyntheticTables build_synthetic_tables(int n_categories, int n_items, int d_cat,
                                       int d_item, uint64_t seed,
                                       double theme_noise = 0.3);

// Decay-weighted mean of engaged products' vectors, renormalized to unit
// norm. weight(event) = type_weight * 2^(-(now - timestamp)/half_life).
// Empty history -> zero vectors.
CustomerRepresentation aggregate_customer(std::span<const EngagementEvent> events,
                                          const Catalog& catalog,
                                          const EmbeddingTable& category_table,
                                          const EmbeddingTable& item_table,
                                          int64_t now, const AggregationConfig& cfg);

// Unit-normalized unweighted mean of member products' category vectors;
// lives in the same space as CustomerRepresentation.category_profile.
std::vector<double> content_embedding(const ContentWidget& widget, const Catalog& catalog,
                                      const EmbeddingTable& category_table);

}  // namespace brank
