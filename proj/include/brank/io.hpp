#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brank/evaluation.hpp"
#include "brank/matrix.hpp"
#include "brank/models.hpp"
#include "brank/simulator.hpp"

namespace brank {

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct FeatureConfig {
  int hash_dim = 128;
  uint64_t hash_seed = 0;
};

struct TrainPlan {
  int epochs = 2;
  int batch_size = 64;
  int max_steps = 2500;  // optimizer-step budget across epochs; 0 = uncapped
  double learning_rate = 2e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  // Train neural models on all clicked records plus an equal share of
  // unclicked ones; keeps the reward signal dense at desk scale.
  bool balance_classes = true;

  TrainConfig to_train_config(uint64_t seed) const;
};

struct EpisodePlan {
  int train_impressions = 50000;
  int eval_impressions = 2000;
  int candidates_per_request = 10;
};

struct ServingConfig {
  double epsilon = 0.0;  // slate exploration rate
  std::string host = "127.0.0.1";
  int port = 8080;
};

struct PathsConfig {
  std::string event_log = "runs/events.jsonl";
  std::string eval_log = "runs/eval_events.jsonl";
  std::string checkpoint = "runs/model.brnk";
  std::string report = "runs/report.json";
};

struct LinearPlan {
  double noise_variance = 1.0;
  double prior_scale = 1.0;
};

/// Everything a run needs, loadable from JSON. Unknown keys are rejected at
/// every nesting level; absent keys keep their defaults. The canonical JSON
/// echo of the effective config (and its hash) rides along in every output
/// artifact header.
struct RunConfig {
  uint64_t seed = 0;
  EnvironmentConfig environment{};
  FeatureConfig features{};
  std::string model_type = "split_attention";  // linear|ffn|din|split_attention
  std::string feature_mode = "full";           // categorical|full
  FfnConfig ffn{};
  DinConfig din{};
  SplitAttentionConfig split_attention{};
  LinearPlan linear{};
  TrainPlan training{};
  EpisodePlan episodes{};
  ServingConfig serving{};
  AggregationConfig aggregation{};
  PathsConfig paths{};

  void validate() const;  // ConfigError on out-of-range or unknown enum values
};

RunConfig parse_run_config(const std::string& json_text, const std::string& origin);
RunConfig load_run_config(const std::string& path);  // FormatError if unreadable

// Canonical JSON echo of the effective config: every field present, keys
// sorted; equal configs produce equal bytes.
std::string run_config_json(const RunConfig& cfg);
// 16 hex chars over the canonical echo.
std::string config_hash(const RunConfig& cfg);

// File-path overrides from the environment (paths only, per the interface
// contract): BRANK_EVENT_LOG, BRANK_EVAL_LOG, BRANK_CHECKPOINT, BRANK_REPORT.
void apply_path_env_overrides(RunConfig& cfg);

// ---------------------------------------------------------------------------
// Event log (JSON lines; one impression-slot record per line)
// ---------------------------------------------------------------------------

// Line 1 is a header object carrying the format name, version, and the
// effective config echo; each following line is one slot record. Equal
// inputs produce byte-identical files.
void write_event_log(const std::string& path, std::span<const LoggedImpression> log,
                     const std::string& config_json);

struct EventLogFile {
  std::string config_json;  // header echo, re-serialized canonically
  std::vector<LoggedImpression> impressions;
};

// Malformed lines raise FormatError naming the 1-based line number; schema
// violations name the field as well.
EventLogFile read_event_log(const std::string& path);

// ---------------------------------------------------------------------------
// Checkpoint container
// ---------------------------------------------------------------------------

// Layout: "BRNK" magic, u32 version, u32 header length, JSON header (model
// type, feature mode, config hash, tensor shapes, metadata), payload of
// little-endian IEEE-754 f32 values in tensor order, u32 CRC32(payload).
constexpr uint32_t kCheckpointVersion = 1;

struct CheckpointData {
  std::string model_type;
  std::string feature_mode;
  std::string config_hash;
  std::vector<std::pair<std::string, Matrix>> tensors;  // declared order
  std::vector<std::pair<std::string, std::string>> metadata;  // free-form extras
};

void save_checkpoint(const std::string& path, const CheckpointData& data);

// Bad magic or truncation -> FormatError; unsupported version ->
// VersionError; CRC mismatch -> CorruptionError.
CheckpointData load_checkpoint(const std::string& path);

// ---------------------------------------------------------------------------
// Metrics serialization
// ---------------------------------------------------------------------------

std::string metrics_to_text(const MetricsReport& report);
std::string metrics_to_json(const MetricsReport& report, const std::string& config_json);
MetricsReport metrics_from_json(const std::string& json_text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);  // FormatError if unreadable

}  // namespace brank
