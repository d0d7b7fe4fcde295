#pragma once

#include <memory>
#include <string>
#include <utility>

#include "brank/io.hpp"
#include "brank/pipeline.hpp"

namespace brank {

/// Single-snapshot ranking service. Every request reads one immutable
/// snapshot; a reload builds the replacement off to the side and swaps a
/// shared pointer, so readers never observe a half-loaded model. Responses
/// at epsilon = 0 are deterministic per snapshot. The service never mutates
/// model state.
class RankingService {
 public:
  // Builds the environment and feature store up front; serving starts
  // snapshot-less (rank returns 503 until load_snapshot succeeds).
  explicit RankingService(const RunConfig& cfg);
  ~RankingService();
  RankingService(const RankingService&) = delete;
  RankingService& operator=(const RankingService&) = delete;

  // (Re)loads cfg.paths.checkpoint and swaps it in. Throws on failure; a
  // previously loaded snapshot keeps serving in that case.
  void load_snapshot();
  bool has_snapshot() const;
  int snapshot_version() const;  // 0 before the first successful load

  // Socket-free handlers shared by the HTTP layer and the tests: (status,
  // JSON body). Errors come back as {"error": "..."} bodies.
  std::pair<int, std::string> rank_json(const std::string& body) const;
  std::pair<int, std::string> health_json() const;
  std::pair<int, std::string> reload_json();

  // Blocking HTTP loop on cfg.serving.{host,port}; port 0 binds any free
  // port. Routes: POST /rank, GET /health, POST /reload.
  bool serve();
  // Polls until the listener accepts connections (or ~5 s elapse).
  bool wait_until_ready() const;
  int bound_port() const;  // valid once ready
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace brank
