// Python module over the C++ pipeline. Structured results cross the
// boundary as canonical JSON strings; the `brank` package wrapper parses
// them into dicts so this layer stays conversion-free.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "brank/error.hpp"
#include "brank/evaluation.hpp"
#include "brank/io.hpp"
#include "brank/pipeline.hpp"
#include "brank/simulator.hpp"

namespace py = pybind11;
using namespace brank;

namespace {

/// One configured world: environment, feature store, and (after train/load)
/// a model. Mirrors the CLI subcommands, minus the stdout reporting.
class Engine {
 public:
  explicit Engine(const std::string& config_json)
      : cfg_(parse_run_config(config_json, "<python>")),
        env_(build_environment(cfg_.environment, cfg_.seed)),
        store_(build_feature_store(env_, cfg_)) {}

  std::string config_json() const { return run_config_json(cfg_); }

  std::string simulate() {
    EpisodeConfig ep;
    ep.n_impressions = cfg_.episodes.train_impressions;
    ep.candidates_per_request = cfg_.episodes.candidates_per_request;
    const auto log =
        run_episode_batch(uniform_policy(env_), env_, ep, substream(cfg_.seed, kSeedTagTrainLog));
    write_event_log(cfg_.paths.event_log, log, run_config_json(cfg_));

    int64_t records = 0, clicks = 0;
    for (const auto& imp : log) {
      records += static_cast<int64_t>(imp.records.size());
      for (const auto& rec : imp.records) clicks += rec.clicked ? 1 : 0;
    }
    nlohmann::json out{{"event_log", cfg_.paths.event_log},
                       {"impressions", log.size()},
                       {"records", records},
                       {"clicks", clicks}};
    return out.dump();
  }

  std::string train() {
    const EventLogFile file = read_event_log(cfg_.paths.event_log);
    const Dataset data = build_dataset(store_, env_, file.impressions);
    bundle_ = std::make_unique<ModelBundle>(make_bundle(cfg_));
    const LossTrace trace = train_bundle(*bundle_, data, cfg_);
    save_checkpoint(cfg_.paths.checkpoint, bundle_checkpoint(*bundle_, cfg_));
    nlohmann::json out{{"checkpoint", cfg_.paths.checkpoint},
                       {"samples", data.size()},
                       {"model_type", bundle_->model_type},
                       {"epoch_mean_loss", trace.epoch_mean_loss}};
    return out.dump();
  }

  void load(const std::optional<std::string>& checkpoint) {
    const std::string path = checkpoint.value_or(cfg_.paths.checkpoint);
    bundle_ = std::make_unique<ModelBundle>(bundle_from_checkpoint(load_checkpoint(path), cfg_));
  }

  std::string evaluate() {
    require_model("evaluate");
    const EvalOutcome outcome =
        evaluate_bundle(*bundle_, store_, env_, cfg_, cfg_.serving.epsilon, cfg_.seed);
    return metrics_to_json(outcome.metrics, run_config_json(cfg_));
  }

  std::string rank(const std::string& customer_id, const std::vector<std::string>& candidate_ids,
                   int k, const ContextMap& customer_context,
                   const ContextMap& shopping_context) {
    require_model("rank");
    if (k < 1) throw ArgumentError("rank: k must be at least 1");
    // Reject bad context keys up front; inside the score callback they
    // would surface as per-candidate exclusions instead of an error.
    store_.schema.validate(customer_context, shopping_context, {});
    const auto candidates = widgets_by_ids(env_, candidate_ids);
    k = std::min<int>(k, static_cast<int>(candidates.size()));

    // Deterministic at epsilon 0; the stream only matters when the config
    // asks for exploration.
    Rng rng(substream(cfg_.seed, 0x4a7c));
    const RankedList ranked = rank_candidates(
        candidates, k,
        [&](const ContentWidget& w) {
          return score_candidate(*bundle_, store_, env_, customer_context, shopping_context,
                                 customer_id, w);
        },
        cfg_.serving.epsilon, rng);

    nlohmann::json out{{"ranked", nlohmann::json::array()},
                       {"excluded", nlohmann::json::array()}};
    for (const auto& entry : ranked.entries) {
      out["ranked"].push_back({{"widget_id", entry.widget_id},
                               {"score", entry.score},
                               {"explored", entry.explored}});
    }
    for (const auto& [id, reason] : ranked.excluded) {
      out["excluded"].push_back({{"widget_id", id}, {"reason", reason}});
    }
    return out.dump();
  }

  bool has_model() const { return bundle_ != nullptr; }
  std::string model_type() const {
    require_model("model_type");
    return bundle_->model_type;
  }

 private:
  void require_model(const char* op) const {
    if (!bundle_) throw LookupError(std::string(op) + ": no model trained or loaded");
  }

  RunConfig cfg_;
  Environment env_;
  FeatureStore store_;
  std::unique_ptr<ModelBundle> bundle_;
};

}  // namespace

PYBIND11_MODULE(_brank, m) {
  m.doc() = "Neural-bandit content ranking engine (C++ core)";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<VersionError>(m, "VersionError", PyExc_ValueError);
  py::register_exception<CorruptionError>(m, "CorruptionError", PyExc_ValueError);
  py::register_exception<TrainError>(m, "TrainError", PyExc_RuntimeError);

  m.def("canonical_config",
        [](const std::string& text) { return run_config_json(parse_run_config(text, "<python>")); },
        py::arg("config_json"),
        "Parse, validate, and re-serialize a config in canonical key order.");
  m.def("config_hash",
        [](const std::string& text) { return config_hash(parse_run_config(text, "<python>")); },
        py::arg("config_json"), "16-hex digest of the canonical config.");
  m.def("default_config", [] { return run_config_json(parse_run_config("{}", "<defaults>")); },
        "Canonical JSON of the built-in defaults.");

  m.def("dcg_at_5", [](const std::vector<double>& v) { return dcg_at_5(v); },
        py::arg("engagement"), "Position-discounted gain over at most five slots.");
  m.def("ndcg_at_5",
        [](const std::vector<double>& ranked, const std::vector<double>& all) {
          return ndcg_at_5(ranked, all);
        },
        py::arg("ranked"), py::arg("all_for_user"),
        "DCG of the given order over the ideal order; None when undefined.");

  py::class_<Engine>(m, "Engine")
      .def(py::init<const std::string&>(), py::arg("config_json"))
      .def("config_json", &Engine::config_json)
      .def("simulate", &Engine::simulate, py::call_guard<py::gil_scoped_release>())
      .def("train", &Engine::train, py::call_guard<py::gil_scoped_release>())
      .def("load", &Engine::load, py::arg("checkpoint") = std::nullopt)
      .def("evaluate", &Engine::evaluate, py::call_guard<py::gil_scoped_release>())
      .def("rank", &Engine::rank, py::arg("customer_id"), py::arg("candidate_ids"),
           py::arg("k") = kPageSlots, py::arg("customer_context") = ContextMap{},
           py::arg("shopping_context") = ContextMap{})
      .def("has_model", &Engine::has_model)
      .def("model_type", &Engine::model_type);
}
