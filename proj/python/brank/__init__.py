"""Neural-bandit content ranking engine.

Thin wrapper over the compiled core: configs go in as dicts (or JSON
strings), results come back as dicts. The heavy lifting — simulation,
training, evaluation, ranking — happens in C++.
"""

import json as _json

try:
    from ._brank import (
        ConfigError,
        CorruptionError,
        FormatError,
        SchemaError,
        TrainError,
        VersionError,
    )
    from . import _brank as _core
except ImportError:  # in-tree build: the module sits next to the package
    import _brank as _core
    from _brank import (
        ConfigError,
        CorruptionError,
        FormatError,
        SchemaError,
        TrainError,
        VersionError,
    )

__all__ = [
    "Engine",
    "canonical_config",
    "config_hash",
    "default_config",
    "dcg_at_5",
    "ndcg_at_5",
    "ConfigError",
    "SchemaError",
    "FormatError",
    "VersionError",
    "CorruptionError",
    "TrainError",
]

dcg_at_5 = _core.dcg_at_5
ndcg_at_5 = _core.ndcg_at_5


def _as_json(config):
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def canonical_config(config=None):
    """Validated config with every field filled in, as a dict."""
    if config is None:
        return _json.loads(_core.default_config())
    return _json.loads(_core.canonical_config(_as_json(config)))


def config_hash(config):
    return _core.config_hash(_as_json(config))


def default_config():
    return _json.loads(_core.default_config())


class Engine:
    """One configured world. Methods mirror the CLI subcommands."""

    def __init__(self, config=None):
        self._engine = _core.Engine(_as_json(config if config is not None else {}))

    def config(self):
        return _json.loads(self._engine.config_json())

    def simulate(self):
        """Serve the training impressions under the uniform logging policy
        and write the event log; returns the run summary."""
        return _json.loads(self._engine.simulate())

    def train(self):
        """Fit the configured model on the event log and write the
        checkpoint; returns the loss trace and artifact path."""
        return _json.loads(self._engine.train())

    def load(self, checkpoint=None):
        """Load a checkpoint (default: the configured path) for ranking."""
        self._engine.load(checkpoint)

    def evaluate(self):
        """Serve the evaluation impressions with the current model and
        score the realized pages; returns the metrics."""
        return _json.loads(self._engine.evaluate())

    def rank(self, customer_id, candidate_ids, k=5, customer_context=None,
             shopping_context=None):
        """Order candidates for one request; returns ranked entries plus
        any candidates excluded by scoring failures."""
        return _json.loads(self._engine.rank(
            customer_id, list(candidate_ids), k,
            dict(customer_context or {}), dict(shopping_context or {})))

    def has_model(self):
        return self._engine.has_model()

    def model_type(self):
        return self._engine.model_type()
