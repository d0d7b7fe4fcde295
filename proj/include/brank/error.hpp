#pragma once

#include <stdexcept>
#include <string>

namespace brank {

// Error taxonomy. Every failure mode in the library maps onto one of these so
// callers (CLI, service, tests) can branch on the class instead of parsing
// messages.

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown id in a table/catalog lookup. Never silently returns zeros.
struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Context key not present in the registered schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file content (bad magic, truncation, unparsable line).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Payload present but fails its integrity check.
struct CorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Episode-level failure in the synthetic environment (e.g. the ranking
// policy threw); carries the impression context in the message.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace brank
