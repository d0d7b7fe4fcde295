#pragma once

#include <functional>
#include <span>

#include "brank/matrix.hpp"
#include "brank/rng.hpp"
#include "brank/tape.hpp"

namespace brank {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-parameter Adam moment estimates.
struct AdamState {
  AdamConfig config;
  Matrix m;  // first moment
  Matrix v;  // second moment, entries >= 0
  long t = 0;

  AdamState() = default;
  AdamState(const AdamConfig& cfg, int rows, int cols)
      : config(cfg), m(rows, cols), v(rows, cols) {}
};

// Bias-corrected Adam update, in place. Increments state.t.
void adam_step(Matrix& params, const Matrix& grads, AdamState& state);

/// Adam over a set of Parameters; owns one AdamState per parameter.
class AdamOptimizer {
 public:
  AdamOptimizer(std::vector<Parameter*> params, const AdamConfig& cfg);
  void step();
  const std::vector<Parameter*>& params() const { return params_; }

 private:
  std::vector<Parameter*> params_;
  std::vector<AdamState> states_;
};

// Central-difference gradient check.
//
// `eval(true)` must run the differentiable computation, accumulate analytic
// gradients into the parameters' grad fields (which are zeroed beforehand),
// and return the scalar objective. `eval(false)` must return the objective
// only; it is called at perturbed parameter values.
//
// Returns max over all parameter entries of
//   |analytic - central_difference| / max(1, |analytic|).
double grad_check(const std::function<double(bool with_grad)>& eval,
                  std::span<Parameter* const> params, double eps);

// Glorot-style uniform init in (-sqrt(6/(fan_in+fan_out)), +...).
void init_dense_weight(Matrix& w, int fan_in, int fan_out, Rng& rng);

}  // namespace brank
