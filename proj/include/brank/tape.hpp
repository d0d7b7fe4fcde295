#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "brank/matrix.hpp"

namespace brank {

/// A named trainable tensor with its accumulated gradient.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;

  Parameter() = default;
  Parameter(std::string n, Matrix v)
      : name(std::move(n)), value(std::move(v)), grad(value.rows(), value.cols()) {}

  void zero_grad() { grad.set_zero(); }
};

void zero_grads(std::span<Parameter* const> params);

/// A value recorded on the tape: forward result plus the gradient slot filled
/// during the backward pass.
struct TapeNode {
  Matrix value;
  Matrix grad;  // same shape, starts at zero

  explicit TapeNode(Matrix v) : value(std::move(v)), grad(value.rows(), value.cols()) {}
};

using NodePtr = std::shared_ptr<TapeNode>;

/// Reverse-mode tape over whole-matrix operations (dense layers, activations,
/// pooling, attention pieces). Records one entry per op; backward() replays
/// them in exact reverse order, accumulating additively into node and
/// parameter gradients. One tape per forward pass.
class GradientTape {
 public:
  // Leaf input; not differentiated through unless reached via recorded ops.
  NodePtr leaf(Matrix value);

  // y = W x + b, W: (out, in), x: (in, m); b broadcast across columns.
  NodePtr dense(const NodePtr& x, Parameter& w, Parameter& b);
  // Biasless variant (used by the channel projections).
  NodePtr dense(const NodePtr& x, Parameter& w);

  NodePtr matmul(const NodePtr& a, const NodePtr& b);
  NodePtr transpose(const NodePtr& a);
  NodePtr add(const NodePtr& a, const NodePtr& b);
  NodePtr scale(const NodePtr& a, double s);
  NodePtr relu(const NodePtr& x);
  // Softmax independently over each row.
  NodePtr softmax_rows(const NodePtr& x);
  // (r, c) -> (r, 1), mean over columns.
  NodePtr mean_cols(const NodePtr& x);
  // Scales row i of x by s(i, 0); x: (r, c), s: (r, 1).
  NodePtr row_scale(const NodePtr& x, const NodePtr& s);
  // Scales column j of x by s(j, 0); x: (r, c), s: (c, 1).
  NodePtr col_scale(const NodePtr& x, const NodePtr& s);
  // (n, 1) -> (n, m) by tiling the column.
  NodePtr broadcast_cols(const NodePtr& x, int m);
  // Stacks blocks vertically; all must share the column count.
  NodePtr concat_rows(std::span<const NodePtr> parts);
  NodePtr slice_rows(const NodePtr& x, int begin, int end);
  NodePtr slice_col(const NodePtr& x, int col);
  // Row-major reinterpretation to (rows, cols); element count must match.
  NodePtr reshape(const NodePtr& x, int rows, int cols);

  // Scalar (1, 1) losses against a constant target.
  NodePtr mse(const NodePtr& pred, const Matrix& target);
  NodePtr mae(const NodePtr& pred, const Matrix& target);

  // Seeds d(loss)/d(loss) = seed and walks the recorded ops in reverse.
  // `loss` must be a (1, 1) node produced by this tape.
  void backward(const NodePtr& loss, double seed = 1.0);

  size_t op_count() const { return ops_.size(); }

 private:
  void record(std::function<void()> backward_fn);
  std::vector<std::function<void()>> ops_;
};

}  // namespace brank
