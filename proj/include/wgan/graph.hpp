#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wgan::ad {

using Mat = Eigen::MatrixXd;
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Vectors are stored as n-by-1 matrices, scalars as 1-by-1.
enum class Op : std::uint8_t {
  kLeaf,           // externally bound value (data input, parameter or constant)
  kMatMul,         // A (m x k) * B (k x n)
  kMatMulAT,       // A^T * B
  kMatMulBT,       // A * B^T
  kAdd,            // elementwise, equal shapes
  kSub,            //
  kMul,            //
  kRelu,           // max(x, 0)
  kHeaviside,      // 1 if x > 0 else 0; derivative 0 everywhere
  kSquare,         // x^2
  kReciprocal,     // 1 / x
  kAffine,         // c0 * x + c1
  kAddColwise,     // X (p x m) + v (p x 1) added to every column
  kSumCols,        // X (p x m) -> p x 1, sum over columns
  kBroadcastCols,  // v (p x 1) -> p x i0 copies
  kSumRows,        // X (p x m) -> 1 x m, sum over rows
  kBroadcastRows,  // r (1 x m) -> i0 x m copies
  kColNorm,        // X (d x m) -> 1 x m, sqrt(sum_i X_ij^2 + c0) per column
  kSum,            // full sum -> 1 x 1
  kMean,           // full mean -> 1 x 1
  kBroadcastFill,  // s (1 x 1) -> i0 x i1 copies
  kDot,            // <A, B> (equal shapes) -> 1 x 1
  kConcatRows,     // stack A (r0 x m) on top of B (r1 x m)
  kSliceRows,      // rows [i0, i0 + i1) of X
  kPadRows,        // X (r x m) placed at row offset i0 inside zeros(i1 x m)
};

struct Node {
  Op op = Op::kLeaf;
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  double c0 = 0.0;  // Affine scale / ColNorm smoothing constant
  double c1 = 0.0;  // Affine shift
  int i0 = 0;       // slice/pad offset, broadcast count
  int i1 = 0;       // slice length, pad/broadcast total
  int rows = 0;
  int cols = 0;
  bool is_param = false;
  bool bound = false;  // leaves only: value assigned
  Mat value;
};

// A differentiable expression DAG. Nodes are appended in topological order
// (parents always precede children) and evaluated in that order. Backward
// passes append new nodes computing adjoints, so gradients are themselves
// graph expressions and can be differentiated again (double backprop).
//
// Construction and evaluation are single-writer; a fully evaluated graph
// is safe to read from multiple threads.
class Graph {
 public:
  // --- leaves ---
  NodeId input(int rows, int cols);              // data leaf, bind before eval
  NodeId parameter(int rows, int cols);          // parameter leaf
  NodeId constant(const Mat& value);             // pre-bound leaf

  // --- ops ---
  NodeId matmul(NodeId a, NodeId b);
  NodeId matmul_at(NodeId a, NodeId b);          // a^T * b
  NodeId matmul_bt(NodeId a, NodeId b);          // a * b^T
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);
  NodeId relu(NodeId a);
  NodeId heaviside(NodeId a);
  NodeId square(NodeId a);
  NodeId reciprocal(NodeId a);
  NodeId affine(NodeId a, double scale, double shift);
  NodeId add_colwise(NodeId x, NodeId v);
  NodeId sum_cols(NodeId a);
  NodeId broadcast_cols(NodeId v, int cols);
  NodeId sum_rows(NodeId a);
  NodeId broadcast_rows(NodeId r, int rows);
  NodeId col_norm(NodeId a, double smoothing);
  NodeId sum(NodeId a);
  NodeId mean(NodeId a);
  NodeId broadcast_fill(NodeId s, int rows, int cols);
  NodeId dot(NodeId a, NodeId b);
  NodeId concat_rows(NodeId a, NodeId b);
  NodeId slice_rows(NodeId a, int offset, int count);
  NodeId pad_rows(NodeId a, int offset, int total_rows);

  // --- values ---
  void set_value(NodeId id, const Mat& value);   // leaves only
  const Mat& value(NodeId id) const;
  bool is_scalar(NodeId id) const;
  int rows(NodeId id) const { return node(id).rows; }
  int cols(NodeId id) const { return node(id).cols; }

  // Recomputes every non-leaf value in node order. Throws on unbound leaves.
  void eval();
  // Recomputes nodes in [first, size()); used after appending adjoints to an
  // already evaluated graph.
  void eval_from(std::size_t first);

  // Appends nodes computing d(root)/d(target) for each target and returns
  // their ids. root must be scalar. Targets may be leaves or interior nodes
  // (an interior target is treated as independent: only paths above it
  // contribute). Targets with no path to root get a zero constant.
  std::vector<NodeId> backward(NodeId root, std::span<const NodeId> wrt);

  // Appends nodes computing the smoothed euclidean norm of d(root)/d(input):
  // the gradient-norm expression is itself differentiable w.r.t. parameters.
  // For a batched input (d x m) the result is 1 x m of per-column norms.
  NodeId input_gradient_norm(NodeId root, NodeId input, double smoothing);

  std::size_t size() const { return nodes_.size(); }
  void truncate(std::size_t n);  // drop nodes [n, size()); n must be <= size()

  // Re-evaluates non-leaf nodes and checks cached values match; for tests.
  bool verify(double tol = 0.0) const;

  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }

 private:
  Node& node(NodeId id) { return nodes_[static_cast<std::size_t>(id)]; }
  NodeId push(Node n);
  NodeId zeros_like(NodeId id);
  void compute(Node& n) const;
  void check_shape(bool ok, const std::string& what) const;

  std::vector<Node> nodes_;
};

// Per-parameter gradient tensors, shape-congruent with the parameters
// they differentiate against.
struct Gradient {
  std::vector<Mat> parts;
};

// Evaluates the graph and returns the root value.
const Mat& evaluate(Graph& g, NodeId root);

// Numeric gradient of a scalar root w.r.t. the given leaves. Appends the
// adjoint expressions, evaluates them, then restores the original graph.
Gradient gradient(Graph& g, NodeId root, std::span<const NodeId> wrt);

}  // namespace wgan::ad
