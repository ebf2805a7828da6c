#include "wgan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace wgan::ad {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void Graph::check_shape(bool ok, const std::string& what) const {
  if (!ok) throw std::invalid_argument("shape mismatch: " + what);
}

NodeId Graph::push(Node n) {
  if (n.op != Op::kLeaf) {
    require(n.a >= 0 && static_cast<std::size_t>(n.a) < nodes_.size(),
            "parent index out of range");
    if (n.b != kNoNode) {
      require(n.b >= 0 && static_cast<std::size_t>(n.b) < nodes_.size(),
              "parent index out of range");
    }
  }
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::input(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "leaf dimensions must be positive");
  Node n;
  n.rows = rows;
  n.cols = cols;
  return push(std::move(n));
}

NodeId Graph::parameter(int rows, int cols) {
  NodeId id = input(rows, cols);
  node(id).is_param = true;
  return id;
}

NodeId Graph::constant(const Mat& value) {
  Node n;
  n.rows = static_cast<int>(value.rows());
  n.cols = static_cast<int>(value.cols());
  n.value = value;
  n.bound = true;
  return push(std::move(n));
}

NodeId Graph::matmul(NodeId a, NodeId b) {
  check_shape(cols(a) == rows(b), "matmul inner dimensions");
  Node n{Op::kMatMul, a, b};
  n.rows = rows(a);
  n.cols = cols(b);
  return push(std::move(n));
}

NodeId Graph::matmul_at(NodeId a, NodeId b) {
  check_shape(rows(a) == rows(b), "matmul_at inner dimensions");
  Node n{Op::kMatMulAT, a, b};
  n.rows = cols(a);
  n.cols = cols(b);
  return push(std::move(n));
}

NodeId Graph::matmul_bt(NodeId a, NodeId b) {
  check_shape(cols(a) == cols(b), "matmul_bt inner dimensions");
  Node n{Op::kMatMulBT, a, b};
  n.rows = rows(a);
  n.cols = rows(b);
  return push(std::move(n));
}

NodeId Graph::add(NodeId a, NodeId b) {
  check_shape(rows(a) == rows(b) && cols(a) == cols(b), "add operands");
  Node n{Op::kAdd, a, b};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::sub(NodeId a, NodeId b) {
  check_shape(rows(a) == rows(b) && cols(a) == cols(b), "sub operands");
  Node n{Op::kSub, a, b};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::mul(NodeId a, NodeId b) {
  check_shape(rows(a) == rows(b) && cols(a) == cols(b), "mul operands");
  Node n{Op::kMul, a, b};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::relu(NodeId a) {
  Node n{Op::kRelu, a};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::heaviside(NodeId a) {
  Node n{Op::kHeaviside, a};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::square(NodeId a) {
  Node n{Op::kSquare, a};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::reciprocal(NodeId a) {
  Node n{Op::kReciprocal, a};
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::affine(NodeId a, double scale, double shift) {
  Node n{Op::kAffine, a};
  n.c0 = scale;
  n.c1 = shift;
  n.rows = rows(a);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::add_colwise(NodeId x, NodeId v) {
  check_shape(rows(x) == rows(v) && cols(v) == 1, "add_colwise operands");
  Node n{Op::kAddColwise, x, v};
  n.rows = rows(x);
  n.cols = cols(x);
  return push(std::move(n));
}

NodeId Graph::sum_cols(NodeId a) {
  Node n{Op::kSumCols, a};
  n.rows = rows(a);
  n.cols = 1;
  return push(std::move(n));
}

NodeId Graph::broadcast_cols(NodeId v, int count) {
  check_shape(cols(v) == 1, "broadcast_cols takes a column vector");
  require(count >= 1, "broadcast count must be positive");
  Node n{Op::kBroadcastCols, v};
  n.i0 = count;
  n.rows = rows(v);
  n.cols = count;
  return push(std::move(n));
}

NodeId Graph::sum_rows(NodeId a) {
  Node n{Op::kSumRows, a};
  n.rows = 1;
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::broadcast_rows(NodeId r, int count) {
  check_shape(rows(r) == 1, "broadcast_rows takes a row vector");
  require(count >= 1, "broadcast count must be positive");
  Node n{Op::kBroadcastRows, r};
  n.i0 = count;
  n.rows = count;
  n.cols = cols(r);
  return push(std::move(n));
}

NodeId Graph::col_norm(NodeId a, double smoothing) {
  require(smoothing >= 0.0, "col_norm smoothing must be nonnegative");
  Node n{Op::kColNorm, a};
  n.c0 = smoothing;
  n.rows = 1;
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::sum(NodeId a) {
  Node n{Op::kSum, a};
  n.rows = 1;
  n.cols = 1;
  return push(std::move(n));
}

NodeId Graph::mean(NodeId a) {
  Node n{Op::kMean, a};
  n.rows = 1;
  n.cols = 1;
  return push(std::move(n));
}

NodeId Graph::broadcast_fill(NodeId s, int rows_out, int cols_out) {
  check_shape(is_scalar(s), "broadcast_fill takes a scalar");
  require(rows_out >= 1 && cols_out >= 1, "broadcast dimensions must be positive");
  Node n{Op::kBroadcastFill, s};
  n.i0 = rows_out;
  n.i1 = cols_out;
  n.rows = rows_out;
  n.cols = cols_out;
  return push(std::move(n));
}

NodeId Graph::dot(NodeId a, NodeId b) {
  check_shape(rows(a) == rows(b) && cols(a) == cols(b), "dot operands");
  Node n{Op::kDot, a, b};
  n.rows = 1;
  n.cols = 1;
  return push(std::move(n));
}

NodeId Graph::concat_rows(NodeId a, NodeId b) {
  check_shape(cols(a) == cols(b), "concat_rows column counts");
  Node n{Op::kConcatRows, a, b};
  n.rows = rows(a) + rows(b);
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::slice_rows(NodeId a, int offset, int count) {
  require(offset >= 0 && count >= 1 && offset + count <= rows(a),
          "slice_rows range out of bounds");
  Node n{Op::kSliceRows, a};
  n.i0 = offset;
  n.i1 = count;
  n.rows = count;
  n.cols = cols(a);
  return push(std::move(n));
}

NodeId Graph::pad_rows(NodeId a, int offset, int total_rows) {
  require(offset >= 0 && offset + rows(a) <= total_rows,
          "pad_rows range out of bounds");
  Node n{Op::kPadRows, a};
  n.i0 = offset;
  n.i1 = total_rows;
  n.rows = total_rows;
  n.cols = cols(a);
  return push(std::move(n));
}

void Graph::set_value(NodeId id, const Mat& value) {
  Node& n = node(id);
  require(n.op == Op::kLeaf, "set_value on non-leaf node");
  check_shape(value.rows() == n.rows && value.cols() == n.cols,
              "leaf binding does not match declared shape");
  n.value = value;
  n.bound = true;
}

const Mat& Graph::value(NodeId id) const { return node(id).value; }

bool Graph::is_scalar(NodeId id) const { return rows(id) == 1 && cols(id) == 1; }

void Graph::compute(Node& n) const {
  const auto& A = nodes_[static_cast<std::size_t>(n.a)].value;
  switch (n.op) {
    case Op::kLeaf:
      break;
    case Op::kMatMul:
      n.value.noalias() = A * nodes_[static_cast<std::size_t>(n.b)].value;
      break;
    case Op::kMatMulAT:
      n.value.noalias() = A.transpose() * nodes_[static_cast<std::size_t>(n.b)].value;
      break;
    case Op::kMatMulBT:
      n.value.noalias() = A * nodes_[static_cast<std::size_t>(n.b)].value.transpose();
      break;
    case Op::kAdd:
      n.value = A + nodes_[static_cast<std::size_t>(n.b)].value;
      break;
    case Op::kSub:
      n.value = A - nodes_[static_cast<std::size_t>(n.b)].value;
      break;
    case Op::kMul:
      n.value = A.cwiseProduct(nodes_[static_cast<std::size_t>(n.b)].value);
      break;
    case Op::kRelu:
      n.value = A.cwiseMax(0.0);
      break;
    case Op::kHeaviside:
      n.value = (A.array() > 0.0).cast<double>();
      break;
    case Op::kSquare:
      n.value = A.array().square();
      break;
    case Op::kReciprocal:
      n.value = A.cwiseInverse();
      break;
    case Op::kAffine:
      n.value = (n.c0 * A.array() + n.c1).matrix();
      break;
    case Op::kAddColwise:
      n.value = A.colwise() + nodes_[static_cast<std::size_t>(n.b)].value.col(0);
      break;
    case Op::kSumCols:
      n.value = A.rowwise().sum();
      break;
    case Op::kBroadcastCols:
      n.value = A.col(0).replicate(1, n.i0);
      break;
    case Op::kSumRows:
      n.value = A.colwise().sum();
      break;
    case Op::kBroadcastRows:
      n.value = A.row(0).replicate(n.i0, 1);
      break;
    case Op::kColNorm:
      n.value = (A.colwise().squaredNorm().array() + n.c0).sqrt().matrix();
      break;
    case Op::kSum:
      n.value = Mat::Constant(1, 1, A.sum());
      break;
    case Op::kMean:
      n.value = Mat::Constant(1, 1, A.mean());
      break;
    case Op::kBroadcastFill:
      n.value = Mat::Constant(n.i0, n.i1, A(0, 0));
      break;
    case Op::kDot:
      n.value = Mat::Constant(
          1, 1, A.cwiseProduct(nodes_[static_cast<std::size_t>(n.b)].value).sum());
      break;
    case Op::kConcatRows: {
      const auto& B = nodes_[static_cast<std::size_t>(n.b)].value;
      n.value.resize(n.rows, n.cols);
      n.value.topRows(A.rows()) = A;
      n.value.bottomRows(B.rows()) = B;
      break;
    }
    case Op::kSliceRows:
      n.value = A.middleRows(n.i0, n.i1);
      break;
    case Op::kPadRows:
      n.value = Mat::Zero(n.i1, n.cols);
      n.value.middleRows(n.i0, static_cast<int>(A.rows())) = A;
      break;
  }
}

void Graph::eval() { eval_from(0); }

void Graph::eval_from(std::size_t first) {
  for (std::size_t i = first; i < nodes_.size(); ++i) {
    Node& n = nodes_[i];
    if (n.op == Op::kLeaf) {
      if (!n.bound) throw std::logic_error("unbound leaf at node " + std::to_string(i));
      continue;
    }
    compute(n);
  }
}

void Graph::truncate(std::size_t n) {
  require(n <= nodes_.size(), "truncate beyond graph size");
  nodes_.resize(n);
}

bool Graph::verify(double tol) const {
  for (const Node& n : nodes_) {
    if (n.op == Op::kLeaf) continue;
    Node copy = n;
    compute(copy);
    if (copy.value.rows() != n.value.rows() || copy.value.cols() != n.value.cols())
      return false;
    if (((copy.value - n.value).array().abs() > tol).any()) return false;
  }
  return true;
}

NodeId Graph::zeros_like(NodeId id) {
  return constant(Mat::Zero(rows(id), cols(id)));
}

std::vector<NodeId> Graph::backward(NodeId root, std::span<const NodeId> wrt) {
  require(is_scalar(root), "non-scalar root");
  const auto root_idx = static_cast<std::size_t>(root);

  // Nodes whose adjoint contributes to some requested target: reachable
  // down from root and up from a target. Computing both sets keeps the
  // appended expression minimal.
  std::vector<char> below_root(root_idx + 1, 0);
  below_root[root_idx] = 1;
  for (std::size_t i = root_idx + 1; i-- > 0;) {
    if (!below_root[i]) continue;
    const Node& n = nodes_[i];
    if (n.op == Op::kLeaf) continue;
    below_root[static_cast<std::size_t>(n.a)] = 1;
    if (n.b != kNoNode) below_root[static_cast<std::size_t>(n.b)] = 1;
  }
  std::vector<char> above_target(root_idx + 1, 0);
  for (NodeId t : wrt) {
    require(t >= 0, "invalid target node");
    if (static_cast<std::size_t>(t) <= root_idx) above_target[static_cast<std::size_t>(t)] = 1;
  }
  for (std::size_t i = 0; i <= root_idx; ++i) {
    const Node& n = nodes_[i];
    if (n.op == Op::kLeaf) continue;
    bool up = above_target[static_cast<std::size_t>(n.a)] ||
              (n.b != kNoNode && above_target[static_cast<std::size_t>(n.b)]);
    if (up) above_target[i] = 1;
  }

  std::vector<NodeId> adjoint(root_idx + 1, kNoNode);
  adjoint[root_idx] = constant(Mat::Ones(1, 1));

  auto needed = [&](NodeId id) {
    auto i = static_cast<std::size_t>(id);
    return i <= root_idx && below_root[i] && above_target[i];
  };
  auto accumulate = [&](NodeId target, NodeId contribution) {
    if (!needed(target)) return;
    auto i = static_cast<std::size_t>(target);
    adjoint[i] = (adjoint[i] == kNoNode) ? contribution : add(adjoint[i], contribution);
  };

  // Wrt targets are treated as independent variables: their own parents
  // receive no contribution through them.
  std::vector<char> is_target(root_idx + 1, 0);
  for (NodeId t : wrt)
    if (static_cast<std::size_t>(t) <= root_idx) is_target[static_cast<std::size_t>(t)] = 1;

  for (std::size_t i = root_idx + 1; i-- > 0;) {
    if (adjoint[i] == kNoNode || is_target[i]) continue;
    const Node n = nodes_[i];  // copy: push() may reallocate nodes_
    if (n.op == Op::kLeaf) continue;
    const NodeId g = adjoint[i];
    const NodeId a = n.a;
    const NodeId b = n.b;
    switch (n.op) {
      case Op::kLeaf:
        break;
      case Op::kMatMul:
        accumulate(a, matmul_bt(g, b));
        accumulate(b, matmul_at(a, g));
        break;
      case Op::kMatMulAT:  // C = A^T B
        accumulate(a, matmul_bt(b, g));
        accumulate(b, matmul(a, g));
        break;
      case Op::kMatMulBT:  // C = A B^T
        accumulate(a, matmul(g, b));
        accumulate(b, matmul_at(g, a));
        break;
      case Op::kAdd:
        accumulate(a, g);
        accumulate(b, g);
        break;
      case Op::kSub:
        accumulate(a, g);
        accumulate(b, affine(g, -1.0, 0.0));
        break;
      case Op::kMul:
        accumulate(a, mul(g, b));
        accumulate(b, mul(g, a));
        break;
      case Op::kRelu:
        accumulate(a, mul(g, heaviside(a)));
        break;
      case Op::kHeaviside:
        break;  // derivative defined as 0 everywhere
      case Op::kSquare:
        accumulate(a, affine(mul(g, a), 2.0, 0.0));
        break;
      case Op::kReciprocal:
        // d(1/x) = -y^2 dx with y the cached output
        accumulate(a, affine(mul(g, square(static_cast<NodeId>(i))), -1.0, 0.0));
        break;
      case Op::kAffine:
        accumulate(a, affine(g, n.c0, 0.0));
        break;
      case Op::kAddColwise:
        accumulate(a, g);
        accumulate(b, sum_cols(g));
        break;
      case Op::kSumCols:
        accumulate(a, broadcast_cols(g, nodes_[static_cast<std::size_t>(a)].cols));
        break;
      case Op::kBroadcastCols:
        accumulate(a, sum_cols(g));
        break;
      case Op::kSumRows:
        accumulate(a, broadcast_rows(g, nodes_[static_cast<std::size_t>(a)].rows));
        break;
      case Op::kBroadcastRows:
        accumulate(a, sum_rows(g));
        break;
      case Op::kColNorm: {
        // d norm_j / dX_ij = X_ij / norm_j
        const int a_rows = nodes_[static_cast<std::size_t>(a)].rows;
        accumulate(a, mul(a, broadcast_rows(mul(g, reciprocal(static_cast<NodeId>(i))), a_rows)));
        break;
      }
      case Op::kSum:
        accumulate(a, broadcast_fill(g, nodes_[static_cast<std::size_t>(a)].rows,
                                     nodes_[static_cast<std::size_t>(a)].cols));
        break;
      case Op::kMean: {
        const auto& pa = nodes_[static_cast<std::size_t>(a)];
        double inv = 1.0 / (static_cast<double>(pa.rows) * static_cast<double>(pa.cols));
        accumulate(a, affine(broadcast_fill(g, pa.rows, pa.cols), inv, 0.0));
        break;
      }
      case Op::kBroadcastFill:
        accumulate(a, sum(g));
        break;
      case Op::kDot:
        accumulate(a, mul(broadcast_fill(g, nodes_[static_cast<std::size_t>(a)].rows,
                                         nodes_[static_cast<std::size_t>(a)].cols),
                          b));
        accumulate(b, mul(broadcast_fill(g, nodes_[static_cast<std::size_t>(b)].rows,
                                         nodes_[static_cast<std::size_t>(b)].cols),
                          a));
        break;
      case Op::kConcatRows:
        accumulate(a, slice_rows(g, 0, nodes_[static_cast<std::size_t>(a)].rows));
        accumulate(b, slice_rows(g, nodes_[static_cast<std::size_t>(a)].rows,
                                 nodes_[static_cast<std::size_t>(b)].rows));
        break;
      case Op::kSliceRows:
        accumulate(a, pad_rows(g, n.i0, nodes_[static_cast<std::size_t>(a)].rows));
        break;
      case Op::kPadRows:
        accumulate(a, slice_rows(g, n.i0, nodes_[static_cast<std::size_t>(a)].rows));
        break;
    }
  }

  std::vector<NodeId> out;
  out.reserve(wrt.size());
  for (NodeId t : wrt) {
    auto i = static_cast<std::size_t>(t);
    out.push_back(i <= root_idx && adjoint[i] != kNoNode ? adjoint[i] : zeros_like(t));
  }
  return out;
}

NodeId Graph::input_gradient_norm(NodeId root, NodeId input, double smoothing) {
  NodeId grad = backward(root, std::span<const NodeId>{&input, 1})[0];
  return col_norm(grad, smoothing);
}

const Mat& evaluate(Graph& g, NodeId root) {
  g.eval();
  return g.value(root);
}

Gradient gradient(Graph& g, NodeId root, std::span<const NodeId> wrt) {
  const std::size_t mark = g.size();
  std::vector<NodeId> adj = g.backward(root, wrt);
  g.eval();
  Gradient out;
  out.parts.reserve(adj.size());
  for (NodeId id : adj) out.parts.push_back(g.value(id));
  g.truncate(mark);
  return out;
}

}  // namespace wgan::ad
