#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fedrep/matrix.hpp"

namespace fedrep {

/// Operation that produced a tape node.
enum class OpKind : unsigned char {
    Leaf,
    MatMul,
    Add,
    Relu,
    Scale,
    Transpose,
    SoftmaxRows,
    CrossEntropy,
};

/// Reverse-mode autodiff tape over dense matrices.
///
/// Nodes are appended in evaluation order, so every node's operands precede
/// it and a single reverse sweep propagates gradients visiting each node
/// exactly once. A tape belongs to one training session; independent sessions
/// use independent tapes.
class Tape {
public:
    using NodeId = std::size_t;

    /// Inserts an input node (parameter or constant).
    NodeId leaf(DenseMatrix value);

    /// Matrix product. Requires a.cols == b.rows.
    NodeId matmul(NodeId a, NodeId b);

    /// Entry-wise sum. Requires equal shapes.
    NodeId add(NodeId a, NodeId b);

    /// Entry-wise max(x, 0). Backward passes gradient only where input > 0;
    /// the kink at exactly 0 propagates zero.
    NodeId relu(NodeId a);

    /// Multiplication by a scalar constant.
    NodeId scale(NodeId a, double factor);

    NodeId transpose(NodeId a);

    /// Row-wise softmax with per-row max subtraction. Each output row sums
    /// to 1 and every entry lies in (0, 1).
    NodeId softmax_rows(NodeId z);

    /// Negative log-likelihood of `label` under softmax(logits). Logits must
    /// be 1x2 (binary task); label must be 0 or 1. Produces a 1x1 node.
    NodeId cross_entropy(NodeId logits, int label);

    /// Propagates gradients from `output` (must be 1x1) back to every
    /// contributing node.
    void backward(NodeId output);

    const DenseMatrix& value(NodeId id) const { return nodes_[id].value; }
    const DenseMatrix& gradient(NodeId id) const;
    OpKind op(NodeId id) const { return nodes_[id].op; }
    std::array<NodeId, 2> operands(NodeId id) const { return nodes_[id].args; }
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        DenseMatrix value;
        DenseMatrix grad; // allocated by backward(); same shape as value
        OpKind op = OpKind::Leaf;
        std::array<NodeId, 2> args{0, 0};
        double scalar = 0.0; // Scale factor
        int label = 0;       // CrossEntropy target
        bool has_grad = false;
    };

    NodeId push(Node n);
    void backprop_node(NodeId id);
    void accumulate(NodeId id, const DenseMatrix& g);

    std::vector<Node> nodes_;
};

} // namespace fedrep
