#include "fedrep/autodiff.hpp"

#include <cmath>
#include <string>

#include "fedrep/errors.hpp"
#include "fedrep/kernels.hpp"

namespace fedrep {

Tape::NodeId Tape::push(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
}

Tape::NodeId Tape::leaf(DenseMatrix value) {
    Node n;
    n.value = std::move(value);
    n.op = OpKind::Leaf;
    return push(std::move(n));
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
    const DenseMatrix& va = nodes_[a].value;
    const DenseMatrix& vb = nodes_[b].value;
    if (va.cols() != vb.rows())
        throw DimensionError("matmul: inner dimensions disagree, " + va.shape_string() + " * " +
                             vb.shape_string());
    Node n;
    n.value = DenseMatrix(va.rows(), vb.cols());
    kernels::gemm_nn(va.data(), vb.data(), n.value.data(), va.rows(), va.cols(), vb.cols());
    n.op = OpKind::MatMul;
    n.args = {a, b};
    return push(std::move(n));
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
    const DenseMatrix& va = nodes_[a].value;
    const DenseMatrix& vb = nodes_[b].value;
    if (!va.same_shape(vb))
        throw DimensionError("add: shape " + va.shape_string() + " vs " + vb.shape_string());
    Node n;
    n.value = va;
    for (std::size_t i = 0; i < vb.size(); ++i) n.value.values()[i] += vb.values()[i];
    n.op = OpKind::Add;
    n.args = {a, b};
    return push(std::move(n));
}

Tape::NodeId Tape::relu(NodeId a) {
    Node n;
    n.value = nodes_[a].value;
    for (double& v : n.value.values())
        if (v < 0.0) v = 0.0;
    n.op = OpKind::Relu;
    n.args = {a, a};
    return push(std::move(n));
}

Tape::NodeId Tape::scale(NodeId a, double factor) {
    Node n;
    n.value = nodes_[a].value;
    for (double& v : n.value.values()) v *= factor;
    n.op = OpKind::Scale;
    n.args = {a, a};
    n.scalar = factor;
    return push(std::move(n));
}

Tape::NodeId Tape::transpose(NodeId a) {
    Node n;
    n.value = nodes_[a].value.transposed();
    n.op = OpKind::Transpose;
    n.args = {a, a};
    return push(std::move(n));
}

Tape::NodeId Tape::softmax_rows(NodeId z) {
    const DenseMatrix& vz = nodes_[z].value;
    Node n;
    n.value = DenseMatrix(vz.rows(), vz.cols());
    for (std::size_t i = 0; i < vz.rows(); ++i) {
        double row_max = vz(i, 0);
        for (std::size_t j = 1; j < vz.cols(); ++j) row_max = std::max(row_max, vz(i, j));
        double denom = 0.0;
        for (std::size_t j = 0; j < vz.cols(); ++j) {
            double e = std::exp(vz(i, j) - row_max);
            n.value(i, j) = e;
            denom += e;
        }
        for (std::size_t j = 0; j < vz.cols(); ++j) n.value(i, j) /= denom;
    }
    n.op = OpKind::SoftmaxRows;
    n.args = {z, z};
    return push(std::move(n));
}

Tape::NodeId Tape::cross_entropy(NodeId logits, int label) {
    const DenseMatrix& vl = nodes_[logits].value;
    if (vl.rows() != 1 || vl.cols() != 2)
        throw DimensionError("cross_entropy: logits must be 1x2, got " + vl.shape_string());
    if (label != 0 && label != 1)
        throw DomainError("cross_entropy: label must be 0 or 1, got " + std::to_string(label));
    // -log softmax(logits)[label] via log-sum-exp
    double m = std::max(vl(0, 0), vl(0, 1));
    double lse = std::log(std::exp(vl(0, 0) - m) + std::exp(vl(0, 1) - m));
    Node n;
    n.value = DenseMatrix(1, 1, lse - (vl(0, static_cast<std::size_t>(label)) - m));
    n.op = OpKind::CrossEntropy;
    n.args = {logits, logits};
    n.label = label;
    return push(std::move(n));
}

const DenseMatrix& Tape::gradient(NodeId id) const {
    if (!nodes_[id].has_grad)
        throw DomainError("gradient: node " + std::to_string(id) +
                          " has no gradient; call backward() first");
    return nodes_[id].grad;
}

void Tape::accumulate(NodeId id, const DenseMatrix& g) {
    Node& n = nodes_[id];
    for (std::size_t i = 0; i < g.size(); ++i) n.grad.values()[i] += g.values()[i];
}

void Tape::backward(NodeId output) {
    const DenseMatrix& out = nodes_[output].value;
    if (out.rows() != 1 || out.cols() != 1)
        throw DimensionError("backward: output must be a 1x1 scalar, got " + out.shape_string());
    for (NodeId i = 0; i <= output; ++i) {
        Node& n = nodes_[i];
        n.grad = DenseMatrix(n.value.rows(), n.value.cols());
        n.has_grad = true;
    }
    nodes_[output].grad(0, 0) = 1.0;
    for (NodeId i = output + 1; i-- > 0;) backprop_node(i);
}

void Tape::backprop_node(NodeId id) {
    Node& n = nodes_[id];
    const DenseMatrix& g = n.grad;
    switch (n.op) {
        case OpKind::Leaf:
            break;
        case OpKind::MatMul: {
            // dA += dC * B^T, dB += A^T * dC
            const DenseMatrix& va = nodes_[n.args[0]].value;
            const DenseMatrix& vb = nodes_[n.args[1]].value;
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            DenseMatrix& gb = nodes_[n.args[1]].grad;
            kernels::gemm_nt(g.data(), vb.data(), ga.data(), g.rows(), g.cols(), vb.rows(),
                             /*accumulate=*/true);
            kernels::gemm_tn(va.data(), g.data(), gb.data(), va.cols(), va.rows(), g.cols(),
                             /*accumulate=*/true);
            break;
        }
        case OpKind::Add:
            accumulate(n.args[0], g);
            accumulate(n.args[1], g);
            break;
        case OpKind::Relu: {
            const DenseMatrix& in = nodes_[n.args[0]].value;
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            for (std::size_t i = 0; i < g.size(); ++i)
                if (in.values()[i] > 0.0) ga.values()[i] += g.values()[i];
            break;
        }
        case OpKind::Scale: {
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            for (std::size_t i = 0; i < g.size(); ++i) ga.values()[i] += n.scalar * g.values()[i];
            break;
        }
        case OpKind::Transpose: {
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            for (std::size_t i = 0; i < g.rows(); ++i)
                for (std::size_t j = 0; j < g.cols(); ++j) ga(j, i) += g(i, j);
            break;
        }
        case OpKind::SoftmaxRows: {
            // dz_j = p_j * (g_j - sum_k g_k p_k), row-wise
            const DenseMatrix& p = n.value;
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            for (std::size_t i = 0; i < p.rows(); ++i) {
                double dot = 0.0;
                for (std::size_t j = 0; j < p.cols(); ++j) dot += g(i, j) * p(i, j);
                for (std::size_t j = 0; j < p.cols(); ++j)
                    ga(i, j) += p(i, j) * (g(i, j) - dot);
            }
            break;
        }
        case OpKind::CrossEntropy: {
            // dlogits = (softmax(logits) - onehot(label)) * g
            const DenseMatrix& vl = nodes_[n.args[0]].value;
            DenseMatrix& ga = nodes_[n.args[0]].grad;
            double m = std::max(vl(0, 0), vl(0, 1));
            double e0 = std::exp(vl(0, 0) - m);
            double e1 = std::exp(vl(0, 1) - m);
            double p0 = e0 / (e0 + e1);
            double p1 = e1 / (e0 + e1);
            double seed = g(0, 0);
            ga(0, 0) += (p0 - (n.label == 0 ? 1.0 : 0.0)) * seed;
            ga(0, 1) += (p1 - (n.label == 1 ? 1.0 : 0.0)) * seed;
            break;
        }
    }
}

} // namespace fedrep
