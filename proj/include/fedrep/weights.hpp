#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fedrep/errors.hpp"
#include "fedrep/matrix.hpp"

namespace fedrep {

/// Ordered list of named parameter matrices. Value type: snapshots are deep
/// copies, so transferring one between sessions never aliases live weights.
struct ModelWeights {
    std::vector<std::pair<std::string, DenseMatrix>> params;

    std::size_t count() const { return params.size(); }
    bool empty() const { return params.empty(); }

    DenseMatrix& at(const std::string& name) {
        for (auto& [n, m] : params)
            if (n == name) return m;
        throw ParameterError("ModelWeights: no parameter named '" + name + "'");
    }

    const DenseMatrix& at(const std::string& name) const {
        for (const auto& [n, m] : params)
            if (n == name) return m;
        throw ParameterError("ModelWeights: no parameter named '" + name + "'");
    }

    /// True when both lists carry the same names and shapes in the same order.
    bool same_layout(const ModelWeights& other) const {
        if (params.size() != other.params.size()) return false;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (params[i].first != other.params[i].first) return false;
            if (!params[i].second.same_shape(other.params[i].second)) return false;
        }
        return true;
    }

    bool operator==(const ModelWeights& other) const {
        if (params.size() != other.params.size()) return false;
        for (std::size_t i = 0; i < params.size(); ++i)
            if (params[i].first != other.params[i].first ||
                !(params[i].second == other.params[i].second))
                return false;
        return true;
    }

    std::size_t total_entries() const {
        std::size_t n = 0;
        for (const auto& [name, m] : params) n += m.size();
        return n;
    }
};

} // namespace fedrep
