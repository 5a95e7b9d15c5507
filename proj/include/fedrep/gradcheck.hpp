#pragma once

#include <functional>
#include <string>

#include "fedrep/weights.hpp"

namespace fedrep {

/// Scalar loss evaluated at a parameter point. When `grads` is non-null the
/// closure must also fill analytic gradients (same layout as the parameters).
/// The closure must be deterministic.
using DifferentiableLoss = std::function<double(const ModelWeights&, ModelWeights* grads)>;

struct GradCheckReport {
    bool passed = false;
    std::size_t entries_checked = 0;
    double tolerance = 0.0;
    // Worst offender over all parameter entries.
    double worst_rel_err = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;

    std::string summary() const;
};

/// Compares the closure's analytic gradients against central finite
/// differences, entry by entry. An entry passes when
///   |analytic - numeric| / max(1, |analytic|) <= tolerance.
/// Throws TrainingError if any loss evaluation is non-finite.
GradCheckReport gradient_check(const DifferentiableLoss& loss, const ModelWeights& at,
                               double tolerance, double step = 1e-5);

} // namespace fedrep
