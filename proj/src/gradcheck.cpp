#include "fedrep/gradcheck.hpp"

#include <cmath>
#include <sstream>

#include "fedrep/errors.hpp"

namespace fedrep {

std::string GradCheckReport::summary() const {
    std::ostringstream os;
    os << (passed ? "pass" : "FAIL") << ": " << entries_checked << " entries, worst rel err "
       << worst_rel_err << " at " << worst_param << "[" << worst_index << "]"
       << " (analytic " << worst_analytic << ", numeric " << worst_numeric << ", tol " << tolerance
       << ")";
    return os.str();
}

GradCheckReport gradient_check(const DifferentiableLoss& loss, const ModelWeights& at,
                               double tolerance, double step) {
    ModelWeights analytic = at;
    double base = loss(at, &analytic);
    if (!std::isfinite(base))
        throw TrainingError("gradient_check: non-finite loss at the evaluation point");

    GradCheckReport report;
    report.tolerance = tolerance;
    report.passed = true;

    ModelWeights probe = at;
    for (std::size_t p = 0; p < at.params.size(); ++p) {
        const std::string& name = at.params[p].first;
        const DenseMatrix& grads = analytic.params[p].second;
        DenseMatrix& values = probe.params[p].second;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double saved = values.values()[i];
            values.values()[i] = saved + step;
            double up = loss(probe, nullptr);
            values.values()[i] = saved - step;
            double down = loss(probe, nullptr);
            values.values()[i] = saved;
            if (!std::isfinite(up) || !std::isfinite(down))
                throw TrainingError("gradient_check: non-finite loss while perturbing " + name +
                                    "[" + std::to_string(i) + "]");

            const double numeric = (up - down) / (2.0 * step);
            const double a = grads.values()[i];
            const double rel = std::abs(a - numeric) / std::max(1.0, std::abs(a));
            ++report.entries_checked;
            if (rel > report.worst_rel_err) {
                report.worst_rel_err = rel;
                report.worst_param = name;
                report.worst_index = i;
                report.worst_analytic = a;
                report.worst_numeric = numeric;
            }
            if (rel > tolerance) report.passed = false;
        }
    }
    return report;
}

} // namespace fedrep
