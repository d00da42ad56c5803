#include "cae/series/series_ops.hpp"

#include <cmath>

namespace cae::detail {

double integrate_from_infinity(const Evaluator& q, const std::vector<double>& G_tail, double X) {
    const double s = sign_value(q.sigma());
    AsymTail<double> G(G_tail);
    // Move the anchor outward until the tail value at the anchor is converged.
    double R = std::max(2.0, std::abs(X));
    double anchor = s * R;
    double tail_err = 0.0;
    double tail_val = G.optimal_sum(anchor, &tail_err);
    for (int it = 0; it < 40 && tail_err > 1e-15 * std::max(1.0, std::abs(tail_val)); ++it) {
        double next = 2.0 * std::abs(anchor);
        if (!q.contains(s * next)) break;
        anchor = s * next;
        tail_val = G.optimal_sum(anchor, &tail_err);
    }
    if (!q.contains(anchor) || !q.contains(X)) throw DomainError("integration path leaves the evaluator domain");
    return tail_val + integrate([&q](double t) { return q(t); }, anchor, X, 1e-13);
}

}  // namespace cae::detail
