#pragma once

#include "cae/series/combined_series.hpp"
#include "cae/turning_point/inner.hpp"
#include "cae/turning_point/outer.hpp"

namespace cae {

/// Combined series with N eta-orders on the sigma side: slow parts from the outer expansion,
/// fast parts from the inner one, after checking pole orders and the overlap c_{nm} = z_{n+m,-m}.
/// Throws InfeasibleError when the pole-order test fails and CompatibilityError on a mismatch.
[[nodiscard]] CombinedSeries<double> combined_from_matching(const ODESpec<double>& spec, int N, Sign sigma,
                                                            const std::vector<double>& alpha_eta = {},
                                                            const InnerOptions& opt = {});

/// eps-orders of the outer expansion needed for N eta-orders.
[[nodiscard]] inline int outer_eps_orders(int p, int N) { return std::max(1, (N - 1 + p - 1) / p); }

}  // namespace cae
