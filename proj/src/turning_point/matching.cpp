#include "cae/turning_point/matching.hpp"

#include "cae/series/series_ops.hpp"

namespace cae {

CombinedSeries<double> combined_from_matching(const ODESpec<double>& spec, int N, Sign sigma, const std::vector<double>& alpha_eta,
                                              const InnerOptions& opt) {
    if (N < 1) throw InputError("combined series order must be >= 1");
    const int p = spec.p;
    const OuterExpansion<double> outer = outer_expansion(spec, outer_eps_orders(p, N), alpha_eta);
    std::vector<LaurentPoly<double>> c(outer.coeffs.begin(), outer.coeffs.begin() + N);
    OuterExpansion<double> cut;
    cut.p = p;
    cut.coeffs = c;
    const FeasibilityVerdict verdict = dac_feasibility(cut);
    if (!verdict.pass) throw InfeasibleError(verdict.message, verdict.n, verdict.pole_order - verdict.n);

    const InnerExpansion inner = inner_expansion(spec, N, sigma, alpha_eta, opt);
    std::vector<std::pair<TaylorPoly<double>, AsymTail<double>>> z;
    for (int n = 0; n < N; ++n) {
        const RayFn h = inner.coeff(n);
        z.emplace_back(h.formal().poly(), h.formal().tail());
    }
    CombinedSeries<double> y = reconstruct_from_matching(c, z, p, default_matching_tolerance<double>());
    for (int n = 0; n < N; ++n) {
        const RayFn h = inner.coeff(n);
        if (h.is_zero()) continue;
        FastFn<double>& g = y.fast(n);
        if (!(h.is_exact_function() && h.formal().tail().is_exact())) g.evaluator = h.fast_evaluator();
        if (const auto& cf = inner.closed_form(n)) {
            for (int k = 1; k < p; ++k) {
                const double u = cf->u[static_cast<std::size_t>(k)];
                if (u == 0.0) continue;
                BasisTerm<double> b;
                b.kind = BasisTerm<double>::Kind::U;
                b.k = k;
                b.sigma = sigma;
                b.coeff = u;
                g.basis.push_back(b);
            }
        }
    }
    return y;
}

}  // namespace cae
