#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace cae {

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(double t, const OdeState& y, OdeState& dydt)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// |y_i| above this marks a blowup and stops the integration.
    double blowup_cap = 1e8;
    /// Initial step; 0 picks a default from the span.
    double h0 = 0.0;
    /// Largest step allowed; 0 means unlimited.
    double h_max = 0.0;
    long max_steps = 2'000'000;
    /// Optional event: returning true after an accepted step stops the integration.
    std::function<bool(double t, const OdeState& y)> stop;
};

/// Accepted steps of an adaptive Dormand-Prince 5(4) integration with cubic Hermite dense output.
struct Trajectory {
    std::vector<double> t;
    std::vector<OdeState> y;
    std::vector<OdeState> dydt;
    bool blowup = false;
    bool stopped = false;

    [[nodiscard]] double t_end() const { return t.back(); }
    [[nodiscard]] const OdeState& y_end() const { return y.back(); }
    /// Cubic Hermite interpolation between accepted steps.
    [[nodiscard]] OdeState operator()(double tq) const;
};

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction).
/// Blowup (|y| > cap) returns the partial trajectory with the flag set;
/// step-size underflow throws NumericalError naming the location.
[[nodiscard]] Trajectory ode_solve(const OdeRhs& rhs, double t0, double t1, OdeState y0, const OdeOptions& opt = {});

/// Scalar convenience wrapper.
[[nodiscard]] Trajectory ode_solve(const std::function<double(double, double)>& rhs, double t0, double t1, double y0,
                                   const OdeOptions& opt = {});

/// Stateful stepper that advances to successive targets, reusing its step size.
class OdeStepper {
public:
    OdeStepper(OdeRhs rhs, double t0, OdeState y0, const OdeOptions& opt);
    ~OdeStepper();
    OdeStepper(const OdeStepper&) = delete;
    OdeStepper& operator=(const OdeStepper&) = delete;

    /// Advances exactly to `target`; returns false if a blowup stopped it earlier.
    bool advance_to(double target, Trajectory* record = nullptr);
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] const OdeState& y() const noexcept { return y_; }

private:
    struct Impl;
    Impl* impl_;
    OdeRhs rhs_;
    OdeOptions opt_;
    double t_;
    OdeState y_;
    double dt_ = 0.0;
    long steps_ = 0;
};

}  // namespace cae
