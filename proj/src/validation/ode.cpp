#include "cae/validation/ode.hpp"

#include "cae/error.hpp"

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace cae {

namespace odeint = boost::numeric::odeint;

namespace {

using Dopri = odeint::runge_kutta_dopri5<OdeState>;
using Controlled = odeint::controlled_runge_kutta<Dopri>;

double max_abs(const OdeState& y) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

struct OdeStepper::Impl {
    Controlled stepper;
    explicit Impl(const OdeOptions& o) : stepper(odeint::make_controlled(o.atol, o.rtol, Dopri())) {}
};

OdeStepper::OdeStepper(OdeRhs rhs, double t0, OdeState y0, const OdeOptions& opt)
    : impl_(new Impl(opt)), rhs_(std::move(rhs)), opt_(opt), t_(t0), y_(std::move(y0)) {}

OdeStepper::~OdeStepper() { delete impl_; }

bool OdeStepper::advance_to(double target, Trajectory* record) {
    const double span = target - t_;
    if (span == 0.0) return true;
    const double dir = span > 0 ? 1.0 : -1.0;
    if (dt_ == 0.0 || dt_ * dir < 0) dt_ = opt_.h0 != 0.0 ? dir * std::abs(opt_.h0) : dir * std::min(std::abs(span), 1e-3 * std::max(1.0, std::abs(span)));
    auto sys = [this](const OdeState& y, OdeState& dy, double t) {
        dy.resize(y.size());
        rhs_(t, y, dy);
    };
    OdeState dy(y_.size());
    while (dir * (target - t_) > 0) {
        if (++steps_ > opt_.max_steps) throw NumericalError("step limit exceeded at t = " + std::to_string(t_));
        double dt = dt_;
        if (opt_.h_max > 0.0 && std::abs(dt) > opt_.h_max) dt = dir * opt_.h_max;
        bool last = false;
        if (dir * (t_ + dt - target) >= 0) {
            dt = target - t_;
            last = true;
        }
        const double t_before = t_;
        auto res = impl_->stepper.try_step(sys, y_, t_, dt);
        if (res == odeint::fail) {
            const double hmin = 1e-14 * std::max(1.0, std::abs(t_));
            if (std::abs(dt) < hmin) throw NumericalError("step size underflow at t = " + std::to_string(t_));
            dt_ = dt;
            continue;
        }
        if (!last || std::abs(dt) > std::abs(dt_)) dt_ = dt;
        if (last) t_ = target;
        (void)t_before;
        for (double v : y_)
            if (!std::isfinite(v)) throw NumericalError("non-finite state at t = " + std::to_string(t_));
        if (record) {
            rhs_(t_, y_, dy);
            record->t.push_back(t_);
            record->y.push_back(y_);
            record->dydt.push_back(dy);
        }
        if (max_abs(y_) > opt_.blowup_cap) {
            if (record) record->blowup = true;
            return false;
        }
        if (opt_.stop && opt_.stop(t_, y_)) {
            if (record) record->stopped = true;
            return false;
        }
    }
    return true;
}

Trajectory ode_solve(const OdeRhs& rhs, double t0, double t1, OdeState y0, const OdeOptions& opt) {
    Trajectory tr;
    OdeState dy(y0.size());
    rhs(t0, y0, dy);
    tr.t.push_back(t0);
    tr.y.push_back(y0);
    tr.dydt.push_back(dy);
    OdeStepper s(rhs, t0, std::move(y0), opt);
    s.advance_to(t1, &tr);
    return tr;
}

Trajectory ode_solve(const std::function<double(double, double)>& rhs, double t0, double t1, double y0, const OdeOptions& opt) {
    return ode_solve([&rhs](double t, const OdeState& y, OdeState& dy) { dy[0] = rhs(t, y[0]); }, t0, t1, OdeState{y0}, opt);
}

OdeState Trajectory::operator()(double tq) const {
    if (t.empty()) throw InputError("empty trajectory");
    const bool forward = t.back() >= t.front();
    const double lo = forward ? t.front() : t.back();
    const double hi = forward ? t.back() : t.front();
    if (tq < lo - 1e-12 * std::max(1.0, std::abs(lo)) || tq > hi + 1e-12 * std::max(1.0, std::abs(hi)))
        throw DomainError("dense output requested outside the integrated span");
    std::size_t i = 0;
    if (forward) {
        i = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tq) - t.begin());
    } else {
        i = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tq, std::greater<>()) - t.begin());
    }
    if (i == 0) i = 1;
    if (i >= t.size()) i = t.size() - 1;
    if (t.size() == 1) return y[0];
    const double t0 = t[i - 1], t1 = t[i], h = t1 - t0;
    const double s = (tq - t0) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    OdeState out(y[i].size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = h00 * y[i - 1][k] + h10 * h * dydt[i - 1][k] + h01 * y[i][k] + h11 * h * dydt[i][k];
    return out;
}

}  // namespace cae
