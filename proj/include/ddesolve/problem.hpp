#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dde {

/// Right-hand side f(t, y, y(t - tau)). `delayed` holds the delayed state;
/// for delay-free problems it is supplied as a copy of the current state and
/// the implementation is expected to ignore it.
using Rhs = std::function<void(double t, std::span<const double> y,
                               std::span<const double> delayed,
                               std::span<double> dydt)>;

/// Vector-valued function of time, written into `out` (size dim).
using TimeFn = std::function<void(double t, std::span<double> out)>;

/// Initial value problem y' = f(t, y(t), y(t - tau)) on [0, horizon] with
/// constant delay tau and prescribed history on [-tau, 0]. The initial state
/// is history(0). Optional fields carry analytic metadata used by the
/// analysis layer (Lipschitz bound for the stability probe, closed-form
/// solution for error reports).
struct Problem {
    std::size_t dim = 1;
    Rhs rhs;
    double delay = 0.0;   // tau >= 0; 0 means delay-free ODE
    TimeFn history;       // defined on [-delay, 0]
    double horizon = 1.0; // right end of the integration interval
    std::optional<double> lipschitz_l1;        // |f(t,x1,u)-f(t,x2,u)| <= L1|x1-x2|
    std::optional<double> lipschitz_l2;        // |f(t,x,u1)-f(t,x,u2)| <= L2|u1-u2|
    std::optional<double> second_deriv_bound;  // bound on |y''| where known
    TimeFn exact;         // closed-form solution, null if unknown

    bool has_exact() const noexcept { return static_cast<bool>(exact); }

    /// Throws Error(InvalidArgument) on an ill-formed definition.
    void validate() const;

    /// history(0), checked finite.
    std::vector<double> initial_state() const;
};

}  // namespace dde
