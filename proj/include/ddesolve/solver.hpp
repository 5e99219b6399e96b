#pragma once

#include <cstddef>
#include <span>

#include "ddesolve/config.hpp"
#include "ddesolve/problem.hpp"
#include "ddesolve/trajectory.hpp"

namespace dde {

/// Relative tolerance for grid alignment checks (delay and horizon).
inline constexpr double kAlignTol = 1e-9;

/// Decomposition of the delay into grid steps: tau = (m + delta)*h. Only the
/// exactly aligned case delta = 0 is supported; misalignment is rejected
/// rather than interpolated.
struct DelayAlignment {
    std::size_t m = 0;
    double delta = 0.0;
};

/// Computes m = round(tau/h) and checks |m*h - tau| <= kAlignTol*max(1,tau).
/// Throws MisalignedDelay on a fractional remainder and DelayShorterThanStep
/// when 0 < tau < h/2 (m = 0 would make nu_{n+1} reference the unknown
/// y_{n+1}, which the explicit method cannot supply).
DelayAlignment align_delay(double tau, double h);

/// The delayed-state approximation nu_n: the stored node y_{n-m} once
/// n >= m, otherwise the history phi(t_n - tau). For tau = 0 this is
/// y_n itself. Throws IndexOutOfRange if the required node is not stored
/// (internal contract violation).
void delayed_state(const Problem& problem, const Trajectory& traj,
                   const DelayAlignment& align, std::size_t n,
                   std::span<double> out);

/// Integrates the problem over [0, horizon] on the uniform grid t_n = n*h
/// with the configured one-step method. states[0] = history(0); each later
/// node is produced by one stepper call with (nu_n, nu_{n+1}) resolved from
/// the trajectory prefix and history. Deterministic: identical inputs give a
/// bit-identical trajectory. N = round(horizon/h) must hit the horizon
/// exactly (MisalignedHorizon otherwise; no partial final step). Throws
/// DivergedToNonFinite if a node becomes NaN/inf; the error message names
/// the offending node and the partial trajectory is available through the
/// C API for diagnostics.
Trajectory solve(const Problem& problem, const SolverConfig& config);

/// DivergedToNonFinite carrier: the exception type thrown by solve when a
/// state goes non-finite, holding the finite prefix and the failing node.
class DivergenceError;

}  // namespace dde

#include "ddesolve/error.hpp"

namespace dde {

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& message, std::size_t node,
                    Trajectory partial)
        : Error(ErrorCode::DivergedToNonFinite, message),
          node_(node),
          partial_(std::move(partial)) {}

    std::size_t node() const noexcept { return node_; }
    const Trajectory& partial() const noexcept { return partial_; }

private:
    std::size_t node_;
    Trajectory partial_;
};

}  // namespace dde
