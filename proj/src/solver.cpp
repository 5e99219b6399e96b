#include "ddesolve/solver.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ddesolve/error.hpp"
#include "ddesolve/steppers.hpp"
#include "internal.hpp"

namespace dde {

using internal::all_finite;
using internal::num;

void Problem::validate() const {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
    if (!rhs) throw Error(ErrorCode::InvalidArgument, "rhs is not set");
    if (!history) throw Error(ErrorCode::InvalidArgument, "history is not set");
    if (!(delay >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "delay must be >= 0, got " + num(delay));
    }
    // A zero horizon is allowed and yields the single-node trajectory
    // {history(0)}; the built-in problems all use positive horizons.
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
        throw Error(ErrorCode::InvalidArgument,
                    "horizon must be finite and >= 0, got " + num(horizon));
    }
    for (auto [value, name] :
         {std::pair{lipschitz_l1, "lipschitz_l1"},
          std::pair{lipschitz_l2, "lipschitz_l2"},
          std::pair{second_deriv_bound, "second_deriv_bound"}}) {
        if (value && !(*value > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        std::string(name) + " must be positive");
        }
    }
}

std::vector<double> Problem::initial_state() const {
    std::vector<double> y0(dim);
    history(0.0, y0);
    if (!all_finite(y0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "history(0) is not finite");
    }
    return y0;
}

void SolverConfig::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::InvalidArgument, "h must be positive, got " + num(h));
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "theta must lie in [0, 1], got " + num(theta));
    }
    if (nim_terms < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "nim_terms must be >= 2, got " + std::to_string(nim_terms));
    }
    if (!(newton_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "newton_tol must be positive");
    }
    if (newton_max_iter < 1) {
        throw Error(ErrorCode::InvalidArgument, "newton_max_iter must be >= 1");
    }
}

DelayAlignment align_delay(double tau, double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "h must be positive, got " + num(h));
    }
    if (!(tau >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "tau must be >= 0, got " + num(tau));
    }
    if (tau == 0.0) return {0, 0.0};

    const long long m = std::llround(tau / h);
    if (m == 0) {
        throw Error(ErrorCode::DelayShorterThanStep,
                    "delay " + num(tau) + " is shorter than step " + num(h) +
                        "; nu_{n+1} would reference the unknown y_{n+1}");
    }
    const double residue = std::abs(static_cast<double>(m) * h - tau);
    if (residue > kAlignTol * std::max(1.0, tau)) {
        throw Error(ErrorCode::MisalignedDelay,
                    "delay " + num(tau) + " is not an integer multiple of h=" +
                        num(h) + " (nearest m=" + std::to_string(m) +
                        ", residue " + num(residue) + ")");
    }
    return {static_cast<std::size_t>(m), 0.0};
}

void delayed_state(const Problem& problem, const Trajectory& traj,
                   const DelayAlignment& align, std::size_t n,
                   std::span<double> out) {
    if (align.m == 0 || n >= align.m) {
        const std::size_t idx = n - align.m;
        if (idx >= traj.node_count()) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "delayed state y_{" + std::to_string(n) + "-" +
                            std::to_string(align.m) +
                            "} not stored (trajectory has " +
                            std::to_string(traj.node_count()) + " nodes)");
        }
        auto s = traj.state(idx);
        std::copy(s.begin(), s.end(), out.begin());
        return;
    }
    const double t = static_cast<double>(n) * traj.h() - problem.delay;
    problem.history(t, out);
    if (!all_finite(out)) {
        throw Error(ErrorCode::InvalidArgument,
                    "history(" + num(t) + ") is not finite");
    }
}

namespace {

std::size_t step_count(double horizon, double h) {
    const long long n = std::llround(horizon / h);
    if (std::abs(static_cast<double>(n) * h - horizon) >
        kAlignTol * std::max(1.0, horizon)) {
        throw Error(ErrorCode::MisalignedHorizon,
                    "horizon " + num(horizon) +
                        " is not an integer multiple of h=" + num(h) +
                        "; no partial final step is taken");
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

Trajectory solve(const Problem& problem, const SolverConfig& config) {
    problem.validate();
    config.validate();
    if (problem.horizon > 0.0 &&
        config.h > problem.horizon * (1.0 + kAlignTol)) {
        throw Error(ErrorCode::InvalidArgument,
                    "h=" + num(config.h) + " exceeds horizon " +
                        num(problem.horizon));
    }
    const DelayAlignment align = align_delay(problem.delay, config.h);
    const std::size_t n_steps = step_count(problem.horizon, config.h);

    Trajectory traj(config.h, problem.dim);
    traj.reserve(n_steps + 1);
    {
        auto y0 = problem.initial_state();
        traj.push_back(y0);
    }

    std::vector<double> nu_n(problem.dim);
    std::vector<double> nu_np1(problem.dim);
    std::vector<double> next(problem.dim);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double tn = static_cast<double>(n) * config.h;
        const auto yn = traj.state(n);
        delayed_state(problem, traj, align, n, nu_n);
        if (align.m == 0) {
            // Delay-free: the delayed argument is a copy of the current
            // state and the rhs ignores it by contract.
            std::copy(yn.begin(), yn.end(), nu_np1.begin());
        } else {
            delayed_state(problem, traj, align, n + 1, nu_np1);
        }

        try {
            switch (config.method) {
                case Method::NimTheta:
                    nim_theta_step(problem, tn, yn, nu_n, nu_np1, config.h,
                                   config.theta, config.nim_terms,
                                   config.stage_time, next);
                    break;
                case Method::ExplicitEuler:
                    explicit_euler_step(problem, tn, yn, nu_n, config.h, next);
                    break;
                case Method::ImplicitThetaNewton:
                    if (config.theta == 0.0) {
                        // theta = 0 is explicit; there is nothing to solve.
                        explicit_euler_step(problem, tn, yn, nu_n, config.h,
                                            next);
                    } else {
                        implicit_theta_step_newton(
                            problem, tn, yn, nu_n, nu_np1, config.h,
                            config.theta, config.newton_tol,
                            config.newton_max_iter, config.stage_time, next);
                    }
                    break;
            }
        } catch (const Error& e) {
            const std::string where =
                " while stepping to node " + std::to_string(n + 1) + " (t=" +
                num(static_cast<double>(n + 1) * config.h) + ")";
            if (e.code() == ErrorCode::NonFiniteStage) {
                throw DivergenceError(std::string(e.what()) + where, n + 1,
                                      traj);
            }
            throw Error(e.code(), std::string(e.what()) + where);
        }

        if (!all_finite(next)) {
            throw DivergenceError(
                "state became non-finite at node " + std::to_string(n + 1) +
                    " (t=" + num(static_cast<double>(n + 1) * config.h) + ")",
                n + 1, traj);
        }
        traj.push_back(next);
    }
    return traj;
}

}  // namespace dde
