#pragma once

#include <span>
#include <vector>

#include "ddesolve/config.hpp"
#include "ddesolve/problem.hpp"

namespace dde {

/// One step of the explicit iterated theta method:
///
///   u0  = y_n + h*(1-theta)*f(t_n, y_n, nu_n)
///   S_1 = u0
///   S_j = u0 + h*theta*f(t*, S_{j-1}, nu_{n+1}),  j = 2..k_terms
///
/// and the result is S_{k_terms}. Each extra term applies the implicit-node
/// operator once more, so for k_terms = 3 this is the three-stage update
///   k1 = f(t_n, y_n, nu_n)
///   k2 = f(t*, y_n + h(1-theta)k1, nu_{n+1})
///   k3 = f(t*, y_n + h(1-theta)k1 + h*theta*k2, nu_{n+1})
///   y_{n+1} = y_n + h(1-theta)k1 + h*theta*k3,
/// a fixed-point iteration toward the implicit theta equation. t* is t_{n+1}
/// for StageTime::StepEnd and t_n for StageTime::StepStart.
///
/// theta = 0 makes the iteration inert and the step collapses to explicit
/// Euler, bit for bit. Throws Error(NonFiniteStage) naming the stage that
/// produced a non-finite value.
void nim_theta_step(const Problem& problem, double tn,
                    std::span<const double> yn, std::span<const double> nu_n,
                    std::span<const double> nu_np1, double h, double theta,
                    int k_terms, StageTime stage_time, std::span<double> out);

/// Stage evaluations and partial results of nim_theta_step, for inspection
/// and tests. far_stages[i] is the f evaluation feeding iterate S_{i+2}
/// (k2, k3, ... in the three-stage form); iterates holds S_1..S_k; result is
/// S_k. Unlike nim_theta_step this always runs the iteration, even at
/// theta = 0 where it contributes nothing.
struct StageValues {
    std::vector<double> k1;
    std::vector<std::vector<double>> far_stages;
    std::vector<std::vector<double>> iterates;
    std::vector<double> result;
};

StageValues nim_theta_stages(const Problem& problem, double tn,
                             std::span<const double> yn,
                             std::span<const double> nu_n,
                             std::span<const double> nu_np1, double h,
                             double theta, int k_terms, StageTime stage_time);

/// y_{n+1} = y_n + h*f(t_n, y_n, nu_n).
void explicit_euler_step(const Problem& problem, double tn,
                         std::span<const double> yn,
                         std::span<const double> nu_n, double h,
                         std::span<double> out);

/// Solves the implicit theta equation
///   y = y_n + h*(1-theta)*f(t_n, y_n, nu_n) + h*theta*f(t*, y, nu_{n+1})
/// by Newton iteration with a forward-difference Jacobian (increment
/// sqrt(eps)*max(1,|y_i|)), initial guess y_n, until the sup-norm residual is
/// <= tol. Requires theta > 0 (theta = 0 is explicit; use
/// explicit_euler_step). Throws NewtonNoConvergence or SingularJacobian.
void implicit_theta_step_newton(const Problem& problem, double tn,
                                std::span<const double> yn,
                                std::span<const double> nu_n,
                                std::span<const double> nu_np1, double h,
                                double theta, double tol, int max_iter,
                                StageTime stage_time, std::span<double> out);

/// Classical two-stage second-order step (tableau c = (0,1), b = (1/2,1/2)):
///   k1 = f(t_n, y_n, nu_n); k2 = f(t_{n+1}, y_n + h*k1, nu_{n+1})
///   y_{n+1} = y_n + (h/2)(k1 + k2).
/// Comparison baseline; coincides with no member of the iterated theta
/// family except at degenerate parameters.
void heun_step(const Problem& problem, double tn, std::span<const double> yn,
               std::span<const double> nu_n, std::span<const double> nu_np1,
               double h, std::span<double> out);

}  // namespace dde
