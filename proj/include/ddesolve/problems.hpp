#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddesolve/config.hpp"
#include "ddesolve/problem.hpp"

namespace dde {

/// A registry entry: a ready-to-solve problem with a sensible default
/// configuration and a short description.
struct NamedProblem {
    std::string name;
    Problem problem;
    SolverConfig recommended;
    std::string notes;
};

/// y' = 0.3*y(t)*(1 - y(t-1)), y(t<=0) = 0.1. Rises monotonically from 0.1
/// to the carrying capacity 1. The stored L1 = 0.36 is a regional bound
/// (states stay in [0, 1.2] on the default horizon), not a global one.
NamedProblem delay_logistic(double horizon = 100.0);

/// Delay-free test problem y' = 2 - exp(-4t) - 2y, y(0) = 1, with closed
/// form y = 1 + (exp(-4t) - exp(-2t))/2. The subject of the benchmark table.
NamedProblem example_ode(double horizon = 10.0);

/// Delayed Roessler system
///   x' = -y - z,  y' = x + a*y(t-1),  z' = b + z*(x - c)
/// with a = b = 0.2 and constant history (1e-4, 1e-4, 1e-4). Chaotic for
/// c = 7.9; periodic regimes at c = 2.3 and 2.9.
NamedProblem rossler_delay(double c = 2.3, double horizon = 300.0);

/// Linear problem y' = lambda*y + mu*y(t-tau), phi = 1, with a segment-wise
/// closed form (method of steps) on [0, 2*tau] used as an oracle by the
/// property tests. With tau = 0 it degenerates to y' = (lambda+mu)*y.
NamedProblem linear_test(double lambda = -1.0, double tau = 1.0,
                         double mu = 0.5);

/// Stable CLI identifiers of the built-in problems.
std::vector<std::string> problem_names();

/// Numeric overrides applied on top of a problem's defaults. Fields that do
/// not apply to the selected problem are rejected.
struct ProblemParams {
    std::optional<double> horizon;
    std::optional<double> c;        // rossler-delay only
    std::optional<double> lambda;   // linear-test only
    std::optional<double> mu;       // linear-test only
    std::optional<double> tau;      // linear-test only
};

/// Looks up a built-in problem by its stable name. Throws UnknownProblem for
/// unregistered names and InvalidArgument for inapplicable overrides.
NamedProblem make_problem(const std::string& name,
                          const ProblemParams& params = {});

}  // namespace dde
