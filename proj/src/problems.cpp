#include "ddesolve/problems.hpp"

#include <cmath>
#include <string>

#include "ddesolve/error.hpp"
#include "internal.hpp"

namespace dde {

using internal::num;

NamedProblem delay_logistic(double horizon) {
    NamedProblem np;
    np.name = "delay-logistic";
    np.problem.dim = 1;
    np.problem.rhs = [](double, std::span<const double> y,
                        std::span<const double> nu, std::span<double> dydt) {
        dydt[0] = 0.3 * y[0] * (1.0 - nu[0]);
    };
    np.problem.delay = 1.0;
    np.problem.history = [](double, std::span<double> out) { out[0] = 0.1; };
    np.problem.horizon = horizon;
    // Regional bound: |df/dy| = |0.3(1-nu)| and |df/dnu| = |0.3 y| both stay
    // below 0.36 while the solution remains in [0, 1.2], which it does on
    // the default horizon. Not a global constant.
    np.problem.lipschitz_l1 = 0.36;
    np.problem.lipschitz_l2 = 0.36;
    np.recommended.h = 0.01;
    np.recommended.theta = 1.0;
    np.recommended.method = Method::NimTheta;
    np.notes =
        "logistic growth with unit feedback delay; rises monotonically from "
        "0.1 to the carrying capacity 1";
    return np;
}

NamedProblem example_ode(double horizon) {
    NamedProblem np;
    np.name = "example-ode";
    np.problem.dim = 1;
    np.problem.rhs = [](double t, std::span<const double> y,
                        std::span<const double>, std::span<double> dydt) {
        dydt[0] = 2.0 - std::exp(-4.0 * t) - 2.0 * y[0];
    };
    np.problem.delay = 0.0;
    np.problem.history = [](double, std::span<double> out) { out[0] = 1.0; };
    np.problem.horizon = horizon;
    np.problem.lipschitz_l1 = 2.0;
    np.problem.exact = [](double t, std::span<double> out) {
        out[0] = 1.0 + (std::exp(-4.0 * t) - std::exp(-2.0 * t)) / 2.0;
    };
    np.recommended.h = 0.01;
    np.recommended.theta = 1.0;
    np.recommended.method = Method::NimTheta;
    np.notes =
        "delay-free exponential relaxation problem with a closed-form "
        "solution; the subject of the benchmark table";
    return np;
}

NamedProblem rossler_delay(double c, double horizon) {
    if (!(c > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "rossler-delay needs c > 0, got " + num(c));
    }
    NamedProblem np;
    np.name = "rossler-delay";
    np.problem.dim = 3;
    constexpr double a = 0.2;
    constexpr double b = 0.2;
    np.problem.rhs = [c](double, std::span<const double> y,
                         std::span<const double> nu, std::span<double> dydt) {
        dydt[0] = -y[1] - y[2];
        dydt[1] = y[0] + a * nu[1];  // only the y component is delayed
        dydt[2] = b + y[2] * (y[0] - c);
    };
    np.problem.delay = 1.0;
    np.problem.history = [](double, std::span<double> out) {
        out[0] = 1e-4;
        out[1] = 1e-4;
        out[2] = 1e-4;
    };
    np.problem.horizon = horizon;
    np.recommended.h = 0.01;
    np.recommended.theta = 0.5;
    np.recommended.method = Method::NimTheta;
    np.notes =
        "Roessler system with the feedback term a*y(t-1); canonical control "
        "parameters c = 2.3, 2.9 (periodic) and 7.9 (chaotic)";
    return np;
}

NamedProblem linear_test(double lambda, double tau, double mu) {
    if (!(tau >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "linear-test needs tau >= 0, got " + num(tau));
    }
    NamedProblem np;
    np.name = "linear-test";
    np.problem.dim = 1;
    np.problem.delay = tau;
    np.problem.history = [](double, std::span<double> out) { out[0] = 1.0; };

    if (tau == 0.0) {
        // Degenerate delay-free case: the delayed argument is ignored and
        // the rate constant folds to lambda + mu.
        const double rate = lambda + mu;
        np.problem.rhs = [rate](double, std::span<const double> y,
                                std::span<const double>,
                                std::span<double> dydt) {
            dydt[0] = rate * y[0];
        };
        np.problem.horizon = 2.0;
        np.problem.exact = [rate](double t, std::span<double> out) {
            out[0] = std::exp(rate * t);
        };
        if (rate != 0.0) np.problem.lipschitz_l1 = std::abs(rate);
    } else {
        np.problem.rhs = [lambda, mu](double, std::span<const double> y,
                                      std::span<const double> nu,
                                      std::span<double> dydt) {
            dydt[0] = lambda * y[0] + mu * nu[0];
        };
        np.problem.horizon = 2.0 * tau;
        if (lambda != 0.0) np.problem.lipschitz_l1 = std::abs(lambda);
        if (mu != 0.0) np.problem.lipschitz_l2 = std::abs(mu);

        // Method of steps: with phi = 1 the solution has a closed form per
        // delay segment. Two segments are carried, enough for the property
        // tests; queries beyond 2*tau are rejected.
        auto segment1 = [lambda, mu](double t) {
            if (lambda == 0.0) return 1.0 + mu * t;
            return (1.0 + mu / lambda) * std::exp(lambda * t) - mu / lambda;
        };
        np.problem.exact = [lambda, mu, tau, segment1](double t,
                                                       std::span<double> out) {
            if (t <= 0.0) {
                out[0] = 1.0;
                return;
            }
            if (t <= tau) {
                out[0] = segment1(t);
                return;
            }
            if (t <= 2.0 * tau * (1.0 + 1e-12)) {
                const double y_tau = segment1(tau);
                const double s = t - tau;
                if (lambda == 0.0) {
                    out[0] = y_tau + mu * (s + mu * s * s / 2.0);
                } else {
                    const double els = std::exp(lambda * s);
                    out[0] = els * y_tau +
                             mu * (1.0 + mu / lambda) * s * els +
                             (mu * mu) / (lambda * lambda) * (1.0 - els);
                }
                return;
            }
            throw Error(ErrorCode::InvalidArgument,
                        "linear-test closed form is carried for two delay "
                        "segments only (t <= " +
                            num(2.0 * tau) + "), queried at t=" + num(t));
        };
    }

    np.recommended.h = 0.01;
    np.recommended.theta = 0.5;
    np.recommended.method = Method::NimTheta;
    np.notes =
        "linear constant-delay problem with a segment-wise closed form "
        "(method of steps) on the first two delay intervals";
    return np;
}

std::vector<std::string> problem_names() {
    return {"delay-logistic", "example-ode", "rossler-delay", "linear-test"};
}

namespace {

void reject_inapplicable(const std::string& name, bool has_c,
                         bool has_linear_params) {
    if (has_c && name != "rossler-delay") {
        throw Error(ErrorCode::InvalidArgument,
                    "parameter c only applies to rossler-delay");
    }
    if (has_linear_params && name != "linear-test") {
        throw Error(ErrorCode::InvalidArgument,
                    "parameters lambda/mu/tau only apply to linear-test");
    }
}

}  // namespace

NamedProblem make_problem(const std::string& name,
                          const ProblemParams& params) {
    const bool has_linear =
        params.lambda.has_value() || params.mu.has_value() ||
        params.tau.has_value();
    reject_inapplicable(name, params.c.has_value(), has_linear);

    NamedProblem np;
    if (name == "delay-logistic") {
        np = delay_logistic();
    } else if (name == "example-ode") {
        np = example_ode();
    } else if (name == "rossler-delay") {
        np = rossler_delay(params.c.value_or(2.3));
    } else if (name == "linear-test") {
        np = linear_test(params.lambda.value_or(-1.0),
                         params.tau.value_or(1.0), params.mu.value_or(0.5));
    } else {
        throw Error(ErrorCode::UnknownProblem,
                    "unknown problem '" + name + "'");
    }
    if (params.horizon) {
        np.problem.horizon = *params.horizon;
    }
    np.problem.validate();
    return np;
}

}  // namespace dde
