#pragma once

#include <cstring>
#include <functional>
#include <span>
#include <vector>

#include "ddesolve/ddesolve.hpp"

namespace ddetest {

// Scalar problem from plain double lambdas; keeps test bodies compact.
inline dde::Problem scalar_problem(
    std::function<double(double t, double y, double nu)> f, double delay,
    std::function<double(double t)> history, double horizon) {
    dde::Problem p;
    p.dim = 1;
    p.rhs = [f = std::move(f)](double t, std::span<const double> y,
                               std::span<const double> nu,
                               std::span<double> dydt) {
        dydt[0] = f(t, y[0], nu[0]);
    };
    p.delay = delay;
    p.history = [history = std::move(history)](double t,
                                               std::span<double> out) {
        out[0] = history(t);
    };
    p.horizon = horizon;
    return p;
}

inline bool bit_equal(std::span<const double> a, std::span<const double> b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

inline bool bit_equal(const dde::Trajectory& a, const dde::Trajectory& b) {
    return a.dim() == b.dim() && a.node_count() == b.node_count() &&
           bit_equal(std::span<const double>(a.data()),
                     std::span<const double>(b.data()));
}

inline dde::SolverConfig nim_config(double h, double theta, int k = 3) {
    dde::SolverConfig c;
    c.h = h;
    c.theta = theta;
    c.nim_terms = k;
    c.method = dde::Method::NimTheta;
    return c;
}

inline dde::SolverConfig newton_config(double h, double theta) {
    dde::SolverConfig c;
    c.h = h;
    c.theta = theta;
    c.method = dde::Method::ImplicitThetaNewton;
    return c;
}

}  // namespace ddetest
