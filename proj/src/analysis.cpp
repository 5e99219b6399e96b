#include "ddesolve/analysis.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ddesolve/error.hpp"
#include "ddesolve/problems.hpp"
#include "ddesolve/solver.hpp"
#include "internal.hpp"

namespace dde {

using internal::num;
using internal::sup_norm_diff;

ErrorReport error_vs_exact(const Trajectory& traj, const TimeFn& exact) {
    if (!exact) {
        throw Error(ErrorCode::NoExactSolution,
                    "no exact solution to compare against");
    }
    ErrorReport report;
    report.per_node.reserve(traj.node_count());
    std::vector<double> ref(traj.dim());
    for (std::size_t n = 0; n < traj.node_count(); ++n) {
        const double t = traj.time_at(n);
        exact(t, ref);
        const double e = sup_norm_diff(ref, traj.state(n));
        report.per_node.emplace_back(t, e);
        report.max_error = std::max(report.max_error, e);
    }
    return report;
}

namespace {

// Number of reference steps per coarse step; the grids must nest.
std::size_t grid_ratio(double coarse_h, double fine_h) {
    const long long k = std::llround(coarse_h / fine_h);
    if (k < 1 || std::abs(static_cast<double>(k) * fine_h - coarse_h) >
                     kAlignTol * coarse_h) {
        throw Error(ErrorCode::InvalidArgument,
                    "reference grid h=" + num(fine_h) +
                        " does not divide h=" + num(coarse_h));
    }
    return static_cast<std::size_t>(k);
}

}  // namespace

ErrorReport error_vs_reference(const Trajectory& traj,
                               const Trajectory& reference) {
    if (traj.dim() != reference.dim()) {
        throw Error(ErrorCode::InvalidArgument,
                    "trajectory dimensions differ");
    }
    const std::size_t ratio = grid_ratio(traj.h(), reference.h());
    ErrorReport report;
    report.per_node.reserve(traj.node_count());
    for (std::size_t n = 0; n < traj.node_count(); ++n) {
        const std::size_t rn = n * ratio;
        if (rn >= reference.node_count()) {
            throw Error(ErrorCode::InvalidArgument,
                        "reference trajectory is shorter than the compared "
                        "one");
        }
        const double e = sup_norm_diff(reference.state(rn), traj.state(n));
        report.per_node.emplace_back(traj.time_at(n), e);
        report.max_error = std::max(report.max_error, e);
    }
    return report;
}

Trajectory reference_solution(const Problem& problem, double fine_h) {
    SolverConfig config;
    config.h = fine_h;
    config.theta = 0.5;
    config.method = Method::ImplicitThetaNewton;
    config.stage_time = StageTime::StepEnd;
    return solve(problem, config);
}

OrderEstimate empirical_order(const Problem& problem,
                              const SolverConfig& config_base,
                              std::span<const double> h_list,
                              OrderOracle oracle, double reference_h) {
    if (h_list.size() < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "h_list needs at least two step sizes");
    }
    for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
        if (std::abs(h_list[i + 1] * 2.0 - h_list[i]) >
            kAlignTol * h_list[i]) {
            throw Error(ErrorCode::InvalidArgument,
                        "h_list must halve at each entry: " + num(h_list[i]) +
                            " -> " + num(h_list[i + 1]));
        }
    }
    for (double h : h_list) align_delay(problem.delay, h);

    // The comparison nodes are the coarsest grid's interior and end nodes;
    // every refinement and the reference grid contain them.
    const double h0 = h_list[0];
    const std::size_t coarse_steps = [&] {
        const long long n = std::llround(problem.horizon / h0);
        if (n < 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "horizon too short for h=" + num(h0));
        }
        return static_cast<std::size_t>(n);
    }();

    std::vector<std::vector<double>> oracle_nodes;
    oracle_nodes.reserve(coarse_steps);
    if (oracle == OrderOracle::Exact) {
        if (!problem.has_exact()) {
            throw Error(ErrorCode::NoExactSolution,
                        "problem has no closed form; use the reference "
                        "oracle");
        }
        std::vector<double> buf(problem.dim);
        for (std::size_t j = 1; j <= coarse_steps; ++j) {
            problem.exact(static_cast<double>(j) * h0, buf);
            oracle_nodes.push_back(buf);
        }
    } else {
        const Trajectory ref = reference_solution(problem, reference_h);
        const std::size_t ratio = grid_ratio(h0, reference_h);
        for (std::size_t j = 1; j <= coarse_steps; ++j) {
            auto s = ref.state(j * ratio);
            oracle_nodes.emplace_back(s.begin(), s.end());
        }
    }

    OrderEstimate estimate;
    for (double h : h_list) {
        SolverConfig config = config_base;
        config.h = h;
        const Trajectory traj = solve(problem, config);
        const std::size_t ratio = grid_ratio(h0, h);
        double e_max = 0.0;
        for (std::size_t j = 1; j <= coarse_steps; ++j) {
            e_max = std::max(e_max, sup_norm_diff(oracle_nodes[j - 1],
                                                  traj.state(j * ratio)));
        }
        if (!(e_max > 0.0)) {
            throw Error(ErrorCode::NonPositiveError,
                        "E(h=" + num(h) +
                            ") is zero; the order is undefined on this "
                            "problem");
        }
        estimate.h_pairs.emplace_back(h, e_max);
    }
    for (std::size_t i = 0; i + 1 < estimate.h_pairs.size(); ++i) {
        estimate.orders.push_back(std::log2(estimate.h_pairs[i].second /
                                            estimate.h_pairs[i + 1].second));
    }
    return estimate;
}

StabilityReport stability_probe(const Problem& problem,
                                const SolverConfig& config, double epsilon0) {
    if (!problem.lipschitz_l1) {
        throw Error(ErrorCode::InvalidArgument,
                    "stability probe needs problem.lipschitz_l1 for the "
                    "bound");
    }
    if (!(epsilon0 >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "epsilon0 must be >= 0, got " + num(epsilon0));
    }

    Problem perturbed = problem;
    const TimeFn base_history = problem.history;
    perturbed.history = [base_history, epsilon0](double t,
                                                 std::span<double> out) {
        base_history(t, out);
        // Only the initial state moves; history at t < 0 stays put.
        if (t == 0.0) {
            for (double& v : out) v += epsilon0;
        }
    };

    const Trajectory nominal = solve(problem, config);
    const Trajectory shifted = solve(perturbed, config);

    StabilityReport report;
    report.epsilon0 = epsilon0;
    for (std::size_t n = 0; n < nominal.node_count(); ++n) {
        report.observed_max_dev =
            std::max(report.observed_max_dev,
                     sup_norm_diff(nominal.state(n), shifted.state(n)));
    }
    report.bound = std::exp(problem.horizon * *problem.lipschitz_l1) * epsilon0;
    return report;
}

std::vector<Table1Row> table1(double h) {
    if (!(h > 0.0) || h > 0.5 * (1.0 + kAlignTol)) {
        throw Error(ErrorCode::InvalidArgument,
                    "table step must satisfy 0 < h <= 0.5, got " + num(h));
    }
    NamedProblem np = example_ode(/*horizon=*/0.5);

    SolverConfig backward;
    backward.h = h;
    backward.theta = 1.0;
    backward.method = Method::ImplicitThetaNewton;
    backward.stage_time = StageTime::StepStart;

    SolverConfig nim3 = backward;
    nim3.method = Method::NimTheta;
    nim3.nim_terms = 3;
    SolverConfig nim4 = nim3;
    nim4.nim_terms = 4;

    const Trajectory s1 = solve(np.problem, backward);
    const Trajectory s2 = solve(np.problem, nim3);
    const Trajectory s3 = solve(np.problem, nim4);

    static constexpr double kNodes[] = {0.0,  0.01, 0.02, 0.03, 0.04, 0.05,
                                        0.06, 0.1,  0.2,  0.3,  0.4,  0.5};
    std::vector<Table1Row> rows;
    std::vector<double> exact_buf(1);
    for (double t : kNodes) {
        const long long j = std::llround(t / h);
        if (std::abs(static_cast<double>(j) * h - t) > kAlignTol ||
            static_cast<std::size_t>(j) >= s1.node_count()) {
            continue;  // node not on this grid
        }
        const auto n = static_cast<std::size_t>(j);
        np.problem.exact(t, exact_buf);
        Table1Row row;
        row.t = t;
        row.s1 = s1.state(n)[0];
        row.s2 = s2.state(n)[0];
        row.s3 = s3.state(n)[0];
        row.exact = exact_buf[0];
        row.e1 = std::abs(row.exact - row.s1);
        row.e2 = std::abs(row.exact - row.s2);
        row.e3 = std::abs(row.exact - row.s3);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dde
