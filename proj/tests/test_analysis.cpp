#include <doctest.h>

#include <cmath>

#include "ddesolve/ddesolve.hpp"
#include "test_helpers.hpp"

using namespace dde;
using ddetest::newton_config;
using ddetest::nim_config;
using ddetest::scalar_problem;

TEST_CASE("error_vs_exact: self comparison is zero everywhere") {
    NamedProblem ode = example_ode(1.0);
    auto traj = solve(ode.problem, nim_config(0.1, 0.5));
    // An "exact" function that replays the trajectory itself.
    TimeFn replay = [&traj](double t, std::span<double> out) {
        const auto n = static_cast<std::size_t>(std::llround(t / traj.h()));
        out[0] = traj.state(n)[0];
    };
    auto report = error_vs_exact(traj, replay);
    CHECK(report.max_error == 0.0);
    for (const auto& [t, e] : report.per_node) CHECK(e == 0.0);
}

TEST_CASE("error_vs_exact: published error values (benchmark convention)") {
    NamedProblem ode = example_ode(0.5);

    auto backward = newton_config(0.01, 1.0);
    backward.stage_time = StageTime::StepStart;
    auto report1 = error_vs_exact(solve(ode.problem, backward),
                                  ode.problem.exact);
    CHECK(report1.per_node[10].first == doctest::Approx(0.1));
    CHECK(report1.per_node[10].second ==
          doctest::Approx(0.0008283).epsilon(2e-4));

    auto nim3 = nim_config(0.01, 1.0, 3);
    nim3.stage_time = StageTime::StepStart;
    auto report2 = error_vs_exact(solve(ode.problem, nim3),
                                  ode.problem.exact);
    CHECK(report2.per_node[30].second ==
          doctest::Approx(0.001628).epsilon(2e-4));

    // max_error is the max of the per-node values.
    double m = 0.0;
    for (const auto& [t, e] : report2.per_node) m = std::max(m, e);
    CHECK(report2.max_error == m);
}

TEST_CASE("error_vs_reference: grids must nest") {
    NamedProblem ode = example_ode(1.0);
    auto coarse = solve(ode.problem, nim_config(0.1, 0.5));
    auto fine = solve(ode.problem, nim_config(0.02, 0.5));
    auto report = error_vs_reference(coarse, fine);
    CHECK(report.per_node.size() == coarse.node_count());
    CHECK(report.max_error > 0.0);
    CHECK(report.max_error < 1e-2);

    auto incompatible = solve(ode.problem, nim_config(0.04, 0.5));
    CHECK_THROWS_AS(error_vs_reference(coarse, incompatible), Error);
}

TEST_CASE("reference_solution: matches the closed form on the test problem") {
    NamedProblem ode = example_ode(/*horizon=*/1.0);
    auto ref = reference_solution(ode.problem, 1e-4);
    auto report = error_vs_exact(ref, ode.problem.exact);
    CHECK(report.max_error < 1e-7);
}

TEST_CASE("reference_solution: zero field stays constant") {
    auto p = scalar_problem([](double, double, double) { return 0.0; }, 0.0,
                            [](double) { return 4.0; }, 1.0);
    auto ref = reference_solution(p, 0.01);
    for (std::size_t n = 0; n < ref.node_count(); ++n) {
        CHECK(ref.state(n)[0] == 4.0);
    }
}

TEST_CASE("reference_solution: delay logistic is self-consistent under refinement"
          * doctest::timeout(120)) {
    NamedProblem logistic = delay_logistic(/*horizon=*/100.0);
    auto a = reference_solution(logistic.problem, 1e-4);
    auto b = reference_solution(logistic.problem, 5e-5);
    CHECK(std::abs(a.back()[0] - b.back()[0]) < 1e-6);
}

TEST_CASE("empirical_order: second order at theta=1/2, first at theta=1") {
    NamedProblem ode = example_ode(/*horizon=*/1.0);
    const double hs[] = {0.1, 0.05, 0.025};

    auto second = empirical_order(ode.problem, nim_config(0.1, 0.5), hs,
                                  OrderOracle::Exact);
    REQUIRE(second.orders.size() == 2);
    for (double p : second.orders) CHECK(p == doctest::Approx(2.0).epsilon(0.1));

    auto first = empirical_order(ode.problem, nim_config(0.1, 1.0), hs,
                                 OrderOracle::Exact);
    for (double p : first.orders) CHECK(p == doctest::Approx(1.0).epsilon(0.2));

    // Errors shrink under refinement for every theta in the family.
    for (double theta : {0.0, 0.5, 0.75, 1.0}) {
        auto est = empirical_order(ode.problem, nim_config(0.1, theta), hs,
                                   OrderOracle::Exact);
        for (std::size_t i = 0; i + 1 < est.h_pairs.size(); ++i) {
            CHECK(est.h_pairs[i + 1].second < est.h_pairs[i].second);
        }
    }
}

TEST_CASE("empirical_order: exact method on a trivial field is rejected") {
    auto p = scalar_problem([](double, double, double) { return 0.0; }, 0.0,
                            [](double) { return 1.0; }, 1.0);
    p.exact = [](double, std::span<double> out) { out[0] = 1.0; };
    const double hs[] = {0.1, 0.05};
    try {
        empirical_order(p, nim_config(0.1, 0.5), hs, OrderOracle::Exact);
        FAIL("expected NonPositiveError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveError);
    }
}

TEST_CASE("empirical_order: h_list validation") {
    NamedProblem ode = example_ode(1.0);
    const double not_halving[] = {0.1, 0.03};
    CHECK_THROWS_AS(empirical_order(ode.problem, nim_config(0.1, 0.5),
                                    not_halving, OrderOracle::Exact),
                    Error);
    const double single[] = {0.1};
    CHECK_THROWS_AS(empirical_order(ode.problem, nim_config(0.1, 0.5), single,
                                    OrderOracle::Exact),
                    Error);
    NamedProblem logistic = delay_logistic(5.0);
    const double misaligned[] = {0.4, 0.2};  // 1/0.4 is not an integer
    CHECK_THROWS_AS(empirical_order(logistic.problem, nim_config(0.4, 0.5),
                                    misaligned, OrderOracle::Reference),
                    Error);
}

TEST_CASE("empirical_order: invariant under doubling the time unit") {
    // Rescaling t -> t/2 with h -> h/2 multiplies the field by 2 and leaves
    // every float operation a power-of-two scaling, so the measured errors
    // and orders are identical bit for bit.
    NamedProblem base = example_ode(/*horizon=*/1.0);
    Problem scaled;
    scaled.dim = 1;
    scaled.delay = 0.0;
    scaled.horizon = 0.5;
    scaled.history = [](double, std::span<double> out) { out[0] = 1.0; };
    scaled.rhs = [](double t, std::span<const double> y,
                    std::span<const double>, std::span<double> d) {
        const double tt = 2.0 * t;
        d[0] = 2.0 * (2.0 - std::exp(-4.0 * tt) - 2.0 * y[0]);
    };
    scaled.exact = [&base](double t, std::span<double> out) {
        base.problem.exact(2.0 * t, out);
    };

    const double hs[] = {0.1, 0.05, 0.025};
    const double hs_scaled[] = {0.05, 0.025, 0.0125};
    for (double theta : {0.5, 1.0}) {
        auto a = empirical_order(base.problem, nim_config(0.1, theta), hs,
                                 OrderOracle::Exact);
        auto b = empirical_order(scaled, nim_config(0.05, theta), hs_scaled,
                                 OrderOracle::Exact);
        REQUIRE(a.orders.size() == b.orders.size());
        for (std::size_t i = 0; i < a.orders.size(); ++i) {
            CHECK(a.orders[i] == b.orders[i]);
        }
    }
}

TEST_CASE("stability_probe: zero perturbation, contractive flows, the bound") {
    NamedProblem ode = example_ode(/*horizon=*/1.0);

    auto zero = stability_probe(ode.problem, nim_config(0.01, 1.0), 0.0);
    CHECK(zero.observed_max_dev == 0.0);
    CHECK(zero.bound == 0.0);

    auto probe = stability_probe(ode.problem, nim_config(0.01, 1.0), 1e-6);
    CHECK(probe.epsilon0 == 1e-6);
    CHECK(probe.bound == doctest::Approx(std::exp(2.0) * 1e-6));
    CHECK(probe.observed_max_dev <= probe.bound);

    // y' = -y shrinks perturbations monotonically.
    auto decay = scalar_problem([](double, double y, double) { return -y; },
                                0.0, [](double) { return 1.0; }, 1.0);
    decay.lipschitz_l1 = 1.0;
    auto d = stability_probe(decay, nim_config(0.01, 1.0), 1e-6);
    CHECK(d.observed_max_dev <= 1e-6 * (1.0 + 1e-12));

    // The probe needs the Lipschitz bound.
    auto bare = scalar_problem([](double, double y, double) { return -y; },
                               0.0, [](double) { return 1.0; }, 1.0);
    CHECK_THROWS_AS(stability_probe(bare, nim_config(0.01, 1.0), 1e-6), Error);
}

TEST_CASE("stability_probe: only the initial state is perturbed") {
    // With theta=0 and the logistic rhs, the first step uses nu_0 =
    // history(-1); were the perturbation applied to the whole history the
    // first-step deviation would pick up an extra 0.3*h*y0*eps term.
    NamedProblem logistic = delay_logistic(/*horizon=*/2.0);
    const double eps = 1e-3;
    auto probe = stability_probe(logistic.problem, nim_config(0.01, 0.0), eps);

    // Replays the probe by hand: trajectories from y0 and y0 + eps with the
    // same unperturbed history.
    auto nominal = solve(logistic.problem, nim_config(0.01, 0.0));
    Problem shifted = logistic.problem;
    shifted.history = [eps](double t, std::span<double> out) {
        out[0] = (t == 0.0) ? 0.1 + eps : 0.1;
    };
    auto perturbed = solve(shifted, nim_config(0.01, 0.0));
    double max_dev = 0.0;
    for (std::size_t n = 0; n < nominal.node_count(); ++n) {
        max_dev = std::max(max_dev, std::abs(nominal.state(n)[0] -
                                             perturbed.state(n)[0]));
    }
    CHECK(probe.observed_max_dev == max_dev);

    // One explicit Euler step amplifies the deviation by 1 + h*0.3*(1-nu)
    // with nu = 0.1 from the unperturbed history.
    const double dev1 = std::abs(nominal.state(1)[0] - perturbed.state(1)[0]);
    CHECK(dev1 == doctest::Approx(eps * (1.0 + 0.01 * 0.3 * 0.9)).epsilon(1e-9));
}

TEST_CASE("table1: canonical rows at h=0.01") {
    auto rows = table1(0.01);
    REQUIRE(rows.size() == 12);

    CHECK(rows[0].t == 0.0);
    CHECK(rows[0].s1 == 1.0);
    CHECK(rows[0].s2 == 1.0);
    CHECK(rows[0].s3 == 1.0);
    CHECK(rows[0].exact == 1.0);
    CHECK(rows[0].e1 == 0.0);

    const auto& last = rows.back();
    CHECK(last.t == 0.5);
    CHECK(last.s1 == doctest::Approx(0.881873).epsilon(2e-6));
    CHECK(last.s2 == doctest::Approx(0.881893).epsilon(2e-6));
    CHECK(last.s3 == doctest::Approx(0.881872).epsilon(2e-6));
    CHECK(last.exact == doctest::Approx(0.883728).epsilon(1e-6));

    // The comparative claims: e2 < e1 past t = 0 and e3 tracks e1.
    for (const auto& r : rows) {
        if (r.t > 0.0) CHECK(r.e2 < r.e1);
        CHECK(std::abs(r.e3 - r.e1) < 1e-6);
    }

    // The t=0.2 row is emitted with computed values (the published row is a
    // transcription error); analytically y(0.2) = 0.889504.
    CHECK(rows[8].t == 0.2);
    CHECK(rows[8].exact == doctest::Approx(0.889504).epsilon(1e-6));
}

TEST_CASE("table1: other steps keep only on-grid nodes") {
    auto rows = table1(0.02);
    // 0.01, 0.03, 0.05 drop out.
    REQUIRE(rows.size() == 9);
    CHECK(rows[1].t == 0.02);
    CHECK_THROWS_AS(table1(-0.01), Error);
    CHECK_THROWS_AS(table1(0.7), Error);
}
