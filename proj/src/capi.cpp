#include "ddesolve.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "ddesolve/ddesolve.hpp"

struct dde_problem {
    dde::NamedProblem np;
};

struct dde_trajectory {
    dde::Trajectory traj;
};

struct dde_error_report {
    dde::ErrorReport report;
};

struct dde_order_estimate {
    dde::OrderEstimate estimate;
};

struct dde_table {
    std::vector<dde::Table1Row> rows;
};

namespace {

thread_local std::string g_last_error;

dde_status status_of(dde::ErrorCode code) {
    using dde::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return DDE_ERR_INVALID_ARGUMENT;
        case ErrorCode::MisalignedDelay: return DDE_ERR_MISALIGNED_DELAY;
        case ErrorCode::DelayShorterThanStep:
            return DDE_ERR_DELAY_SHORTER_THAN_STEP;
        case ErrorCode::MisalignedHorizon: return DDE_ERR_MISALIGNED_HORIZON;
        case ErrorCode::NonFiniteStage: return DDE_ERR_NONFINITE_STAGE;
        case ErrorCode::DivergedToNonFinite: return DDE_ERR_NONFINITE;
        case ErrorCode::NewtonNoConvergence: return DDE_ERR_NEWTON_FAIL;
        case ErrorCode::SingularJacobian: return DDE_ERR_SINGULAR_JACOBIAN;
        case ErrorCode::IndexOutOfRange: return DDE_ERR_INDEX_OUT_OF_RANGE;
        case ErrorCode::NonPositiveError: return DDE_ERR_NONPOSITIVE_ERROR;
        case ErrorCode::UnknownProblem: return DDE_ERR_UNKNOWN_PROBLEM;
        case ErrorCode::NoExactSolution: return DDE_ERR_NO_EXACT_SOLUTION;
    }
    return DDE_ERR_INTERNAL;
}

dde_status fail(dde_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs fn, translating C++ failures into statuses and the thread-local
// message slot.
template <typename Fn>
dde_status guarded(Fn&& fn) {
    try {
        fn();
        return DDE_OK;
    } catch (const dde::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DDE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DDE_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return DDE_ERR_INTERNAL;
    }
}

dde::SolverConfig to_cpp(const dde_solver_config& c) {
    dde::SolverConfig config;
    config.h = c.h;
    config.theta = c.theta;
    config.nim_terms = c.nim_terms;
    switch (c.method) {
        case DDE_METHOD_NIM_THETA: config.method = dde::Method::NimTheta; break;
        case DDE_METHOD_EXPLICIT_EULER:
            config.method = dde::Method::ExplicitEuler;
            break;
        case DDE_METHOD_IMPLICIT_THETA_NEWTON:
            config.method = dde::Method::ImplicitThetaNewton;
            break;
        default:
            throw dde::Error(dde::ErrorCode::InvalidArgument,
                             "unknown method selector " +
                                 std::to_string(static_cast<int>(c.method)));
    }
    config.newton_tol = c.newton_tol;
    config.newton_max_iter = c.newton_max_iter;
    switch (c.stage_time) {
        case DDE_STAGE_TIME_STEP_END:
            config.stage_time = dde::StageTime::StepEnd;
            break;
        case DDE_STAGE_TIME_STEP_START:
            config.stage_time = dde::StageTime::StepStart;
            break;
        default:
            throw dde::Error(
                dde::ErrorCode::InvalidArgument,
                "unknown stage_time selector " +
                    std::to_string(static_cast<int>(c.stage_time)));
    }
    return config;
}

dde_solver_config from_cpp(const dde::SolverConfig& config) {
    dde_solver_config c;
    c.h = config.h;
    c.theta = config.theta;
    c.nim_terms = config.nim_terms;
    c.method = config.method == dde::Method::NimTheta ? DDE_METHOD_NIM_THETA
               : config.method == dde::Method::ExplicitEuler
                   ? DDE_METHOD_EXPLICIT_EULER
                   : DDE_METHOD_IMPLICIT_THETA_NEWTON;
    c.newton_tol = config.newton_tol;
    c.newton_max_iter = config.newton_max_iter;
    c.stage_time = config.stage_time == dde::StageTime::StepEnd
                       ? DDE_STAGE_TIME_STEP_END
                       : DDE_STAGE_TIME_STEP_START;
    return c;
}

}  // namespace

extern "C" {

const char* dde_status_code_word(dde_status status) {
    switch (status) {
        case DDE_OK: return "OK";
        case DDE_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
        case DDE_ERR_MISALIGNED_DELAY: return "MISALIGNED_DELAY";
        case DDE_ERR_DELAY_SHORTER_THAN_STEP:
            return "DELAY_SHORTER_THAN_STEP";
        case DDE_ERR_MISALIGNED_HORIZON: return "MISALIGNED_HORIZON";
        case DDE_ERR_NONFINITE_STAGE: return "NONFINITE_STAGE";
        case DDE_ERR_NONFINITE: return "NONFINITE";
        case DDE_ERR_NEWTON_FAIL: return "NEWTON_FAIL";
        case DDE_ERR_SINGULAR_JACOBIAN: return "SINGULAR_JACOBIAN";
        case DDE_ERR_INDEX_OUT_OF_RANGE: return "INDEX_OUT_OF_RANGE";
        case DDE_ERR_NONPOSITIVE_ERROR: return "NONPOSITIVE_ERROR";
        case DDE_ERR_UNKNOWN_PROBLEM: return "UNKNOWN_PROBLEM";
        case DDE_ERR_NO_EXACT_SOLUTION: return "NO_EXACT_SOLUTION";
        case DDE_ERR_INTERNAL: return "INTERNAL";
    }
    return "UNKNOWN";
}

const char* dde_last_error_message(void) { return g_last_error.c_str(); }

const char* dde_version(void) { return "1.0.0"; }

dde_problem_params dde_problem_params_default(void) {
    dde_problem_params p;
    p.horizon = NAN;
    p.c = NAN;
    p.lambda = NAN;
    p.mu = NAN;
    p.tau = NAN;
    return p;
}

size_t dde_problem_name_count(void) {
    return dde::problem_names().size();
}

const char* dde_problem_name_at(size_t index) {
    static const std::vector<std::string> names = dde::problem_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

dde_status dde_problem_create(const char* name,
                              const dde_problem_params* params,
                              dde_problem** out) {
    if (!name || !out) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        dde::ProblemParams p;
        if (params) {
            auto pick = [](double v) {
                return std::isnan(v) ? std::optional<double>{}
                                     : std::optional<double>{v};
            };
            p.horizon = pick(params->horizon);
            p.c = pick(params->c);
            p.lambda = pick(params->lambda);
            p.mu = pick(params->mu);
            p.tau = pick(params->tau);
        }
        *out = new dde_problem{dde::make_problem(name, p)};
    });
}

dde_status dde_problem_create_custom(size_t dim, dde_rhs_fn rhs,
                                     void* rhs_user, double delay,
                                     dde_time_fn history, void* history_user,
                                     double horizon, dde_problem** out) {
    if (!rhs || !history || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        dde::NamedProblem np;
        np.name = "custom";
        np.notes = "user-defined problem";
        np.problem.dim = dim;
        np.problem.rhs = [rhs, rhs_user, dim](double t,
                                              std::span<const double> y,
                                              std::span<const double> nu,
                                              std::span<double> dydt) {
            rhs(t, y.data(), nu.data(), dydt.data(), dim, rhs_user);
        };
        np.problem.delay = delay;
        np.problem.history = [history, history_user, dim](
                                 double t, std::span<double> o) {
            history(t, o.data(), dim, history_user);
        };
        np.problem.horizon = horizon;
        np.problem.validate();
        *out = new dde_problem{std::move(np)};
    });
}

void dde_problem_destroy(dde_problem* problem) { delete problem; }

size_t dde_problem_dim(const dde_problem* problem) {
    return problem ? problem->np.problem.dim : 0;
}

double dde_problem_delay(const dde_problem* problem) {
    return problem ? problem->np.problem.delay : NAN;
}

double dde_problem_horizon(const dde_problem* problem) {
    return problem ? problem->np.problem.horizon : NAN;
}

dde_status dde_problem_set_horizon(dde_problem* problem, double horizon) {
    if (!problem) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        dde::Problem copy = problem->np.problem;
        copy.horizon = horizon;
        copy.validate();
        problem->np.problem.horizon = horizon;
    });
}

const char* dde_problem_name(const dde_problem* problem) {
    return problem ? problem->np.name.c_str() : nullptr;
}

const char* dde_problem_notes(const dde_problem* problem) {
    return problem ? problem->np.notes.c_str() : nullptr;
}

void dde_problem_set_exact(dde_problem* problem, dde_time_fn exact,
                           void* user) {
    if (!problem) return;
    if (!exact) {
        problem->np.problem.exact = nullptr;
        return;
    }
    const size_t dim = problem->np.problem.dim;
    problem->np.problem.exact = [exact, user, dim](double t,
                                                   std::span<double> out) {
        exact(t, out.data(), dim, user);
    };
}

dde_status dde_problem_set_lipschitz_l1(dde_problem* problem, double l1) {
    if (!problem) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    if (!(l1 > 0.0)) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "lipschitz_l1 must be positive");
    }
    problem->np.problem.lipschitz_l1 = l1;
    return DDE_OK;
}

int dde_problem_lipschitz_l1(const dde_problem* problem, double* out) {
    if (!problem || !problem->np.problem.lipschitz_l1) return 0;
    if (out) *out = *problem->np.problem.lipschitz_l1;
    return 1;
}

int dde_problem_has_exact(const dde_problem* problem) {
    return problem && problem->np.problem.has_exact() ? 1 : 0;
}

dde_status dde_problem_exact(const dde_problem* problem, double t,
                             double* out) {
    if (!problem || !out) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    if (!problem->np.problem.has_exact()) {
        return fail(DDE_ERR_NO_EXACT_SOLUTION,
                    "problem has no closed-form solution");
    }
    return guarded([&] {
        problem->np.problem.exact(t, {out, problem->np.problem.dim});
    });
}

dde_solver_config dde_solver_config_default(void) {
    return from_cpp(dde::SolverConfig{});
}

dde_solver_config dde_problem_recommended_config(const dde_problem* problem) {
    if (!problem) return dde_solver_config_default();
    return from_cpp(problem->np.recommended);
}

dde_status dde_solve(const dde_problem* problem,
                     const dde_solver_config* config, dde_trajectory** out) {
    if (!problem || !config || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    try {
        *out = new dde_trajectory{
            dde::solve(problem->np.problem, to_cpp(*config))};
        return DDE_OK;
    } catch (const dde::DivergenceError& e) {
        g_last_error = e.what();
        // Hand back the finite prefix for diagnostics.
        *out = new (std::nothrow) dde_trajectory{e.partial()};
        return DDE_ERR_NONFINITE;
    } catch (const dde::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DDE_ERR_INTERNAL;
    }
}

void dde_trajectory_destroy(dde_trajectory* traj) { delete traj; }

size_t dde_trajectory_node_count(const dde_trajectory* traj) {
    return traj ? traj->traj.node_count() : 0;
}

size_t dde_trajectory_dim(const dde_trajectory* traj) {
    return traj ? traj->traj.dim() : 0;
}

double dde_trajectory_h(const dde_trajectory* traj) {
    return traj ? traj->traj.h() : NAN;
}

double dde_trajectory_time(const dde_trajectory* traj, size_t n) {
    return traj ? traj->traj.time_at(n) : NAN;
}

const double* dde_trajectory_state(const dde_trajectory* traj, size_t n) {
    if (!traj || n >= traj->traj.node_count()) return nullptr;
    return traj->traj.state(n).data();
}

const double* dde_trajectory_data(const dde_trajectory* traj) {
    return traj ? traj->traj.data().data() : nullptr;
}

dde_status dde_error_vs_exact(const dde_trajectory* traj,
                              const dde_problem* problem,
                              dde_error_report** out) {
    if (!traj || !problem || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new dde_error_report{
            dde::error_vs_exact(traj->traj, problem->np.problem.exact)};
    });
}

dde_status dde_error_vs_reference(const dde_trajectory* traj,
                                  const dde_trajectory* reference,
                                  dde_error_report** out) {
    if (!traj || !reference || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new dde_error_report{
            dde::error_vs_reference(traj->traj, reference->traj)};
    });
}

void dde_error_report_destroy(dde_error_report* report) { delete report; }

size_t dde_error_report_len(const dde_error_report* report) {
    return report ? report->report.per_node.size() : 0;
}

double dde_error_report_time(const dde_error_report* report, size_t i) {
    if (!report || i >= report->report.per_node.size()) return NAN;
    return report->report.per_node[i].first;
}

double dde_error_report_value(const dde_error_report* report, size_t i) {
    if (!report || i >= report->report.per_node.size()) return NAN;
    return report->report.per_node[i].second;
}

double dde_error_report_max(const dde_error_report* report) {
    return report ? report->report.max_error : NAN;
}

dde_status dde_reference_solution(const dde_problem* problem, double fine_h,
                                  dde_trajectory** out) {
    if (!problem || !out) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new dde_trajectory{
            dde::reference_solution(problem->np.problem, fine_h)};
    });
}

dde_status dde_empirical_order(const dde_problem* problem,
                               const dde_solver_config* config,
                               const double* h_list, size_t h_count,
                               dde_order_oracle oracle, double reference_h,
                               dde_order_estimate** out) {
    if (!problem || !config || !h_list || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        const auto cpp_oracle = oracle == DDE_ORACLE_EXACT
                                    ? dde::OrderOracle::Exact
                                    : dde::OrderOracle::Reference;
        *out = new dde_order_estimate{dde::empirical_order(
            problem->np.problem, to_cpp(*config), {h_list, h_count},
            cpp_oracle, reference_h)};
    });
}

void dde_order_estimate_destroy(dde_order_estimate* estimate) {
    delete estimate;
}

size_t dde_order_estimate_len(const dde_order_estimate* estimate) {
    return estimate ? estimate->estimate.h_pairs.size() : 0;
}

double dde_order_estimate_h(const dde_order_estimate* estimate, size_t i) {
    if (!estimate || i >= estimate->estimate.h_pairs.size()) return NAN;
    return estimate->estimate.h_pairs[i].first;
}

double dde_order_estimate_error(const dde_order_estimate* estimate,
                                size_t i) {
    if (!estimate || i >= estimate->estimate.h_pairs.size()) return NAN;
    return estimate->estimate.h_pairs[i].second;
}

double dde_order_estimate_order(const dde_order_estimate* estimate,
                                size_t i) {
    if (!estimate || i >= estimate->estimate.orders.size()) return NAN;
    return estimate->estimate.orders[i];
}

dde_status dde_stability_probe(const dde_problem* problem,
                               const dde_solver_config* config,
                               double epsilon0, dde_stability_report* out) {
    if (!problem || !config || !out) {
        return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const dde::StabilityReport r =
            dde::stability_probe(problem->np.problem, to_cpp(*config),
                                 epsilon0);
        out->epsilon0 = r.epsilon0;
        out->observed_max_dev = r.observed_max_dev;
        out->bound = r.bound;
    });
}

dde_status dde_table1(double h, dde_table** out) {
    if (!out) return fail(DDE_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new dde_table{dde::table1(h)}; });
}

void dde_table_destroy(dde_table* table) { delete table; }

size_t dde_table_row_count(const dde_table* table) {
    return table ? table->rows.size() : 0;
}

const dde_table1_row* dde_table_rows(const dde_table* table) {
    if (!table) return nullptr;
    static_assert(sizeof(dde_table1_row) == sizeof(dde::Table1Row));
    return reinterpret_cast<const dde_table1_row*>(table->rows.data());
}

}  // extern "C"
