// Command-line front end for the ddesolve shared library. Solves the
// built-in problems to CSV, reproduces the benchmark comparison table, and
// runs the convergence-order and zero-stability studies. Links the C API
// only.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddesolve.h"

namespace {

using json = nlohmann::ordered_json;

// Shortest round-trip decimal formatting; reproduces the same bytes for the
// same double on every platform.
std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

int exit_code_for(dde_status status) {
    switch (status) {
        case DDE_OK:
            return 0;
        case DDE_ERR_NONFINITE:
        case DDE_ERR_NONFINITE_STAGE:
        case DDE_ERR_NEWTON_FAIL:
        case DDE_ERR_SINGULAR_JACOBIAN:
        case DDE_ERR_NONPOSITIVE_ERROR:
        case DDE_ERR_INTERNAL:
            return 3;  // numerical failure
        default:
            return 2;  // validation failure
    }
}

int report_error(dde_status status) {
    std::cerr << "error: " << dde_status_code_word(status) << ": "
              << dde_last_error_message() << "\n";
    return exit_code_for(status);
}

int report_error(dde_status status, const std::string& message) {
    std::cerr << "error: " << dde_status_code_word(status) << ": " << message
              << "\n";
    return exit_code_for(status);
}

struct ProblemHandle {
    dde_problem* p = nullptr;
    ~ProblemHandle() { dde_problem_destroy(p); }
};

struct TrajectoryHandle {
    dde_trajectory* t = nullptr;
    ~TrajectoryHandle() { dde_trajectory_destroy(t); }
};

// Everything a run needs; mirrors the flags one to one and round-trips
// through the JSON config format.
struct RunSpec {
    std::string problem;
    std::optional<double> horizon;  // --T
    std::optional<double> c;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> tau;
    std::optional<double> h;
    std::optional<double> theta;
    std::optional<int> k;
    std::optional<std::string> method;      // nim | euler | implicit
    std::optional<std::string> stage_time;  // step-end | step-start
    std::string kind = "trajectory";        // trajectory | error | phase-xy
    double ref_h = 1e-4;
    std::vector<double> h_list;
    std::optional<std::string> oracle;  // exact | reference
    double epsilon = 1e-6;
    std::string out;  // empty = stdout
};

json spec_to_json(const RunSpec& s) {
    json j;
    j["problem"] = s.problem;
    if (s.horizon) j["T"] = *s.horizon;
    if (s.c) j["c"] = *s.c;
    if (s.lambda) j["lambda"] = *s.lambda;
    if (s.mu) j["mu"] = *s.mu;
    if (s.tau) j["tau"] = *s.tau;
    if (s.h) j["h"] = *s.h;
    if (s.theta) j["theta"] = *s.theta;
    if (s.k) j["k"] = *s.k;
    if (s.method) j["method"] = *s.method;
    if (s.stage_time) j["stage_time"] = *s.stage_time;
    j["kind"] = s.kind;
    j["ref_h"] = s.ref_h;
    if (!s.h_list.empty()) j["h_list"] = s.h_list;
    if (s.oracle) j["oracle"] = *s.oracle;
    j["epsilon"] = s.epsilon;
    // `out` stays a per-run flag: it is honored when present in a config
    // file but never dumped, so a dumped spec is output-path neutral.
    return j;
}

// Fills fields the command line left unset.
void apply_config(RunSpec& s, const json& j, const CLI::App& cmd) {
    auto unset = [&](const char* flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    if (j.contains("problem") && unset("--problem"))
        s.problem = j["problem"].get<std::string>();
    if (j.contains("T") && unset("--T")) s.horizon = j["T"].get<double>();
    if (j.contains("c") && unset("--c")) s.c = j["c"].get<double>();
    if (j.contains("lambda") && unset("--lambda"))
        s.lambda = j["lambda"].get<double>();
    if (j.contains("mu") && unset("--mu")) s.mu = j["mu"].get<double>();
    if (j.contains("tau") && unset("--tau")) s.tau = j["tau"].get<double>();
    if (j.contains("h") && unset("--h")) s.h = j["h"].get<double>();
    if (j.contains("theta") && unset("--theta"))
        s.theta = j["theta"].get<double>();
    if (j.contains("k") && unset("--k")) s.k = j["k"].get<int>();
    if (j.contains("method") && unset("--method"))
        s.method = j["method"].get<std::string>();
    if (j.contains("stage_time") && unset("--stage-time"))
        s.stage_time = j["stage_time"].get<std::string>();
    if (j.contains("kind") && unset("--kind"))
        s.kind = j["kind"].get<std::string>();
    if (j.contains("ref_h") && unset("--ref-h"))
        s.ref_h = j["ref_h"].get<double>();
    if (j.contains("h_list") && unset("--h-list"))
        s.h_list = j["h_list"].get<std::vector<double>>();
    if (j.contains("oracle") && unset("--oracle"))
        s.oracle = j["oracle"].get<std::string>();
    if (j.contains("epsilon") && unset("--epsilon"))
        s.epsilon = j["epsilon"].get<double>();
    if (j.contains("out") && unset("--out"))
        s.out = j["out"].get<std::string>();
}

// Creates the problem and the effective solver config; fills the spec's
// solver fields with the resolved values so a dumped config reproduces the
// run exactly. Returns DDE_OK or the failure status; `detail` carries
// CLI-level messages the library cannot know about.
dde_status resolve(RunSpec& s, ProblemHandle& ph, dde_solver_config& config,
                   std::string& detail) {
    if (s.problem.empty()) {
        detail = "--problem is required";
        return DDE_ERR_INVALID_ARGUMENT;
    }
    dde_problem_params params = dde_problem_params_default();
    if (s.horizon) params.horizon = *s.horizon;
    if (s.c) params.c = *s.c;
    if (s.lambda) params.lambda = *s.lambda;
    if (s.mu) params.mu = *s.mu;
    if (s.tau) params.tau = *s.tau;
    if (dde_status st = dde_problem_create(s.problem.c_str(), &params, &ph.p);
        st != DDE_OK) {
        return st;
    }

    config = dde_problem_recommended_config(ph.p);
    if (s.h) config.h = *s.h;
    if (s.theta) config.theta = *s.theta;
    if (s.k) config.nim_terms = *s.k;
    if (s.method) {
        if (*s.method == "nim") config.method = DDE_METHOD_NIM_THETA;
        else if (*s.method == "euler") config.method = DDE_METHOD_EXPLICIT_EULER;
        else if (*s.method == "implicit")
            config.method = DDE_METHOD_IMPLICIT_THETA_NEWTON;
        else {
            detail = "unknown method '" + *s.method +
                     "' (expected nim, euler or implicit)";
            return DDE_ERR_INVALID_ARGUMENT;
        }
    }
    if (s.stage_time) {
        if (*s.stage_time == "step-end")
            config.stage_time = DDE_STAGE_TIME_STEP_END;
        else if (*s.stage_time == "step-start")
            config.stage_time = DDE_STAGE_TIME_STEP_START;
        else {
            detail = "unknown stage time '" + *s.stage_time +
                     "' (expected step-end or step-start)";
            return DDE_ERR_INVALID_ARGUMENT;
        }
    }

    // Write the resolved values back so the dumped config is complete.
    s.horizon = dde_problem_horizon(ph.p);
    s.h = config.h;
    s.theta = config.theta;
    s.k = config.nim_terms;
    s.method = config.method == DDE_METHOD_NIM_THETA ? "nim"
               : config.method == DDE_METHOD_EXPLICIT_EULER ? "euler"
                                                            : "implicit";
    s.stage_time = config.stage_time == DDE_STAGE_TIME_STEP_END
                       ? "step-end"
                       : "step-start";
    return DDE_OK;
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        return report_error(DDE_ERR_INVALID_ARGUMENT,
                            "cannot open output file '" + path + "'");
    }
    f << text;
    return f.good() ? 0 : report_error(DDE_ERR_INVALID_ARGUMENT,
                                       "failed writing '" + path + "'");
}

std::string trajectory_csv(const dde_trajectory* traj) {
    std::ostringstream os;
    const size_t dim = dde_trajectory_dim(traj);
    os << "t";
    for (size_t i = 0; i < dim; ++i) os << ",y" << i;
    os << "\n";
    const size_t n = dde_trajectory_node_count(traj);
    for (size_t row = 0; row < n; ++row) {
        os << fmt(dde_trajectory_time(traj, row));
        const double* y = dde_trajectory_state(traj, row);
        for (size_t i = 0; i < dim; ++i) os << "," << fmt(y[i]);
        os << "\n";
    }
    return os.str();
}

std::string phase_csv(const dde_trajectory* traj) {
    std::ostringstream os;
    os << "x,y\n";
    const size_t n = dde_trajectory_node_count(traj);
    for (size_t row = 0; row < n; ++row) {
        const double* y = dde_trajectory_state(traj, row);
        os << fmt(y[0]) << "," << fmt(y[1]) << "\n";
    }
    return os.str();
}

std::string error_csv(const dde_error_report* report) {
    std::ostringstream os;
    os << "t,abs_error\n";
    const size_t n = dde_error_report_len(report);
    for (size_t i = 0; i < n; ++i) {
        os << fmt(dde_error_report_time(report, i)) << ","
           << fmt(dde_error_report_value(report, i)) << "\n";
    }
    return os.str();
}

// One solve -> CSV of the requested kind. Used directly and by the sweep.
dde_status solve_to_csv(const dde_problem* problem,
                        const dde_solver_config& config,
                        const std::string& kind, double ref_h,
                        std::string& csv_out) {
    TrajectoryHandle traj;
    if (dde_status st = dde_solve(problem, &config, &traj.t); st != DDE_OK) {
        return st;
    }
    if (kind == "trajectory") {
        csv_out = trajectory_csv(traj.t);
        return DDE_OK;
    }
    if (kind == "phase-xy") {
        if (dde_trajectory_dim(traj.t) < 2) {
            return DDE_ERR_INVALID_ARGUMENT;
        }
        csv_out = phase_csv(traj.t);
        return DDE_OK;
    }
    if (kind == "error") {
        dde_error_report* report = nullptr;
        dde_status st;
        if (dde_problem_has_exact(problem)) {
            st = dde_error_vs_exact(traj.t, problem, &report);
        } else {
            TrajectoryHandle ref;
            st = dde_reference_solution(problem, ref_h, &ref.t);
            if (st == DDE_OK) {
                st = dde_error_vs_reference(traj.t, ref.t, &report);
            }
        }
        if (st != DDE_OK) return st;
        csv_out = error_csv(report);
        dde_error_report_destroy(report);
        return DDE_OK;
    }
    return DDE_ERR_INVALID_ARGUMENT;
}

int cmd_solve(RunSpec& spec, const std::string& dump_config_path,
              const std::vector<double>& sweep_thetas,
              const std::string& out_dir) {
    ProblemHandle problem;
    dde_solver_config config;
    std::string detail;
    if (dde_status st = resolve(spec, problem, config, detail);
        st != DDE_OK) {
        return detail.empty() ? report_error(st) : report_error(st, detail);
    }
    if (spec.kind != "trajectory" && spec.kind != "error" &&
        spec.kind != "phase-xy") {
        return report_error(DDE_ERR_INVALID_ARGUMENT,
                            "unknown kind '" + spec.kind + "'");
    }

    if (!dump_config_path.empty()) {
        const std::string text = spec_to_json(spec).dump(2) + "\n";
        if (int rc = write_text(dump_config_path == "-" ? "" : dump_config_path,
                                text);
            rc != 0) {
            return rc;
        }
    }

    if (!sweep_thetas.empty()) {
        if (out_dir.empty()) {
            return report_error(DDE_ERR_INVALID_ARGUMENT,
                                "--sweep-theta requires --out-dir");
        }
        // Independent solves, fanned out; each writes its own file.
        struct SweepResult {
            double theta;
            std::string path;
            dde_status status;
            std::string csv;
        };
        std::vector<std::future<SweepResult>> jobs;
        for (double theta : sweep_thetas) {
            jobs.push_back(std::async(std::launch::async, [&, theta] {
                dde_solver_config c = config;
                c.theta = theta;
                SweepResult r{theta,
                              out_dir + "/" + spec.problem + "-theta-" +
                                  fmt(theta) + ".csv",
                              DDE_OK,
                              {}};
                r.status = solve_to_csv(problem.p, c, spec.kind, spec.ref_h,
                                        r.csv);
                return r;
            }));
        }
        int rc = 0;
        for (auto& job : jobs) {
            SweepResult r = job.get();
            if (r.status != DDE_OK) {
                rc = report_error(r.status,
                                  "sweep theta=" + fmt(r.theta) + " failed: " +
                                      dde_last_error_message());
                continue;
            }
            if (int wrc = write_text(r.path, r.csv); wrc != 0) {
                rc = wrc;
            } else {
                std::cout << r.path << "\n";
            }
        }
        return rc;
    }

    std::string csv;
    if (dde_status st =
            solve_to_csv(problem.p, config, spec.kind, spec.ref_h, csv);
        st != DDE_OK) {
        if (st == DDE_ERR_INVALID_ARGUMENT && spec.kind == "phase-xy" &&
            dde_problem_dim(problem.p) < 2) {
            return report_error(st, "phase-xy needs a problem with dim >= 2");
        }
        return report_error(st);
    }
    return write_text(spec.out, csv);
}

int cmd_table1(double h, const std::string& out_path) {
    dde_table* table = nullptr;
    if (dde_status st = dde_table1(h, &table); st != DDE_OK) {
        return report_error(st);
    }
    const dde_table1_row* rows = dde_table_rows(table);
    const size_t n = dde_table_row_count(table);

    char line[256];
    std::ostringstream os;
    os << "    t        S1        S2        S3         S        e1        e2"
          "        e3\n";
    bool has_02 = false;
    for (size_t i = 0; i < n; ++i) {
        const dde_table1_row& r = rows[i];
        const bool footnote = std::abs(r.t - 0.2) < 1e-12;
        has_02 = has_02 || footnote;
        std::snprintf(line, sizeof(line),
                      "%5.2f%s %9.6f %9.6f %9.6f %9.6f %9.7f %9.7f %9.7f\n",
                      r.t, footnote ? "*" : " ", r.s1, r.s2, r.s3, r.exact,
                      r.e1, r.e2, r.e3);
        os << line;
    }
    if (has_02) {
        os << "* the t=0.2 row of the published reference table is a known "
              "transcription error\n  (it duplicates the t=0.02 row); the "
              "row above is computed correctly.\n";
    }
    std::cout << os.str();

    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "t,S1,S2,S3,S,e1,e2,e3\n";
        for (size_t i = 0; i < n; ++i) {
            const dde_table1_row& r = rows[i];
            csv << fmt(r.t) << "," << fmt(r.s1) << "," << fmt(r.s2) << ","
                << fmt(r.s3) << "," << fmt(r.exact) << "," << fmt(r.e1) << ","
                << fmt(r.e2) << "," << fmt(r.e3) << "\n";
        }
        dde_table_destroy(table);
        return write_text(out_path, csv.str());
    }
    dde_table_destroy(table);
    return 0;
}

int cmd_order(RunSpec& spec, bool do_assert) {
    ProblemHandle problem;
    dde_solver_config config;
    std::string detail;
    if (dde_status st = resolve(spec, problem, config, detail);
        st != DDE_OK) {
        return detail.empty() ? report_error(st) : report_error(st, detail);
    }
    if (spec.h_list.size() < 2) {
        return report_error(DDE_ERR_INVALID_ARGUMENT,
                            "--h-list needs at least two step sizes");
    }
    dde_order_oracle oracle = dde_problem_has_exact(problem.p)
                                  ? DDE_ORACLE_EXACT
                                  : DDE_ORACLE_REFERENCE;
    if (spec.oracle) {
        if (*spec.oracle == "exact") oracle = DDE_ORACLE_EXACT;
        else if (*spec.oracle == "reference") oracle = DDE_ORACLE_REFERENCE;
        else
            return report_error(DDE_ERR_INVALID_ARGUMENT,
                                "unknown oracle '" + *spec.oracle + "'");
    }

    dde_order_estimate* estimate = nullptr;
    if (dde_status st = dde_empirical_order(problem.p, &config,
                                            spec.h_list.data(),
                                            spec.h_list.size(), oracle,
                                            spec.ref_h, &estimate);
        st != DDE_OK) {
        return report_error(st);
    }

    const size_t n = dde_order_estimate_len(estimate);
    std::ostringstream csv;
    csv << "h,max_error,order\n";
    std::cout << "problem " << spec.problem << ", theta "
              << fmt(*spec.theta) << ", oracle "
              << (oracle == DDE_ORACLE_EXACT ? "exact" : "reference") << "\n";
    for (size_t i = 0; i < n; ++i) {
        const double h = dde_order_estimate_h(estimate, i);
        const double e = dde_order_estimate_error(estimate, i);
        csv << fmt(h) << "," << fmt(e) << ",";
        std::cout << "h=" << fmt(h) << "  E=" << fmt(e);
        if (i > 0) {
            const double p = dde_order_estimate_order(estimate, i - 1);
            csv << fmt(p);
            std::cout << "  order=" << fmt(p);
        }
        csv << "\n";
        std::cout << "\n";
    }

    int rc = 0;
    if (!spec.out.empty()) rc = write_text(spec.out, csv.str());
    if (rc == 0 && do_assert) {
        const double expected = (*spec.theta == 0.5) ? 2.0 : 1.0;
        for (size_t i = 0; i + 1 < n; ++i) {
            const double p = dde_order_estimate_order(estimate, i);
            if (std::abs(p - expected) > 0.2) {
                std::cerr << "order assertion failed: order " << fmt(p)
                          << " differs from expected " << fmt(expected)
                          << " by more than 0.2\n";
                rc = 1;
            }
        }
        if (rc == 0) std::cout << "order assertion passed\n";
    }
    dde_order_estimate_destroy(estimate);
    return rc;
}

int cmd_stability(RunSpec& spec, bool do_assert) {
    ProblemHandle problem;
    dde_solver_config config;
    std::string detail;
    if (dde_status st = resolve(spec, problem, config, detail);
        st != DDE_OK) {
        return detail.empty() ? report_error(st) : report_error(st, detail);
    }
    dde_stability_report report;
    if (dde_status st =
            dde_stability_probe(problem.p, &config, spec.epsilon, &report);
        st != DDE_OK) {
        return report_error(st);
    }
    std::cout << "epsilon0=" << fmt(report.epsilon0)
              << " observed_max_dev=" << fmt(report.observed_max_dev)
              << " bound=" << fmt(report.bound) << "\n";
    int rc = 0;
    if (!spec.out.empty()) {
        rc = write_text(spec.out, "epsilon,observed,bound\n" +
                                      fmt(report.epsilon0) + "," +
                                      fmt(report.observed_max_dev) + "," +
                                      fmt(report.bound) + "\n");
    }
    if (rc == 0 && do_assert) {
        if (report.observed_max_dev <= report.bound) {
            std::cout << "stability assertion passed\n";
        } else {
            std::cerr << "stability assertion failed: observed "
                      << fmt(report.observed_max_dev) << " exceeds bound "
                      << fmt(report.bound) << "\n";
            rc = 1;
        }
    }
    return rc;
}

void add_problem_flags(CLI::App* cmd, RunSpec& spec) {
    cmd->add_option("--problem", spec.problem,
                    "built-in problem name (delay-logistic, example-ode, "
                    "rossler-delay, linear-test)");
    cmd->add_option("--T", spec.horizon, "horizon override");
    cmd->add_option("--c", spec.c, "control parameter (rossler-delay)");
    cmd->add_option("--lambda", spec.lambda, "rate constant (linear-test)");
    cmd->add_option("--mu", spec.mu, "delayed-term weight (linear-test)");
    cmd->add_option("--tau", spec.tau, "delay (linear-test)");
}

void add_solver_flags(CLI::App* cmd, RunSpec& spec) {
    cmd->add_option("--h", spec.h, "step size");
    cmd->add_option("--theta", spec.theta, "theta parameter in [0,1]");
    cmd->add_option("--k", spec.k, "iterated-update term count (>= 2)");
    cmd->add_option("--method", spec.method, "nim | euler | implicit");
    cmd->add_option("--stage-time", spec.stage_time,
                    "step-end (standard) | step-start (benchmark-table "
                    "convention)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-step solvers and analysis tools for constant-delay "
                 "differential equations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dde_version()));
    // -h is taken by the step-size option on every subcommand.
    app.set_help_flag("--help", "print this help and exit");

    RunSpec spec;
    std::string config_path;
    std::string dump_config_path;
    std::vector<double> sweep_thetas;
    std::string out_dir;
    double table_h = 0.01;
    std::string table_out;
    bool do_assert = false;

    CLI::App* solve = app.add_subcommand(
        "solve", "integrate a problem and emit a CSV");
    solve->set_help_flag("--help", "print this help and exit");
    add_problem_flags(solve, spec);
    add_solver_flags(solve, spec);
    solve->add_option("--kind", spec.kind,
                      "trajectory | error | phase-xy (default trajectory)");
    solve->add_option("--ref-h", spec.ref_h,
                      "reference step for error output on problems without "
                      "a closed form");
    solve->add_option("--out", spec.out, "output file (default stdout)");
    solve->add_option("--config", config_path,
                      "JSON config mirroring the flags; flags win");
    solve->add_option("--dump-config", dump_config_path,
                      "write the effective config as JSON ('-' for stdout)");
    solve->add_option("--sweep-theta", sweep_thetas,
                      "comma-separated theta values; one solve per value, "
                      "run concurrently")
        ->delimiter(',');
    solve->add_option("--out-dir", out_dir,
                      "output directory for --sweep-theta files");

    CLI::App* table = app.add_subcommand(
        "table1", "reproduce the benchmark comparison table (h=0.01)");
    table->set_help_flag("--help", "print this help and exit");
    table->add_option("--h", table_h, "table step size (default 0.01)");
    table->add_option("--out", table_out, "also write the table as CSV");

    CLI::App* order = app.add_subcommand(
        "order", "empirical convergence order under step halving");
    order->set_help_flag("--help", "print this help and exit");
    add_problem_flags(order, spec);
    add_solver_flags(order, spec);
    order->add_option("--h-list", spec.h_list,
                      "comma-separated descending halvings, e.g. "
                      "0.1,0.05,0.025")
        ->delimiter(',');
    order->add_option("--oracle", spec.oracle, "exact | reference");
    order->add_option("--ref-h", spec.ref_h,
                      "reference step for the reference oracle");
    order->add_flag("--assert", do_assert,
                    "exit nonzero unless all orders are within 0.2 of the "
                    "theoretical one (2 for theta=1/2, else 1)");
    order->add_option("--out", spec.out, "CSV output file");
    order->add_option("--config", config_path,
                      "JSON config mirroring the flags; flags win");

    CLI::App* stability = app.add_subcommand(
        "stability", "zero-stability probe: perturbed initial state vs "
                     "exp(T*L1)*eps bound");
    stability->set_help_flag("--help", "print this help and exit");
    add_problem_flags(stability, spec);
    add_solver_flags(stability, spec);
    stability->add_option("--epsilon", spec.epsilon,
                          "initial perturbation (default 1e-6)");
    stability->add_flag("--assert", do_assert,
                        "exit nonzero unless observed deviation <= bound");
    stability->add_option("--out", spec.out, "CSV output file");
    stability->add_option("--config", config_path,
                          "JSON config mirroring the flags; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the message; 0 for help/version
        return rc == 0 ? 0 : 2;
    }

    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            return report_error(DDE_ERR_INVALID_ARGUMENT,
                                "cannot open config file '" + config_path +
                                    "'");
        }
        json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            return report_error(DDE_ERR_INVALID_ARGUMENT,
                                "bad config file: " + std::string(e.what()));
        }
        apply_config(spec, j, *cmd);
    }

    try {
        if (cmd == solve) {
            return cmd_solve(spec, dump_config_path, sweep_thetas, out_dir);
        }
        if (cmd == table) return cmd_table1(table_h, table_out);
        if (cmd == order) return cmd_order(spec, do_assert);
        if (cmd == stability) return cmd_stability(spec, do_assert);
    } catch (const std::exception& e) {
        return report_error(DDE_ERR_INTERNAL, e.what());
    }
    return 0;
}
