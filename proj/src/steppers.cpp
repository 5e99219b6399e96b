#include "ddesolve/steppers.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ddesolve/error.hpp"
#include "internal.hpp"

namespace dde {

using internal::all_finite;
using internal::num;

namespace {

void check_stage(std::span<const double> v, const char* stage) {
    if (!all_finite(v)) {
        throw Error(ErrorCode::NonFiniteStage,
                    std::string("stage ") + stage + " is not finite");
    }
}

double stage_time_of(double tn, double h, StageTime st) {
    return st == StageTime::StepEnd ? tn + h : tn;
}

// In-place Gaussian elimination with partial pivoting on the dim x dim
// row-major matrix a, solving a*x = b into b.
void solve_dense(std::vector<double>& a, std::vector<double>& b,
                 std::size_t dim) {
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r) {
            if (std::abs(a[r * dim + col]) > std::abs(a[piv * dim + col])) {
                piv = r;
            }
        }
        if (!(std::abs(a[piv * dim + col]) >
              std::numeric_limits<double>::min())) {
            throw Error(ErrorCode::SingularJacobian,
                        "Newton Jacobian is singular (pivot " +
                            num(a[piv * dim + col]) + " in column " +
                            std::to_string(col) + ")");
        }
        if (piv != col) {
            for (std::size_t c = col; c < dim; ++c) {
                std::swap(a[piv * dim + c], a[col * dim + c]);
            }
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double factor = a[r * dim + col] / a[col * dim + col];
            a[r * dim + col] = 0.0;
            for (std::size_t c = col + 1; c < dim; ++c) {
                a[r * dim + c] -= factor * a[col * dim + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t r = dim; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < dim; ++c) {
            s -= a[r * dim + c] * b[c];
        }
        b[r] = s / a[r * dim + r];
    }
}

}  // namespace

void explicit_euler_step(const Problem& problem, double tn,
                         std::span<const double> yn,
                         std::span<const double> nu_n, double h,
                         std::span<double> out) {
    const std::size_t dim = problem.dim;
    std::vector<double> k1(dim);
    problem.rhs(tn, yn, nu_n, k1);
    check_stage(k1, "k1");
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = yn[i] + h * k1[i];
    }
    check_stage(out, "result");
}

void nim_theta_step(const Problem& problem, double tn,
                    std::span<const double> yn, std::span<const double> nu_n,
                    std::span<const double> nu_np1, double h, double theta,
                    int k_terms, StageTime stage_time, std::span<double> out) {
    if (k_terms < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "k_terms must be >= 2, got " + std::to_string(k_terms));
    }
    const std::size_t dim = problem.dim;
    std::vector<double> k1(dim);
    problem.rhs(tn, yn, nu_n, k1);
    check_stage(k1, "k1");

    // h*(1-theta) reduces to h exactly at theta = 0, so u0 is bit-identical
    // to the explicit Euler update there.
    const double hb = h * (1.0 - theta);
    std::vector<double> u0(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        u0[i] = yn[i] + hb * k1[i];
    }
    check_stage(u0, "u0");
    if (theta == 0.0) {
        // The h*theta iteration is inert; the step is explicit Euler.
        std::copy(u0.begin(), u0.end(), out.begin());
        return;
    }

    const double ts = stage_time_of(tn, h, stage_time);
    const double ht = h * theta;
    std::vector<double> s = u0;
    std::vector<double> fs(dim);
    for (int j = 2; j <= k_terms; ++j) {
        problem.rhs(ts, s, nu_np1, fs);
        check_stage(fs, ("k" + std::to_string(j)).c_str());
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = u0[i] + ht * fs[i];
        }
    }
    std::copy(s.begin(), s.end(), out.begin());
}

StageValues nim_theta_stages(const Problem& problem, double tn,
                             std::span<const double> yn,
                             std::span<const double> nu_n,
                             std::span<const double> nu_np1, double h,
                             double theta, int k_terms, StageTime stage_time) {
    if (k_terms < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "k_terms must be >= 2, got " + std::to_string(k_terms));
    }
    const std::size_t dim = problem.dim;
    StageValues sv;
    sv.k1.resize(dim);
    problem.rhs(tn, yn, nu_n, sv.k1);

    const double hb = h * (1.0 - theta);
    std::vector<double> u0(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        u0[i] = yn[i] + hb * sv.k1[i];
    }
    sv.iterates.push_back(u0);

    const double ts = stage_time_of(tn, h, stage_time);
    const double ht = h * theta;
    std::vector<double> s = u0;
    std::vector<double> fs(dim);
    for (int j = 2; j <= k_terms; ++j) {
        problem.rhs(ts, s, nu_np1, fs);
        sv.far_stages.push_back(fs);
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = u0[i] + ht * fs[i];
        }
        sv.iterates.push_back(s);
    }
    sv.result = s;
    return sv;
}

void implicit_theta_step_newton(const Problem& problem, double tn,
                                std::span<const double> yn,
                                std::span<const double> nu_n,
                                std::span<const double> nu_np1, double h,
                                double theta, double tol, int max_iter,
                                StageTime stage_time, std::span<double> out) {
    if (!(theta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "implicit step requires theta > 0 (theta = 0 is explicit "
                    "Euler)");
    }
    const std::size_t dim = problem.dim;
    std::vector<double> k1(dim);
    problem.rhs(tn, yn, nu_n, k1);
    check_stage(k1, "k1");

    const double hb = h * (1.0 - theta);
    const double ht = h * theta;
    std::vector<double> u0(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        u0[i] = yn[i] + hb * k1[i];
    }
    check_stage(u0, "u0");

    const double ts = stage_time_of(tn, h, stage_time);
    const double sqrt_eps =
        std::sqrt(std::numeric_limits<double>::epsilon());

    std::vector<double> y(yn.begin(), yn.end());
    std::vector<double> fy(dim), fpert(dim), ypert(dim);
    std::vector<double> residual(dim);
    std::vector<double> jac(dim * dim);
    double rnorm = std::numeric_limits<double>::infinity();

    for (int iter = 0;; ++iter) {
        problem.rhs(ts, y, nu_np1, fy);
        check_stage(fy, "implicit");
        rnorm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            residual[i] = y[i] - u0[i] - ht * fy[i];
            rnorm = std::max(rnorm, std::abs(residual[i]));
        }
        if (rnorm <= tol) {
            std::copy(y.begin(), y.end(), out.begin());
            return;
        }
        if (iter >= max_iter) break;

        // Forward-difference Jacobian of the residual: I - h*theta*df/dy.
        ypert = y;
        for (std::size_t j = 0; j < dim; ++j) {
            const double delta = sqrt_eps * std::max(1.0, std::abs(y[j]));
            ypert[j] = y[j] + delta;
            problem.rhs(ts, ypert, nu_np1, fpert);
            check_stage(fpert, "jacobian");
            ypert[j] = y[j];
            for (std::size_t i = 0; i < dim; ++i) {
                const double dfij = (fpert[i] - fy[i]) / delta;
                jac[i * dim + j] = (i == j ? 1.0 : 0.0) - ht * dfij;
            }
        }
        for (std::size_t i = 0; i < dim; ++i) residual[i] = -residual[i];
        solve_dense(jac, residual, dim);
        for (std::size_t i = 0; i < dim; ++i) y[i] += residual[i];
        check_stage(y, "newton iterate");
    }
    throw Error(ErrorCode::NewtonNoConvergence,
                "Newton did not reach tol=" + num(tol) + " within " +
                    std::to_string(max_iter) + " iterations (residual " +
                    num(rnorm) + ")");
}

void heun_step(const Problem& problem, double tn, std::span<const double> yn,
               std::span<const double> nu_n, std::span<const double> nu_np1,
               double h, std::span<double> out) {
    const std::size_t dim = problem.dim;
    std::vector<double> k1(dim), k2(dim), mid(dim);
    problem.rhs(tn, yn, nu_n, k1);
    check_stage(k1, "k1");
    for (std::size_t i = 0; i < dim; ++i) {
        mid[i] = yn[i] + h * k1[i];
    }
    problem.rhs(tn + h, mid, nu_np1, k2);
    check_stage(k2, "k2");
    const double hh = 0.5 * h;
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = yn[i] + hh * (k1[i] + k2[i]);
    }
    check_stage(out, "result");
}

}  // namespace dde
