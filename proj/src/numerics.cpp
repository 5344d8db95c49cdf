#include "ionchain/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ionchain/errors.hpp"

namespace ionchain::numerics {

namespace {

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.size();
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = a(p, k) = c * akp - s * akq;
        a(k, q) = a(q, k) = s * akp + c * akq;
    }
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

double off_diagonal_sum(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = p + 1; q < a.size(); ++q) s += std::abs(a(p, q));
    return s;
}

}  // namespace

EigenResult symmetric_eigen(const Matrix& m) {
    const std::size_t n = m.size();
    for (double x : m.data())
        if (!std::isfinite(x))
            throw ValidationError(ValidationCode::BadArgument, "symmetric_eigen: non-finite matrix entry");
    if (const double asym = m.asymmetry(); asym > kSymmetryTolerance) {
        std::ostringstream os;
        os << "symmetric_eigen: " << n << "x" << n << " matrix is not symmetric (max |a_ij - a_ji| = "
           << asym << ")";
        throw ValidationError(ValidationCode::NonSymmetricMatrix, os.str());
    }

    Matrix a = m;
    Matrix v = Matrix::identity(n);
    bool converged = n <= 1;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        if (off_diagonal_sum(a) == 0.0) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a(p, q));
                // Once an element is negligible against both diagonal entries it is dropped.
                if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = a(q, p) = 0.0;
                } else if (a(p, q) != 0.0) {
                    rotate(a, v, p, q);
                }
            }
        }
    }
    if (!converged && off_diagonal_sum(a) != 0.0) {
        std::ostringstream os;
        os << "symmetric_eigen: " << n << "x" << n << " matrix (Frobenius norm " << m.frobenius_norm()
           << ") did not converge in " << kMaxJacobiSweeps << " sweeps";
        throw NumericError(os.str(), off_diagonal_sum(a));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenResult out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t k : order) {
        out.eigenvalues.push_back(a(k, k));
        std::vector<double> vec(n);
        for (std::size_t i = 0; i < n; ++i) vec[i] = v(i, k);
        out.eigenvectors.push_back(std::move(vec));
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto mv = m.multiply(out.eigenvectors[k]);
        for (std::size_t i = 0; i < n; ++i) mv[i] -= out.eigenvalues[k] * out.eigenvectors[k][i];
        out.max_residual = std::max(out.max_residual, norm2(mv));
    }
    return out;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ValidationError(ValidationCode::BadArgument, "solve_linear: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw NumericError("solve_linear: singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

NewtonResult damped_newton(const VectorFn& residual, const JacobianFn& jacobian,
                           std::vector<double> initial_guess, double tol) {
    if (!(tol > 0.0)) throw ValidationError(ValidationCode::BadArgument, "damped_newton: tol must be positive");

    NewtonResult res;
    res.solution = std::move(initial_guess);
    auto f = residual(res.solution);
    double r = max_abs(f);
    if (!std::isfinite(r)) throw NumericError("damped_newton: residual not finite at initial guess", r);

    for (int it = 0; it < kMaxNewtonSteps; ++it) {
        if (r < tol) {
            res.residual = r;
            res.iterations = it;
            return res;
        }
        std::vector<double> rhs(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
        const auto step = solve_linear(jacobian(res.solution), std::move(rhs));

        bool accepted = false;
        double lambda = 1.0;
        for (int halving = 0; halving < 60; ++halving, lambda *= 0.5) {
            std::vector<double> trial = res.solution;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += lambda * step[i];
            auto f_trial = residual(trial);
            const double r_trial = max_abs(f_trial);
            if (std::isfinite(r_trial) && r_trial < r) {
                res.solution = std::move(trial);
                f = std::move(f_trial);
                r = r_trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            std::ostringstream os;
            os << "damped_newton: line search stalled at residual " << r;
            throw NumericError(os.str(), r);
        }
    }
    if (r < tol) {
        res.residual = r;
        res.iterations = kMaxNewtonSteps;
        return res;
    }
    std::ostringstream os;
    os << "damped_newton: no convergence in " << kMaxNewtonSteps << " steps, residual " << r;
    throw NumericError(os.str(), r);
}

double bisect_largest_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                           int scan_points) {
    if (!(lo < hi) || !(tol > 0.0) || scan_points < 2)
        throw ValidationError(ValidationCode::BadArgument,
                              "bisect_largest_root: need lo < hi, tol > 0, scan_points >= 2");

    const double h = (hi - lo) / (scan_points - 1);
    double x_prev = hi;
    double f_prev = f(hi);
    if (f_prev == 0.0) return hi;
    for (int i = 1; i < scan_points; ++i) {
        const double x = (i == scan_points - 1) ? lo : hi - i * h;
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) != (f_prev < 0.0)) {
            double a = x, fa = fx, b = x_prev;
            for (int k = 0; k < kMaxBisectionSteps && b - a > tol; ++k) {
                const double m = a + 0.5 * (b - a);
                const double fm = f(m);
                if (fm == 0.0) return m;
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return a + 0.5 * (b - a);
        }
        x_prev = x;
        f_prev = fx;
    }
    std::ostringstream os;
    os << "bisect_largest_root: no sign change in [" << lo << ", " << hi << "]";
    throw NotBracketed(os.str(), f_prev);
}

std::vector<double> log_space(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw ValidationError(ValidationCode::BadArgument, "log_space: need 0 < lo < hi and points >= 2");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (points - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace ionchain::numerics
