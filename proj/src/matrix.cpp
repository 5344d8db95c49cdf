#include "ionchain/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionchain {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : Matrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != n_) throw std::invalid_argument("Matrix: rows must form a square matrix");
        std::size_t j = 0;
        for (double v : r) (*this)(i, j++) = v;
        ++i;
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

std::vector<double> Matrix::multiply(std::span<const double> v) const {
    if (v.size() != n_) throw std::invalid_argument("Matrix::multiply: size mismatch");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) out[i] = dot(row(i), v);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace ionchain
