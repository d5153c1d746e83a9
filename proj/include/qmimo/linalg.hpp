#pragma once

#include <cstddef>
#include <vector>

#include "qmimo/common.hpp"

namespace qmimo {

// Dense row-major matrix. Small sizes only (antenna counts, lifted dims).
struct Matrix {
    int rows = 0;
    int cols = 0;
    Vec a;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Vec matvec(const Vec& x) const {
        Vec y(rows, 0.0);
        for (int i = 0; i < rows; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }

    bool finite() const { return all_finite(a); }
};

inline Matrix matmul(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double xv = x(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
        }
    return z;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws std::runtime_error on a singular system (pivot below tol).
Vec solve_linear(Matrix A, Vec b, double tol = 1e-12);

}  // namespace qmimo
