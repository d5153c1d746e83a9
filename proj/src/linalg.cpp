#include "qmimo/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qmimo {

Vec solve_linear(Matrix A, Vec b, double tol) {
    const int n = A.rows;
    if (A.cols != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_linear: square system required");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        if (std::abs(A(piv, col)) < tol) throw std::runtime_error("solve_linear: singular system");
        if (piv != col) {
            for (int c = col; c < n; ++c) std::swap(A(piv, c), A(col, c));
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = A(r, col) / A(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
            b[r] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A(r, c) * x[c];
        x[r] = s / A(r, r);
    }
    return x;
}

}  // namespace qmimo
