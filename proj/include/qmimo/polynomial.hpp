#pragma once

#include <map>
#include <vector>

#include "qmimo/common.hpp"

namespace qmimo {

// Real polynomial in `dim` variables, stored as exponent-vector -> coefficient.
// Zero-coefficient terms are never stored.
struct MultivariatePolynomial {
    int dim = 1;
    std::map<std::vector<int>, double> terms;

    MultivariatePolynomial() = default;
    explicit MultivariatePolynomial(int d) : dim(d) {}

    void add_term(std::vector<int> exps, double coef) {
        require(static_cast<int>(exps.size()) == dim, "polynomial term: exponent vector length != dim");
        for (int e : exps) require(e >= 0, "polynomial term: exponents must be non-negative");
        if (coef == 0.0) return;
        auto [it, inserted] = terms.try_emplace(std::move(exps), coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0.0) terms.erase(it);
        }
    }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) {
            int t = 0;
            for (int k : e) t += k;
            d = std::max(d, t);
        }
        return d;
    }

    double eval(const Vec& y) const {
        require(static_cast<int>(y.size()) == dim, "eval_poly: point dimension mismatch");
        double s = 0.0;
        for (const auto& [e, c] : terms) {
            double m = c;
            for (int k = 0; k < dim; ++k)
                for (int r = 0; r < e[k]; ++r) m *= y[k];
            s += m;
        }
        return s;
    }

    Vec gradient(const Vec& y) const {
        Vec g(dim, 0.0);
        for (const auto& [e, c] : terms)
            for (int k = 0; k < dim; ++k) {
                if (e[k] == 0) continue;
                double m = c * e[k];
                for (int j = 0; j < dim; ++j) {
                    int p = (j == k) ? e[j] - 1 : e[j];
                    for (int r = 0; r < p; ++r) m *= y[j];
                }
                g[k] += m;
            }
        return g;
    }

    // Y_axis as a polynomial over dim variables.
    static MultivariatePolynomial projection(int dim, int axis) {
        MultivariatePolynomial p(dim);
        std::vector<int> e(dim, 0);
        e[axis] = 1;
        p.add_term(std::move(e), 1.0);
        return p;
    }

    static MultivariatePolynomial constant(int dim, double c) {
        MultivariatePolynomial p(dim);
        p.add_term(std::vector<int>(dim, 0), c);
        return p;
    }

    // sum_k a_k Y_k + a_iso * sum_k Y_k^2 (the Scenario-V generating span).
    static MultivariatePolynomial linear_plus_isotropic(const Vec& linear, double a_iso) {
        int d = static_cast<int>(linear.size());
        MultivariatePolynomial p(d);
        for (int k = 0; k < d; ++k) {
            std::vector<int> e(d, 0);
            e[k] = 1;
            p.add_term(std::move(e), linear[k]);
        }
        if (a_iso != 0.0)
            for (int k = 0; k < d; ++k) {
                std::vector<int> e(d, 0);
                e[k] = 2;
                p.add_term(std::move(e), a_iso);
            }
        return p;
    }
};

inline double eval_poly(const MultivariatePolynomial& p, const Vec& y) { return p.eval(y); }

}  // namespace qmimo
