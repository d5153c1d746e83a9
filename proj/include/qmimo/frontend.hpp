#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmimo/common.hpp"
#include "qmimo/polynomial.hpp"

namespace qmimo {

enum class Scenario { I, II, III, IV, V };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// Analog front-end: n_q polynomial combiners over the n_r antenna outputs,
// each feeding a one-bit threshold ADC. The scenario tag restricts the
// admissible function family (I: projections, II: linear, V: linear +
// shared isotropic quadratic, IV: degree <= degree_bound, III: any degree).
struct FrontendSpec {
    Scenario scenario = Scenario::I;
    int n_q = 1;
    int dim = 1;  // number of inputs (n_r, or the subchannel rank post-SVD)
    std::vector<MultivariatePolynomial> functions;
    Vec thresholds;
    int degree_bound = 0;  // Scenario IV only

    void validate() const;

    static FrontendSpec scenario_i(int n_r, Vec thresholds);
    // rows of v are the linear combiner coefficients (n_q x n_r).
    static FrontendSpec scenario_ii(const std::vector<Vec>& v, Vec thresholds);
    // coeffs[i] has n_r linear coefficients followed by the isotropic one.
    static FrontendSpec scenario_v(const std::vector<Vec>& coeffs, Vec thresholds);
    static FrontendSpec scenario_iv(std::vector<MultivariatePolynomial> fs, Vec thresholds, int degree_bound);
    static FrontendSpec scenario_iii(std::vector<MultivariatePolynomial> fs, Vec thresholds);
};

// Whether the spec's functions satisfy the constraints of `target`
// (the family nesting I < II < V < IV < III).
bool validates_as(const FrontendSpec& spec, Scenario target, int degree_bound = 2);

// One-bit ADCs: bit j = 1 iff w(j) > t(j). Equality gives 0.
Bits quantize(const Vec& w, const Vec& t);

Bits apply_frontend(const FrontendSpec& spec, const Vec& y);

// Partition of the real line into m intervals by m-1 strictly increasing
// boundaries; labels (not necessarily distinct) index the output symbols.
struct Partition1D {
    Vec boundaries;
    std::vector<int> labels;

    int intervals() const { return static_cast<int>(labels.size()); }
    int num_labels() const;
    void validate() const;
};

// Interval partition induced on a scalar input by univariate comparators of
// degree <= 2. Boundaries are the comparator roots inside [lo, hi]; labels
// number the distinct bit patterns by first appearance left to right.
Partition1D induced_partition_1d(const FrontendSpec& spec, double lo, double hi);

// Cell of a partition of R^d: finite intersection of strict polynomial sign
// constraints (sign +1 means poly > 0, -1 means poly < 0).
struct CellRd {
    std::vector<std::pair<MultivariatePolynomial, int>> constraints;
};

struct LabeledPartitionRd {
    int dim = 1;
    std::vector<CellRd> cells;  // cell at position k-1 has index k in [2^{n_q}]

    // 0-based position of the containing cell. Throws std::domain_error when y
    // is within boundary_tol of any constraint surface of the containing cell.
    int find_cell(const Vec& y, double boundary_tol = 1e-12) const;

    // Grid partition from per-axis boundary lists, row-major cell indexing.
    static LabeledPartitionRd rectangular(const std::vector<Vec>& axis_boundaries);
};

// Appendix-style signed distance: |f_j(y)| is the distance from y to the
// boundary of its cell, and the bits (1{f_j > 0})_j spell out the binary
// representation of (cell index - 1).
double distance_sign_function(const LabeledPartitionRd& part, int j, const Vec& y);

// Bernstein approximation of f on [-L, L]^dim (dim <= 2), tensor-product
// construction. sup_error and sign_agreement are measured on a uniform grid
// with grid_per_axis points per axis, evaluating the approximant by de
// Casteljau (numerically stable at high degree, unlike the monomial form).
struct BernsteinResult {
    MultivariatePolynomial poly;
    double sup_error = 0.0;
    double sign_agreement = 0.0;
};

BernsteinResult bernstein_approximate(const std::function<double(const Vec&)>& f, int dim, double L,
                                      int degree, int grid_per_axis);

// Smallest L with gamma_Y * n_q / L <= eps (Markov truncation bound).
double choose_truncation_L(double gamma_y, int n_q, double eps);

}  // namespace qmimo
