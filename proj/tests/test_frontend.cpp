#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "qmimo/frontend.hpp"
#include "qmimo/linalg.hpp"

using namespace qmimo;

namespace {

FrontendSpec fig1b_frontend() { return FrontendSpec::scenario_v({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 1.0}); }

}  // namespace

TEST_CASE("eval_poly basics") {
    auto p = MultivariatePolynomial::projection(2, 0);
    CHECK(eval_poly(p, {3.0, -1.0}) == 3.0);

    MultivariatePolynomial iso = MultivariatePolynomial::linear_plus_isotropic({0.0, 0.0}, 1.0);
    CHECK(eval_poly(iso, {1.0, 2.0}) == 5.0);

    MultivariatePolynomial q(2);
    q.add_term({2, 1}, 0.5);
    q.add_term({0, 0}, -1.0);
    CHECK(eval_poly(q, {2.0, 3.0}) == doctest::Approx(5.0));  // 0.5*4*3 - 1

    CHECK_THROWS_AS(eval_poly(q, {1.0}), std::invalid_argument);
}

TEST_CASE("quantize comparator convention") {
    CHECK(quantize({1.0, -1.0}, {0.0, 0.0}) == Bits{1, 0});
    CHECK(quantize({0.3, 0.7}, {0.3, 0.7}) == Bits{0, 0});  // w = t gives zero
    CHECK(quantize({0.5, 1.5}, {0.0, 1.0}) == Bits{1, 1});
    CHECK(quantize({-0.5, 0.25}, {0.0, 1.0}) == Bits{0, 0});
    CHECK_THROWS_AS(quantize({1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("quantize is monotone in the thresholds") {
    auto rng = make_rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Vec w(4), t(4);
        for (double& v : w) v = uni(rng);
        for (double& v : t) v = uni(rng);
        Bits before = quantize(w, t);
        int j = trial % 4;
        Vec t2 = t;
        t2[j] += std::abs(uni(rng));
        Bits after = quantize(w, t2);
        for (int i = 0; i < 4; ++i) CHECK(after[i] <= before[i]);
    }
}

TEST_CASE("apply_frontend on the quadratic SISO pair") {
    FrontendSpec fe = fig1b_frontend();
    CHECK(apply_frontend(fe, {1.5}) == Bits{1, 1});
    CHECK(apply_frontend(fe, {-0.5}) == Bits{0, 0});

    FrontendSpec id = FrontendSpec::scenario_i(3, {0.0, 0.0, 0.0});
    CHECK(apply_frontend(id, {0.4, -0.1, 2.0}) == Bits{1, 0, 1});
}

TEST_CASE("scenario validation rules") {
    CHECK_THROWS_AS(FrontendSpec::scenario_v({{1.0, 0.5}, {0.0, 1.0}}, {0.0}), std::invalid_argument);
    // Scenario II rejects constant offsets.
    MultivariatePolynomial affine(2);
    affine.add_term({1, 0}, 1.0);
    affine.add_term({0, 0}, 0.3);
    FrontendSpec bad;
    bad.scenario = Scenario::II;
    bad.n_q = 1;
    bad.dim = 2;
    bad.functions = {affine};
    bad.thresholds = {0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    // Scenario V rejects per-axis unequal square coefficients.
    MultivariatePolynomial skew(2);
    skew.add_term({2, 0}, 1.0);
    skew.add_term({0, 2}, 0.5);
    FrontendSpec bad2;
    bad2.scenario = Scenario::V;
    bad2.n_q = 1;
    bad2.dim = 2;
    bad2.functions = {skew};
    bad2.thresholds = {0.0};
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("family nesting mirrors F^I < F^II < F^V < F^IV < F^III") {
    FrontendSpec s1 = FrontendSpec::scenario_i(2, {0.0, 0.0});
    CHECK(validates_as(s1, Scenario::II));
    FrontendSpec s2 = FrontendSpec::scenario_ii({{0.3, -0.7}, {1.0, 0.2}}, {0.0, 0.1});
    CHECK(validates_as(s2, Scenario::V));
    FrontendSpec s5 = FrontendSpec::scenario_v({{0.3, -0.7, 2.0}}, {0.5});
    CHECK(validates_as(s5, Scenario::IV, 2));
    MultivariatePolynomial cubic(2);
    cubic.add_term({3, 0}, 1.0);
    FrontendSpec s4 = FrontendSpec::scenario_iv({cubic}, {0.0}, 3);
    CHECK(validates_as(s4, Scenario::III));
    CHECK_FALSE(validates_as(s4, Scenario::V));
    CHECK_FALSE(validates_as(s2, Scenario::I));  // not projections
}

TEST_CASE("induced 1-D partitions from comparator roots") {
    FrontendSpec one = FrontendSpec::scenario_ii({{1.0}}, {0.0});
    Partition1D p1 = induced_partition_1d(one, -10.0, 10.0);
    CHECK(p1.boundaries == Vec{0.0});
    CHECK(p1.intervals() == 2);
    CHECK(p1.num_labels() == 2);

    Partition1D p2 = induced_partition_1d(fig1b_frontend(), -10.0, 10.0);
    REQUIRE(p2.boundaries.size() == 3);
    CHECK(p2.boundaries[0] == doctest::Approx(-1.0));
    CHECK(p2.boundaries[1] == doctest::Approx(0.0));
    CHECK(p2.boundaries[2] == doctest::Approx(1.0));
    CHECK(p2.intervals() == 4);
    CHECK(p2.num_labels() == 4);

    FrontendSpec sq = FrontendSpec::scenario_v({{0.0, 1.0}}, {1.0});
    Partition1D p3 = induced_partition_1d(sq, -10.0, 10.0);
    CHECK(p3.intervals() == 3);
    CHECK(p3.num_labels() == 2);  // outer intervals share the pattern
    CHECK(p3.labels == std::vector<int>{0, 1, 0});

    MultivariatePolynomial cubic(1);
    cubic.add_term({3}, 1.0);
    FrontendSpec deep = FrontendSpec::scenario_iv({cubic}, {0.0}, 3);
    CHECK_THROWS_AS(induced_partition_1d(deep, -1.0, 1.0), std::domain_error);
}

TEST_CASE("induced partition label count bound") {
    auto rng = make_rng(17);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        int n_q = 1 + trial % 3;
        std::vector<Vec> coeffs;
        Vec thresholds;
        for (int i = 0; i < n_q; ++i) {
            coeffs.push_back({uni(rng), uni(rng)});
            thresholds.push_back(uni(rng));
        }
        FrontendSpec fe = FrontendSpec::scenario_v(coeffs, thresholds);
        Partition1D p = induced_partition_1d(fe, -20.0, 20.0);
        CHECK(p.num_labels() <= std::min(1 << n_q, static_cast<int>(p.boundaries.size()) + 1));
    }
}

TEST_CASE("distance-sign function on the single-boundary line") {
    auto part = LabeledPartitionRd::rectangular({{0.0}});
    double left = distance_sign_function(part, 0, {-2.0});
    double right = distance_sign_function(part, 0, {2.0});
    CHECK(left == doctest::Approx(-2.0));
    CHECK(right == doctest::Approx(2.0));
    CHECK_THROWS_AS(distance_sign_function(part, 0, {0.0}), std::domain_error);
    CHECK_THROWS_AS(distance_sign_function(part, 0, {1e-13}), std::domain_error);
}

TEST_CASE("distance-sign bits enumerate quadrant cells") {
    auto part = LabeledPartitionRd::rectangular({{0.0}, {0.0}});
    REQUIRE(part.cells.size() == 4);
    std::set<std::pair<int, int>> seen;
    Vec probes[] = {{-1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}};
    for (const Vec& y : probes) {
        int b0 = distance_sign_function(part, 0, y) > 0;
        int b1 = distance_sign_function(part, 1, y) > 0;
        int k0 = part.find_cell(y);
        CHECK(((k0 >> 0) & 1) == b0);
        CHECK(((k0 >> 1) & 1) == b1);
        seen.insert({b0, b1});
    }
    CHECK(seen.size() == 4);
}

TEST_CASE("distance-sign magnitude shrinks toward the boundary") {
    auto part = LabeledPartitionRd::rectangular({{-1.0, 1.0}});
    double prev = 0.0;
    for (double y = -1.9; y <= -1.25; y += 0.1) {
        double v = std::abs(distance_sign_function(part, 0, {y}));
        if (prev > 0) CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("appendix indexing on random rectangular partitions") {
    auto rng = make_rng(4242);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        int dims = 1 + trial % 2;
        std::vector<Vec> axes;
        for (int a = 0; a < dims; ++a) {
            Vec b = {uni(rng), uni(rng), uni(rng)};
            std::sort(b.begin(), b.end());
            axes.push_back(b);
        }
        auto part = LabeledPartitionRd::rectangular(axes);
        int bits = 0;
        while ((1 << bits) < static_cast<int>(part.cells.size())) ++bits;
        for (int s = 0; s < 200; ++s) {
            Vec y(dims);
            for (double& v : y) v = uni(rng) * 1.4;
            int k0;
            try {
                k0 = part.find_cell(y);
            } catch (const std::domain_error&) {
                continue;  // boundary hit
            }
            for (int j = 0; j < bits; ++j) {
                double f = distance_sign_function(part, j, y);
                CHECK((f > 0) == (((k0 >> j) & 1) != 0));
            }
        }
    }
}

TEST_CASE("bernstein reproduces linear functions exactly") {
    auto lin = [](const Vec& y) { return 0.3 * y[0] - 0.1; };
    for (int degree : {1, 2, 5}) {
        auto res = bernstein_approximate(lin, 1, 1.0, degree, 128);
        CHECK(res.sup_error <= 1e-12);
    }
    auto plane = [](const Vec& y) { return 0.5 * y[0] - 0.25 * y[1] + 0.1; };
    auto res2 = bernstein_approximate(plane, 2, 2.0, 3, 17);
    CHECK(res2.sup_error <= 1e-12);
}

TEST_CASE("bernstein degree-2 error of |y| matches the closed form") {
    auto absf = [](const Vec& y) { return std::abs(y[0]); };
    const int grid = 101;
    auto res = bernstein_approximate(absf, 1, 1.0, 2, grid);
    // B_2(|.|)(y) = (y^2 + 1) / 2 exactly: nodes at -1, 0, 1.
    double expected = 0.0;
    for (int i = 0; i < grid; ++i) {
        double y = -1.0 + 2.0 * i / (grid - 1);
        expected = std::max(expected, std::abs(0.5 * (y * y + 1.0) - std::abs(y)));
    }
    CHECK(res.sup_error == doctest::Approx(expected).epsilon(1e-12));
    CHECK(res.sup_error > 0.0);
}

TEST_CASE("bernstein sign agreement is non-decreasing for the three-region case") {
    auto part = LabeledPartitionRd::rectangular({{-1.0, 1.0}});
    // Boundary points take the continuous extension, zero.
    auto f = [&](const Vec& y) -> double {
        try {
            return distance_sign_function(part, 0, y);
        } catch (const std::domain_error&) {
            return 0.0;
        }
    };
    double prev = -1.0;
    for (int degree : {2, 8, 32}) {
        auto res = bernstein_approximate(f, 1, 4.0, degree, 1024);
        CHECK(res.sign_agreement >= prev - 0.01);
        prev = res.sign_agreement;
    }
}

TEST_CASE("bernstein monomial form agrees with the stable evaluation at low degree") {
    auto f = [](const Vec& y) { return std::sin(y[0]); };
    auto res = bernstein_approximate(f, 1, 2.0, 6, 33);
    for (int i = 0; i < 33; ++i) {
        double y = -2.0 + 4.0 * i / 32.0;
        CHECK(std::abs(res.poly.eval({y}) - f({y})) <= res.sup_error + 1e-9);
    }
    CHECK_THROWS_AS(bernstein_approximate(f, 3, 1.0, 2, 8), std::domain_error);
}

TEST_CASE("truncation bound") {
    CHECK(choose_truncation_L(1.0, 2, 0.1) == doctest::Approx(20.0));
    double l1 = choose_truncation_L(0.7, 3, 0.08);
    double l2 = choose_truncation_L(0.7, 3, 0.04);
    CHECK(l2 == doctest::Approx(2.0 * l1));
    CHECK_THROWS_AS(choose_truncation_L(0.0, 2, 0.1), std::invalid_argument);
}

TEST_CASE("truncation bound with Monte-Carlo gamma matches the folded-normal oracle") {
    // Y = X + N, X uniform on {-1, +1}, N ~ N(0,1): |Y| is folded normal with
    // mu = 1, sigma = 1, so E|Y| = sqrt(2/pi) e^{-1/2} + (1 - 2 Phi(-1)).
    double oracle = std::sqrt(2.0 / M_PI) * std::exp(-0.5) + (1.0 - 2.0 * normal_cdf(-1.0));
    auto rng = make_rng(909);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::bernoulli_distribution flip(0.5);
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) acc += std::abs((flip(rng) ? 1.0 : -1.0) + noise(rng));
    double gamma_mc = acc / n;
    double l_mc = choose_truncation_L(gamma_mc, 2, 0.05);
    double l_oracle = choose_truncation_L(oracle, 2, 0.05);
    CHECK(std::abs(l_mc - l_oracle) / l_oracle < 0.05);
}
