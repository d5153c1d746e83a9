#include <doctest.h>

#include <cmath>
#include <random>

#include "qmimo/rates.hpp"

using namespace qmimo;

namespace {

Partition1D single_boundary() {
    Partition1D p;
    p.boundaries = {0.0};
    p.labels = {0, 1};
    return p;
}

// Closed-form reference: capacity of one-bit antipodal signaling at SNR
// sigma^2 P, i.e. 1 - h_b(Phi(-sigma sqrt(P))).
double onebit_antipodal_rate(double sigma, double power) {
    return 1.0 - binary_entropy(normal_cdf(-sigma * std::sqrt(power)));
}

ThresholdOptions fast_opts(std::uint64_t seed = 5) {
    ThresholdOptions o;
    o.multi_starts = 4;
    o.grid_points = 65;
    o.refine_passes = 1;
    o.scan_candidates = 17;
    o.final_candidates = 65;
    o.final_tol = 1e-8;
    o.final_max_iter = 2000;
    o.seed = seed;
    o.jobs = 2;
    return o;
}

}  // namespace

TEST_CASE("transition matrix of the single-boundary subchannel") {
    auto dmc = dmc_from_partition(1.0, {0.0}, single_boundary());
    CHECK(dmc.transition(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dmc.transition(0, 1) == doctest::Approx(0.5).epsilon(1e-14));

    auto dmc1 = dmc_from_partition(1.0, {1.0}, single_boundary());
    CHECK(dmc1.transition(0, 0) == doctest::Approx(normal_cdf(-1.0)).epsilon(1e-13));
    CHECK(dmc1.transition(0, 1) == doctest::Approx(1.0 - normal_cdf(-1.0)).epsilon(1e-13));

    auto hard = dmc_from_partition(100.0, {-1.0, 1.0}, single_boundary());
    CHECK(hard.transition(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hard.transition(0, 1) < 1e-9);
    CHECK(hard.transition(1, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transition rows sum to one over random configurations") {
    auto rng = make_rng(999);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    std::uniform_int_distribution<int> nb(1, 6);
    std::uniform_int_distribution<int> np(1, 20);
    for (int trial = 0; trial < 10000; ++trial) {
        int m = nb(rng);
        Vec bounds(m);
        for (double& b : bounds) b = uni(rng);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        Partition1D part;
        part.boundaries = bounds;
        for (size_t i = 0; i <= bounds.size(); ++i) part.labels.push_back(static_cast<int>(i));
        Vec points(np(rng));
        for (double& x : points) x = uni(rng);
        auto dmc = dmc_from_partition(std::abs(uni(rng)) + 0.1, points, part);
        dmc.validate(1e-9);
    }
}

TEST_CASE("mutual information basics") {
    InducedDMC ident;
    ident.transition = Matrix::identity(2);
    CHECK(mutual_information(ident, {0.5, 0.5}) == doctest::Approx(1.0));

    InducedDMC flat;
    flat.transition = Matrix(3, 2, 0.5);
    CHECK(mutual_information(flat, {0.2, 0.3, 0.5}) == doctest::Approx(0.0));

    auto dmc = dmc_from_partition(1.0, {-1.0, 1.0}, single_boundary());
    CHECK(mutual_information(dmc, {0.5, 0.5}) ==
          doctest::Approx(onebit_antipodal_rate(1.0, 1.0)).epsilon(1e-12));
    CHECK(onebit_antipodal_rate(1.0, 1.0) == doctest::Approx(0.36891).epsilon(1e-4));
}

TEST_CASE("blahut-arimoto on symmetric antipodal candidates") {
    auto dmc = dmc_from_partition(1.0, {-1.0, 1.0}, single_boundary());
    auto res = blahut_arimoto(dmc, {-1.0, 1.0}, 1.0);
    REQUIRE(res.dist.probs.size() == 2);
    CHECK(res.dist.probs[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.capacity_bits == doctest::Approx(onebit_antipodal_rate(1.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("blahut-arimoto concentrates on the power boundary for one-bit ADCs") {
    // Dense grid over [-sqrt(P), sqrt(P)]: the optimum is antipodal at the ends.
    const double P = 1.0;
    Vec candidates;
    for (int i = 0; i < 129; ++i) candidates.push_back(-1.0 + 2.0 * i / 128.0);
    auto dmc = dmc_from_partition(1.0, candidates, single_boundary());
    auto res = blahut_arimoto(dmc, candidates, P);
    CHECK(res.capacity_bits == doctest::Approx(onebit_antipodal_rate(1.0, P)).epsilon(1e-6));
    double edge_mass = 0.0;
    for (size_t j = 0; j < res.dist.points.size(); ++j)
        if (std::abs(std::abs(res.dist.points[j][0]) - 1.0) < 1e-12) edge_mass += res.dist.probs[j];
    CHECK(edge_mass >= 0.99);
}

TEST_CASE("blahut-arimoto on a noiseless quaternary channel") {
    InducedDMC ident;
    ident.transition = Matrix::identity(4);
    auto res = blahut_arimoto(ident, {-2.0, -1.0, 1.0, 2.0}, 100.0);
    CHECK(res.capacity_bits == doctest::Approx(2.0).epsilon(1e-7));
    for (double p : res.dist.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("blahut-arimoto enforces the power constraint by pricing") {
    Vec candidates;
    for (int i = 0; i < 41; ++i) candidates.push_back(-3.0 + 6.0 * i / 40.0);
    auto dmc = dmc_from_partition(1.0, candidates, single_boundary());
    auto res = blahut_arimoto(dmc, candidates, 1.0);
    CHECK(res.avg_power <= 1.0 + 1e-6);
    CHECK(res.price > 0.0);
    // One-bit symmetric output: antipodal at the power boundary is optimal,
    // so the priced grid solution cannot beat it.
    CHECK(res.capacity_bits <= onebit_antipodal_rate(1.0, 1.0) + 1e-9);
    CHECK(res.capacity_bits >= onebit_antipodal_rate(1.0, 1.0) - 5e-3);
}

TEST_CASE("blahut-arimoto rejects infeasible power limits") {
    auto dmc = dmc_from_partition(1.0, {-2.0, 2.0}, single_boundary());
    CHECK_THROWS_AS(blahut_arimoto(dmc, {-2.0, 2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("threshold optimizer saturates one comparator at high SNR") {
    auto res = optimize_thresholds(1.0, 1e4, 1, Family::Linear, fast_opts());
    CHECK(res.rate_bits == doctest::Approx(1.0).epsilon(0.01));
    CHECK(res.partition.intervals() == 2);
    CHECK(static_cast<int>(res.dist.points.size()) <= 2);
}

TEST_CASE("quadratic family reaches two bits with two comparators at high SNR") {
    auto res = optimize_thresholds(1.0, 1e4, 2, Family::QuadraticV, fast_opts());
    CHECK(res.partition.intervals() == 4);
    CHECK(res.rate_bits > std::log2(3.0) + 0.05);  // beats the linear baseline
    CHECK(res.rate_bits == doctest::Approx(2.0).epsilon(0.02));
    CHECK(static_cast<int>(res.dist.points.size()) <= 4);
}

TEST_CASE("quadratic family with one comparator matches the linear rate") {
    for (double snr : {0.1, 1.0, 10.0}) {
        auto lin = optimize_thresholds(1.0, snr, 1, Family::Linear, fast_opts());
        auto quad = optimize_thresholds(1.0, snr, 1, Family::QuadraticV, fast_opts());
        CHECK(quad.rate_bits >= lin.rate_bits - 1e-9);
        CHECK(quad.rate_bits <= 1.0 + 1e-9);
    }
}

TEST_CASE("all-quadratic variant shares the outer label and still hits 2 n_q patterns") {
    ThresholdOptions o = fast_opts();
    o.all_quadratic = true;
    auto res = optimize_thresholds(1.0, 1e4, 2, Family::QuadraticV, o);
    CHECK(res.partition.intervals() == 5);
    CHECK(res.partition.num_labels() == 4);
    CHECK(res.rate_bits == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("data processing ceilings hold for optimized rates") {
    for (int n_q : {1, 2}) {
        auto res = optimize_thresholds(1.0, 4.0, n_q, Family::QuadraticV, fast_opts());
        CHECK(res.rate_bits <= std::log2(res.partition.num_labels()) + 1e-9);
        CHECK(res.rate_bits <= n_q + 1e-9);
        CHECK(res.rate_bits <= gaussian_sum_capacity({1.0}, {4.0}) + 1e-9);
    }
}

TEST_CASE("allocation is degenerate for a single subchannel") {
    auto chan = ChannelModel::siso(1.0, 4.0);
    AllocationOptions ao;
    ao.thresholds = fast_opts();
    auto alloc = allocate_and_bound(chan, 2, Family::Linear, ao);
    CHECK(alloc.plan.nq_split == std::vector<int>{2});
    CHECK(alloc.plan.power_split == Vec{4.0});
    auto direct = optimize_thresholds(1.0, 4.0, 2, Family::Linear, fast_opts());
    CHECK(alloc.rate_bits == doctest::Approx(direct.rate_bits).epsilon(1e-9));
}

TEST_CASE("symmetric channel splits ADCs and power evenly at high SNR") {
    auto chan = ChannelModel::make(2, 2, Matrix::identity(2), 16.0);
    AllocationOptions ao;
    ao.thresholds = fast_opts();
    auto alloc = allocate_and_bound(chan, 2, Family::Linear, ao);
    CHECK(alloc.plan.nq_split == std::vector<int>{1, 1});
    CHECK(alloc.plan.power_split[0] == doctest::Approx(8.0));
    CHECK(alloc.plan.power_split[1] == doctest::Approx(8.0));
    CHECK(alloc.rate_bits == doctest::Approx(2.0 * onebit_antipodal_rate(1.0, 8.0)).epsilon(0.01));
}

TEST_CASE("allocation matches an independent brute-force sweep") {
    Matrix h(2, 2);
    h(0, 0) = 10.0;
    h(1, 1) = 0.1;
    auto chan = ChannelModel::make(2, 2, h, 1.0);
    // Coarse settings: the check is plan consistency, both sweeps use them.
    ThresholdOptions thr = fast_opts();
    thr.multi_starts = 2;
    thr.refine_passes = 1;
    thr.grid_points = 33;
    thr.scan_candidates = 9;
    thr.final_candidates = 33;
    AllocationOptions ao;
    ao.thresholds = thr;
    auto alloc = allocate_and_bound(chan, 2, Family::QuadraticV, ao);

    // Re-evaluate every composition and split with fresh optimizer calls.
    double best = -1.0;
    std::vector<int> best_nq;
    Vec best_ps;
    for (int n1 = 0; n1 <= 2; ++n1) {
        for (int tick = 0; tick <= 20; ++tick) {
            double p1 = 1.0 * tick / 20.0;
            double rate = 0.0;
            if (n1 > 0 && p1 > 0.0)
                rate += optimize_thresholds(10.0, p1, n1, Family::QuadraticV, thr).rate_bits;
            if (2 - n1 > 0 && 1.0 - p1 > 0.0)
                rate += optimize_thresholds(0.1, 1.0 - p1, 2 - n1, Family::QuadraticV, thr).rate_bits;
            if (rate > best + 1e-12) {
                best = rate;
                best_nq = {n1, 2 - n1};
                best_ps = {p1, 1.0 - p1};
            }
        }
    }
    CHECK(alloc.rate_bits == doctest::Approx(best).epsilon(1e-9));
    CHECK(alloc.plan.nq_split == best_nq);
    CHECK(alloc.plan.power_split[0] == doctest::Approx(best_ps[0]));
}

TEST_CASE("scenario-I baseline closed forms") {
    auto siso = ChannelModel::siso(1.0, 1.0);
    CHECK(scenario1_baseline(siso, 1) == doctest::Approx(onebit_antipodal_rate(1.0, 1.0)).epsilon(1e-9));

    auto hot = ChannelModel::siso(1.0, 1e4);
    CHECK(scenario1_baseline(hot, 1) == doctest::Approx(1.0).epsilon(1e-3));

    auto dual = ChannelModel::make(2, 2, Matrix::identity(2), 1.0);
    CHECK(scenario1_baseline(dual, 2) ==
          doctest::Approx(2.0 * onebit_antipodal_rate(1.0, 1.0)).epsilon(1e-9));

    CHECK_THROWS_AS(scenario1_baseline(dual, 1), std::invalid_argument);
}
