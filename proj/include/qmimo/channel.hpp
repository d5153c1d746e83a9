#pragma once

#include <random>

#include "qmimo/common.hpp"
#include "qmimo/linalg.hpp"

namespace qmimo {

// Real MIMO channel Y = h X + N with iid Gaussian noise per receive antenna
// and average power budget (1/n_t) sum E[X_i^2] <= power.
struct ChannelModel {
    int n_t = 1;
    int n_r = 1;
    Matrix h;               // n_r x n_t gain matrix
    double power = 1.0;     // average power budget P
    double noise_var = 1.0; // per-antenna noise variance

    void validate() const;

    static ChannelModel make(int n_t, int n_r, Matrix h, double power, double noise_var = 1.0) {
        ChannelModel c{n_t, n_r, std::move(h), power, noise_var};
        c.validate();
        return c;
    }

    static ChannelModel siso(double gain = 1.0, double power = 1.0, double noise_var = 1.0) {
        Matrix h(1, 1);
        h(0, 0) = gain;
        return make(1, 1, h, power, noise_var);
    }
};

// Parallel scalar subchannels from the SVD h = U S V^T, truncated at the
// rank tolerance. sigmas are non-increasing; bases have orthonormal columns.
struct SubchannelSet {
    int s = 0;
    Vec sigmas;
    Matrix left_basis;   // n_r x s
    Matrix right_basis;  // n_t x s
};

// Singular values below rank_tolerance_factor * sigma_max count as zero.
inline constexpr double kRankToleranceFactor = 1e-10;

SubchannelSet svd_decompose(const ChannelModel& channel);

// One channel use: h x + n, n ~ iid N(0, noise_var). Deterministic given rng state.
Vec apply_channel(const ChannelModel& channel, const Vec& x, std::mt19937_64& rng);

// Finite input distribution: mass points in R^{n_t} (or scalars per subchannel)
// with matching probabilities summing to 1.
struct InputDistribution {
    std::vector<Vec> points;
    Vec probs;

    void validate() const;
    double average_power(int n_t) const;  // (1/n_t) sum_i sum_j p_j x_j(i)^2
};

bool validate_power(const InputDistribution& dist, const ChannelModel& channel);

}  // namespace qmimo
