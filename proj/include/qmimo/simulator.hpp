#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmimo/channel.hpp"
#include "qmimo/common.hpp"
#include "qmimo/geometry.hpp"

namespace qmimo {

struct TrialReport {
    std::string label;
    double power = 1.0;  // scale applied relative to the stored code
    long long trials = 0;
    double ser = 0.0;
    double ci95_ser = 0.0;  // 1.96 sqrt(ser (1 - ser) / trials)
    double empirical_mi_bits = 0.0;
    double avg_input_power = 0.0;  // measured (1/n_t) sum E[X_i^2] of the scaled code
    std::uint64_t seed = 0;
    long long wall_ms = 0;

    bool operator==(const TrialReport&) const = default;
};

// Covariant rescaling at power P: inputs scale by sqrt(P) and each degree-g
// part of a comparator by sqrt(P)^{G-g} with its threshold by sqrt(P)^G, so
// the partition geometry stays fixed relative to the constellation.
RegionCode scale_code(const RegionCode& code, double power);

// Plug-in mutual information of a joint count matrix with the Miller-Madow
// correction (K-1)(L-1)/(2 N ln 2) subtracted, clamped at zero. K and L are
// the numbers of rows/columns with nonzero mass.
double empirical_mi(const std::vector<std::vector<long long>>& joint_counts);

// Uniform messages through encode -> channel -> front-end -> ADC -> decode.
// The decoder picks the minimum-Hamming-distance known pattern, ties to the
// smallest message index. Deterministic given the seed, independent of jobs.
TrialReport simulate_code(const RegionCode& code, const ChannelModel& channel, long long trials,
                          std::uint64_t seed, int jobs = 1);

// One report per power-grid value, the code rescaled covariantly each time.
std::vector<TrialReport> highsnr_sweep(const RegionCode& code, const ChannelModel& channel,
                                       const Vec& power_grid, long long trials, std::uint64_t seed,
                                       int jobs = 1);

}  // namespace qmimo
