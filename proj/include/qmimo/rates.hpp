#pragma once

#include <cstdint>
#include <vector>

#include "qmimo/channel.hpp"
#include "qmimo/common.hpp"
#include "qmimo/frontend.hpp"
#include "qmimo/linalg.hpp"

namespace qmimo {

// Finite transition matrix P(V = l | X = x_j) induced by a partition and
// Gaussian noise. Rows follow the input point list, columns the label set.
struct InducedDMC {
    Matrix transition;

    void validate(double row_tol = 1e-9) const;
};

// Subchannel Y = sigma * x + N, N ~ N(0,1): transition (j, l) sums the
// Gaussian measure of all intervals carrying label l.
InducedDMC dmc_from_partition(double sigma, const Vec& points, const Partition1D& part);

// I(X; V) in bits for transition rows and input probabilities.
double mutual_information(const InducedDMC& dmc, const Vec& probs);

struct BAOptions {
    double tol = 1e-9;
    int max_iter = 5000;
    int bisect_iters = 60;
};

struct BAResult {
    InputDistribution dist;  // scalar mass points (pruned of zero mass)
    double capacity_bits = 0.0;
    int iterations = 0;
    double avg_power = 0.0;
    double price = 0.0;  // power-price multiplier at the solution
};

// Capacity of the DMC over the candidate grid under E[X^2] <= power_limit.
// The average-power constraint is enforced by bisection on a price multiplier;
// each inner run asserts per-iteration monotonicity of its objective.
BAResult blahut_arimoto(const InducedDMC& dmc, const Vec& candidate_points, double power_limit,
                        BAOptions opts = {});

enum class Family { Linear, QuadraticV };

std::string family_name(Family f);

struct ThresholdOptions {
    int multi_starts = 8;
    int grid_points = 257;   // per-coordinate scan resolution
    int refine_passes = 2;   // extra passes with window shrink x `shrink`
    double shrink = 0.25;
    bool all_quadratic = false;  // 2 n_q + 1 intervals, outermost sharing a label
    double candidate_span = 3.0;  // BA candidates span [-c sqrt(P), c sqrt(P)] plus +-sqrt(P)
    int scan_candidates = 33;
    double scan_tol = 1e-6;
    int scan_max_iter = 600;
    int final_candidates = 129;
    double final_tol = 1e-9;
    int final_max_iter = 5000;
    int jobs = 1;
    std::uint64_t seed = 2024;
    std::vector<Vec> extra_start_boundaries;  // e.g. an embedded linear optimum
};

struct RateResult {
    Partition1D partition;
    double rate_bits = 0.0;
    InputDistribution dist;  // condensed support, at most 2^{n_q} points
    int ba_iterations = 0;
};

// Best interval partition for one subchannel: n_qi + 1 intervals for the
// linear family, 2 n_qi for the quadratic family (2 n_qi + 1 with shared
// outer label when all_quadratic). Boundaries by multi-start coordinate
// descent, inner distribution by Blahut-Arimoto.
RateResult optimize_thresholds(double sigma, double power, int n_qi, Family family,
                               ThresholdOptions opts = {});

struct AllocationPlan {
    std::vector<int> nq_split;
    Vec power_split;
};

struct AllocationResult {
    AllocationPlan plan;
    double rate_bits = 0.0;
    Vec sigmas;
    std::vector<RateResult> per_subchannel;
    int ba_iterations = 0;
};

struct AllocationOptions {
    ThresholdOptions thresholds;
    int power_grid_points = 21;  // 11 when s = 4
};

// Exhaustive search over ADC compositions and a power-simplex grid,
// summing per-subchannel optimized rates. s <= 4 supported.
AllocationResult allocate_and_bound(const ChannelModel& channel, int n_q, Family family,
                                    AllocationOptions opts = {});

// Scenario I reference: per-antenna one-bit ADCs at threshold zero with iid
// antipodal inputs at +-sqrt(P). Requires n_q = n_r.
double scenario1_baseline(const ChannelModel& channel, int n_q);

// (1/2) sum log2(1 + sigma_k^2 P_k): unquantized Gaussian ceiling used by the
// data-processing checks.
double gaussian_sum_capacity(const Vec& sigmas, const Vec& powers);

}  // namespace qmimo
