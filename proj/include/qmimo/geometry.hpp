#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qmimo/channel.hpp"
#include "qmimo/common.hpp"
#include "qmimo/frontend.hpp"
#include "qmimo/linalg.hpp"

namespace qmimo {

// {z : <normal, z> = offset} in R^dim.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;
};

struct Arrangement {
    int dim = 1;
    std::vector<Hyperplane> hyperplanes;
    bool general_position = false;  // every dim-subset of normals has full rank

    void recompute_general_position(double det_tol = 1e-10);
};

// Seeded generic arrangement: unit-sphere normals, offsets in [-1, 1]
// (or all zero when central). Redraws until general position, <= 100 attempts.
Arrangement sample_generic_arrangement(int dim, int n, std::uint64_t seed, bool central = false);

struct RegionCounts {
    long long printed = 0;  // theorem's printed formula
    long long alpha = 0;    // central-arrangement count from the remark
};

// printed = sum_{i=0}^{rank+1} C(n_q, i) - C(n_q-1, rank)
// alpha   = 2 sum_{i=0}^{rank} C(n_q-1, i)
RegionCounts count_regions_theorem4(int rank, int n_q);

// (standard, printed) bounded-cell counts for n hyperplanes in general
// position in R^dim: C(n-1, dim) vs the printed C(n-1, dim-1).
std::pair<long long, long long> bounded_cells_formula(int dim, int n);

struct CellInfo {
    std::vector<int> sign_vector;  // +1 / -1 per hyperplane
    bool bounded = false;
    Vec witness;  // strictly interior point
};

struct CellEnumeration {
    long long total = 0;
    long long bounded = 0;
    std::vector<CellInfo> cells;  // sorted by sign vector

    std::vector<std::vector<int>> sign_vectors() const;
};

// Brute-force oracle: tries all 2^n sign vectors; a cell exists iff the strict
// inequality system is feasible (two-phase simplex); boundedness iff the
// recession cone contains no nonzero direction. samples_per_cell_check random
// points cross-check that sampled sign vectors all appear in the enumeration.
CellEnumeration enumerate_cells_oracle(const Arrangement& arr, int samples_per_cell_check,
                                       std::uint64_t seed);

// All vertices (d-subset intersections) of the arrangement.
std::vector<Vec> arrangement_vertices(const Arrangement& arr);

// x -> (x, ||x||^2).
Vec lift_paraboloid(const Vec& x);

// Constellation points, the front-end that separates them, and the
// bit-pattern -> message map. Codes are built in the post-SVD subchannel
// domain, so `frontend.dim` equals the channel rank.
struct RegionCode {
    std::vector<Vec> constellation;
    FrontendSpec frontend;
    std::map<Bits, int> pattern_map;

    int messages() const { return static_cast<int>(constellation.size()); }
};

// Noiseless separability: apply_frontend(h x_m) must map to m for every m.
void verify_region_code(const RegionCode& code, const ChannelModel& channel);

// Quadratic-family code achieving alpha(rank, n_q) messages: a generic central
// arrangement with its apex translated along the last axis to (0,..,0,1),
// inside the paraboloid bowl, so every cell (all unbounded cones) meets the
// lifted surface. Representatives are found by dense seeded sampling of the
// paraboloid parameterization.
RegionCode build_paraboloid_code(int rank, int n_q, std::uint64_t seed);

// C(rank + d, d): the shatterable point count for degree-<=d polynomials.
long long count_shatter_formula(int rank, int d);

struct Theorem3Bits {
    double printed;       // max(n_q, log2 C(rank+d, d)) as printed
    double constructive;  // min(n_q, log2 C(rank+d, d)) realized by the code
};
Theorem3Bits theorem3_rate_bits(int rank, int d, int n_q);

// VC shattering code: ell = C(rank+d, d) generic points; comparator j solves
// the square monomial-feature system forcing sign(f_j(x_t)) to be bit j of t
// (messages indexed 1..ell so the ADC outputs spell the binary index).
RegionCode build_shattering_code(int rank, int d, int n_q, std::uint64_t seed);

// Verifies that every one of the 2^ell sign labelings of the shattered points
// is realized by a degree-<=d polynomial (ell capped to keep 2^ell small).
bool full_shattering_check(int rank, int d, std::uint64_t seed, int ell_cap = 12);

// The two toy schemes: 'a' = thresholds (Y > 0, Y > 1) on amplitudes
// {-0.5, 0.5, 1.5}; 'b' = (Y > 0, Y^2 > 1) on {-1.5, -0.5, 0.5, 1.5}.
RegionCode fig1_code(char variant);

}  // namespace qmimo
