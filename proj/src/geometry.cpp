#include "qmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace qmimo {

namespace {

constexpr double kPivotTol = 1e-9;

struct LpResult {
    bool feasible = false;
    bool bounded_obj = true;
    double objective = 0.0;
    Vec x;
};

// Dense two-phase simplex with Bland's rule: max c.x s.t. A x <= b, x free.
// Free variables are split internally; problem sizes here are tiny.
LpResult solve_lp_max(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
    const int dim = static_cast<int>(c.size());
    const int m = static_cast<int>(A.size());
    const int n2 = 2 * dim;
    int n_art = 0;
    for (double bi : b)
        if (bi < 0) ++n_art;
    const int cols = n2 + m + n_art + 1;  // split vars, slacks, artificials, rhs
    const int rhs = cols - 1;

    std::vector<Vec> T(m, Vec(cols, 0.0));
    std::vector<int> basis(m);
    std::vector<bool> is_art(cols, false);
    std::vector<bool> dead_row(m, false);
    int art_at = n2 + m;
    for (int i = 0; i < m; ++i) {
        double s = (b[i] < 0) ? -1.0 : 1.0;
        for (int j = 0; j < dim; ++j) {
            T[i][j] = s * A[i][j];
            T[i][dim + j] = -s * A[i][j];
        }
        T[i][n2 + i] = s;  // slack
        T[i][rhs] = s * b[i];
        if (b[i] < 0) {
            T[i][art_at] = 1.0;
            is_art[art_at] = true;
            basis[i] = art_at++;
        } else {
            basis[i] = n2 + i;
        }
    }

    Vec obj(cols, 0.0);
    auto canonicalize = [&]() {
        for (int i = 0; i < m; ++i) {
            if (dead_row[i]) continue;
            double f = obj[basis[i]];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) obj[j] -= f * T[i][j];
        }
    };
    auto pivot = [&](int row, int col) {
        double p = T[row][col];
        for (int j = 0; j < cols; ++j) T[row][j] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || dead_row[i]) continue;
            double f = T[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) T[i][j] -= f * T[row][j];
        }
        double f = obj[col];
        if (f != 0.0)
            for (int j = 0; j < cols; ++j) obj[j] -= f * T[row][j];
        basis[row] = col;
    };
    // Bland's rule: smallest eligible entering column, smallest basis on ties.
    auto run_simplex = [&](bool allow_art) -> bool {
        for (int iter = 0; iter < 20000; ++iter) {
            int enter = -1;
            for (int j = 0; j < rhs; ++j) {
                if (!allow_art && is_art[j]) continue;
                if (obj[j] > kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m; ++i) {
                if (dead_row[i] || T[i][enter] <= kPivotTol) continue;
                double ratio = T[i][rhs] / T[i][enter];
                if (leave < 0 || ratio < best - 1e-15 ||
                    (ratio < best + 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex: iteration limit exceeded");
    };

    LpResult res;
    if (n_art > 0) {
        for (int j = n2 + m; j < rhs; ++j) obj[j] = -1.0;
        canonicalize();
        run_simplex(true);
        if (obj[rhs] < -1e-7) return res;  // phase-1 optimum < 0: infeasible
        // Remove artificials; pivot basic ones out or drop redundant rows.
        for (int i = 0; i < m; ++i) {
            if (dead_row[i] || !is_art[basis[i]]) continue;
            int col = -1;
            for (int j = 0; j < n2 + m; ++j)
                if (std::abs(T[i][j]) > kPivotTol) {
                    col = j;
                    break;
                }
            if (col >= 0) pivot(i, col);
            else dead_row[i] = true;
        }
    }
    res.feasible = true;
    std::fill(obj.begin(), obj.end(), 0.0);
    for (int j = 0; j < dim; ++j) {
        obj[j] = c[j];
        obj[dim + j] = -c[j];
    }
    canonicalize();
    if (!run_simplex(false)) {
        res.bounded_obj = false;
        res.objective = std::numeric_limits<double>::infinity();
        return res;
    }
    Vec split(n2 + m + n_art, 0.0);
    for (int i = 0; i < m; ++i)
        if (!dead_row[i]) split[basis[i]] = T[i][rhs];
    res.x.resize(dim);
    for (int j = 0; j < dim; ++j) res.x[j] = split[j] - split[dim + j];
    res.objective = 0.0;
    for (int j = 0; j < dim; ++j) res.objective += c[j] * res.x[j];
    return res;
}

// Strict feasibility of {z : sign_i * (<a_i, z> - b_i) > 0 for all i}:
// max eps s.t. sign_i(<a_i,z> - b_i) >= eps, eps <= 1. Strictly feasible
// iff the optimum exceeds the tolerance.
std::optional<Vec> strict_feasible_point(const Arrangement& arr, const std::vector<int>& signs,
                                         double eps_tol = 1e-7) {
    const int d = arr.dim;
    const int n = static_cast<int>(arr.hyperplanes.size());
    std::vector<Vec> A;
    Vec b, c(d + 1, 0.0);
    c[d] = 1.0;
    for (int i = 0; i < n; ++i) {
        Vec row(d + 1, 0.0);
        for (int j = 0; j < d; ++j) row[j] = -signs[i] * arr.hyperplanes[i].normal[j];
        row[d] = 1.0;
        A.push_back(std::move(row));
        b.push_back(-signs[i] * arr.hyperplanes[i].offset);
    }
    Vec cap(d + 1, 0.0);
    cap[d] = 1.0;
    A.push_back(cap);
    b.push_back(1.0);
    LpResult r = solve_lp_max(A, b, c);
    if (!r.feasible || r.objective <= eps_tol) return std::nullopt;
    return Vec(r.x.begin(), r.x.begin() + d);
}

// Recession cone {dir : sign_i <a_i, dir> >= 0} contains a nonzero vector?
bool recession_cone_nonzero(const Arrangement& arr, const std::vector<int>& signs) {
    const int d = arr.dim;
    const int n = static_cast<int>(arr.hyperplanes.size());
    std::vector<Vec> A;
    Vec b;
    for (int i = 0; i < n; ++i) {
        Vec row(d, 0.0);
        for (int j = 0; j < d; ++j) row[j] = -signs[i] * arr.hyperplanes[i].normal[j];
        A.push_back(std::move(row));
        b.push_back(0.0);
    }
    for (int j = 0; j < d; ++j) {
        Vec up(d, 0.0), dn(d, 0.0);
        up[j] = 1.0;
        dn[j] = -1.0;
        A.push_back(up);
        b.push_back(1.0);
        A.push_back(dn);
        b.push_back(1.0);
    }
    for (int j = 0; j < d; ++j) {
        for (double s : {1.0, -1.0}) {
            Vec c(d, 0.0);
            c[j] = s;
            LpResult r = solve_lp_max(A, b, c);
            if (r.feasible && r.objective > 0.5) return true;
        }
    }
    return false;
}

int rank_of_rows(const std::vector<const Vec*>& rows, int dim, double tol) {
    std::vector<Vec> M;
    for (const Vec* r : rows) M.push_back(*r);
    int rank = 0;
    for (int col = 0; col < dim && rank < static_cast<int>(M.size()); ++col) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < static_cast<int>(M.size()); ++r)
            if (std::abs(M[r][col]) > best) {
                best = std::abs(M[r][col]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        for (int r = rank + 1; r < static_cast<int>(M.size()); ++r) {
            double f = M[r][col] / M[rank][col];
            for (int cc = col; cc < dim; ++cc) M[r][cc] -= f * M[rank][cc];
        }
        ++rank;
    }
    return rank;
}

void subsets_rec(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (k <= n) subsets_rec(n, k, 0, cur, out);
    return out;
}

}  // namespace

void Arrangement::recompute_general_position(double det_tol) {
    const int n = static_cast<int>(hyperplanes.size());
    const int k = std::min(dim, n);
    general_position = true;
    for (const auto& sub : subsets(n, k)) {
        std::vector<const Vec*> rows;
        for (int i : sub) rows.push_back(&hyperplanes[i].normal);
        if (rank_of_rows(rows, dim, det_tol) < k) {
            general_position = false;
            return;
        }
    }
}

Arrangement sample_generic_arrangement(int dim, int n, std::uint64_t seed, bool central) {
    require(dim >= 1 && n >= 1, "sample_generic_arrangement: dim and n must be positive");
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto rng = make_rng(mix_seed(seed, attempt));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        Arrangement arr;
        arr.dim = dim;
        for (int i = 0; i < n; ++i) {
            Vec normal(dim);
            double nn = 0.0;
            do {
                for (double& v : normal) v = gauss(rng);
                nn = norm2(normal);
            } while (nn < 1e-6);
            for (double& v : normal) v /= nn;
            arr.hyperplanes.push_back({std::move(normal), central ? 0.0 : uni(rng)});
        }
        arr.recompute_general_position();
        if (arr.general_position) return arr;
    }
    throw std::runtime_error("sample_generic_arrangement: no general-position draw in 100 attempts");
}

RegionCounts count_regions_theorem4(int rank, int n_q) {
    require(rank >= 1 && n_q >= 1, "count_regions_theorem4: arguments must be positive");
    RegionCounts rc;
    for (int i = 0; i <= rank + 1; ++i) rc.printed += binomial(n_q, i);
    rc.printed -= binomial(n_q - 1, rank);
    for (int i = 0; i <= rank; ++i) rc.alpha += binomial(n_q - 1, i);
    rc.alpha *= 2;
    return rc;
}

std::pair<long long, long long> bounded_cells_formula(int dim, int n) {
    require(dim >= 1 && n >= 1, "bounded_cells_formula: arguments must be positive");
    return {binomial(n - 1, dim), binomial(n - 1, dim - 1)};
}

std::vector<std::vector<int>> CellEnumeration::sign_vectors() const {
    std::vector<std::vector<int>> out;
    for (const auto& c : cells) out.push_back(c.sign_vector);
    return out;
}

CellEnumeration enumerate_cells_oracle(const Arrangement& arr, int samples_per_cell_check,
                                       std::uint64_t seed) {
    const int n = static_cast<int>(arr.hyperplanes.size());
    require(n >= 1 && n <= 16, "enumerate_cells_oracle: 1 <= n_q <= 16 supported");
    if (!arr.general_position)
        throw std::runtime_error(
            "enumerate_cells_oracle: degenerate arrangement; re-perturb the hyperplanes");

    CellEnumeration out;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        std::vector<int> signs(n);
        for (int i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? 1 : -1;
        auto witness = strict_feasible_point(arr, signs);
        if (!witness) continue;
        CellInfo info;
        info.sign_vector = signs;
        info.witness = *witness;
        info.bounded = !recession_cone_nonzero(arr, signs);
        out.cells.push_back(std::move(info));
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const CellInfo& a, const CellInfo& b) { return a.sign_vector < b.sign_vector; });
    out.total = static_cast<long long>(out.cells.size());
    for (const auto& c : out.cells)
        if (c.bounded) ++out.bounded;

    // Sampled cross-check: random points must land in enumerated cells only.
    if (samples_per_cell_check > 0) {
        auto rng = make_rng(mix_seed(seed, 0xC3E11ULL));
        double r = 1.0;
        for (const auto& h : arr.hyperplanes) r = std::max(r, std::abs(h.offset));
        std::uniform_real_distribution<double> uni(-10.0 * r, 10.0 * r);
        auto vectors = out.sign_vectors();
        for (int s = 0; s < samples_per_cell_check; ++s) {
            Vec z(arr.dim);
            for (double& v : z) v = uni(rng);
            std::vector<int> signs(n);
            bool near_boundary = false;
            for (int i = 0; i < n; ++i) {
                double v = dot(arr.hyperplanes[i].normal, z) - arr.hyperplanes[i].offset;
                if (std::abs(v) < 1e-9) {
                    near_boundary = true;
                    break;
                }
                signs[i] = v > 0 ? 1 : -1;
            }
            if (near_boundary) continue;
            if (!std::binary_search(vectors.begin(), vectors.end(), signs))
                throw std::runtime_error("enumerate_cells_oracle: sampled cell missing from enumeration");
        }
    }
    return out;
}

std::vector<Vec> arrangement_vertices(const Arrangement& arr) {
    const int n = static_cast<int>(arr.hyperplanes.size());
    const int d = arr.dim;
    std::vector<Vec> verts;
    for (const auto& sub : subsets(n, d)) {
        Matrix A(d, d);
        Vec b(d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) A(r, c) = arr.hyperplanes[sub[r]].normal[c];
            b[r] = arr.hyperplanes[sub[r]].offset;
        }
        try {
            verts.push_back(solve_linear(A, b));
        } catch (const std::runtime_error&) {
            // singular subset: skip (excluded by general position anyway)
        }
    }
    return verts;
}

Vec lift_paraboloid(const Vec& x) {
    require(all_finite(x), "lift_paraboloid: point must be finite");
    Vec z = x;
    z.push_back(dot(x, x));
    return z;
}

void verify_region_code(const RegionCode& code, const ChannelModel& channel) {
    require(!code.pattern_map.empty(), "RegionCode: empty pattern map");
    require(code.pattern_map.size() == code.constellation.size(),
            "RegionCode: pattern/constellation size mismatch");
    code.frontend.validate();
    for (int m = 0; m < code.messages(); ++m) {
        Vec y = channel.h.matvec(code.constellation[m]);
        Bits pattern = apply_frontend(code.frontend, y);
        auto it = code.pattern_map.find(pattern);
        if (it == code.pattern_map.end() || it->second != m)
            throw std::runtime_error("RegionCode: noiseless separability violated at message " +
                                     std::to_string(m));
    }
}

namespace {

// Enumerates preimage points of the lifted surface and records one
// representative per realized ADC pattern. Returns patterns -> point.
std::map<Bits, Vec> sample_paraboloid_patterns(const FrontendSpec& fe, int rank, double reach,
                                               std::uint64_t seed, long long budget, int want) {
    std::map<Bits, Vec> reps;
    auto consider = [&](const Vec& x) {
        Vec w(fe.n_q);
        for (int i = 0; i < fe.n_q; ++i) {
            w[i] = fe.functions[i].eval(x);
            if (std::abs(w[i] - fe.thresholds[i]) < 1e-9) return;
        }
        reps.try_emplace(quantize(w, fe.thresholds), x);
    };
    if (rank == 1) {
        // Exact: comparator roots cut the line into intervals.
        Vec cuts{-reach, reach};
        for (int i = 0; i < fe.n_q; ++i) {
            double c2 = 0, c1 = 0, c0 = -fe.thresholds[i];
            for (const auto& [e, c] : fe.functions[i].terms) {
                if (e[0] == 2) c2 = c;
                else if (e[0] == 1) c1 = c;
                else c0 += c;
            }
            double disc = c1 * c1 - 4 * c2 * c0;
            if (c2 == 0.0) {
                if (c1 != 0.0) cuts.push_back(-c0 / c1);
            } else if (disc > 0) {
                double sq = std::sqrt(disc);
                cuts.push_back((-c1 - sq) / (2 * c2));
                cuts.push_back((-c1 + sq) / (2 * c2));
            }
        }
        std::sort(cuts.begin(), cuts.end());
        consider({cuts.front() - 1.0});
        for (size_t i = 1; i < cuts.size(); ++i)
            if (cuts[i] - cuts[i - 1] > 1e-12) consider({0.5 * (cuts[i - 1] + cuts[i])});
        consider({cuts.back() + 1.0});
        return reps;
    }
    // Grid pass, then seeded random fill.
    int per_axis = rank == 2 ? 193 : 41;
    std::vector<int> idx(rank, 0);
    bool done = false;
    while (!done) {
        Vec x(rank);
        for (int a = 0; a < rank; ++a) x[a] = -reach + 2.0 * reach * idx[a] / (per_axis - 1);
        consider(x);
        int a = rank - 1;
        while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
        done = a < 0;
        if (static_cast<int>(reps.size()) >= want) return reps;
    }
    auto rng = make_rng(mix_seed(seed, 0x9A7AB01ULL));
    std::uniform_real_distribution<double> uni(-reach, reach);
    for (long long s = 0; s < budget && static_cast<int>(reps.size()) < want; ++s) {
        Vec x(rank);
        for (double& v : x) v = uni(rng);
        consider(x);
    }
    return reps;
}

}  // namespace

RegionCode build_paraboloid_code(int rank, int n_q, std::uint64_t seed) {
    require(rank >= 1 && n_q >= 1, "build_paraboloid_code: rank and n_q must be positive");
    require(n_q <= 16, "build_paraboloid_code: n_q <= 16 supported");
    const int d = rank + 1;
    const long long want = count_regions_theorem4(rank, n_q).alpha;
    const double apex_height = 1.0;  // apex (0,..,0,1) lies strictly inside the bowl

    for (int attempt = 0; attempt < 32; ++attempt) {
        auto rng = make_rng(mix_seed(seed, 0xBA11ULL + attempt));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Arrangement arr;
        arr.dim = d;
        for (int i = 0; i < n_q; ++i) {
            Vec normal(d);
            while (true) {
                for (double& v : normal) v = gauss(rng);
                double nn = norm2(normal);
                if (nn < 1e-6) continue;
                for (double& v : normal) v /= nn;
                if (std::abs(normal[d - 1]) >= 0.05) break;  // keeps preimage spheres bounded
            }
            arr.hyperplanes.push_back({normal, apex_height * normal[d - 1]});
        }
        arr.recompute_general_position();
        if (!arr.general_position) continue;

        std::vector<Vec> coeffs;
        Vec thresholds;
        double reach = 1.0;
        for (const auto& h : arr.hyperplanes) {
            Vec row(h.normal.begin(), h.normal.end());  // rank linear coefs + isotropic
            coeffs.push_back(row);
            thresholds.push_back(h.offset);
            double ad = h.normal[d - 1];
            Vec ah(h.normal.begin(), h.normal.end() - 1);
            double center = norm2(ah) / (2.0 * std::abs(ad));
            double radius = std::sqrt(apex_height + dot(ah, ah) / (4.0 * ad * ad));
            reach = std::max(reach, center + radius + 1.0);
        }
        FrontendSpec fe = FrontendSpec::scenario_v(coeffs, thresholds);

        auto reps = sample_paraboloid_patterns(fe, rank, reach, mix_seed(seed, attempt), 2'000'000,
                                               static_cast<int>(want));
        if (static_cast<long long>(reps.size()) != want) continue;

        RegionCode code;
        code.frontend = fe;
        for (const auto& [pattern, x] : reps) {  // std::map: lexicographic message order
            code.pattern_map[pattern] = code.messages();
            code.constellation.push_back(x);
        }
        Matrix eye = Matrix::identity(rank);
        verify_region_code(code, ChannelModel::make(rank, rank, eye, 1.0));
        return code;
    }
    throw std::runtime_error("build_paraboloid_code: construction failed; re-seed");
}

long long count_shatter_formula(int rank, int d) {
    require(rank >= 1 && d >= 1, "count_shatter_formula: arguments must be positive");
    return binomial(rank + d, d);
}

Theorem3Bits theorem3_rate_bits(int rank, int d, int n_q) {
    double lg = std::log2(static_cast<double>(count_shatter_formula(rank, d)));
    return {std::max(static_cast<double>(n_q), lg), std::min(static_cast<double>(n_q), lg)};
}

namespace {

// Graded-lex exponent vectors with total degree <= d.
std::vector<std::vector<int>> monomial_exponents(int rank, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(rank, 0);
    for (int total = 0; total <= d; ++total) {
        std::function<void(int, int)> rec = [&](int axis, int remaining) {
            if (axis == rank - 1) {
                cur[axis] = remaining;
                out.push_back(cur);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                cur[axis] = e;
                rec(axis + 1, remaining - e);
            }
        };
        rec(0, total);
    }
    return out;
}

double eval_monomial(const std::vector<int>& exps, const Vec& x) {
    double v = 1.0;
    for (size_t a = 0; a < exps.size(); ++a)
        for (int r = 0; r < exps[a]; ++r) v *= x[a];
    return v;
}

std::vector<Vec> shatter_points(int rank, long long ell, std::uint64_t seed, int attempt) {
    auto rng = make_rng(mix_seed(seed, 0x5AA77E5ULL + attempt));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Vec> pts;
    for (long long t = 0; t < ell; ++t) {
        Vec x(rank);
        for (double& v : x) v = uni(rng);
        pts.push_back(x);
    }
    return pts;
}

}  // namespace

RegionCode build_shattering_code(int rank, int d, int n_q, std::uint64_t seed) {
    require(rank >= 1 && d >= 1 && n_q >= 1, "build_shattering_code: arguments must be positive");
    const long long ell = count_shatter_formula(rank, d);
    if (ell > (1LL << n_q))
        throw std::invalid_argument("build_shattering_code: insufficient ADCs, need n_q >= ceil(log2 " +
                                    std::to_string(ell) + ")");
    auto exps = monomial_exponents(rank, d);
    require(static_cast<long long>(exps.size()) == ell, "monomial count mismatch");

    for (int attempt = 0; attempt < 32; ++attempt) {
        auto pts = shatter_points(rank, ell, seed, attempt);
        Matrix feat(static_cast<int>(ell), static_cast<int>(ell));
        for (int t = 0; t < ell; ++t)
            for (int m = 0; m < ell; ++m) feat(t, m) = eval_monomial(exps[m], pts[t]);

        std::vector<MultivariatePolynomial> functions;
        bool ok = true;
        // ADC j+1 (leftmost in pattern strings) carries bit n_q-1-j of the
        // 1-based message index.
        for (int j = 0; j < n_q && ok; ++j) {
            const int bit = n_q - 1 - j;
            Vec target(ell);
            for (long long t = 1; t <= ell; ++t) target[t - 1] = ((t >> bit) & 1) ? 1.0 : -1.0;
            Vec coef;
            try {
                coef = solve_linear(feat, target);
            } catch (const std::runtime_error&) {
                ok = false;
                break;
            }
            MultivariatePolynomial f(rank);
            for (int m = 0; m < ell; ++m) f.add_term(exps[m], coef[m]);
            for (long long t = 1; t <= ell; ++t) {
                double v = f.eval(pts[t - 1]);
                if (std::abs(v - target[t - 1]) > 1e-6 || v * target[t - 1] <= 0.0) {
                    ok = false;  // ill-conditioned draw
                    break;
                }
            }
            functions.push_back(std::move(f));
        }
        if (!ok) continue;

        RegionCode code;
        code.frontend = FrontendSpec::scenario_iv(std::move(functions), Vec(n_q, 0.0), d);
        for (long long t = 1; t <= ell; ++t) {
            Bits pattern(n_q);
            for (int j = 0; j < n_q; ++j) pattern[j] = (t >> (n_q - 1 - j)) & 1;
            code.pattern_map[pattern] = static_cast<int>(t - 1);
            code.constellation.push_back(pts[t - 1]);
        }
        Matrix eye = Matrix::identity(rank);
        verify_region_code(code, ChannelModel::make(rank, rank, eye, 1.0));
        return code;
    }
    throw std::runtime_error("build_shattering_code: feature matrix singular; re-seed");
}

bool full_shattering_check(int rank, int d, std::uint64_t seed, int ell_cap) {
    const long long ell = count_shatter_formula(rank, d);
    require(ell <= ell_cap && ell <= 20, "full_shattering_check: ell too large for 2^ell enumeration");
    auto exps = monomial_exponents(rank, d);
    auto pts = shatter_points(rank, ell, seed, 0);
    Matrix feat(static_cast<int>(ell), static_cast<int>(ell));
    for (int t = 0; t < ell; ++t)
        for (int m = 0; m < ell; ++m) feat(t, m) = eval_monomial(exps[m], pts[t]);
    for (long long mask = 0; mask < (1LL << ell); ++mask) {
        Vec target(ell);
        for (long long t = 0; t < ell; ++t) target[t] = (mask >> t) & 1 ? 1.0 : -1.0;
        Vec coef;
        try {
            coef = solve_linear(feat, target);
        } catch (const std::runtime_error&) {
            return false;
        }
        for (long long t = 0; t < ell; ++t) {
            double v = 0.0;
            for (int m = 0; m < ell; ++m) v += coef[m] * feat(static_cast<int>(t), m);
            if (v * target[t] <= 0.0) return false;
        }
    }
    return true;
}

RegionCode fig1_code(char variant) {
    RegionCode code;
    if (variant == 'a') {
        code.constellation = {{-0.5}, {0.5}, {1.5}};
        code.frontend = FrontendSpec::scenario_ii({{1.0}, {1.0}}, {0.0, 1.0});
    } else if (variant == 'b') {
        code.constellation = {{-1.5}, {-0.5}, {0.5}, {1.5}};
        code.frontend = FrontendSpec::scenario_v({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 1.0});
    } else {
        throw std::invalid_argument("fig1_code: variant must be 'a' or 'b'");
    }
    for (int m = 0; m < code.messages(); ++m)
        code.pattern_map[apply_frontend(code.frontend, code.constellation[m])] = m;
    verify_region_code(code, ChannelModel::siso());
    return code;
}

}  // namespace qmimo
