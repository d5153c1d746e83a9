#include "qmimo/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qmimo/linalg.hpp"

namespace qmimo {

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::I: return "I";
        case Scenario::II: return "II";
        case Scenario::III: return "III";
        case Scenario::IV: return "IV";
        case Scenario::V: return "V";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "I") return Scenario::I;
    if (name == "II") return Scenario::II;
    if (name == "III") return Scenario::III;
    if (name == "IV") return Scenario::IV;
    if (name == "V") return Scenario::V;
    throw std::invalid_argument("unknown scenario tag: " + name);
}

namespace {

bool is_projection(const MultivariatePolynomial& p, int axis) {
    if (p.terms.size() != 1) return false;
    const auto& [e, c] = *p.terms.begin();
    if (c != 1.0) return false;
    for (int k = 0; k < p.dim; ++k)
        if (e[k] != (k == axis ? 1 : 0)) return false;
    return true;
}

bool is_linear_homogeneous(const MultivariatePolynomial& p) {
    for (const auto& [e, c] : p.terms) {
        int total = 0;
        for (int k : e) total += k;
        if (total != 1) return false;
    }
    return true;
}

// Member of span{Y_1..Y_d, sum_k Y_k^2}: first-degree monomials plus pure
// squares sharing one coefficient across all d axes.
bool is_scenario_v_member(const MultivariatePolynomial& p) {
    double iso = 0.0;
    bool iso_set = false;
    int squares_seen = 0;
    for (const auto& [e, c] : p.terms) {
        int total = 0, nonzero = 0, sq_axis = -1;
        for (int k = 0; k < p.dim; ++k) {
            total += e[k];
            if (e[k] != 0) {
                ++nonzero;
                if (e[k] == 2) sq_axis = k;
            }
        }
        if (total == 1) continue;
        if (total == 2 && nonzero == 1 && sq_axis >= 0) {
            if (iso_set && c != iso) return false;
            iso = c;
            iso_set = true;
            ++squares_seen;
            continue;
        }
        return false;  // constant, cross term, or degree > 2
    }
    if (iso_set && squares_seen != p.dim) return false;
    return true;
}

}  // namespace

bool validates_as(const FrontendSpec& spec, Scenario target, int degree_bound) {
    switch (target) {
        case Scenario::I:
            if (spec.n_q != spec.dim) return false;
            for (int i = 0; i < spec.n_q; ++i)
                if (!is_projection(spec.functions[i], i)) return false;
            return true;
        case Scenario::II:
            return std::all_of(spec.functions.begin(), spec.functions.end(), is_linear_homogeneous);
        case Scenario::V:
            return std::all_of(spec.functions.begin(), spec.functions.end(), is_scenario_v_member);
        case Scenario::IV:
            return std::all_of(spec.functions.begin(), spec.functions.end(),
                               [&](const auto& f) { return f.degree() <= degree_bound; });
        case Scenario::III:
            return true;
    }
    return false;
}

void FrontendSpec::validate() const {
    require(n_q >= 1, "FrontendSpec: n_q must be positive");
    require(dim >= 1, "FrontendSpec: dim must be positive");
    require(static_cast<int>(functions.size()) == n_q, "FrontendSpec: need n_q functions");
    require(static_cast<int>(thresholds.size()) == n_q, "FrontendSpec: need n_q thresholds");
    require(all_finite(thresholds), "FrontendSpec: thresholds must be finite");
    for (const auto& f : functions)
        require(f.dim == dim, "FrontendSpec: function dimension mismatch");
    switch (scenario) {
        case Scenario::I:
            require(validates_as(*this, Scenario::I), "Scenario I requires n_q = n_r coordinate projections");
            break;
        case Scenario::II:
            require(validates_as(*this, Scenario::II), "Scenario II requires homogeneous linear functions");
            break;
        case Scenario::V:
            require(validates_as(*this, Scenario::V),
                    "Scenario V functions must lie in span{Y_1..Y_d, sum Y_k^2}");
            break;
        case Scenario::IV:
            require(degree_bound >= 1, "Scenario IV requires degree_bound >= 1");
            require(validates_as(*this, Scenario::IV, degree_bound),
                    "Scenario IV functions must have degree <= degree_bound");
            break;
        case Scenario::III:
            break;
    }
}

FrontendSpec FrontendSpec::scenario_i(int n_r, Vec thresholds) {
    FrontendSpec s;
    s.scenario = Scenario::I;
    s.n_q = n_r;
    s.dim = n_r;
    for (int i = 0; i < n_r; ++i) s.functions.push_back(MultivariatePolynomial::projection(n_r, i));
    s.thresholds = std::move(thresholds);
    s.validate();
    return s;
}

FrontendSpec FrontendSpec::scenario_ii(const std::vector<Vec>& v, Vec thresholds) {
    FrontendSpec s;
    s.scenario = Scenario::II;
    s.n_q = static_cast<int>(v.size());
    require(s.n_q >= 1, "scenario_ii: need at least one combiner");
    s.dim = static_cast<int>(v[0].size());
    for (const auto& row : v) s.functions.push_back(MultivariatePolynomial::linear_plus_isotropic(row, 0.0));
    s.thresholds = std::move(thresholds);
    s.validate();
    return s;
}

FrontendSpec FrontendSpec::scenario_v(const std::vector<Vec>& coeffs, Vec thresholds) {
    FrontendSpec s;
    s.scenario = Scenario::V;
    s.n_q = static_cast<int>(coeffs.size());
    require(s.n_q >= 1, "scenario_v: need at least one function");
    s.dim = static_cast<int>(coeffs[0].size()) - 1;
    require(s.dim >= 1, "scenario_v: coefficient rows need n_r + 1 entries");
    for (const auto& row : coeffs) {
        require(static_cast<int>(row.size()) == s.dim + 1, "scenario_v: coefficient row length mismatch");
        Vec lin(row.begin(), row.end() - 1);
        s.functions.push_back(MultivariatePolynomial::linear_plus_isotropic(lin, row.back()));
    }
    s.thresholds = std::move(thresholds);
    s.validate();
    return s;
}

FrontendSpec FrontendSpec::scenario_iv(std::vector<MultivariatePolynomial> fs, Vec thresholds,
                                       int degree_bound) {
    FrontendSpec s;
    s.scenario = Scenario::IV;
    s.n_q = static_cast<int>(fs.size());
    require(s.n_q >= 1, "scenario_iv: need at least one function");
    s.dim = fs[0].dim;
    s.functions = std::move(fs);
    s.thresholds = std::move(thresholds);
    s.degree_bound = degree_bound;
    s.validate();
    return s;
}

FrontendSpec FrontendSpec::scenario_iii(std::vector<MultivariatePolynomial> fs, Vec thresholds) {
    FrontendSpec s;
    s.scenario = Scenario::III;
    s.n_q = static_cast<int>(fs.size());
    require(s.n_q >= 1, "scenario_iii: need at least one function");
    s.dim = fs[0].dim;
    s.functions = std::move(fs);
    s.thresholds = std::move(thresholds);
    s.validate();
    return s;
}

Bits quantize(const Vec& w, const Vec& t) {
    require(w.size() == t.size(), "quantize: length mismatch");
    Bits b(w.size());
    for (size_t j = 0; j < w.size(); ++j) b[j] = w[j] > t[j] ? 1 : 0;
    return b;
}

Bits apply_frontend(const FrontendSpec& spec, const Vec& y) {
    Vec w(spec.n_q);
    for (int i = 0; i < spec.n_q; ++i) w[i] = spec.functions[i].eval(y);
    return quantize(w, spec.thresholds);
}

int Partition1D::num_labels() const {
    int m = 0;
    for (int l : labels) m = std::max(m, l + 1);
    return m;
}

void Partition1D::validate() const {
    require(labels.size() == boundaries.size() + 1, "Partition1D: need #boundaries + 1 labels");
    for (size_t i = 1; i < boundaries.size(); ++i)
        require(boundaries[i] > boundaries[i - 1], "Partition1D: boundaries must be strictly increasing");
    int m = num_labels();
    std::vector<bool> seen(m, false);
    for (int l : labels) {
        require(l >= 0 && l < m, "Partition1D: label out of range");
        seen[l] = true;
    }
    for (bool s : seen) require(s, "Partition1D: every symbol must appear at least once");
}

namespace {

// Real roots of c2 y^2 + c1 y + c0 = 0, structural on the stored coefficients.
void quadratic_roots(double c2, double c1, double c0, Vec& out) {
    if (c2 == 0.0) {
        if (c1 != 0.0) out.push_back(-c0 / c1);
        return;
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return;
    if (disc == 0.0) {
        out.push_back(-c1 / (2.0 * c2));
        return;
    }
    double sq = std::sqrt(disc);
    // Citardauq form for the small-magnitude root avoids cancellation.
    double q = -0.5 * (c1 + (c1 >= 0 ? sq : -sq));
    out.push_back(q / c2);
    out.push_back(c0 != 0.0 ? c0 / q : -c1 / c2 - q / c2);
}

}  // namespace

Partition1D induced_partition_1d(const FrontendSpec& spec, double lo, double hi) {
    spec.validate();
    require(lo < hi, "induced_partition_1d: empty domain");
    if (spec.dim != 1) throw std::domain_error("induced_partition_1d: scalar input required");
    Vec roots;
    for (int i = 0; i < spec.n_q; ++i) {
        const auto& f = spec.functions[i];
        if (f.degree() > 2)
            throw std::domain_error("induced_partition_1d: comparator degree > 2 unsupported");
        double c2 = 0.0, c1 = 0.0, c0 = -spec.thresholds[i];
        for (const auto& [e, c] : f.terms) {
            if (e[0] == 2) c2 = c;
            else if (e[0] == 1) c1 = c;
            else c0 += c;
        }
        quadratic_roots(c2, c1, c0, roots);
    }
    std::erase_if(roots, [&](double r) { return r < lo || r > hi; });
    std::sort(roots.begin(), roots.end());
    Vec dedup;
    for (double r : roots)
        if (dedup.empty() || r - dedup.back() > 1e-12) dedup.push_back(r);

    Partition1D part;
    part.boundaries = dedup;
    const int m = static_cast<int>(dedup.size()) + 1;
    std::map<Bits, int> label_of;
    for (int i = 0; i < m; ++i) {
        double rep;
        if (dedup.empty()) rep = 0.5 * (lo + hi);
        else if (i == 0) rep = dedup.front() - 1.0;
        else if (i == m - 1) rep = dedup.back() + 1.0;
        else rep = 0.5 * (dedup[i - 1] + dedup[i]);
        Bits pattern = apply_frontend(spec, {rep});
        auto [it, inserted] = label_of.try_emplace(pattern, static_cast<int>(label_of.size()));
        part.labels.push_back(it->second);
    }
    part.validate();
    return part;
}

int LabeledPartitionRd::find_cell(const Vec& y, double boundary_tol) const {
    require(static_cast<int>(y.size()) == dim, "find_cell: point dimension mismatch");
    int found = -1;
    for (size_t c = 0; c < cells.size(); ++c) {
        bool inside = true;
        for (const auto& [g, sgn] : cells[c].constraints) {
            double v = g.eval(y);
            if ((sgn > 0 && v <= 0.0) || (sgn < 0 && v >= 0.0)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            if (found >= 0) throw std::domain_error("find_cell: point in multiple cells");
            found = static_cast<int>(c);
        }
    }
    if (found < 0) throw std::domain_error("find_cell: point on a partition boundary");
    for (const auto& [g, sgn] : cells[found].constraints) {
        double gn = norm2(g.gradient(y));
        if (gn == 0.0) continue;
        if (std::abs(g.eval(y)) / gn < boundary_tol)
            throw std::domain_error("find_cell: boundary-ambiguous point");
    }
    return found;
}

LabeledPartitionRd LabeledPartitionRd::rectangular(const std::vector<Vec>& axis_boundaries) {
    LabeledPartitionRd part;
    part.dim = static_cast<int>(axis_boundaries.size());
    require(part.dim >= 1, "rectangular: need at least one axis");
    std::vector<int> counts;
    for (const auto& b : axis_boundaries) {
        for (size_t i = 1; i < b.size(); ++i)
            require(b[i] > b[i - 1], "rectangular: axis boundaries must be strictly increasing");
        counts.push_back(static_cast<int>(b.size()) + 1);
    }
    int total = 1;
    for (int c : counts) total *= c;
    for (int k = 0; k < total; ++k) {
        // Row-major: first axis most significant.
        std::vector<int> idx(part.dim);
        int rem = k;
        for (int a = part.dim - 1; a >= 0; --a) {
            idx[a] = rem % counts[a];
            rem /= counts[a];
        }
        CellRd cell;
        for (int a = 0; a < part.dim; ++a) {
            const Vec& b = axis_boundaries[a];
            if (idx[a] > 0) {
                auto g = MultivariatePolynomial::projection(part.dim, a);
                g.add_term(std::vector<int>(part.dim, 0), -b[idx[a] - 1]);
                cell.constraints.emplace_back(std::move(g), +1);
            }
            if (idx[a] < counts[a] - 1) {
                auto g = MultivariatePolynomial::projection(part.dim, a);
                g.add_term(std::vector<int>(part.dim, 0), -b[idx[a]]);
                cell.constraints.emplace_back(std::move(g), -1);
            }
        }
        part.cells.push_back(std::move(cell));
    }
    return part;
}

double distance_sign_function(const LabeledPartitionRd& part, int j, const Vec& y) {
    int bits_needed = 0;
    while ((1LL << bits_needed) < static_cast<long long>(part.cells.size())) ++bits_needed;
    require(j >= 0 && j < std::max(1, bits_needed), "distance_sign_function: bit index out of range");
    int k0 = part.find_cell(y);  // zero-based: the binary representation of (index - 1)
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& [g, sgn] : part.cells[k0].constraints) {
        double gn = norm2(g.gradient(y));
        if (gn == 0.0) continue;
        dist = std::min(dist, std::abs(g.eval(y)) / gn);
    }
    if (!std::isfinite(dist)) dist = 1.0;  // unconstrained cell: sign carries the information
    return ((k0 >> j) & 1) ? dist : -dist;
}

namespace {

// All n+1 Bernstein basis values at u, by the stable degree-raising recurrence.
Vec bernstein_basis(int n, double u) {
    Vec b(n + 1, 0.0);
    b[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        for (int k = i; k >= 1; --k) b[k] = (1.0 - u) * b[k] + u * b[k - 1];
        b[0] *= (1.0 - u);
    }
    return b;
}

// Monomial coefficients (in u over [0,1]) of sum_k c_k C(n,k) u^k (1-u)^{n-k},
// in long double. Ill-conditioned at high degree; metrics never use this path.
std::vector<long double> bernstein_to_monomial_u(const Vec& c, int n) {
    std::vector<long double> binom(n + 1);
    binom[0] = 1.0L;
    for (int k = 1; k <= n; ++k) binom[k] = binom[k - 1] * (n - k + 1) / k;
    std::vector<long double> out(n + 1, 0.0L);
    for (int m = 0; m <= n; ++m) {
        long double s = 0.0L;
        // coefficient of u^m: sum_{k<=m} c_k C(n,k) C(n-k, m-k) (-1)^{m-k}
        for (int k = 0; k <= m; ++k) {
            long double cnk = binom[k];
            long double cnkmk = 1.0L;
            for (int t = 1; t <= m - k; ++t) cnkmk = cnkmk * (n - k - t + 1) / t;
            long double term = (long double)c[k] * cnk * cnkmk;
            s += ((m - k) % 2 == 0) ? term : -term;
        }
        out[m] = s;
    }
    return out;
}

// Rewrites a polynomial in u = y/(2L) + 1/2 as a polynomial in y.
std::vector<long double> substitute_affine(const std::vector<long double>& ucoef, double L) {
    int n = static_cast<int>(ucoef.size()) - 1;
    std::vector<long double> ycoef(n + 1, 0.0L);
    long double inv2L = 1.0L / (2.0L * L);
    for (int m = 0; m <= n; ++m) {
        if (ucoef[m] == 0.0L) continue;
        // u^m = sum_p C(m,p) (y/(2L))^p (1/2)^{m-p}
        long double cmp = 1.0L;
        for (int p = 0; p <= m; ++p) {
            long double powl = 1.0L;
            for (int t = 0; t < p; ++t) powl *= inv2L;
            long double half = 1.0L;
            for (int t = 0; t < m - p; ++t) half *= 0.5L;
            ycoef[p] += ucoef[m] * cmp * powl * half;
            cmp = cmp * (m - p) / (p + 1);
        }
    }
    return ycoef;
}

}  // namespace

BernsteinResult bernstein_approximate(const std::function<double(const Vec&)>& f, int dim, double L,
                                      int degree, int grid_per_axis) {
    require(degree >= 1, "bernstein_approximate: degree must be >= 1");
    require(L > 0.0, "bernstein_approximate: L must be positive");
    require(grid_per_axis >= 2, "bernstein_approximate: need at least 2 grid points per axis");
    if (dim < 1 || dim > 2) throw std::domain_error("bernstein_approximate: dim <= 2 supported");

    const int n = degree;
    auto node = [&](int k) { return -L + 2.0 * L * k / n; };

    BernsteinResult res;
    if (dim == 1) {
        Vec c(n + 1);
        for (int k = 0; k <= n; ++k) c[k] = f({node(k)});
        auto eval = [&](double y) {
            double u = (y + L) / (2.0 * L);
            Vec b = bernstein_basis(n, u);
            double s = 0.0;
            for (int k = 0; k <= n; ++k) s += c[k] * b[k];
            return s;
        };
        auto ycoef = substitute_affine(bernstein_to_monomial_u(c, n), L);
        res.poly = MultivariatePolynomial(1);
        for (int p = 0; p <= n; ++p) res.poly.add_term({p}, static_cast<double>(ycoef[p]));

        long long agree = 0;
        for (int i = 0; i < grid_per_axis; ++i) {
            double y = -L + 2.0 * L * i / (grid_per_axis - 1);
            double fv = f({y}), bv = eval(y);
            res.sup_error = std::max(res.sup_error, std::abs(bv - fv));
            int sf = (fv > 0) - (fv < 0), sb = (bv > 0) - (bv < 0);
            if (sf == sb) ++agree;
        }
        res.sign_agreement = static_cast<double>(agree) / grid_per_axis;
        return res;
    }

    // dim == 2: tensor product over the lattice of nodes.
    std::vector<Vec> c(n + 1, Vec(n + 1));
    for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2) c[k1][k2] = f({node(k1), node(k2)});
    auto eval = [&](double y1, double y2) {
        Vec b1 = bernstein_basis(n, (y1 + L) / (2.0 * L));
        Vec b2 = bernstein_basis(n, (y2 + L) / (2.0 * L));
        double s = 0.0;
        for (int k1 = 0; k1 <= n; ++k1) {
            double row = 0.0;
            for (int k2 = 0; k2 <= n; ++k2) row += c[k1][k2] * b2[k2];
            s += b1[k1] * row;
        }
        return s;
    };
    // Convert axis 2 per row, then axis 1 per column.
    std::vector<std::vector<long double>> rows(n + 1);
    for (int k1 = 0; k1 <= n; ++k1) rows[k1] = substitute_affine(bernstein_to_monomial_u(c[k1], n), L);
    res.poly = MultivariatePolynomial(2);
    for (int p2 = 0; p2 <= n; ++p2) {
        Vec col(n + 1);
        for (int k1 = 0; k1 <= n; ++k1) col[k1] = static_cast<double>(rows[k1][p2]);
        auto ycol = substitute_affine(bernstein_to_monomial_u(col, n), L);
        for (int p1 = 0; p1 <= n; ++p1) res.poly.add_term({p1, p2}, static_cast<double>(ycol[p1]));
    }
    long long agree = 0, total = 0;
    for (int i = 0; i < grid_per_axis; ++i)
        for (int j = 0; j < grid_per_axis; ++j) {
            double y1 = -L + 2.0 * L * i / (grid_per_axis - 1);
            double y2 = -L + 2.0 * L * j / (grid_per_axis - 1);
            double fv = f({y1, y2}), bv = eval(y1, y2);
            res.sup_error = std::max(res.sup_error, std::abs(bv - fv));
            int sf = (fv > 0) - (fv < 0), sb = (bv > 0) - (bv < 0);
            if (sf == sb) ++agree;
            ++total;
        }
    res.sign_agreement = static_cast<double>(agree) / total;
    return res;
}

double choose_truncation_L(double gamma_y, int n_q, double eps) {
    require(gamma_y > 0.0 && n_q > 0 && eps > 0.0, "choose_truncation_L: arguments must be positive");
    return gamma_y * n_q / eps;
}

}  // namespace qmimo
