#include "qmimo/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace qmimo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// P(lo < sigma*x + N < hi), N ~ N(0,1), evaluated in the tail-stable branch.
double gaussian_interval_prob(double lo, double hi, double mean) {
    double a = lo == -kInf ? -kInf : lo - mean;
    double b = hi == kInf ? kInf : hi - mean;
    if (a == -kInf && b == kInf) return 1.0;
    if (a == -kInf) return normal_cdf(b);
    if (b == kInf) return normal_cdf(-a);
    if (a + b > 0.0) return 0.5 * (std::erfc(a * M_SQRT1_2) - std::erfc(b * M_SQRT1_2));
    return 0.5 * (std::erfc(-b * M_SQRT1_2) - std::erfc(-a * M_SQRT1_2));
}

}  // namespace

void InducedDMC::validate(double row_tol) const {
    for (int j = 0; j < transition.rows; ++j) {
        double s = 0.0;
        for (int l = 0; l < transition.cols; ++l) {
            double t = transition(j, l);
            require(t >= 0.0 && t <= 1.0 + 1e-12, "InducedDMC: entries must lie in [0, 1]");
            s += t;
        }
        require(std::abs(s - 1.0) <= row_tol, "InducedDMC: rows must sum to 1");
    }
}

InducedDMC dmc_from_partition(double sigma, const Vec& points, const Partition1D& part) {
    part.validate();
    require(all_finite(points), "dmc_from_partition: points must be finite");
    const int m = part.intervals();
    const int labels = part.num_labels();
    InducedDMC dmc;
    dmc.transition = Matrix(static_cast<int>(points.size()), labels);
    for (size_t j = 0; j < points.size(); ++j) {
        double mean = sigma * points[j];
        for (int i = 0; i < m; ++i) {
            double lo = i == 0 ? -kInf : part.boundaries[i - 1];
            double hi = i == m - 1 ? kInf : part.boundaries[i];
            dmc.transition(static_cast<int>(j), part.labels[i]) += gaussian_interval_prob(lo, hi, mean);
        }
    }
    return dmc;
}

double mutual_information(const InducedDMC& dmc, const Vec& probs) {
    const Matrix& T = dmc.transition;
    require(static_cast<int>(probs.size()) == T.rows, "mutual_information: shape mismatch");
    Vec q(T.cols, 0.0);
    for (int j = 0; j < T.rows; ++j)
        for (int l = 0; l < T.cols; ++l) q[l] += probs[j] * T(j, l);
    double mi = 0.0;
    for (int j = 0; j < T.rows; ++j) {
        if (probs[j] <= 0.0) continue;
        for (int l = 0; l < T.cols; ++l) {
            double t = T(j, l);
            if (t <= 0.0) continue;
            mi += probs[j] * t * std::log2(t / q[l]);
        }
    }
    return std::max(0.0, mi);
}

namespace {

struct FixedPriceResult {
    Vec p;
    double mi_nats = 0.0;
    double avg_power = 0.0;
    int iterations = 0;
};

// Blahut-Arimoto at a fixed power price (nats). The maximized objective
// I(p) - price * E[cost] must be non-decreasing; violation is a hard error.
// The output marginal is clamped away from zero: a symbol currently carrying
// no mass would otherwise make the divergence infinite.
FixedPriceResult ba_fixed_price(const Matrix& T, const Vec& cost, double price, double tol_bits,
                                int max_iter, const Vec& p_init) {
    const int J = T.rows, L = T.cols;
    const double tol_nats = tol_bits * M_LN2;
    const double q_floor = 1e-300;
    FixedPriceResult res;
    res.p = p_init;
    Vec q(L), d(J);
    double prev_obj = -kInf;
    for (int it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        std::fill(q.begin(), q.end(), 0.0);
        for (int j = 0; j < J; ++j)
            for (int l = 0; l < L; ++l) q[l] += res.p[j] * T(j, l);
        double obj = 0.0, dmax = -kInf;
        for (int j = 0; j < J; ++j) {
            double dj = 0.0;
            for (int l = 0; l < L; ++l) {
                double t = T(j, l);
                if (t > 0.0) dj += t * std::log(t / std::max(q[l], q_floor));
            }
            d[j] = dj - price * cost[j];
            obj += res.p[j] * d[j];
            dmax = std::max(dmax, d[j]);
        }
        if (obj < prev_obj - 1e-9 * std::max(1.0, std::abs(prev_obj)))
            throw std::logic_error("blahut_arimoto: objective decreased across iterations");
        prev_obj = obj;
        if (dmax - obj < tol_nats) break;
        double norm = 0.0;
        for (int j = 0; j < J; ++j) {
            res.p[j] *= std::exp(d[j] - dmax);
            norm += res.p[j];
        }
        for (int j = 0; j < J; ++j) res.p[j] /= norm;
    }
    std::fill(q.begin(), q.end(), 0.0);
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l) q[l] += res.p[j] * T(j, l);
    res.mi_nats = 0.0;
    res.avg_power = 0.0;
    for (int j = 0; j < J; ++j) {
        res.avg_power += res.p[j] * cost[j];
        if (res.p[j] <= 0.0) continue;
        for (int l = 0; l < L; ++l) {
            double t = T(j, l);
            if (t > 0.0) res.mi_nats += res.p[j] * t * std::log(t / std::max(q[l], q_floor));
        }
    }
    if (!std::isfinite(res.mi_nats))
        throw std::logic_error("blahut_arimoto: non-finite mutual information");
    return res;
}

}  // namespace

BAResult blahut_arimoto(const InducedDMC& dmc, const Vec& candidate_points, double power_limit,
                        BAOptions opts) {
    const Matrix& T = dmc.transition;
    require(static_cast<int>(candidate_points.size()) == T.rows,
            "blahut_arimoto: candidate count must match DMC rows");
    require(T.rows >= 1, "blahut_arimoto: empty candidate set");
    Vec cost(T.rows);
    double min_cost = kInf;
    for (int j = 0; j < T.rows; ++j) {
        cost[j] = candidate_points[j] * candidate_points[j];
        min_cost = std::min(min_cost, cost[j]);
    }
    if (min_cost > power_limit + 1e-12)
        throw std::invalid_argument("blahut_arimoto: no candidate satisfies the power limit");

    const Vec uniform(T.rows, 1.0 / T.rows);
    auto blend = [&](const Vec& p) {
        Vec out(p.size());
        for (size_t j = 0; j < p.size(); ++j) out[j] = 0.9 * p[j] + 0.1 * uniform[j];
        return out;
    };

    // Bisection probes run at a looser tolerance and capped iterations; the
    // winner gets one full-tolerance refit. On a finite grid the power is a
    // step function of the price, so when the budget falls inside a support
    // switch the two bracketing solutions are time-shared to power equality
    // (their Lagrangian values tie, so the mixture attains the optimum).
    const double probe_tol = std::max(opts.tol, 1e-7);
    const int probe_iter = std::min(opts.max_iter, 800);
    int total_iters = 0;
    FixedPriceResult best = ba_fixed_price(T, cost, 0.0, probe_tol, probe_iter, uniform);
    total_iters += best.iterations;
    double price = 0.0;
    if (best.avg_power > power_limit + 1e-9) {
        double lo = 0.0, hi = 1.0;
        FixedPriceResult lo_res = best;
        FixedPriceResult hi_res = best;
        for (int grow = 0; grow < 60; ++grow) {
            hi_res = ba_fixed_price(T, cost, hi, probe_tol, probe_iter, blend(hi_res.p));
            total_iters += hi_res.iterations;
            if (hi_res.avg_power <= power_limit) break;
            lo = hi;
            lo_res = hi_res;
            hi *= 2.0;
        }
        FixedPriceResult probe = hi_res;
        for (int it = 0; it < opts.bisect_iters; ++it) {
            if (hi_res.avg_power >= power_limit * (1.0 - 1e-6) - 1e-12) break;
            double mid = 0.5 * (lo + hi);
            probe = ba_fixed_price(T, cost, mid, probe_tol, probe_iter, blend(probe.p));
            total_iters += probe.iterations;
            if (probe.avg_power > power_limit) {
                lo = mid;
                lo_res = probe;
            } else {
                hi = mid;
                hi_res = probe;
            }
        }
        price = hi;
        best = ba_fixed_price(T, cost, price, opts.tol, opts.max_iter, blend(hi_res.p));
        total_iters += best.iterations;
        if (best.avg_power > power_limit * (1.0 + 1e-9) + 1e-12) best = hi_res;
        if (best.avg_power < power_limit * (1.0 - 1e-9) &&
            lo_res.avg_power > best.avg_power + 1e-15) {
            double lambda = (power_limit - best.avg_power) / (lo_res.avg_power - best.avg_power);
            lambda = std::clamp(lambda, 0.0, 1.0);
            FixedPriceResult mix;
            mix.p.resize(T.rows);
            for (int j = 0; j < T.rows; ++j)
                mix.p[j] = lambda * lo_res.p[j] + (1.0 - lambda) * best.p[j];
            // One zero-step evaluation computes the mixture's exact MI/power.
            mix = ba_fixed_price(T, cost, price, 1e12, 1, mix.p);
            ++total_iters;
            if (mix.mi_nats > best.mi_nats && mix.avg_power <= power_limit * (1.0 + 1e-9) + 1e-12)
                best = mix;
        }
    } else if (probe_tol > opts.tol) {
        best = ba_fixed_price(T, cost, 0.0, opts.tol, opts.max_iter, blend(best.p));
        total_iters += best.iterations;
    }

    BAResult out;
    out.capacity_bits = best.mi_nats / M_LN2;
    out.iterations = total_iters;
    out.avg_power = best.avg_power;
    out.price = price;
    double kept = 0.0;
    for (int j = 0; j < T.rows; ++j) {
        if (best.p[j] > 1e-12) {
            out.dist.points.push_back({candidate_points[j]});
            out.dist.probs.push_back(best.p[j]);
            kept += best.p[j];
        }
    }
    for (double& p : out.dist.probs) p /= kept;
    return out;
}

std::string family_name(Family f) { return f == Family::Linear ? "linear" : "quadratic-V"; }

namespace {

std::vector<int> family_labels(Family family, int n_qi, bool all_quadratic) {
    if (family == Family::Linear) {
        std::vector<int> labels(n_qi + 1);
        for (int i = 0; i <= n_qi; ++i) labels[i] = i;
        return labels;
    }
    if (!all_quadratic) {
        std::vector<int> labels(2 * n_qi);
        for (int i = 0; i < 2 * n_qi; ++i) labels[i] = i;
        return labels;
    }
    // All-quadratic comparators cannot separate y -> +-inf: ends share.
    std::vector<int> labels(2 * n_qi + 1);
    for (int i = 0; i < 2 * n_qi; ++i) labels[i] = i;
    labels[2 * n_qi] = 0;
    return labels;
}

struct Evaluator {
    double sigma;
    double power;
    std::vector<int> labels;
    Vec scan_candidates;
    Vec final_candidates;
    const ThresholdOptions* opts;

    Partition1D make_partition(const Vec& boundaries) const {
        Partition1D p;
        p.boundaries = boundaries;
        p.labels = labels;
        return p;
    }

    double scan_rate(const Vec& boundaries) const {
        InducedDMC dmc = dmc_from_partition(sigma, scan_candidates, make_partition(boundaries));
        BAOptions ba;
        ba.tol = opts->scan_tol;
        ba.max_iter = opts->scan_max_iter;
        ba.bisect_iters = 24;
        return blahut_arimoto(dmc, scan_candidates, power, ba).capacity_bits;
    }

    BAResult final_eval(const Vec& boundaries) const {
        InducedDMC dmc = dmc_from_partition(sigma, final_candidates, make_partition(boundaries));
        BAOptions ba;
        ba.tol = opts->final_tol;
        ba.max_iter = opts->final_max_iter;
        return blahut_arimoto(dmc, final_candidates, power, ba);
    }
};

Vec candidate_grid(double power, double span, int count) {
    double half = span * std::sqrt(power);
    Vec g;
    for (int i = 0; i < count; ++i) g.push_back(-half + 2.0 * half * i / (count - 1));
    // The exact power-boundary points: an equispaced grid misses +-sqrt(P),
    // which costs real rate at low SNR (antipodal signaling sits there).
    double root = std::sqrt(power);
    for (double v : {-root, root})
        if (std::none_of(g.begin(), g.end(), [&](double x) { return x == v; })) g.push_back(v);
    std::sort(g.begin(), g.end());
    return g;
}

// Coordinate scan at full `grid_points` resolution via a coarse pass plus a
// fine pass around the incumbent (the objective is smooth per coordinate).
double scan_coordinate(const Evaluator& ev, Vec& boundaries, int coord, double lo, double hi,
                       double incumbent_rate, int grid_points) {
    const double left = coord > 0 ? boundaries[coord - 1] : -kInf;
    const double right = coord + 1 < static_cast<int>(boundaries.size()) ? boundaries[coord + 1] : kInf;
    const double sep = 1e-9;
    double best_rate = incumbent_rate;
    double best_val = boundaries[coord];
    auto try_value = [&](double v) {
        if (v <= left + sep || v >= right - sep) return;
        Vec b = boundaries;
        b[coord] = v;
        double r = ev.scan_rate(b);
        if (r > best_rate + 1e-12 || (std::abs(r - best_rate) <= 1e-12 && v < best_val)) {
            best_rate = r;
            best_val = v;
        }
    };
    const int coarse_step = 8;
    const double step = (hi - lo) / (grid_points - 1);
    for (int i = 0; i < grid_points; i += coarse_step) try_value(lo + i * step);
    int center = static_cast<int>(std::lround((best_val - lo) / step));
    for (int i = std::max(0, center - coarse_step); i <= std::min(grid_points - 1, center + coarse_step);
         ++i)
        try_value(lo + i * step);
    boundaries[coord] = best_val;
    return best_rate;
}

}  // namespace

RateResult optimize_thresholds(double sigma, double power, int n_qi, Family family,
                               ThresholdOptions opts) {
    require(n_qi >= 1, "optimize_thresholds: n_qi must be positive");
    require(sigma > 0.0 && power > 0.0, "optimize_thresholds: sigma and power must be positive");

    Evaluator ev;
    ev.sigma = sigma;
    ev.power = power;
    ev.labels = family_labels(family, n_qi, family == Family::QuadraticV && opts.all_quadratic);
    ev.scan_candidates = candidate_grid(power, opts.candidate_span, opts.scan_candidates);
    ev.final_candidates = candidate_grid(power, opts.candidate_span, opts.final_candidates);
    ev.opts = &opts;

    const int n_bounds = static_cast<int>(ev.labels.size()) - 1;
    const double reach = sigma * opts.candidate_span * std::sqrt(power) + 6.0;

    // Structured starts: equispaced at two spreads, then seeded random.
    std::vector<Vec> starts;
    for (double spread : {sigma * std::sqrt(power), 0.5 * sigma * std::sqrt(power) + 1.0}) {
        Vec b(n_bounds);
        for (int i = 0; i < n_bounds; ++i)
            b[i] = n_bounds == 1 ? 0.0 : -spread + 2.0 * spread * i / (n_bounds - 1);
        starts.push_back(b);
    }
    auto rng = make_rng(mix_seed(opts.seed, 0x7105ULL));
    std::uniform_real_distribution<double> uni(-reach + 1.0, reach - 1.0);
    while (static_cast<int>(starts.size()) < opts.multi_starts) {
        Vec b(n_bounds);
        for (double& v : b) v = uni(rng);
        std::sort(b.begin(), b.end());
        bool ok = true;
        for (int i = 1; i < n_bounds; ++i)
            if (b[i] - b[i - 1] < 1e-6) ok = false;
        if (ok) starts.push_back(b);
    }
    for (const Vec& extra : opts.extra_start_boundaries) {
        require(static_cast<int>(extra.size()) == n_bounds,
                "optimize_thresholds: extra start has wrong boundary count");
        starts.push_back(extra);
    }

    struct StartResult {
        Vec boundaries;
        double scan_rate;
    };
    std::vector<StartResult> results(starts.size());
    auto run_start = [&](size_t s) {
        Vec b = starts[s];
        double rate = ev.scan_rate(b);
        for (int pass = 0; pass <= opts.refine_passes; ++pass) {
            double width = 2.0 * reach * std::pow(opts.shrink, pass);
            for (int coord = 0; coord < n_bounds; ++coord) {
                double lo = pass == 0 ? -reach : b[coord] - 0.5 * width;
                double hi = pass == 0 ? reach : b[coord] + 0.5 * width;
                rate = scan_coordinate(ev, b, coord, lo, hi, rate, opts.grid_points);
            }
        }
        results[s] = {b, rate};
    };
    if (opts.jobs > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < opts.jobs; ++w)
            pool.emplace_back([&]() {
                for (size_t s = next.fetch_add(1); s < starts.size(); s = next.fetch_add(1))
                    run_start(s);
            });
        for (auto& t : pool) t.join();
    } else {
        for (size_t s = 0; s < starts.size(); ++s) run_start(s);
    }

    // Full-fidelity evaluation of the leading candidates; deterministic order.
    std::sort(results.begin(), results.end(), [](const StartResult& a, const StartResult& b) {
        if (a.scan_rate != b.scan_rate) return a.scan_rate > b.scan_rate;
        return a.boundaries < b.boundaries;
    });
    size_t finals = std::min<size_t>(results.size(), 4 + opts.extra_start_boundaries.size());
    RateResult best;
    best.rate_bits = -1.0;
    int iters = 0;
    for (size_t s = 0; s < finals; ++s) {
        BAResult ba = ev.final_eval(results[s].boundaries);
        iters += ba.iterations;
        if (ba.capacity_bits > best.rate_bits + 1e-12 ||
            (std::abs(ba.capacity_bits - best.rate_bits) <= 1e-12 &&
             results[s].boundaries < best.partition.boundaries)) {
            best.partition = ev.make_partition(results[s].boundaries);
            best.rate_bits = ba.capacity_bits;
            best.dist = ba.dist;
        }
    }

    // Condense the grid support: contiguous mass clusters collapse to their
    // centroids (at most one per output symbol), then re-optimize on them.
    {
        const Vec& grid = ev.final_candidates;
        std::map<double, double> mass;  // point -> prob from the grid solve
        for (size_t j = 0; j < best.dist.points.size(); ++j)
            mass[best.dist.points[j][0]] = best.dist.probs[j];
        double grid_step = grid.size() > 1 ? grid[1] - grid[0] : 1.0;
        Vec centers;
        Vec cluster_mass;
        double prev = kInf;
        for (const auto& [x, p] : mass) {
            if (!centers.empty() && x - prev <= 1.5 * grid_step) {
                double m = cluster_mass.back() + p;
                centers.back() = (centers.back() * cluster_mass.back() + x * p) / m;
                cluster_mass.back() = m;
            } else {
                centers.push_back(x);
                cluster_mass.push_back(p);
            }
            prev = x;
        }
        size_t cap = 1ULL << std::min(n_qi, 20);
        while (centers.size() > cap) {
            size_t drop = std::min_element(cluster_mass.begin(), cluster_mass.end()) -
                          cluster_mass.begin();
            centers.erase(centers.begin() + drop);
            cluster_mass.erase(cluster_mass.begin() + drop);
        }
        InducedDMC dmc = dmc_from_partition(sigma, centers, best.partition);
        BAOptions ba;
        ba.tol = opts.final_tol;
        ba.max_iter = opts.final_max_iter;
        BAResult condensed = blahut_arimoto(dmc, centers, power, ba);
        iters += condensed.iterations;
        best.rate_bits = condensed.capacity_bits;
        best.dist = condensed.dist;
    }
    best.ba_iterations = iters;
    return best;
}

namespace {

void compositions_rec(int remaining, int parts, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur.push_back(k);
        compositions_rec(remaining - k, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Vec> power_splits(double total, int parts, int grid_points) {
    std::vector<Vec> out;
    if (parts == 1) {
        out.push_back({total});
        return out;
    }
    int steps = grid_points - 1;
    std::vector<int> cur;
    std::vector<std::vector<int>> ticks;
    compositions_rec(steps, parts, cur, ticks);
    for (const auto& t : ticks) {
        Vec split(parts);
        for (int i = 0; i < parts; ++i) split[i] = total * t[i] / steps;
        out.push_back(split);
    }
    return out;
}

}  // namespace

AllocationResult allocate_and_bound(const ChannelModel& channel, int n_q, Family family,
                                    AllocationOptions opts) {
    require(n_q >= 1, "allocate_and_bound: n_q must be positive");
    SubchannelSet sub = svd_decompose(channel);
    const int s = sub.s;
    if (s > 4)
        throw std::invalid_argument("allocate_and_bound: s > 4 not supported by the optimizer");
    int grid_points = s == 4 ? 11 : opts.power_grid_points;
    double sigma_scale = 1.0 / std::sqrt(channel.noise_var);

    std::vector<std::vector<int>> nq_plans;
    std::vector<int> cur;
    compositions_rec(n_q, s, cur, nq_plans);
    auto splits = power_splits(channel.power, s, grid_points);

    // Shared per-(sigma, P_i, n_qi) cache; deterministic arg-max merge.
    struct Key {
        double sigma, power;
        int nq;
        bool operator<(const Key& o) const {
            if (sigma != o.sigma) return sigma < o.sigma;
            if (power != o.power) return power < o.power;
            return nq < o.nq;
        }
    };
    std::map<Key, RateResult> cache;
    auto rate_of = [&](double sigma, double power, int nq) -> const RateResult& {
        Key k{sigma, power, nq};
        auto it = cache.find(k);
        if (it == cache.end()) {
            RateResult r;
            if (nq == 0 || power <= 0.0) {
                r.partition.labels = {0};
                r.rate_bits = 0.0;
                r.dist.points = {{0.0}};
                r.dist.probs = {1.0};
            } else {
                r = optimize_thresholds(sigma, power, nq, family, opts.thresholds);
            }
            it = cache.emplace(k, std::move(r)).first;
        }
        return it->second;
    };

    AllocationResult best;
    best.rate_bits = -1.0;
    best.sigmas = sub.sigmas;
    for (const auto& nqs : nq_plans) {
        for (const auto& ps : splits) {
            double total = 0.0;
            int iters = 0;
            for (int k = 0; k < s; ++k) {
                const RateResult& r = rate_of(sub.sigmas[k] * sigma_scale, ps[k], nqs[k]);
                total += r.rate_bits;
                iters += r.ba_iterations;
            }
            bool better = total > best.rate_bits + 1e-12;
            if (!better && std::abs(total - best.rate_bits) <= 1e-12) {
                if (nqs < best.plan.nq_split ||
                    (nqs == best.plan.nq_split && ps < best.plan.power_split))
                    better = true;
            }
            if (better) {
                best.plan.nq_split = nqs;
                best.plan.power_split = ps;
                best.rate_bits = total;
                best.ba_iterations = iters;
            }
        }
    }
    for (int k = 0; k < s; ++k)
        best.per_subchannel.push_back(
            rate_of(sub.sigmas[k] * sigma_scale, best.plan.power_split[k], best.plan.nq_split[k]));
    return best;
}

double scenario1_baseline(const ChannelModel& channel, int n_q) {
    if (n_q != channel.n_r)
        throw std::invalid_argument("scenario1_baseline: Scenario I requires n_q = n_r");
    require(channel.n_t <= 12 && n_q <= 12, "scenario1_baseline: antenna counts capped at 12");
    const double root = std::sqrt(channel.power);
    const double noise_std = std::sqrt(channel.noise_var);
    const int inputs = 1 << channel.n_t;
    const int outputs = 1 << n_q;
    InducedDMC dmc;
    dmc.transition = Matrix(inputs, outputs);
    for (int xi = 0; xi < inputs; ++xi) {
        Vec x(channel.n_t);
        for (int i = 0; i < channel.n_t; ++i) x[i] = (xi >> i) & 1 ? root : -root;
        Vec mean = channel.h.matvec(x);
        for (int v = 0; v < outputs; ++v) {
            double p = 1.0;
            for (int j = 0; j < n_q; ++j) {
                double p1 = normal_cdf(mean[j] / noise_std);  // P(mean + N > 0)
                p *= (v >> j) & 1 ? p1 : 1.0 - p1;
            }
            dmc.transition(xi, v) = p;
        }
    }
    return mutual_information(dmc, Vec(inputs, 1.0 / inputs));
}

double gaussian_sum_capacity(const Vec& sigmas, const Vec& powers) {
    double c = 0.0;
    for (size_t k = 0; k < sigmas.size(); ++k)
        c += 0.5 * std::log2(1.0 + sigmas[k] * sigmas[k] * powers[k]);
    return c;
}

}  // namespace qmimo
