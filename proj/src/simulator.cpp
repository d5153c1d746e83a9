#include "qmimo/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qmimo {

RegionCode scale_code(const RegionCode& code, double power) {
    require(power > 0.0, "scale_code: power must be positive");
    const double s = std::sqrt(power);
    RegionCode out = code;
    for (auto& x : out.constellation)
        for (double& v : x) v *= s;
    for (int i = 0; i < out.frontend.n_q; ++i) {
        MultivariatePolynomial& f = out.frontend.functions[i];
        int g_max = f.degree();
        MultivariatePolynomial scaled(f.dim);
        for (const auto& [e, c] : f.terms) {
            int g = 0;
            for (int k : e) g += k;
            scaled.add_term(e, c * std::pow(s, g_max - g));
        }
        f = std::move(scaled);
        out.frontend.thresholds[i] *= std::pow(s, g_max);
    }
    return out;
}

double empirical_mi(const std::vector<std::vector<long long>>& joint_counts) {
    require(!joint_counts.empty() && !joint_counts[0].empty(), "empirical_mi: empty counts");
    const size_t rows = joint_counts.size(), cols = joint_counts[0].size();
    long long total = 0;
    std::vector<long long> row_sum(rows, 0), col_sum(cols, 0);
    for (size_t r = 0; r < rows; ++r) {
        require(joint_counts[r].size() == cols, "empirical_mi: ragged count matrix");
        for (size_t c = 0; c < cols; ++c) {
            require(joint_counts[r][c] >= 0, "empirical_mi: negative count");
            row_sum[r] += joint_counts[r][c];
            col_sum[c] += joint_counts[r][c];
            total += joint_counts[r][c];
        }
    }
    require(total > 0, "empirical_mi: zero total count");
    double mi = 0.0;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) {
            long long n = joint_counts[r][c];
            if (n == 0) continue;
            double pj = static_cast<double>(n) / total;
            mi += pj * std::log2(static_cast<double>(n) * total /
                                 (static_cast<double>(row_sum[r]) * col_sum[c]));
        }
    long long k = std::count_if(row_sum.begin(), row_sum.end(), [](long long v) { return v > 0; });
    long long l = std::count_if(col_sum.begin(), col_sum.end(), [](long long v) { return v > 0; });
    double correction = static_cast<double>((k - 1) * (l - 1)) / (2.0 * total * M_LN2);
    return std::max(0.0, mi - correction);
}

namespace {

struct BatchCounts {
    long long errors = 0;
    std::vector<std::vector<long long>> joint;  // message x pattern index
};

int pattern_index(const Bits& b) {
    int v = 0;
    for (size_t j = 0; j < b.size(); ++j) v |= (b[j] ? 1 : 0) << j;
    return v;
}

}  // namespace

TrialReport simulate_code(const RegionCode& code, const ChannelModel& channel, long long trials,
                          std::uint64_t seed, int jobs) {
    if (code.pattern_map.empty()) throw std::invalid_argument("simulate_code: empty pattern map");
    require(trials > 0, "simulate_code: trials must be positive");
    require(code.frontend.dim == channel.n_r, "simulate_code: front-end dim must match n_r");
    const auto t0 = std::chrono::steady_clock::now();
    const int m_count = code.messages();
    const int n_q = code.frontend.n_q;
    const int patterns = 1 << n_q;

    // Hamming decode table over all 2^{n_q} observable patterns.
    std::vector<int> decode(patterns);
    for (int v = 0; v < patterns; ++v) {
        int best_msg = 0, best_dist = n_q + 1;
        for (const auto& [pat, msg] : code.pattern_map) {
            int d = 0;
            for (int j = 0; j < n_q; ++j) d += ((v >> j) & 1) != pat[j];
            if (d < best_dist || (d == best_dist && msg < best_msg)) {
                best_dist = d;
                best_msg = msg;
            }
        }
        decode[v] = best_msg;
    }

    const long long batch_size = 1 << 14;
    const long long n_batches = (trials + batch_size - 1) / batch_size;
    std::vector<BatchCounts> batches(n_batches);
    auto run_batch = [&](long long b) {
        BatchCounts& out = batches[b];
        out.joint.assign(m_count, std::vector<long long>(patterns, 0));
        auto rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(b)));
        std::uniform_int_distribution<int> pick(0, m_count - 1);
        long long count = std::min(batch_size, trials - b * batch_size);
        for (long long t = 0; t < count; ++t) {
            int msg = pick(rng);
            Vec y = apply_channel(channel, code.constellation[msg], rng);
            Bits bits = apply_frontend(code.frontend, y);
            int v = pattern_index(bits);
            out.joint[msg][v] += 1;
            if (decode[v] != msg) out.errors += 1;
        }
    };
    if (jobs > 1) {
        std::vector<std::thread> pool;
        std::atomic<long long> next{0};
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&]() {
                for (long long b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1))
                    run_batch(b);
            });
        for (auto& t : pool) t.join();
    } else {
        for (long long b = 0; b < n_batches; ++b) run_batch(b);
    }

    long long errors = 0;
    std::vector<std::vector<long long>> joint(m_count, std::vector<long long>(patterns, 0));
    for (const auto& b : batches) {
        errors += b.errors;
        for (int m = 0; m < m_count; ++m)
            for (int v = 0; v < patterns; ++v) joint[m][v] += b.joint[m][v];
    }

    TrialReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.ser = static_cast<double>(errors) / trials;
    rep.ci95_ser = 1.96 * std::sqrt(rep.ser * (1.0 - rep.ser) / trials);
    rep.empirical_mi_bits = empirical_mi(joint);
    double pw = 0.0;
    for (const auto& x : code.constellation) pw += dot(x, x);
    rep.avg_input_power = pw / (m_count * channel.n_t);
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

std::vector<TrialReport> highsnr_sweep(const RegionCode& code, const ChannelModel& channel,
                                       const Vec& power_grid, long long trials, std::uint64_t seed,
                                       int jobs) {
    require(!power_grid.empty(), "highsnr_sweep: empty power grid");
    for (size_t i = 0; i < power_grid.size(); ++i) {
        require(power_grid[i] > 0.0, "highsnr_sweep: powers must be positive");
        if (i > 0) require(power_grid[i] > power_grid[i - 1], "highsnr_sweep: powers must increase");
    }
    std::vector<TrialReport> out;
    for (size_t i = 0; i < power_grid.size(); ++i) {
        RegionCode scaled = scale_code(code, power_grid[i]);
        TrialReport rep = simulate_code(scaled, channel, trials, mix_seed(seed, i), jobs);
        rep.power = power_grid[i];
        out.push_back(rep);
    }
    return out;
}

}  // namespace qmimo
