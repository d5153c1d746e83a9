#include "qmimo/channel.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmimo {

void ChannelModel::validate() const {
    require(n_t >= 1 && n_r >= 1, "ChannelModel: antenna counts must be positive");
    require(h.rows == n_r && h.cols == n_t, "ChannelModel: h must be n_r x n_t");
    require(h.finite(), "ChannelModel: h entries must be finite");
    require(power > 0.0 && std::isfinite(power), "ChannelModel: power must be positive");
    require(noise_var > 0.0 && std::isfinite(noise_var), "ChannelModel: noise_var must be positive");
}

SubchannelSet svd_decompose(const ChannelModel& channel) {
    channel.validate();
    const int m = channel.n_r, n = channel.n_t;
    Eigen::MatrixXd H(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = channel.h(i, j);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    double tol = kRankToleranceFactor * sigma_max;

    SubchannelSet out;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > tol) ++out.s;
    if (out.s == 0) throw std::runtime_error("svd_decompose: channel matrix has rank zero");

    out.sigmas.resize(out.s);
    out.left_basis = Matrix(m, out.s);
    out.right_basis = Matrix(n, out.s);
    for (int k = 0; k < out.s; ++k) {
        out.sigmas[k] = sv(k);
        for (int i = 0; i < m; ++i) out.left_basis(i, k) = svd.matrixU()(i, k);
        for (int j = 0; j < n; ++j) out.right_basis(j, k) = svd.matrixV()(j, k);
    }
    return out;
}

Vec apply_channel(const ChannelModel& channel, const Vec& x, std::mt19937_64& rng) {
    require(static_cast<int>(x.size()) == channel.n_t, "apply_channel: x must have length n_t");
    require(all_finite(x), "apply_channel: x must be finite");
    Vec y = channel.h.matvec(x);
    std::normal_distribution<double> noise(0.0, std::sqrt(channel.noise_var));
    for (double& v : y) v += noise(rng);
    return y;
}

void InputDistribution::validate() const {
    require(points.size() == probs.size(), "InputDistribution: points/probs size mismatch");
    require(!points.empty(), "InputDistribution: empty support");
    double total = 0.0;
    for (double p : probs) {
        require(p >= 0.0 && std::isfinite(p), "InputDistribution: probabilities must be non-negative");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "InputDistribution: probabilities must sum to 1");
}

double InputDistribution::average_power(int n_t) const {
    double s = 0.0;
    for (size_t j = 0; j < points.size(); ++j) {
        double e = 0.0;
        for (double xi : points[j]) e += xi * xi;
        s += probs[j] * e;
    }
    return s / n_t;
}

bool validate_power(const InputDistribution& dist, const ChannelModel& channel) {
    dist.validate();
    return dist.average_power(channel.n_t) <= channel.power + 1e-9;
}

}  // namespace qmimo
