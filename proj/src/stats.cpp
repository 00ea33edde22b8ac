#include "mhp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhp {

void RunningStats::merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    double d = o.mean_ - mean_;
    std::size_t n = n_ + o.n_;
    m2_ += o.m2_ + d * d * (static_cast<double>(n_) * static_cast<double>(o.n_) / n);
    mean_ += d * static_cast<double>(o.n_) / n;
    n_ = n;
}

double RunningStats::std_error() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(variance() / static_cast<double>(n_));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double q = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        q += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(q, 0.0, 1.0);
}

}  // namespace

KsResult ks_test_normal(std::vector<double> sample, bool standardize) {
    if (sample.size() < 5) throw std::invalid_argument("ks_test_normal: sample too small");
    if (standardize) {
        double m = 0;
        for (double x : sample) m += x;
        m /= static_cast<double>(sample.size());
        double v = 0;
        for (double x : sample) v += (x - m) * (x - m);
        v /= static_cast<double>(sample.size() - 1);
        double s = std::sqrt(v);
        for (double& x : sample) x = (x - m) / s;
    }
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = normal_cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    // Stephens' small-sample correction to the asymptotic distribution
    double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    return {d, kolmogorov_q(lambda)};
}

}  // namespace mhp
