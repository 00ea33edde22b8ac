#pragma once

#include <cstddef>
#include <vector>

namespace mhp {

// Streaming mean/variance (Welford). Used by every Monte Carlo estimator so
// standard errors are always available.
class RunningStats {
  public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    void merge(const RunningStats& o);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const;

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0, m2_ = 0.0;
};

// Compensated accumulation for long grid reductions.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0, c_ = 0.0;
};

// One-sample Kolmogorov-Smirnov test against the standard normal CDF.
// p-value from the asymptotic Kolmogorov distribution with the finite-sample
// sqrt(n) scaling. `standardize` centers/scales the sample first.
struct KsResult {
    double statistic;
    double p_value;
};
KsResult ks_test_normal(std::vector<double> sample, bool standardize);

double normal_cdf(double x);

}  // namespace mhp
