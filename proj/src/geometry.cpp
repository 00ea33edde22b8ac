#include "mhp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhp/matpoly.hpp"
#include "mhp/sampling.hpp"
#include "mhp/stats.hpp"

namespace mhp {

const char* route_name(VolumeRoute r) {
    switch (r) {
        case VolumeRoute::kubota_mc: return "kubota_mc";
        case VolumeRoute::stiefel_identity_mc: return "stiefel_identity_mc";
        case VolumeRoute::closed_form: return "closed_form";
    }
    return "?";
}

EllipsoidSpec::EllipsoidSpec(Eigen::MatrixXd sigma_) : sigma(std::move(sigma_)) {
    if (sigma.rows() != sigma.cols()) throw std::invalid_argument("EllipsoidSpec: Sigma not square");
    n = static_cast<int>(sigma.rows());
    if (!sigma.isApprox(sigma.transpose(), 1e-12))
        throw std::invalid_argument("EllipsoidSpec: Sigma not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
    for (int i = n - 1; i >= 0; --i) {
        double ev = es.eigenvalues()(i);
        if (ev <= 0) throw std::invalid_argument("EllipsoidSpec: Sigma not positive-definite");
        semi_axes.push_back(std::sqrt(ev));
    }
}

double ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("ball_volume: n must be >= 0");
    return std::pow(M_PI, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

double intrinsic_volume_ball(int j, int n) {
    if (j < 0 || j > n) throw std::invalid_argument("intrinsic_volume_ball: need 0 <= j <= n");
    return to_double(Rational(binomial(n, j))) * ball_volume(n) / ball_volume(n - j);
}

VolumeEstimate intrinsic_volume_ellipsoid_kubota(const EllipsoidSpec& e, int j, int samples,
                                                 RngStream& rng) {
    if (j < 1 || j > e.n) throw std::invalid_argument("kubota: need 1 <= j <= n");
    double pref = to_double(Rational(binomial(e.n, j))) * ball_volume(e.n) / ball_volume(e.n - j);
    RunningStats stats;
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXd U = sample_stiefel_haar(e.n, j, rng);
        stats.add(std::sqrt((U * e.sigma * U.transpose()).determinant()));
    }
    return {pref * stats.mean(), pref * stats.std_error(), VolumeRoute::kubota_mc};
}

VolumeEstimate intrinsic_volume_ellipsoid_stiefel(const EllipsoidSpec& e, int l, int samples,
                                                  RngStream& rng) {
    if (l < 1 || l > e.n) throw std::invalid_argument("stiefel route: need 1 <= l <= n");
    Eigen::MatrixXd inv = sym_inv_sqrt(e.sigma);
    inv = inv * inv;
    double pref = to_double(Rational(binomial(e.n, l))) * ball_volume(e.n) / ball_volume(e.n - l) *
                  std::pow(e.sigma.determinant(), -0.5 * l);
    RunningStats stats;
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXd U = sample_stiefel_haar(e.n, l, rng);
        double d = (U * inv * U.transpose()).determinant();
        stats.add(std::pow(d, -0.5 * (e.n + 1)));
    }
    return {pref * stats.mean(), pref * stats.std_error(), VolumeRoute::stiefel_identity_mc};
}

VolumeEstimate mixed_volume_ellipsoid_ball(const EllipsoidSpec& e, int l, int samples,
                                           RngStream& rng, VolumeRoute route) {
    VolumeEstimate vl = (route == VolumeRoute::stiefel_identity_mc)
                            ? intrinsic_volume_ellipsoid_stiefel(e, l, samples, rng)
                            : intrinsic_volume_ellipsoid_kubota(e, l, samples, rng);
    double f = ball_volume(e.n - l) / to_double(Rational(binomial(e.n, l)));
    VolumeEstimate out = vl;
    out.value *= f;
    if (out.std_error) *out.std_error *= f;
    return out;
}

double distance_to_ellipsoid(const std::vector<double>& semi_axes, const Eigen::VectorXd& p) {
    int n = static_cast<int>(semi_axes.size());
    if (p.size() != n) throw std::invalid_argument("distance_to_ellipsoid: dimension mismatch");
    // inside test; degenerate axes require the matching coordinate to vanish
    double q = 0;
    bool inside_possible = true;
    for (int i = 0; i < n; ++i) {
        if (semi_axes[i] == 0.0) {
            if (p(i) != 0.0) inside_possible = false;
        } else {
            q += (p(i) / semi_axes[i]) * (p(i) / semi_axes[i]);
        }
    }
    if (inside_possible && q <= 1.0) return 0.0;

    // closest point x_i = a_i^2 p_i / (a_i^2 + t); solve f(t) = 1, f decreasing
    auto f = [&](double t) {
        double s = 0;
        for (int i = 0; i < n; ++i) {
            double a2 = semi_axes[i] * semi_axes[i];
            if (a2 == 0.0) continue;
            double r = semi_axes[i] * p(i) / (a2 + t);
            s += r * r;
        }
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 1.0 ? lo : hi) = mid;
        if (hi - lo < 1e-14 * (1.0 + hi)) break;
    }
    double t = 0.5 * (lo + hi);
    double d2 = 0;
    for (int i = 0; i < n; ++i) {
        double a2 = semi_axes[i] * semi_axes[i];
        double dx = p(i) * (a2 == 0.0 ? 1.0 : t / (a2 + t));
        d2 += dx * dx;
    }
    return std::sqrt(d2);
}

SteinerCheck steiner_check_axes(const std::vector<double>& semi_axes, double eps,
                                long long mc_points, RngStream& rng,
                                const std::vector<double>& intrinsic_volumes) {
    int n = static_cast<int>(semi_axes.size());
    if (n > 3) throw std::invalid_argument("steiner_check: restricted to n <= 3");
    if (eps <= 0) throw std::invalid_argument("steiner_check: eps must be positive");
    double box_vol = 1.0;
    std::vector<double> half(n);
    for (int i = 0; i < n; ++i) {
        half[i] = semi_axes[i] + eps;
        box_vol *= 2.0 * half[i];
    }
    long long hits = 0;
    Eigen::VectorXd p(n);
    for (long long s = 0; s < mc_points; ++s) {
        for (int i = 0; i < n; ++i) p(i) = (2.0 * rng.uniform() - 1.0) * half[i];
        if (distance_to_ellipsoid(semi_axes, p) <= eps) ++hits;
    }
    double frac = static_cast<double>(hits) / static_cast<double>(mc_points);
    double mc_vol = box_vol * frac;
    double mc_se = box_vol * std::sqrt(frac * (1.0 - frac) / static_cast<double>(mc_points));

    double steiner = 0.0;  // sum_j eps^{n-j} kappa_{n-j} V_j
    for (int j = 0; j <= n; ++j)
        steiner += std::pow(eps, n - j) * ball_volume(n - j) * intrinsic_volumes[j];
    return {mc_vol, mc_se, steiner, std::abs(mc_vol - steiner) / steiner};
}

SteinerCheck steiner_check(const EllipsoidSpec& e, double eps, long long mc_points, RngStream& rng,
                           int kubota_samples) {
    std::vector<double> vj(e.n + 1);
    vj[0] = 1.0;  // Euler characteristic of a convex body
    for (int j = 1; j <= e.n; ++j)
        vj[j] = intrinsic_volume_ellipsoid_kubota(e, j, kubota_samples, rng).value;
    return steiner_check_axes(e.semi_axes, eps, mc_points, rng, vj);
}

}  // namespace mhp
