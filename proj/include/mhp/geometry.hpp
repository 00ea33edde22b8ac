#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mhp/rng.hpp"

namespace mhp {

// Ellipsoid E_Sigma = {x : x^T Sigma^{-1} x <= 1}; Sigma must be symmetric
// positive-definite.
struct EllipsoidSpec {
    explicit EllipsoidSpec(Eigen::MatrixXd sigma);

    Eigen::MatrixXd sigma;
    int n;
    std::vector<double> semi_axes;  // sqrt of eigenvalues, descending
};

enum class VolumeRoute { kubota_mc, stiefel_identity_mc, closed_form };
const char* route_name(VolumeRoute r);

struct VolumeEstimate {
    double value = 0.0;
    std::optional<double> std_error;  // present iff an MC route
    VolumeRoute route = VolumeRoute::closed_form;
};

// kappa_n = pi^{n/2} / Gamma(1 + n/2); kappa_0 = 1.
double ball_volume(int n);
// V_j(B_n) = C(n,j) kappa_n / kappa_{n-j}.
double intrinsic_volume_ball(int j, int n);

// V_j(E_Sigma) via Kubota's projection formula, averaging the projected
// ellipsoid volume kappa_j det(U Sigma U^T)^{1/2} over Haar frames.
VolumeEstimate intrinsic_volume_ellipsoid_kubota(const EllipsoidSpec& e, int j, int samples,
                                                 RngStream& rng);

// V_l(E_Sigma) via the Stiefel identity:
// C(n,l) kappa_n/kappa_{n-l} det(Sigma)^{-l/2} E[det(U Sigma^{-1} U^T)^{-(n+1)/2}].
VolumeEstimate intrinsic_volume_ellipsoid_stiefel(const EllipsoidSpec& e, int l, int samples,
                                                  RngStream& rng);

// V(E_Sigma[l], B_n[n-l]) = kappa_{n-l} / C(n,l) * V_l(E_Sigma).
VolumeEstimate mixed_volume_ellipsoid_ball(const EllipsoidSpec& e, int l, int samples,
                                           RngStream& rng,
                                           VolumeRoute route = VolumeRoute::kubota_mc);

// Euclidean distance from a point to the ellipsoid with the given semi-axes
// (degenerate zero axes allowed), axes aligned with the coordinate frame.
double distance_to_ellipsoid(const std::vector<double>& semi_axes, const Eigen::VectorXd& p);

// Hit-or-miss volume of the parallel body K^eps against the polynomial
// expansion sum_j eps^{n-j} kappa_{n-j} V_j(K) with V_j from the Kubota route.
// Restricted to n <= 3.
struct SteinerCheck {
    double mc_volume;
    double mc_std_error;
    double steiner_volume;
    double rel_gap;  // |mc - steiner| / steiner
};
SteinerCheck steiner_check(const EllipsoidSpec& e, double eps, long long mc_points,
                           RngStream& rng, int kubota_samples = 200000);
// Same check from raw semi-axes (zero axes allowed; used for degenerate bodies).
SteinerCheck steiner_check_axes(const std::vector<double>& semi_axes, double eps,
                                long long mc_points, RngStream& rng,
                                const std::vector<double>& intrinsic_volumes);

}  // namespace mhp
