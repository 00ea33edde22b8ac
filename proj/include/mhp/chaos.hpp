#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mhp/matpoly.hpp"
#include "mhp/partition.hpp"
#include "mhp/rng.hpp"
#include "mhp/zonal.hpp"

namespace mhp {

enum class CoeffRoute { closed_form, monte_carlo, radial_integral };
const char* route_name(CoeffRoute r);

// One Fourier-Hermite coefficient F_hat(kappa). Monte Carlo routes carry a
// standard error; closed forms do not.
struct CoefficientRecord {
    Partition kappa;
    double value = 0.0;
    CoeffRoute route = CoeffRoute::closed_form;
    std::optional<double> std_error;
};

// Spectral functional: maps the eigenvalue list of X X^T to a value.
using SpectralFunctional = std::function<double(const std::vector<double>&)>;

// Closed-form coefficient of F = det(X X^T)^{1/2} against H_kappa for the
// identity covariance: exact alternating sum times the Gamma-ratio prefactor,
// floated at the end.
double det_coefficient(const Partition& kappa, int l, int n, const ZonalTable& table);

// Same coefficient for row covariance Sigma; the Stiefel integral
// int det(U Sigma^{-1} U^T)^{-(n+1)/2} d mu~ is estimated by Haar Monte Carlo.
CoefficientRecord det_coefficient_sigma(const Partition& kappa, int l, int n,
                                        const Eigen::MatrixXd& sigma, int stiefel_samples,
                                        RngStream& rng, const ZonalTable& table);

// c(kappa)^{-1} E[F(X) H_kappa(X)] by Monte Carlo over standard Gaussian X.
CoefficientRecord coefficient_mc(const SpectralFunctional& F, const Partition& kappa, int l, int n,
                                 int samples, RngStream& rng, const ZonalTable& table);

// Radial route: the P_l(R) integral rewritten as a Wishart expectation
// (R = X X^T, X standard Gaussian) of f0(R) L_kappa^{((n-l-1)/2)}(R/2).
// f0 receives the eigenvalues of R.
CoefficientRecord radial_coefficient_integral(const SpectralFunctional& f0, const Partition& kappa,
                                              int l, int n, int samples, RngStream& rng,
                                              const ZonalTable& table);

// Coefficient list up to a weight cap. The projection onto odd chaoses is
// implicitly zero, so only partition-indexed (even-chaos) entries appear.
struct ChaosExpansion {
    int l = 0;
    int n = 0;
    std::vector<CoefficientRecord> coefficients;

    const CoefficientRecord* find(const Partition& kappa) const;
};

// Expansion of det(X X^T)^{1/2} with closed-form coefficients up to max_weight.
ChaosExpansion det_expansion(int l, int n, int max_weight, const ZonalTable& table);

// Partial sums S_K = sum_{1<=k<=K} sum_{kappa |- k} c(kappa) F_hat(kappa)^2 of
// the variance series; monotone non-decreasing in K. Entry [K-1] is S_K.
std::vector<double> variance_expansion(const ChaosExpansion& coeffs, int K,
                                       const ZonalTable& table);

std::string coefficients_to_json(const ChaosExpansion& expansion);

}  // namespace mhp
