#pragma once

#include <Eigen/Dense>
#include <functional>

#include "mhp/matpoly.hpp"
#include "mhp/rng.hpp"

namespace mhp {

// Parameters of the generalized Ornstein-Uhlenbeck operator O_{t;A}: mixing
// time t >= 0 and diagonal A with non-negative entries (general A rejected).
struct MehlerSpec {
    MehlerSpec(double t, Eigen::VectorXd diag_a);
    double t;
    Eigen::VectorXd diag_a;
};

// Correlation matrix R for the correlated pair Y = X R + X0 (Id - R^2)^{1/2};
// must be symmetric with spectrum in [0, 1].
struct CorrelationSpec {
    explicit CorrelationSpec(Eigen::MatrixXd r);
    Eigen::MatrixXd R;
    Eigen::MatrixXd residual_sqrt;  // (Id - R^2)^{1/2}
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

// Matrix functional on R^{l x n}; must be right-invariant under O(n).
using MatrixFunctional = std::function<double(const Eigen::MatrixXd&)>;

// Monte Carlo average of f(X H e^{-tA} + X0 (Id - e^{-2tA})^{1/2}) over Haar
// H in O(n) and standard Gaussian X0. The right-invariance precondition is
// spot-checked on random rotations; failure throws std::invalid_argument.
McEstimate mehler_apply(const MatrixFunctional& f, const Eigen::MatrixXd& X,
                        const MehlerSpec& spec, int mc_samples, RngStream& rng);

// Eigenvalue C_kappa(e^{-2tA}) / C_kappa(Id_n) of O_{t;A} on H_kappa.
double eigenvalue_ratio(const Partition& kappa, const MehlerSpec& spec, int n,
                        const ZonalTable& table);

// MC estimate of E[H_kappa(X) H_sigma(Y)] with the correlated pair above, and
// its closed form 1{kappa=sigma} 4^{-k} (n/2)_kappa^{-1} k! C_kappa(R^2)
// C_kappa(Id_l) / C_kappa(Id_n).
struct CorrelatedCovariance {
    McEstimate estimate;
    double closed_form;
    double z_score;  // (estimate - closed) / SE
};
CorrelatedCovariance correlated_hermite_covariance(const Partition& kappa, const Partition& sigma,
                                                   const CorrelationSpec& spec,
                                                   const MatPolyContext& ctx, int mc_samples,
                                                   RngStream& rng);

// Closed form alone (no sampling).
double correlated_covariance_closed_form(const Partition& kappa, const Partition& sigma,
                                         const Eigen::MatrixXd& R, const MatPolyContext& ctx);

}  // namespace mhp
