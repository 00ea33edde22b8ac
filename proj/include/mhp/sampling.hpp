#pragma once

#include <Eigen/Dense>
#include <optional>

#include "mhp/rng.hpp"

namespace mhp {

// (l, n, Sigma) Gaussian matrix specification: rows i.i.d. N(0, Sigma), or
// i.i.d. standard entries when sigma is absent.
struct MatrixEnsemble {
    MatrixEnsemble(int l, int n);
    MatrixEnsemble(int l, int n, Eigen::MatrixXd sigma);

    int l;
    int n;
    std::optional<Eigen::MatrixXd> sigma;
    Eigen::MatrixXd sigma_sqrt;  // identity when sigma absent
};

// X with i.i.d. N(0,1) entries, right-multiplied by Sigma^{1/2} when present.
Eigen::MatrixXd sample_gaussian_matrix(const MatrixEnsemble& ens, RngStream& rng);
Eigen::MatrixXd sample_standard_gaussian(int l, int n, RngStream& rng);

// Haar-distributed l-frame U (l x n, U U^T = Id_l), from QR of a Gaussian
// matrix with the positive-diagonal sign convention on the triangular factor.
Eigen::MatrixXd sample_stiefel_haar(int n, int l, RngStream& rng);

// Polar factorization X = R^{1/2} U with R = X X^T positive-definite and U a
// Stiefel frame. Throws std::domain_error when the rows are numerically
// dependent (eigenvalue at or below 1e-12 * trace).
struct PolarFactors {
    Eigen::MatrixXd radial;  // R = X X^T
    Eigen::MatrixXd frame;   // U = R^{-1/2} X
};
PolarFactors polar_decompose(const Eigen::MatrixXd& X);

}  // namespace mhp
