#include "mhp/sampling.hpp"

#include <stdexcept>

#include "mhp/matpoly.hpp"

namespace mhp {

MatrixEnsemble::MatrixEnsemble(int l_, int n_) : l(l_), n(n_) {
    if (l < 1 || l > n) throw std::invalid_argument("MatrixEnsemble: need 1 <= l <= n");
    sigma_sqrt = Eigen::MatrixXd::Identity(n, n);
}

MatrixEnsemble::MatrixEnsemble(int l_, int n_, Eigen::MatrixXd sigma_)
    : l(l_), n(n_), sigma(std::move(sigma_)) {
    if (l < 1 || l > n) throw std::invalid_argument("MatrixEnsemble: need 1 <= l <= n");
    if (sigma->rows() != n || sigma->cols() != n)
        throw std::invalid_argument("MatrixEnsemble: Sigma must be n x n");
    if (!sigma->isApprox(sigma->transpose(), 1e-12))
        throw std::invalid_argument("MatrixEnsemble: Sigma must be symmetric");
    sigma_sqrt = sym_sqrt(*sigma);  // throws when not positive-definite
}

Eigen::MatrixXd sample_standard_gaussian(int l, int n, RngStream& rng) {
    Eigen::MatrixXd X(l, n);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = rng.normal();
    return X;
}

Eigen::MatrixXd sample_gaussian_matrix(const MatrixEnsemble& ens, RngStream& rng) {
    Eigen::MatrixXd X = sample_standard_gaussian(ens.l, ens.n, rng);
    if (ens.sigma) X = X * ens.sigma_sqrt;
    return X;
}

Eigen::MatrixXd sample_stiefel_haar(int n, int l, RngStream& rng) {
    if (l < 1 || l > n) throw std::invalid_argument("sample_stiefel_haar: need 1 <= l <= n");
    Eigen::MatrixXd G = sample_standard_gaussian(n, l, rng);  // n x l, columns to orthonormalize
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, l);
    Eigen::MatrixXd R = qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
    for (int j = 0; j < l; ++j)
        if (R(j, j) < 0) Q.col(j) = -Q.col(j);
    return Q.transpose();
}

PolarFactors polar_decompose(const Eigen::MatrixXd& X) {
    Eigen::MatrixXd R = X * X.transpose();
    Eigen::MatrixXd inv_sqrt;
    try {
        inv_sqrt = sym_inv_sqrt(R);
    } catch (const std::domain_error&) {
        throw std::domain_error("polar_decompose: rows of X are numerically rank-deficient");
    }
    return {std::move(R), inv_sqrt * X};
}

}  // namespace mhp
