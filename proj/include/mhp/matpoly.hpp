#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mhp/partition.hpp"
#include "mhp/zonal.hpp"

namespace mhp {

// Evaluation context for the (l, n) polynomial families. gamma_order is the
// Laguerre order (n - l - 1)/2 of the Hermite link. Immutable; evaluation is
// pure, so concurrent calls are safe.
struct MatPolyContext {
    MatPolyContext(int l, int n, const ZonalTable& table);

    int l;
    int n;
    const ZonalTable* table;
    double gamma_order;  // (n - l - 1) / 2
};

// Normalization constants of the Hermite family.
struct HermiteNormalization {
    double c_kappa;      // 4^{-k} (n/2)_kappa^{-1} k! C_kappa(Id_l)
    double gamma_kappa;  // (-2)^{-k} (n/2)_kappa^{-1}
};
HermiteNormalization hermite_normalization(const Partition& kappa, const MatPolyContext& ctx);
// c(kappa; Sigma) = det(Sigma)^{2 l k} c(kappa)
double c_kappa_sigma(const Partition& kappa, const MatPolyContext& ctx,
                     const Eigen::MatrixXd& sigma);

// Non-homogeneous spectral polynomial compiled to the power-sum basis with
// double coefficients; the fast path for Monte Carlo loops.
class CompiledSpectralPoly {
  public:
    CompiledSpectralPoly() = default;
    void add(const Partition& nu, double coeff);
    double eval(const std::vector<double>& eigenvalues) const;
    int max_power() const { return max_power_; }

  private:
    struct Term {
        std::vector<int> powers;  // indices r of t_r factors
        double coeff;
    };
    std::vector<Term> terms_;
    int max_power_ = 0;
};

// Generalized Laguerre polynomial L_kappa^{(gamma)}(S) from the eigenvalues
// of S, via generalized binomials and zonal tables. Identically zero when
// kappa has more parts than there are eigenvalues.
double laguerre_eval(const Partition& kappa, double gamma,
                     const std::vector<double>& s_eigenvalues, const MatPolyContext& ctx);

// Compiled form of the same polynomial for repeated evaluation.
CompiledSpectralPoly compile_laguerre(const Partition& kappa, double gamma, int ell,
                                      const ZonalTable& table);

// Matrix-variate Hermite polynomial H_kappa^{(l,n)}(X), evaluated through the
// Laguerre link: H_kappa(X) = gamma_kappa L_kappa^{((n-l-1)/2)}(X X^T / 2).
// Eigenvalues are taken from the l x l Gram matrix.
double hermite_eval(const Partition& kappa, const Eigen::MatrixXd& X, const MatPolyContext& ctx);

// Sigma-deformed variant H_kappa(X; Sigma) = det(Sigma)^{l k} H_kappa(X Sigma^{-1/2}).
double hermite_eval_sigma(const Partition& kappa, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& sigma, const MatPolyContext& ctx);

// Explicit univariate-Hermite expansions for kappa in {(1),(2),(1,1)};
// independent oracle for hermite_eval. Throws on other partitions.
double hermite_univariate_expansion(const Partition& kappa, const Eigen::MatrixXd& X);

// Reusable Hermite evaluator for tight loops: precompiled coefficients, one
// symmetric eigensolve per call.
class HermiteEvaluator {
  public:
    HermiteEvaluator(const Partition& kappa, const MatPolyContext& ctx);
    double operator()(const Eigen::MatrixXd& X) const;
    double from_eigenvalues_of_half_gram(const std::vector<double>& eigs) const;

  private:
    CompiledSpectralPoly poly_;
    double gamma_kappa_;
    int l_;
};

// Symmetric positive square root / inverse square root via spectral
// decomposition. Throws std::domain_error when an eigenvalue is at or below
// floor_rel * trace.
Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& S, double floor_rel = 1e-12);
Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& S, double floor_rel = 1e-12);

std::vector<double> gram_half_eigenvalues(const Eigen::MatrixXd& X);  // eig(X X^T / 2)

}  // namespace mhp
