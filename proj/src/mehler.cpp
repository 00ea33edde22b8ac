#include "mhp/mehler.hpp"

#include <cmath>
#include <stdexcept>

#include "mhp/sampling.hpp"
#include "mhp/stats.hpp"

namespace mhp {

MehlerSpec::MehlerSpec(double t_, Eigen::VectorXd diag_a_) : t(t_), diag_a(std::move(diag_a_)) {
    if (t < 0) throw std::invalid_argument("MehlerSpec: t must be >= 0");
    for (int i = 0; i < diag_a.size(); ++i)
        if (diag_a(i) < 0) throw std::invalid_argument("MehlerSpec: diag(A) must be >= 0");
}

CorrelationSpec::CorrelationSpec(Eigen::MatrixXd r) : R(std::move(r)) {
    if (R.rows() != R.cols()) throw std::invalid_argument("CorrelationSpec: R not square");
    if (!R.isApprox(R.transpose(), 1e-10))
        throw std::invalid_argument("CorrelationSpec: R not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    Eigen::VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) {
        if (d(i) < -1e-10 || d(i) > 1.0 + 1e-10)
            throw std::invalid_argument("CorrelationSpec: spectrum of R outside [0, 1]");
        d(i) = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, d(i)) * std::min(1.0, d(i))));
    }
    residual_sqrt = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

McEstimate mehler_apply(const MatrixFunctional& f, const Eigen::MatrixXd& X,
                        const MehlerSpec& spec, int mc_samples, RngStream& rng) {
    int l = static_cast<int>(X.rows());
    int n = static_cast<int>(X.cols());
    if (spec.diag_a.size() != n) throw std::invalid_argument("mehler_apply: diag(A) must have n entries");

    // right-invariance spot check on a few Haar rotations
    double f0 = f(X);
    double scale = std::max(1.0, std::abs(f0));
    for (int i = 0; i < 3; ++i) {
        Eigen::MatrixXd H = sample_stiefel_haar(n, n, rng);
        if (std::abs(f(X * H.transpose()) - f0) > 1e-8 * scale)
            throw std::invalid_argument("mehler_apply: f is not right-orthogonally invariant");
    }

    Eigen::VectorXd decay(n), residual(n);
    for (int j = 0; j < n; ++j) {
        decay(j) = std::exp(-spec.t * spec.diag_a(j));
        residual(j) = std::sqrt(std::max(0.0, 1.0 - decay(j) * decay(j)));
    }
    RunningStats stats;
    for (int s = 0; s < mc_samples; ++s) {
        Eigen::MatrixXd H = sample_stiefel_haar(n, n, rng);
        Eigen::MatrixXd X0 = sample_standard_gaussian(l, n, rng);
        Eigen::MatrixXd Y = (X * H) * decay.asDiagonal();
        Y += X0 * residual.asDiagonal();
        stats.add(f(Y));
    }
    return {stats.mean(), stats.std_error(), static_cast<long long>(stats.count())};
}

double eigenvalue_ratio(const Partition& kappa, const MehlerSpec& spec, int n,
                        const ZonalTable& table) {
    if (spec.diag_a.size() != n)
        throw std::invalid_argument("eigenvalue_ratio: diag(A) must have n entries");
    std::vector<double> eigs(n);
    for (int j = 0; j < n; ++j) eigs[j] = std::exp(-2.0 * spec.t * spec.diag_a(j));
    return table.zonal_eval(kappa, eigs) / to_double(table.identity_value(kappa, n));
}

double correlated_covariance_closed_form(const Partition& kappa, const Partition& sigma,
                                         const Eigen::MatrixXd& R, const MatPolyContext& ctx) {
    if (kappa != sigma) return 0.0;
    int k = kappa.weight();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
    std::vector<double> r2(es.eigenvalues().size());
    for (std::size_t i = 0; i < r2.size(); ++i)
        r2[i] = es.eigenvalues()(i) * es.eigenvalues()(i);
    double ck_r2 = ctx.table->zonal_eval(kappa, r2);
    Rational norm = pow_rat(Rational(1, 4), k) / gen_pochhammer(Rational(ctx.n, 2), kappa) *
                    Rational(factorial(k)) * ctx.table->identity_value(kappa, ctx.l) /
                    ctx.table->identity_value(kappa, ctx.n);
    return to_double(norm) * ck_r2;
}

CorrelatedCovariance correlated_hermite_covariance(const Partition& kappa, const Partition& sigma,
                                                   const CorrelationSpec& spec,
                                                   const MatPolyContext& ctx, int mc_samples,
                                                   RngStream& rng) {
    if (spec.R.rows() != ctx.n) throw std::invalid_argument("correlated covariance: R must be n x n");
    HermiteEvaluator hk(kappa, ctx), hs(sigma, ctx);
    RunningStats stats;
    for (int s = 0; s < mc_samples; ++s) {
        Eigen::MatrixXd X = sample_standard_gaussian(ctx.l, ctx.n, rng);
        Eigen::MatrixXd X0 = sample_standard_gaussian(ctx.l, ctx.n, rng);
        Eigen::MatrixXd Y = X * spec.R + X0 * spec.residual_sqrt;
        stats.add(hk(X) * hs(Y));
    }
    CorrelatedCovariance out;
    out.estimate = {stats.mean(), stats.std_error(), static_cast<long long>(stats.count())};
    out.closed_form = correlated_covariance_closed_form(kappa, sigma, spec.R, ctx);
    out.z_score = (out.estimate.value - out.closed_form) /
                  (out.estimate.std_error > 0 ? out.estimate.std_error : 1.0);
    return out;
}

}  // namespace mhp
