#include "mhp/matpoly.hpp"

#include <cmath>
#include <stdexcept>

namespace mhp {

MatPolyContext::MatPolyContext(int l_, int n_, const ZonalTable& table_)
    : l(l_), n(n_), table(&table_), gamma_order(0.5 * (n_ - l_ - 1)) {
    if (l < 1 || l > n) throw std::invalid_argument("MatPolyContext: need 1 <= l <= n");
}

HermiteNormalization hermite_normalization(const Partition& kappa, const MatPolyContext& ctx) {
    int k = kappa.weight();
    Rational poch = gen_pochhammer(Rational(ctx.n, 2), kappa);
    Rational c = pow_rat(Rational(1, 4), k) / poch * Rational(factorial(k)) *
                 ctx.table->identity_value(kappa, ctx.l);
    Rational g = pow_rat(Rational(-1, 2), k) / poch;
    return {to_double(c), to_double(g)};
}

double c_kappa_sigma(const Partition& kappa, const MatPolyContext& ctx,
                     const Eigen::MatrixXd& sigma) {
    double det = sigma.determinant();
    return std::pow(det, 2.0 * ctx.l * kappa.weight()) * hermite_normalization(kappa, ctx).c_kappa;
}

void CompiledSpectralPoly::add(const Partition& nu, double coeff) {
    if (coeff == 0.0) return;
    Term t;
    t.powers = nu.parts();
    t.coeff = coeff;
    if (!t.powers.empty()) max_power_ = std::max(max_power_, t.powers.front());
    if (max_power_ >= 16) throw std::invalid_argument("CompiledSpectralPoly: power-sum index cap is 15");
    // merge duplicate keys so hot loops see each monomial once
    for (auto& existing : terms_) {
        if (existing.powers == t.powers) {
            existing.coeff += t.coeff;
            return;
        }
    }
    terms_.push_back(std::move(t));
}

double CompiledSpectralPoly::eval(const std::vector<double>& eigenvalues) const {
    // t_r = sum_i s_i^r, built once by repeated multiplication
    double t[16];
    double pw[32];
    std::size_t m = eigenvalues.size();
    if (m > 32) throw std::invalid_argument("CompiledSpectralPoly: more than 32 eigenvalues");
    for (std::size_t i = 0; i < m; ++i) pw[i] = eigenvalues[i];
    for (int r = 1; r <= max_power_; ++r) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (r > 1) pw[i] *= eigenvalues[i];
            s += pw[i];
        }
        t[r] = s;
    }
    double out = 0;
    for (const auto& term : terms_) {
        double v = term.coeff;
        for (int r : term.powers) v *= t[r];
        out += v;
    }
    return out;
}

CompiledSpectralPoly compile_laguerre(const Partition& kappa, double gamma, int ell,
                                      const ZonalTable& table) {
    CompiledSpectralPoly poly;
    int k = kappa.weight();
    if (kappa.length() > ell) return poly;  // identically zero
    double a = gamma + 0.5 * (ell + 1);
    double pref = gen_pochhammer(a, kappa) * to_double(table.identity_value(kappa, ell));
    for (int s = 0; s <= k; ++s) {
        for (const auto& sigma : table.partitions_of(s)) {
            if (sigma.length() > ell) continue;
            Rational b = table.generalized_binomial(kappa, sigma);
            if (b == 0) continue;
            double w = pref * to_double(b) * ((s % 2) ? -1.0 : 1.0) /
                       (gen_pochhammer(a, sigma) * to_double(table.identity_value(sigma, ell)));
            for (const auto& [nu, c] : table.zonal_powersum(sigma).terms())
                poly.add(nu, w * to_double(c));
        }
    }
    return poly;
}

double laguerre_eval(const Partition& kappa, double gamma,
                     const std::vector<double>& s_eigenvalues, const MatPolyContext& ctx) {
    if (gamma <= -1.0) throw std::invalid_argument("laguerre_eval: gamma must be > -1");
    if (static_cast<int>(s_eigenvalues.size()) != ctx.l)
        throw std::invalid_argument("laguerre_eval: eigenvalue count must equal l");
    return compile_laguerre(kappa, gamma, ctx.l, *ctx.table).eval(s_eigenvalues);
}

std::vector<double> gram_half_eigenvalues(const Eigen::MatrixXd& X) {
    Eigen::MatrixXd gram = X * X.transpose() * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + gram.rows());
    return eigs;
}

double hermite_eval(const Partition& kappa, const Eigen::MatrixXd& X, const MatPolyContext& ctx) {
    if (X.rows() != ctx.l || X.cols() != ctx.n)
        throw std::invalid_argument("hermite_eval: matrix dimensions do not match context");
    return HermiteEvaluator(kappa, ctx)(X);
}

double hermite_eval_sigma(const Partition& kappa, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& sigma, const MatPolyContext& ctx) {
    if (sigma.rows() != ctx.n || sigma.cols() != ctx.n)
        throw std::invalid_argument("hermite_eval_sigma: Sigma must be n x n");
    Eigen::MatrixXd isqrt = sym_inv_sqrt(sigma);  // throws if not positive-definite
    double det = sigma.determinant();
    return std::pow(det, static_cast<double>(ctx.l) * kappa.weight()) *
           hermite_eval(kappa, X * isqrt, ctx);
}

HermiteEvaluator::HermiteEvaluator(const Partition& kappa, const MatPolyContext& ctx)
    : l_(ctx.l) {
    if (kappa.weight() > ctx.table->max_degree())
        throw std::out_of_range("HermiteEvaluator: kappa beyond table degree");
    poly_ = compile_laguerre(kappa, ctx.gamma_order, ctx.l, *ctx.table);
    gamma_kappa_ = hermite_normalization(kappa, ctx).gamma_kappa;
}

double HermiteEvaluator::operator()(const Eigen::MatrixXd& X) const {
    return from_eigenvalues_of_half_gram(gram_half_eigenvalues(X));
}

double HermiteEvaluator::from_eigenvalues_of_half_gram(const std::vector<double>& eigs) const {
    return gamma_kappa_ * poly_.eval(eigs);
}

namespace {
inline double h1(double x) { return x; }
inline double h2(double x) { return x * x - 1.0; }
inline double h4(double x) {
    double x2 = x * x;
    return x2 * x2 - 6.0 * x2 + 3.0;
}
}  // namespace

double hermite_univariate_expansion(const Partition& kappa, const Eigen::MatrixXd& X) {
    int l = static_cast<int>(X.rows());
    int n = static_cast<int>(X.cols());
    if (kappa == Partition{}) return 1.0;
    if (kappa == Partition{1}) {
        double s = 0;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < n; ++j) s += h2(X(i, j));
        return s / (2.0 * n);
    }
    if (kappa == Partition{2}) {
        double t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < n; ++j) t1 += h4(X(i, j));
        for (int i1 = 0; i1 < l; ++i1)
            for (int i2 = 0; i2 < l; ++i2) {
                if (i1 == i2) continue;
                for (int j = 0; j < n; ++j) t2 += h2(X(i1, j)) * h2(X(i2, j));
            }
        for (int i = 0; i < l; ++i)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    if (j1 == j2) continue;
                    t3 += h2(X(i, j1)) * h2(X(i, j2));
                }
        for (int i1 = 0; i1 < l; ++i1)
            for (int i2 = 0; i2 < l; ++i2) {
                if (i1 == i2) continue;
                for (int j1 = 0; j1 < n; ++j1)
                    for (int j2 = 0; j2 < n; ++j2) {
                        if (j1 == j2) continue;
                        t4 += h2(X(i1, j1)) * h2(X(i2, j2));
                        t5 += h1(X(i1, j1)) * h1(X(i2, j1)) * h1(X(i1, j2)) * h1(X(i2, j2));
                    }
            }
        return (3 * t1 + 3 * t2 + 3 * t3 + t4 + 2 * t5) / (12.0 * n * (n + 2));
    }
    if (kappa == Partition{1, 1}) {
        if (l < 2) return 0.0;  // both double sums over i1 != i2 are empty
        double t4 = 0, t5 = 0;
        for (int i1 = 0; i1 < l; ++i1)
            for (int i2 = 0; i2 < l; ++i2) {
                if (i1 == i2) continue;
                for (int j1 = 0; j1 < n; ++j1)
                    for (int j2 = 0; j2 < n; ++j2) {
                        if (j1 == j2) continue;
                        t4 += h2(X(i1, j1)) * h2(X(i2, j2));
                        t5 += h1(X(i1, j1)) * h1(X(i2, j1)) * h1(X(i1, j2)) * h1(X(i2, j2));
                    }
            }
        return (t4 - t5) / (6.0 * n * (n - 1));
    }
    throw std::invalid_argument("hermite_univariate_expansion: unsupported partition " +
                                kappa.to_string());
}

namespace {

Eigen::MatrixXd sym_pow(const Eigen::MatrixXd& S, double expo, double floor_rel) {
    if (S.rows() != S.cols()) throw std::invalid_argument("sym_pow: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    double floor = floor_rel * std::abs(S.trace());
    Eigen::VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) {
        if (d(i) <= floor)
            throw std::domain_error("matrix not positive-definite within eigenvalue floor");
        d(i) = std::pow(d(i), expo);
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& S, double floor_rel) {
    return sym_pow(S, 0.5, floor_rel);
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& S, double floor_rel) {
    return sym_pow(S, -0.5, floor_rel);
}

}  // namespace mhp
