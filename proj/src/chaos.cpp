#include "mhp/chaos.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mhp/sampling.hpp"
#include "mhp/stats.hpp"

namespace mhp {

const char* route_name(CoeffRoute r) {
    switch (r) {
        case CoeffRoute::closed_form: return "closed_form";
        case CoeffRoute::monte_carlo: return "monte_carlo";
        case CoeffRoute::radial_integral: return "radial_integral";
    }
    return "?";
}

namespace {

// exact alternating sum of Eq-style binomial series:
// sum_{s<=k} sum_{sigma |- s} (kappa choose sigma) (-1)^s ((n+1)/2)_sigma / (n/2)_sigma
Rational det_inner_sum(const Partition& kappa, int n, const ZonalTable& table) {
    int k = kappa.weight();
    Rational S = 0;
    for (int s = 0; s <= k; ++s) {
        for (const auto& sigma : table.partitions_of(s)) {
            Rational b = table.generalized_binomial(kappa, sigma);
            if (b == 0) continue;
            Rational term = b * gen_pochhammer(Rational(n + 1, 2), sigma) /
                            gen_pochhammer(Rational(n, 2), sigma);
            S += (s % 2) ? -term : term;
        }
    }
    return S;
}

double gamma_ratio_prefactor(int l, int n) {
    // 2^{l/2} Gamma_l((n+1)/2) / Gamma_l(n/2)
    return std::exp(0.5 * l * std::log(2.0) + log_multivariate_gamma(0.5 * (n + 1), l) -
                    log_multivariate_gamma(0.5 * n, l));
}

}  // namespace

double det_coefficient(const Partition& kappa, int l, int n, const ZonalTable& table) {
    if (l < 1 || l > n) throw std::invalid_argument("det_coefficient: need 1 <= l <= n");
    int k = kappa.weight();
    Rational exact = pow_rat(Rational(-2), k) / Rational(factorial(k)) *
                     gen_pochhammer(Rational(n, 2), kappa) * det_inner_sum(kappa, n, table);
    return gamma_ratio_prefactor(l, n) * to_double(exact);
}

CoefficientRecord det_coefficient_sigma(const Partition& kappa, int l, int n,
                                        const Eigen::MatrixXd& sigma, int stiefel_samples,
                                        RngStream& rng, const ZonalTable& table) {
    if (sigma.rows() != n || sigma.cols() != n)
        throw std::invalid_argument("det_coefficient_sigma: Sigma must be n x n");
    Eigen::MatrixXd sigma_inv = sym_inv_sqrt(sigma);  // positive-definite check
    sigma_inv = sigma_inv * sigma_inv;
    double det_sigma = sigma.determinant();

    RunningStats integral;
    for (int i = 0; i < stiefel_samples; ++i) {
        Eigen::MatrixXd U = sample_stiefel_haar(n, l, rng);
        double d = (U * sigma_inv * U.transpose()).determinant();
        integral.add(std::pow(d, -0.5 * (n + 1)));
    }

    int k = kappa.weight();
    Rational exact = pow_rat(Rational(-2), k) / Rational(factorial(k)) *
                     gen_pochhammer(Rational(n, 2), kappa) * det_inner_sum(kappa, n, table);
    double prefactor = to_double(exact) * std::pow(det_sigma, -static_cast<double>(l) * k) *
                       std::pow(det_sigma, -0.5 * l) * gamma_ratio_prefactor(l, n);
    CoefficientRecord rec;
    rec.kappa = kappa;
    rec.route = CoeffRoute::monte_carlo;
    rec.value = prefactor * integral.mean();
    rec.std_error = std::abs(prefactor) * integral.std_error();
    return rec;
}

CoefficientRecord coefficient_mc(const SpectralFunctional& F, const Partition& kappa, int l, int n,
                                 int samples, RngStream& rng, const ZonalTable& table) {
    MatPolyContext ctx(l, n, table);
    HermiteEvaluator herm(kappa, ctx);
    double inv_c = 1.0 / hermite_normalization(kappa, ctx).c_kappa;
    RunningStats stats;
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXd X = sample_standard_gaussian(l, n, rng);
        std::vector<double> half = gram_half_eigenvalues(X);
        std::vector<double> eigs(half);
        for (double& e : eigs) e *= 2.0;  // eigenvalues of X X^T
        stats.add(F(eigs) * herm.from_eigenvalues_of_half_gram(half));
    }
    CoefficientRecord rec;
    rec.kappa = kappa;
    rec.route = CoeffRoute::monte_carlo;
    rec.value = inv_c * stats.mean();
    rec.std_error = std::abs(inv_c) * stats.std_error();
    return rec;
}

CoefficientRecord radial_coefficient_integral(const SpectralFunctional& f0, const Partition& kappa,
                                              int l, int n, int samples, RngStream& rng,
                                              const ZonalTable& table) {
    // the Wishart weight etr(-R/2) det(R)^{(n-l-1)/2} matches the law of
    // R = X X^T up to the normalization 2^{nl/2} Gamma_l(n/2) absorbed here
    double gamma = 0.5 * (n - l - 1);
    CompiledSpectralPoly lag = compile_laguerre(kappa, gamma, l, table);
    int k = kappa.weight();
    double pref = std::pow(-2.0, k) /
                  (to_double(Rational(factorial(k)) * table.identity_value(kappa, l)));
    RunningStats stats;
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXd X = sample_standard_gaussian(l, n, rng);
        std::vector<double> half = gram_half_eigenvalues(X);
        std::vector<double> eigs(half);
        for (double& e : eigs) e *= 2.0;
        stats.add(f0(eigs) * lag.eval(half));
    }
    CoefficientRecord rec;
    rec.kappa = kappa;
    rec.route = CoeffRoute::radial_integral;
    rec.value = pref * stats.mean();
    rec.std_error = std::abs(pref) * stats.std_error();
    return rec;
}

const CoefficientRecord* ChaosExpansion::find(const Partition& kappa) const {
    for (const auto& rec : coefficients)
        if (rec.kappa == kappa) return &rec;
    return nullptr;
}

ChaosExpansion det_expansion(int l, int n, int max_weight, const ZonalTable& table) {
    ChaosExpansion exp;
    exp.l = l;
    exp.n = n;
    for (int k = 0; k <= max_weight; ++k) {
        for (const auto& kappa : table.partitions_of(k)) {
            if (kappa.length() > l) continue;  // H_kappa vanishes identically
            CoefficientRecord rec;
            rec.kappa = kappa;
            rec.route = CoeffRoute::closed_form;
            rec.value = det_coefficient(kappa, l, n, table);
            exp.coefficients.push_back(std::move(rec));
        }
    }
    return exp;
}

std::vector<double> variance_expansion(const ChaosExpansion& coeffs, int K,
                                       const ZonalTable& table) {
    MatPolyContext ctx(coeffs.l, coeffs.n, table);
    std::vector<double> sums;
    double acc = 0.0;
    for (int k = 1; k <= K; ++k) {
        for (const auto& kappa : table.partitions_of(k)) {
            const CoefficientRecord* rec = coeffs.find(kappa);
            if (!rec) {
                if (kappa.length() <= coeffs.l)
                    throw std::invalid_argument("variance_expansion: missing coefficient for " +
                                                kappa.to_string());
                continue;
            }
            double c = hermite_normalization(kappa, ctx).c_kappa;
            acc += c * rec->value * rec->value;
        }
        sums.push_back(acc);
    }
    return sums;
}

std::string coefficients_to_json(const ChaosExpansion& expansion) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rec : expansion.coefficients) {
        nlohmann::json e;
        e["partition"] = rec.kappa.to_string();
        e["value"] = rec.value;
        e["route"] = route_name(rec.route);
        if (rec.std_error) e["std_error"] = *rec.std_error;
        j.push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace mhp
