#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhp/rng.hpp"

namespace mhp {

// n is not a sum of three squares (n = 4^a (8b + 7)).
class NotRepresentableError : public std::domain_error {
  public:
    explicit NotRepresentableError(int n)
        : std::domain_error("n = " + std::to_string(n) +
                            " is not a sum of three squares (three-square theorem: n = 4^a(8b+7)); "
                            "no frequency set exists") {}
};

// Lattice points on the radius-sqrt(n) sphere. half_set keeps one
// representative per +-lambda pair (the lexicographically positive one).
struct FrequencySet {
    int n = 0;
    std::vector<std::array<int, 3>> lambdas;
    std::vector<std::array<int, 3>> half_set;
    int count() const { return static_cast<int>(lambdas.size()); }  // N_n
};

// Exhaustive enumeration over |lambda_i| <= floor(sqrt(n)); throws
// NotRepresentableError when empty.
FrequencySet build_frequency_set(int n);

// E_n / 3 = 4 pi^2 n / 3, the gradient variance per component.
double gradient_variance(int n);

// Smallest 7-smooth integer >= 4 ceil(sqrt(n)) + 1: alias-free for all
// degree-2 trigonometric functionals of the field, and FFT-friendly.
int alias_free_grid(int n);

// One draw of the l independent wave copies: complex coefficients on the
// half set, a = (xi + i eta)/sqrt(2); the conjugate constraint fixes -lambda.
struct WaveSample {
    const FrequencySet* freq = nullptr;
    int l = 0;
    std::vector<std::vector<std::complex<double>>> coeffs;  // [copy][half index]
};
WaveSample sample_field(const FrequencySet& freq, int l, RngStream& rng);

// Direct summation at a single point (z in the unit torus).
double eval_field(const WaveSample& s, int copy, const std::array<double, 3>& z);
// Normalized gradient (E_n/3)^{-1/2} grad T at z.
std::array<double, 3> eval_gradient_normalized(const WaveSample& s, int copy,
                                               const std::array<double, 3>& z);

// Normalized Jacobian grids synthesized on the G^3 uniform grid (FFT path);
// grids[copy*3 + j][idx] with idx = (x*G + y)*G + zc.
std::vector<std::vector<double>> synthesize_normalized_gradients(const WaveSample& s, int G);

// (E_n/3)^{l/2} G^{-3} sum_grid det(J J^T)^{1/2} with J the normalized Jacobian.
double total_variation(const WaveSample& s, int G);

// (1/sqrt(l)) sum_i (N_n/2)^{-1/2} sum_{lambda in half} (|a_{i,lambda}|^2 - 1);
// centered with unit variance by construction.
double second_chaos_stat(const WaveSample& s);

// Gap |(E_n/3)^{l/2} Phi1 <H_(1)(J)>_grid - sqrt(Var2) stat| of the exact
// degree-2 quadrature identity; zero up to roundoff on alias-free grids.
double second_chaos_quadrature_gap(const WaveSample& s, int G);

// Theorem-side constants: mean (E_n/3)^{l/2} 2^{l/2} Gamma_l(2)/Gamma_l(3/2)
// and leading variance (E_n/3)^l 2^l (Gamma_l(2)/Gamma_l(3/2))^2 l/(2 N_n).
double arw_theory_mean(int n, int l);
double arw_theory_var2(int n, int l, int N_n);

// Grid integral of Tr(R_n(z)^2) against the exact value 9/N_n, plus the
// R_n(0) = Id_3 normalization check.
struct CovarianceDiagnostics {
    int n = 0;
    int grid = 0;
    int N_n = 0;
    double grid_integral = 0.0;
    double expected = 0.0;  // 9 / N_n
    double rn0_max_dev = 0.0;
};
CovarianceDiagnostics covariance_diagnostics(const FrequencySet& freq, int G);

// Frequency set, grid resolution, replicate count and seed for experiments.
struct WaveConfig {
    int n = 614;
    int l = 1;           // copies, 1..3
    int grid = 0;        // 0 = alias_free_grid(n)
    int replicates = 500;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct ReplicateRow {
    int replicate;
    double total_variation;
    double second_chaos_stat;
};

struct ExperimentSummary {
    int n = 0, l = 0, grid = 0, N_n = 0, replicates = 0;
    std::uint64_t seed = 0;
    double mean_v = 0, se_mean = 0, theory_mean = 0, z_mean = 0;
    double var_v = 0, theory_var2 = 0, var_ratio = 0;
    double ks_p_total_variation = 0;  // standardized sample vs normal
    double ks_p_second_chaos = 0;
    double chaos2_share = 0;          // Var(sqrt(Var2) stat) / Var(V)
    double grid_doubling_rel_change = -1.0;  // max over probe replicates, -1 if skipped
    std::vector<ReplicateRow> rows;
};

// Replicated experiment: total variation + second-chaos statistic per
// replicate (stream id = replicate index, so results are independent of the
// worker count). grid_doubling_probes > 0 recomputes that many replicates on
// the doubled grid and records the worst relative change.
ExperimentSummary run_wave_experiment(const WaveConfig& cfg, int grid_doubling_probes = 0);

}  // namespace mhp
