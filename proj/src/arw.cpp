#include "mhp/arw.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <thread>

#include "mhp/partition.hpp"
#include "mhp/stats.hpp"

namespace mhp {

namespace {

std::mutex fftw_mutex;  // plan creation/destruction is not thread-safe

// Synthesizes sum_k c_k exp(+2 pi i k.g / G) on the G^3 grid (one plan per instance).
class FftSynth {
  public:
    explicit FftSynth(int G) : G_(G) {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        std::size_t N = static_cast<std::size_t>(G) * G * G;
        in_ = fftw_alloc_complex(N);
        out_ = fftw_alloc_complex(N);
        plan_ = fftw_plan_dft_3d(G, G, G, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftSynth() {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    FftSynth(const FftSynth&) = delete;
    FftSynth& operator=(const FftSynth&) = delete;

    void synthesize(const std::vector<std::pair<std::array<int, 3>, std::complex<double>>>& coeffs,
                    std::vector<double>& out) {
        std::size_t N = static_cast<std::size_t>(G_) * G_ * G_;
        std::memset(in_, 0, N * sizeof(fftw_complex));
        for (const auto& [k, c] : coeffs) {
            std::size_t idx = 0;
            for (int d = 0; d < 3; ++d) {
                int m = k[d] % G_;
                if (m < 0) m += G_;
                idx = idx * G_ + m;
            }
            in_[idx][0] += c.real();
            in_[idx][1] += c.imag();
        }
        fftw_execute(plan_);
        out.resize(N);
        for (std::size_t i = 0; i < N; ++i) out[i] = out_[i][0];
    }

  private:
    int G_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan plan_;
};

}  // namespace

FrequencySet build_frequency_set(int n) {
    if (n < 1) throw std::invalid_argument("build_frequency_set: n must be >= 1");
    FrequencySet fs;
    fs.n = n;
    int r = static_cast<int>(std::lround(std::floor(std::sqrt(static_cast<double>(n)))));
    while ((r + 1) * (r + 1) <= n) ++r;
    while (r * r > n) --r;
    for (int a = -r; a <= r; ++a)
        for (int b = -r; b <= r; ++b) {
            int c2 = n - a * a - b * b;
            if (c2 < 0) continue;
            int c = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c2))));
            while (c * c > c2) --c;
            while ((c + 1) * (c + 1) <= c2) ++c;
            if (c * c != c2) continue;
            fs.lambdas.push_back({a, b, c});
            if (c != 0) fs.lambdas.push_back({a, b, -c});
        }
    if (fs.lambdas.empty()) throw NotRepresentableError(n);
    std::sort(fs.lambdas.begin(), fs.lambdas.end());
    for (const auto& lam : fs.lambdas) {
        std::array<int, 3> neg{-lam[0], -lam[1], -lam[2]};
        if (lam > neg) fs.half_set.push_back(lam);
    }
    return fs;
}

double gradient_variance(int n) { return 4.0 * M_PI * M_PI * n / 3.0; }

int alias_free_grid(int n) {
    int bound = 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
    auto smooth = [](int g) {
        for (int p : {2, 3, 5, 7})
            while (g % p == 0) g /= p;
        return g == 1;
    };
    int g = bound;
    while (!smooth(g)) ++g;
    return g;
}

WaveSample sample_field(const FrequencySet& freq, int l, RngStream& rng) {
    if (l < 1 || l > 3) throw std::invalid_argument("sample_field: l must be in 1..3");
    WaveSample s;
    s.freq = &freq;
    s.l = l;
    s.coeffs.resize(l);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < l; ++i) {
        s.coeffs[i].reserve(freq.half_set.size());
        for (std::size_t h = 0; h < freq.half_set.size(); ++h) {
            double xi = rng.normal(), eta = rng.normal();
            s.coeffs[i].emplace_back(xi * inv_sqrt2, eta * inv_sqrt2);
        }
    }
    return s;
}

double eval_field(const WaveSample& s, int copy, const std::array<double, 3>& z) {
    const auto& half = s.freq->half_set;
    double scale = 1.0 / std::sqrt(static_cast<double>(s.freq->count()));
    double out = 0;
    for (std::size_t h = 0; h < half.size(); ++h) {
        double phase = 2.0 * M_PI * (half[h][0] * z[0] + half[h][1] * z[1] + half[h][2] * z[2]);
        std::complex<double> e(std::cos(phase), std::sin(phase));
        out += 2.0 * std::real(s.coeffs[copy][h] * e);
    }
    return scale * out;
}

std::array<double, 3> eval_gradient_normalized(const WaveSample& s, int copy,
                                               const std::array<double, 3>& z) {
    const auto& half = s.freq->half_set;
    double w = std::sqrt(3.0 / (static_cast<double>(s.freq->n) * s.freq->count()));
    std::array<double, 3> out{0, 0, 0};
    for (std::size_t h = 0; h < half.size(); ++h) {
        double phase = 2.0 * M_PI * (half[h][0] * z[0] + half[h][1] * z[1] + half[h][2] * z[2]);
        std::complex<double> e(std::cos(phase), std::sin(phase));
        double common = 2.0 * std::real(std::complex<double>(0.0, 1.0) * s.coeffs[copy][h] * e);
        for (int j = 0; j < 3; ++j) out[j] += w * half[h][j] * common;
    }
    return out;
}

std::vector<std::vector<double>> synthesize_normalized_gradients(const WaveSample& s, int G) {
    const auto& half = s.freq->half_set;
    double w = std::sqrt(3.0 / (static_cast<double>(s.freq->n) * s.freq->count()));
    FftSynth synth(G);
    std::vector<std::vector<double>> grids(3 * s.l);
    std::vector<std::pair<std::array<int, 3>, std::complex<double>>> coeffs;
    coeffs.reserve(2 * half.size());
    for (int i = 0; i < s.l; ++i) {
        for (int j = 0; j < 3; ++j) {
            coeffs.clear();
            for (std::size_t h = 0; h < half.size(); ++h) {
                std::complex<double> c = std::complex<double>(0.0, w * half[h][j]) * s.coeffs[i][h];
                coeffs.push_back({half[h], c});
                coeffs.push_back({{-half[h][0], -half[h][1], -half[h][2]}, std::conj(c)});
            }
            synth.synthesize(coeffs, grids[i * 3 + j]);
        }
    }
    return grids;
}

namespace {

double grid_mean_sqrt_gram_det(const std::vector<std::vector<double>>& g, int l) {
    std::size_t N = g[0].size();
    KahanSum acc;
    if (l == 1) {
        for (std::size_t p = 0; p < N; ++p) {
            double a = g[0][p] * g[0][p] + g[1][p] * g[1][p] + g[2][p] * g[2][p];
            acc.add(std::sqrt(a));
        }
    } else if (l == 2) {
        for (std::size_t p = 0; p < N; ++p) {
            double a = g[0][p] * g[0][p] + g[1][p] * g[1][p] + g[2][p] * g[2][p];
            double b = g[0][p] * g[3][p] + g[1][p] * g[4][p] + g[2][p] * g[5][p];
            double c = g[3][p] * g[3][p] + g[4][p] * g[4][p] + g[5][p] * g[5][p];
            acc.add(std::sqrt(std::max(0.0, a * c - b * b)));
        }
    } else {
        for (std::size_t p = 0; p < N; ++p) {
            double m[3][3];
            for (int r = 0; r < 3; ++r)
                for (int c = r; c < 3; ++c) {
                    double v = 0;
                    for (int j = 0; j < 3; ++j) v += g[r * 3 + j][p] * g[c * 3 + j][p];
                    m[r][c] = m[c][r] = v;
                }
            double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            acc.add(std::sqrt(std::max(0.0, det)));
        }
    }
    return acc.value() / static_cast<double>(N);
}

}  // namespace

double total_variation(const WaveSample& s, int G) {
    auto grids = synthesize_normalized_gradients(s, G);
    double mean = grid_mean_sqrt_gram_det(grids, s.l);
    return std::pow(gradient_variance(s.freq->n), 0.5 * s.l) * mean;
}

double second_chaos_stat(const WaveSample& s) {
    double scale = 1.0 / std::sqrt(0.5 * s.freq->count());
    double out = 0;
    for (int i = 0; i < s.l; ++i) {
        KahanSum acc;
        for (const auto& a : s.coeffs[i]) acc.add(std::norm(a) - 1.0);
        out += scale * acc.value();
    }
    return out / std::sqrt(static_cast<double>(s.l));
}

double second_chaos_quadrature_gap(const WaveSample& s, int G) {
    auto grids = synthesize_normalized_gradients(s, G);
    std::size_t N = grids[0].size();
    KahanSum acc;
    for (std::size_t p = 0; p < N; ++p) {
        double h = 0;
        for (const auto& comp : grids) h += comp[p] * comp[p] - 1.0;
        acc.add(h / 6.0);
    }
    double h1_mean = acc.value() / static_cast<double>(N);
    int n = s.freq->n;
    // Phi1 equals the kappa=(0) coefficient 2^{l/2} Gamma_l(2)/Gamma_l(3/2)
    double phi1 = arw_theory_mean(n, s.l) / std::pow(gradient_variance(n), 0.5 * s.l);
    double lhs = std::pow(gradient_variance(n), 0.5 * s.l) * phi1 * h1_mean;
    double rhs = std::sqrt(arw_theory_var2(n, s.l, s.freq->count())) * second_chaos_stat(s);
    return std::abs(lhs - rhs);
}

double arw_theory_mean(int n, int l) {
    double ratio = std::exp(log_multivariate_gamma(2.0, l) - log_multivariate_gamma(1.5, l));
    return std::pow(gradient_variance(n), 0.5 * l) * std::pow(2.0, 0.5 * l) * ratio;
}

double arw_theory_var2(int n, int l, int N_n) {
    double ratio = std::exp(log_multivariate_gamma(2.0, l) - log_multivariate_gamma(1.5, l));
    return std::pow(gradient_variance(n), l) * std::pow(2.0, l) * ratio * ratio * l /
           (2.0 * N_n);
}

CovarianceDiagnostics covariance_diagnostics(const FrequencySet& freq, int G) {
    CovarianceDiagnostics d;
    d.n = freq.n;
    d.grid = G;
    d.N_n = freq.count();
    d.expected = 9.0 / freq.count();

    double w = 3.0 / (static_cast<double>(freq.n) * freq.count());
    FftSynth synth(G);
    std::vector<double> grid;
    KahanSum total;
    for (int j = 0; j < 3; ++j)
        for (int jp = j; jp < 3; ++jp) {
            std::vector<std::pair<std::array<int, 3>, std::complex<double>>> coeffs;
            coeffs.reserve(freq.lambdas.size());
            for (const auto& lam : freq.lambdas)
                coeffs.push_back({lam, std::complex<double>(w * lam[j] * lam[jp], 0.0)});
            synth.synthesize(coeffs, grid);
            KahanSum sq;
            for (double v : grid) sq.add(v * v);
            double contrib = sq.value() / grid.size();
            total.add(j == jp ? contrib : 2.0 * contrib);

            // R_n(0) from the exact lattice sums
            long long s = 0;
            for (const auto& lam : freq.lambdas) s += static_cast<long long>(lam[j]) * lam[jp];
            double r0 = w * static_cast<double>(s);
            double dev = std::abs(r0 - (j == jp ? 1.0 : 0.0));
            d.rn0_max_dev = std::max(d.rn0_max_dev, dev);
        }
    d.grid_integral = total.value();
    return d;
}

ExperimentSummary run_wave_experiment(const WaveConfig& cfg, int grid_doubling_probes) {
    if (cfg.replicates < 1) throw std::invalid_argument("run_wave_experiment: need replicates >= 1");
    FrequencySet freq = build_frequency_set(cfg.n);
    int G = cfg.grid > 0 ? cfg.grid : alias_free_grid(cfg.n);
    if (G < alias_free_grid(cfg.n))
        throw std::invalid_argument("run_wave_experiment: grid below the alias-free bound");

    ExperimentSummary out;
    out.n = cfg.n;
    out.l = cfg.l;
    out.grid = G;
    out.N_n = freq.count();
    out.replicates = cfg.replicates;
    out.seed = cfg.seed;
    out.theory_mean = arw_theory_mean(cfg.n, cfg.l);
    out.theory_var2 = arw_theory_var2(cfg.n, cfg.l, freq.count());
    out.rows.resize(cfg.replicates);

    int workers = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= cfg.replicates) break;
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
            WaveSample s = sample_field(freq, cfg.l, rng);
            out.rows[r] = {r, total_variation(s, G), second_chaos_stat(s)};
        }
    };
    for (int wkr = 0; wkr < workers; ++wkr) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    RunningStats v_stats;
    std::vector<double> vs, stats;
    vs.reserve(cfg.replicates);
    stats.reserve(cfg.replicates);
    for (const auto& row : out.rows) {
        v_stats.add(row.total_variation);
        vs.push_back(row.total_variation);
        stats.push_back(row.second_chaos_stat);
    }
    out.mean_v = v_stats.mean();
    out.se_mean = v_stats.std_error();
    out.z_mean = (out.mean_v - out.theory_mean) / (out.se_mean > 0 ? out.se_mean : 1.0);
    out.var_v = v_stats.variance();
    out.var_ratio = out.var_v / out.theory_var2;

    if (vs.size() >= 5) {
        out.ks_p_total_variation = ks_test_normal(vs, true).p_value;
        out.ks_p_second_chaos = ks_test_normal(stats, true).p_value;
        RunningStats v2;
        for (double s : stats) v2.add(std::sqrt(out.theory_var2) * s);
        out.chaos2_share = v2.variance() / out.var_v;
    }

    if (grid_doubling_probes > 0) {
        double worst = 0;
        int probes = std::min(grid_doubling_probes, cfg.replicates);
        for (int r = 0; r < probes; ++r) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
            WaveSample s = sample_field(freq, cfg.l, rng);
            double coarse = out.rows[r].total_variation;
            double fine = total_variation(s, 2 * G);
            worst = std::max(worst, std::abs(fine - coarse) / std::abs(fine));
        }
        out.grid_doubling_rel_change = worst;
    }
    return out;
}

}  // namespace mhp
