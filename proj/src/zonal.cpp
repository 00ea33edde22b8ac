#include "mhp/zonal.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace mhp {

namespace {

// rho(lambda) = sum_i lambda_i (lambda_i - i), the recurrence denominator scale
long long rho(const Partition& lam) {
    long long s = 0;
    for (int i = 0; i < lam.length(); ++i)
        s += static_cast<long long>(lam.parts()[i]) * (lam.parts()[i] - (i + 1));
    return s;
}

}  // namespace

ZonalTable::ZonalTable(int max_degree) { build(max_degree); }

void ZonalTable::build(int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("ZonalTable: max_degree must be >= 0");
    if (max_degree > kMaxSupportedDegree)
        throw std::invalid_argument("ZonalTable: max_degree above the supported cap of 8");
    max_degree_ = max_degree;
    partitions_.resize(max_degree + 1);
    for (int k = 0; k <= max_degree; ++k) partitions_[k] = enumerate_partitions(k, std::max(k, 1));

    for (int k = 0; k <= max_degree; ++k) {
        const auto& parts = partitions_[k];
        // unit-leading coefficient rows r[kappa][lambda] from the dominance recurrence
        std::map<Partition, SymPoly, RevLexLess> unit_rows;
        for (const auto& kappa : parts) {
            SymPoly row = SymPoly::monomial(kappa, 1);
            for (const auto& lam : parts) {  // rev-lex order refines dominance downward
                if (lam == kappa || !Partition::dominates(kappa, lam)) continue;
                Rational tot = 0;
                const auto& lp = lam.parts();
                for (int i = 0; i < lam.length(); ++i) {
                    for (int j = i + 1; j < lam.length(); ++j) {
                        for (int t = 1; t <= lp[j]; ++t) {
                            std::vector<int> mu = lp;
                            mu[i] += t;
                            mu[j] -= t;
                            std::vector<int> clean;
                            for (int x : mu)
                                if (x > 0) clean.push_back(x);
                            std::sort(clean.begin(), clean.end(), std::greater<int>());
                            Rational c = row.coeff(Partition(std::move(clean)));
                            if (c != 0) tot += Rational(lp[i] - lp[j] + 2 * t) * c;
                        }
                    }
                }
                long long denom = rho(kappa) - rho(lam);
                row.add_term(lam, tot / Rational(denom));
            }
            unit_rows[kappa] = std::move(row);
        }
        // rescale so sum_kappa C_kappa = (t_1)^k: triangular solve in rev-lex order
        // against the expansion (sum y_i)^k = sum_lambda k!/prod(lambda_i!) m_lambda
        std::map<Partition, Rational, RevLexLess> scale;
        for (const auto& kappa : parts) {
            BigInt den = 1;
            for (int p : kappa.parts()) den *= factorial(p);
            Rational target(factorial(k), den);
            Rational acc = 0;
            for (const auto& [prev, s] : scale) acc += s * unit_rows.at(prev).coeff(kappa);
            scale[kappa] = target - acc;
        }
        for (const auto& kappa : parts) {
            SymPoly row = unit_rows.at(kappa);
            row *= scale.at(kappa);
            powersum_rows_[kappa] = monomial_to_powersum(row, std::max(k, 1));
            monomial_rows_[kappa] = std::move(row);
        }
    }

    // generalized binomials, computed at two variable counts to pin
    // nvars-independence at build time
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& kappa : partitions_[k]) {
            auto& row = binomials_[{kappa, Partition{}}];
            row = 1;
            int nv = std::max(k, 1);
            for (int s = 1; s <= k; ++s) {
                for (const auto& sigma : partitions_[s]) {
                    Rational a = binomial_at_nvars(kappa, sigma, nv);
                    Rational b = binomial_at_nvars(kappa, sigma, nv + 1);
                    if (a != b)
                        throw std::logic_error("generalized binomial depends on variable count");
                    binomials_[{kappa, sigma}] = a;
                }
            }
        }
    }

    // linearization tensors a^kappa_{tau,sigma} for weight(tau)+weight(sigma) <= max_degree
    for (int t = 0; t <= max_degree; ++t) {
        for (int s = 0; s + t <= max_degree; ++s) {
            for (const auto& tau : partitions_[t]) {
                for (const auto& sigma : partitions_[s]) {
                    SymPoly prod = sym_multiply(monomial_rows_.at(tau), monomial_rows_.at(sigma));
                    auto coeffs = expand_in_zonal(prod, t + s, std::max(t + s, 1));
                    std::map<Partition, Rational, RevLexLess> nz;
                    for (const auto& [kap, c] : coeffs)
                        if (c != 0) nz[kap] = c;
                    linearization_[{tau, sigma}] = std::move(nz);
                }
            }
        }
    }
}

const std::vector<Partition>& ZonalTable::partitions_of(int k) const {
    if (k < 0 || k > max_degree_) throw std::out_of_range("ZonalTable: degree out of range");
    return partitions_[k];
}

const SymPoly& ZonalTable::zonal_monomial(const Partition& kappa) const {
    auto it = monomial_rows_.find(kappa);
    if (it == monomial_rows_.end()) throw std::out_of_range("ZonalTable: partition not tabulated");
    return it->second;
}

const PowerSumPoly& ZonalTable::zonal_powersum(const Partition& kappa) const {
    auto it = powersum_rows_.find(kappa);
    if (it == powersum_rows_.end()) throw std::out_of_range("ZonalTable: partition not tabulated");
    return it->second;
}

Rational ZonalTable::identity_value(const Partition& kappa, int m) const {
    if (m < 1) throw std::invalid_argument("identity_value: m must be >= 1");
    return zonal_monomial(kappa).eval_at_ones(m);
}

Rational ZonalTable::identity_value_closed_form(const Partition& kappa, int m) {
    if (m < 1) throw std::invalid_argument("identity_value_closed_form: m must be >= 1");
    int k = kappa.weight();
    int p = kappa.length();
    if (p == 0) return 1;
    if (p > m) return 0;
    Rational val = pow_rat(Rational(2), 2 * k) * Rational(factorial(k)) *
                   gen_pochhammer(Rational(m, 2), kappa);
    BigInt num = 1;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            num *= 2 * kappa.parts()[i - 1] - 2 * kappa.parts()[j - 1] - i + j;
    BigInt den = 1;
    for (int j = 1; j <= p; ++j) den *= factorial(2 * kappa.parts()[j - 1] + p - j);
    return val * Rational(num, den);
}

Rational ZonalTable::binomial_at_nvars(const Partition& kappa, const Partition& sigma,
                                       int nvars) const {
    int s = sigma.weight();
    if (sigma.length() > nvars || kappa.length() > nvars) return 0;
    SymPoly shifted = shift_variables(zonal_monomial(kappa).restrict_vars(nvars), nvars);
    SymPoly piece = shifted.graded_piece(s).restrict_vars(nvars);
    if (piece.is_zero()) return 0;
    auto coeffs = expand_in_zonal(piece, s, nvars);
    auto it = coeffs.find(sigma);
    if (it == coeffs.end() || it->second == 0) return 0;
    return it->second * identity_value(sigma, nvars) / identity_value(kappa, nvars);
}

Rational ZonalTable::generalized_binomial(const Partition& kappa, const Partition& sigma) const {
    if (sigma.weight() > kappa.weight())
        throw std::invalid_argument("generalized_binomial: weight(sigma) > weight(kappa)");
    if (kappa.weight() > max_degree_)
        throw std::out_of_range("generalized_binomial: kappa beyond table degree");
    auto it = binomials_.find({kappa, sigma});
    return it == binomials_.end() ? Rational(0) : it->second;
}

const std::map<Partition, Rational, RevLexLess>& ZonalTable::linearization(
    const Partition& tau, const Partition& sigma) const {
    auto it = linearization_.find({tau, sigma});
    if (it == linearization_.end())
        throw std::out_of_range("linearization: pair beyond table degree");
    return it->second;
}

double ZonalTable::zonal_eval(const Partition& kappa, const std::vector<double>& eigenvalues) const {
    return zonal_powersum(kappa).eval(eigenvalues);
}

std::map<Partition, Rational, RevLexLess> ZonalTable::expand_in_zonal(const SymPoly& poly,
                                                                      int degree, int nvars) const {
    if (degree > max_degree_) throw std::out_of_range("expand_in_zonal: degree beyond table");
    SymPoly rem = poly.graded_piece(degree).restrict_vars(nvars);
    std::map<Partition, Rational, RevLexLess> out;
    for (const auto& sigma : partitions_of(degree)) {
        if (sigma.length() > nvars) continue;
        const SymPoly& row = zonal_monomial(sigma);
        Rational lead = row.coeff(sigma);
        Rational c = rem.coeff(sigma) / lead;
        out[sigma] = c;
        if (c != 0) {
            SymPoly scaled = row.restrict_vars(nvars);
            scaled *= c;
            rem -= scaled;
        }
    }
    if (!rem.is_zero()) throw std::logic_error("expand_in_zonal: residual after triangular solve");
    return out;
}

void ZonalTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open table cache for writing: " + path.string());
    os << to_json_string();
}

std::string ZonalTable::to_json_string() const {
    nlohmann::json j;
    j["version"] = kCacheVersion;
    j["max_degree"] = max_degree_;
    nlohmann::json order = nlohmann::json::array();
    for (int k = 0; k <= max_degree_; ++k) {
        nlohmann::json names = nlohmann::json::array();
        for (const auto& p : partitions_[k]) names.push_back(p.to_string());
        order.push_back(names);
    }
    j["partition_order"] = order;
    auto dump_poly = [](const SymPoly& p) {
        nlohmann::json t = nlohmann::json::object();
        for (const auto& [lam, c] : p.terms()) t[lam.to_string()] = rat_to_string(c);
        return t;
    };
    auto dump_ppoly = [](const PowerSumPoly& p) {
        nlohmann::json t = nlohmann::json::object();
        for (const auto& [nu, c] : p.terms()) t[nu.to_string()] = rat_to_string(c);
        return t;
    };
    nlohmann::json rows = nlohmann::json::object();
    for (const auto& [kap, row] : monomial_rows_) rows[kap.to_string()] = dump_poly(row);
    j["zonal_in_monomial"] = rows;
    nlohmann::json prows = nlohmann::json::object();
    for (const auto& [kap, row] : powersum_rows_) prows[kap.to_string()] = dump_ppoly(row);
    j["zonal_in_powersum"] = prows;
    nlohmann::json bin = nlohmann::json::object();
    for (const auto& [key, c] : binomials_)
        bin[key.first.to_string() + "|" + key.second.to_string()] = rat_to_string(c);
    j["binomials"] = bin;
    nlohmann::json lin = nlohmann::json::object();
    for (const auto& [key, m] : linearization_) {
        nlohmann::json entry = nlohmann::json::object();
        for (const auto& [kap, c] : m) entry[kap.to_string()] = rat_to_string(c);
        lin[key.first.to_string() + "|" + key.second.to_string()] = entry;
    }
    j["linearization"] = lin;
    return j.dump();
}

ZonalTable ZonalTable::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open table cache: " + path.string());
    nlohmann::json j;
    is >> j;
    if (!j.contains("version") || j["version"].get<std::string>() != kCacheVersion)
        throw std::runtime_error("table cache version mismatch, rebuild required");
    ZonalTable t;
    t.max_degree_ = j["max_degree"].get<int>();
    t.partitions_.resize(t.max_degree_ + 1);
    for (int k = 0; k <= t.max_degree_; ++k)
        for (const auto& name : j["partition_order"][k])
            t.partitions_[k].push_back(Partition::parse(name.get<std::string>()));
    for (const auto& [name, terms] : j["zonal_in_monomial"].items()) {
        SymPoly row;
        for (const auto& [lam, c] : terms.items())
            row.add_term(Partition::parse(lam), rat_from_string(c.get<std::string>()));
        t.monomial_rows_[Partition::parse(name)] = std::move(row);
    }
    for (const auto& [name, terms] : j["zonal_in_powersum"].items()) {
        PowerSumPoly row;
        for (const auto& [nu, c] : terms.items())
            row.add_term(Partition::parse(nu), rat_from_string(c.get<std::string>()));
        t.powersum_rows_[Partition::parse(name)] = std::move(row);
    }
    auto split = [](const std::string& s) {
        auto pos = s.find('|');
        return std::make_pair(Partition::parse(s.substr(0, pos)), Partition::parse(s.substr(pos + 1)));
    };
    for (const auto& [key, c] : j["binomials"].items())
        t.binomials_[split(key)] = rat_from_string(c.get<std::string>());
    for (const auto& [key, entry] : j["linearization"].items()) {
        std::map<Partition, Rational, RevLexLess> m;
        for (const auto& [kap, c] : entry.items())
            m[Partition::parse(kap)] = rat_from_string(c.get<std::string>());
        t.linearization_[split(key)] = std::move(m);
    }
    return t;
}

const ZonalTable& shared_zonal_table(int min_degree) {
    static std::mutex mu;
    static std::unique_ptr<ZonalTable> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->max_degree() < min_degree)
        table = std::make_unique<ZonalTable>(min_degree);
    return *table;
}

}  // namespace mhp
