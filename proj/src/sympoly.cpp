#include "mhp/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace mhp {

SymPoly SymPoly::constant(const Rational& c) {
    SymPoly p;
    p.add_term(Partition{}, c);
    return p;
}

SymPoly SymPoly::monomial(const Partition& lambda, const Rational& c) {
    SymPoly p;
    p.add_term(lambda, c);
    return p;
}

int SymPoly::degree() const {
    int d = 0;
    for (const auto& [lam, c] : terms_) d = std::max(d, lam.weight());
    return d;
}

Rational SymPoly::coeff(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SymPoly::add_term(const Partition& lambda, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(lambda, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [lam, c] : o.terms_) add_term(lam, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    for (const auto& [lam, c] : o.terms_) add_term(lam, -c);
    return *this;
}

SymPoly& SymPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [lam, v] : terms_) v *= c;
    return *this;
}

SymPoly SymPoly::graded_piece(int degree) const {
    SymPoly out;
    for (const auto& [lam, c] : terms_)
        if (lam.weight() == degree) out.add_term(lam, c);
    return out;
}

SymPoly SymPoly::restrict_vars(int nvars) const {
    SymPoly out;
    for (const auto& [lam, c] : terms_)
        if (lam.length() <= nvars) out.add_term(lam, c);
    return out;
}

Rational SymPoly::monomial_at_ones(const Partition& lambda, int m) {
    int p = lambda.length();
    if (p > m) return 0;
    // multiplicities of part values
    BigInt den = factorial(m - p);
    int run = 1;
    for (int i = 1; i <= p; ++i) {
        if (i < p && lambda.parts()[i] == lambda.parts()[i - 1]) {
            ++run;
        } else {
            den *= factorial(run);
            run = 1;
        }
    }
    return Rational(factorial(m), den);
}

Rational SymPoly::eval_at_ones(int m) const {
    Rational out = 0;
    for (const auto& [lam, c] : terms_) out += c * monomial_at_ones(lam, m);
    return out;
}

double SymPoly::eval(const std::vector<double>& eigenvalues) const {
    return eval_monomial_basis(*this, eigenvalues);
}

void PowerSumPoly::add_term(const Partition& nu, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(nu, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

PowerSumPoly& PowerSumPoly::operator+=(const PowerSumPoly& o) {
    for (const auto& [nu, c] : o.terms_) add_term(nu, c);
    return *this;
}

PowerSumPoly PowerSumPoly::graded_piece(int degree) const {
    PowerSumPoly out;
    for (const auto& [nu, c] : terms_)
        if (nu.weight() == degree) out.add_term(nu, c);
    return out;
}

PowerSumPoly PowerSumPoly::multiply(const PowerSumPoly& o) const {
    PowerSumPoly out;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            std::vector<int> parts = a.parts();
            parts.insert(parts.end(), b.parts().begin(), b.parts().end());
            std::sort(parts.begin(), parts.end(), std::greater<int>());
            out.add_term(Partition(std::move(parts)), ca * cb);
        }
    return out;
}

double PowerSumPoly::eval(const std::vector<double>& eigenvalues) const {
    int maxr = 0;
    for (const auto& [nu, c] : terms_)
        if (nu.length() > 0) maxr = std::max(maxr, nu.parts()[0]);
    std::vector<double> t(maxr);
    for (int r = 1; r <= maxr; ++r) {
        double s = 0;
        for (double e : eigenvalues) s += std::pow(e, r);
        t[r - 1] = s;
    }
    return eval_powersums(t);
}

double PowerSumPoly::eval_powersums(const std::vector<double>& t) const {
    double out = 0;
    for (const auto& [nu, c] : terms_) {
        double term = to_double(c);
        for (int r : nu.parts()) term *= t[r - 1];
        out += term;
    }
    return out;
}

double eval_monomial_basis(const SymPoly& p, const std::vector<double>& eigenvalues) {
    // m_lambda(y) = sum over distinct index choices of prod y_i^{lambda_i};
    // enumerate injective assignments, dividing by multiplicities of equal parts.
    int n = static_cast<int>(eigenvalues.size());
    double out = 0;
    for (const auto& [lam, c] : p.terms()) {
        int k = lam.length();
        if (k > n) continue;
        // sum over ordered injective tuples, then divide by prod(mult!)
        double mult = 1;
        int run = 1;
        for (int i = 1; i <= k; ++i) {
            if (i < k && lam.parts()[i] == lam.parts()[i - 1]) {
                ++run;
            } else {
                for (int r = 2; r <= run; ++r) mult *= r;
                run = 1;
            }
        }
        double sum = 0;
        std::vector<int> idx(k);
        std::vector<bool> used(n, false);
        std::function<void(int, double)> rec = [&](int pos, double acc) {
            if (pos == k) {
                sum += acc;
                return;
            }
            for (int i = 0; i < n; ++i) {
                if (used[i]) continue;
                used[i] = true;
                rec(pos + 1, acc * std::pow(eigenvalues[i], lam.parts()[pos]));
                used[i] = false;
            }
        };
        rec(0, 1.0);
        out += to_double(c) * sum / mult;
    }
    return out;
}

namespace {

// p_nu expanded in the monomial basis (stable identity), built by iterated
// multiplication m_lambda * p_r: add r to one part (one way per distinct
// value) or append a new part; coefficient = multiplicity of the changed
// value in the result.
SymPoly powersum_monomials(const Partition& nu) {
    SymPoly res = SymPoly::constant(1);
    for (int r : nu.parts()) {
        SymPoly next;
        for (const auto& [lam, c] : res.terms()) {
            auto add_option = [&](std::vector<int> parts, int changed) {
                std::sort(parts.begin(), parts.end(), std::greater<int>());
                int mult = static_cast<int>(std::count(parts.begin(), parts.end(), changed));
                next.add_term(Partition(std::move(parts)), c * mult);
            };
            std::vector<int> base = lam.parts();
            base.push_back(r);
            add_option(base, r);
            int prev = -1;
            for (int i = 0; i < lam.length(); ++i) {
                int v = lam.parts()[i];
                if (v == prev) continue;
                prev = v;
                std::vector<int> parts = lam.parts();
                parts[i] = v + r;
                add_option(std::move(parts), v + r);
            }
        }
        res = std::move(next);
    }
    return res;
}

// Per-degree change-of-basis m_lambda -> powersums, cached.
struct MonToPow {
    std::map<Partition, PowerSumPoly, RevLexLess> rows;
};

const MonToPow& mon_to_pow_cache(int k) {
    static std::map<int, MonToPow> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    auto parts = enumerate_partitions(k, std::max(k, 1));
    int n = static_cast<int>(parts.size());
    // A[i][j]: coefficient of m_{parts[i]} in p_{parts[j]}
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    std::map<Partition, int, RevLexLess> idx;
    for (int i = 0; i < n; ++i) idx[parts[i]] = i;
    for (int j = 0; j < n; ++j) {
        SymPoly pm = powersum_monomials(parts[j]);
        for (const auto& [lam, c] : pm.terms()) A[idx.at(lam)][j] = c;
    }
    // invert by Gauss-Jordan (exact)
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("powersum basis matrix singular");
        std::swap(M[col], M[piv]);
        Rational pv = M[col][col];
        for (auto& x : M[col]) x /= pv;
        for (int r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col];
            for (int c2 = 0; c2 < 2 * n; ++c2) M[r][c2] -= f * M[col][c2];
        }
    }
    MonToPow table;
    for (int i = 0; i < n; ++i) {
        PowerSumPoly row;
        for (int j = 0; j < n; ++j) row.add_term(parts[j], M[j][n + i]);
        table.rows[parts[i]] = std::move(row);
    }
    return cache.emplace(k, std::move(table)).first->second;
}

}  // namespace

SymPoly sym_multiply(const SymPoly& p, const SymPoly& q) {
    // exact route through the power-sum basis (basis-free product)
    PowerSumPoly acc;
    int dp = p.degree(), dq = q.degree();
    for (int a = 0; a <= dp; ++a) {
        SymPoly pa = p.graded_piece(a);
        if (pa.is_zero()) continue;
        PowerSumPoly ppa = monomial_to_powersum(pa, std::max(a, 1));
        for (int b = 0; b <= dq; ++b) {
            SymPoly qb = q.graded_piece(b);
            if (qb.is_zero()) continue;
            acc += ppa.multiply(monomial_to_powersum(qb, std::max(b, 1)));
        }
    }
    return powersum_to_monomial(acc);
}

PowerSumPoly monomial_to_powersum(const SymPoly& p, int num_vars) {
    int maxlen = 0;
    for (const auto& [lam, c] : p.terms()) maxlen = std::max(maxlen, lam.length());
    if (num_vars < maxlen)
        throw std::invalid_argument("monomial_to_powersum: num_vars below max key length, bases not in bijection");
    PowerSumPoly out;
    for (const auto& [lam, c] : p.terms()) {
        const auto& row = mon_to_pow_cache(lam.weight()).rows.at(lam);
        for (const auto& [nu, v] : row.terms()) out.add_term(nu, c * v);
    }
    return out;
}

SymPoly powersum_to_monomial(const PowerSumPoly& p) {
    SymPoly out;
    for (const auto& [nu, c] : p.terms()) {
        SymPoly pm = powersum_monomials(nu);
        pm *= c;
        out += pm;
    }
    return out;
}

SymPoly shift_variables(const SymPoly& p, int nvars) {
    if (nvars < 1) throw std::invalid_argument("shift_variables: nvars must be >= 1");
    SymPoly restricted = p.restrict_vars(nvars);
    PowerSumPoly shifted;
    int d = restricted.degree();
    for (int k = 0; k <= d; ++k) {
        SymPoly piece = restricted.graded_piece(k);
        if (piece.is_zero()) continue;
        PowerSumPoly pp = monomial_to_powersum(piece, nvars);
        // substitute p_r -> sum_{j=0..r} C(r,j) p_j with p_0 = nvars
        for (const auto& [nu, c] : pp.terms()) {
            std::vector<std::pair<Partition, Rational>> terms{{Partition{}, c}};
            for (int r : nu.parts()) {
                std::vector<std::pair<Partition, Rational>> next;
                for (const auto& [key, val] : terms) {
                    for (int j = 0; j <= r; ++j) {
                        Rational f = Rational(binomial(r, j)) * (j == 0 ? Rational(nvars) : Rational(1));
                        std::vector<int> parts = key.parts();
                        if (j > 0) parts.push_back(j);
                        std::sort(parts.begin(), parts.end(), std::greater<int>());
                        next.emplace_back(Partition(std::move(parts)), val * f);
                    }
                }
                terms = std::move(next);
            }
            for (const auto& [key, val] : terms) shifted.add_term(key, val);
        }
    }
    return powersum_to_monomial(shifted).restrict_vars(nvars);
}

}  // namespace mhp
