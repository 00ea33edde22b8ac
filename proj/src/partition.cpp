#include "mhp/partition.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mhp {

void Partition::validate() const {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be non-increasing");
    }
    if (parts_.size() > 64) throw std::invalid_argument("partitions longer than 64 unsupported");
}

bool Partition::dominates(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    int m = std::max(a.length(), b.length());
    for (int i = 0; i < m; ++i) {
        sa += a.part(i);
        sb += b.part(i);
        if (sa < sb) return false;
    }
    return true;
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    return os.str();
}

Partition Partition::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty partition string");
    if (s == "0") return Partition{};
    std::vector<int> parts;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad partition token '" + tok + "'");
        parts.push_back(v);
    }
    return Partition(std::move(parts));  // validate() enforces non-increasing > 0
}

std::vector<Partition> enumerate_partitions(int k, int max_length) {
    if (k < 0) throw std::invalid_argument("enumerate_partitions: k must be >= 0");
    if (max_length < 1) throw std::invalid_argument("enumerate_partitions: max_length must be >= 1");
    std::vector<Partition> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    // descend first parts from large to small: yields reverse-lexicographic order
    auto rec = [&](auto&& self, int rem, int max_part) -> void {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_length) return;
        for (int p = std::min(max_part, rem); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, k, k);
    return out;
}

Rational rising_factorial(const Rational& a, int n) {
    Rational out = 1;
    for (int i = 0; i < n; ++i) out *= (a + i);
    return out;
}

Rational gen_pochhammer(const Rational& a, const Partition& kappa) {
    Rational out = 1;
    for (int j = 0; j < kappa.length(); ++j)
        out *= rising_factorial(a - Rational(j, 2), kappa.parts()[j]);
    return out;
}

double gen_pochhammer(double a, const Partition& kappa) {
    double out = 1.0;
    for (int j = 0; j < kappa.length(); ++j) {
        double x = a - 0.5 * j;
        for (int i = 0; i < kappa.parts()[j]; ++i) out *= (x + i);
    }
    return out;
}

double multivariate_gamma(double a, int ell) {
    return std::exp(log_multivariate_gamma(a, ell));
}

double log_multivariate_gamma(double a, int ell) {
    if (ell < 1) throw std::invalid_argument("multivariate_gamma: ell must be >= 1");
    double lg = 0.25 * ell * (ell - 1) * std::log(M_PI);
    for (int i = 1; i <= ell; ++i) {
        double arg = a - 0.5 * (i - 1);
        if (arg <= 0.0) throw std::domain_error("multivariate_gamma: argument at or beyond a pole");
        lg += std::lgamma(arg);
    }
    return lg;
}

}  // namespace mhp
