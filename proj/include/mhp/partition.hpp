#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "mhp/exact.hpp"

namespace mhp {

// Integer partition kappa = (k_1 >= k_2 >= ... >= k_p > 0). The empty
// partition represents kappa = (0). Immutable after construction.
class Partition {
  public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int part(int i) const { return i < length() ? parts_[i] : 0; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return parts_ != o.parts_; }

    // a dominates b (same weight assumed where it matters)
    static bool dominates(const Partition& a, const Partition& b);

    std::string to_string() const;                  // "2,1" ; "0" for empty
    static Partition parse(const std::string& s);   // inverse of to_string

  private:
    void validate() const;
    std::vector<int> parts_;
};

// Reverse-lexicographic order: (k) first, (1,...,1) last. This is the
// canonical row/column order of every table in the library.
struct RevLexLess {
    bool operator()(const Partition& a, const Partition& b) const {
        // sort by weight first so mixed-weight maps iterate degree by degree
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        return a.parts() > b.parts();  // larger first part comes first
    }
};

// All partitions of k with at most max_length parts, reverse-lexicographic.
// k = 0 yields the single empty partition.
std::vector<Partition> enumerate_partitions(int k, int max_length);

// Generalized Pochhammer symbol (a)_kappa = prod_j (a - (j-1)/2)_{k_j}.
Rational gen_pochhammer(const Rational& a, const Partition& kappa);
double gen_pochhammer(double a, const Partition& kappa);

// Classical rising factorial (a)_n.
Rational rising_factorial(const Rational& a, int n);

// Multivariate Gamma function Gamma_l(a) = pi^{l(l-1)/4} prod_i Gamma(a-(i-1)/2).
// Throws std::domain_error if any Gamma argument is non-positive.
double multivariate_gamma(double a, int ell);
double log_multivariate_gamma(double a, int ell);

}  // namespace mhp
