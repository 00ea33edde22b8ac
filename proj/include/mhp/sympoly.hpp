#pragma once

#include <map>
#include <vector>

#include "mhp/exact.hpp"
#include "mhp/partition.hpp"

namespace mhp {

// Exact symmetric polynomial in the monomial basis {m_lambda}. Stored in the
// stable (variable-count-free) basis; possibly non-homogeneous. Keys iterate in
// the canonical reverse-lexicographic order so serialization is reproducible.
class SymPoly {
  public:
    using Terms = std::map<Partition, Rational, RevLexLess>;

    SymPoly() = default;
    static SymPoly constant(const Rational& c);
    static SymPoly monomial(const Partition& lambda, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // max key weight, 0 for the zero polynomial
    Rational coeff(const Partition& lambda) const;

    void add_term(const Partition& lambda, const Rational& c);  // drops zeros
    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly& operator*=(const Rational& c);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(SymPoly a, const Rational& c) { return a *= c; }
    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

    // homogeneous piece of the given degree
    SymPoly graded_piece(int degree) const;
    // drop monomials needing more than nvars variables
    SymPoly restrict_vars(int nvars) const;

    // m_lambda(1,...,1) with m ones: number of distinct exponent arrangements
    static Rational monomial_at_ones(const Partition& lambda, int m);
    Rational eval_at_ones(int m) const;
    double eval(const std::vector<double>& eigenvalues) const;

  private:
    Terms terms_;
};

// Exact polynomial in power sums: key nu stands for prod_s p_{nu_s} where
// p_r(y) = sum_i y_i^r (equivalently t_r(X) = Tr([XX^T]^r) at eigenvalues).
class PowerSumPoly {
  public:
    using Terms = std::map<Partition, Rational, RevLexLess>;

    PowerSumPoly() = default;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Partition& nu, const Rational& c);
    PowerSumPoly& operator+=(const PowerSumPoly& o);
    PowerSumPoly graded_piece(int degree) const;

    PowerSumPoly multiply(const PowerSumPoly& o) const;  // multiset union of indices
    double eval(const std::vector<double>& eigenvalues) const;
    double eval_powersums(const std::vector<double>& t) const;  // t[r-1] = p_r

  private:
    Terms terms_;
};

// Exact product in the monomial basis (degrees add).
SymPoly sym_multiply(const SymPoly& p, const SymPoly& q);

// Exact stable basis changes. monomial_to_powersum validates that num_vars is
// at least the longest key (the truncated bases are not in bijection below
// that) and throws std::invalid_argument otherwise; the returned coefficients
// are the stable ones, valid for every variable count >= num_vars.
PowerSumPoly monomial_to_powersum(const SymPoly& p, int num_vars);
SymPoly powersum_to_monomial(const PowerSumPoly& p);

// q(y_1,...,y_m) = p(y_1+1,...,y_m+1) for exactly nvars variables. The result
// depends on nvars through p_0 = nvars.
SymPoly shift_variables(const SymPoly& p, int nvars);

double eval_monomial_basis(const SymPoly& p, const std::vector<double>& eigenvalues);

}  // namespace mhp
