#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhp/sympoly.hpp"

using namespace mhp;

TEST_CASE("sym_multiply basic products") {
    SymPoly m1 = SymPoly::monomial(Partition{1});
    SymPoly m2 = SymPoly::monomial(Partition{2});

    // m_(1) * m_(1) = m_(2) + 2 m_(1,1)
    SymPoly sq = sym_multiply(m1, m1);
    CHECK(sq.coeff(Partition{2}) == 1);
    CHECK(sq.coeff(Partition{1, 1}) == 2);
    CHECK(sq.terms().size() == 2);

    // p * 1 = p
    CHECK(sym_multiply(sq, SymPoly::constant(1)) == sq);

    // m_(1) * m_(2) = m_(3) + m_(2,1)
    SymPoly pr = sym_multiply(m1, m2);
    CHECK(pr.coeff(Partition{3}) == 1);
    CHECK(pr.coeff(Partition{2, 1}) == 1);
    CHECK(pr.terms().size() == 2);
}

TEST_CASE("sym_multiply agrees with brute-force evaluation") {
    // exact product then float evaluation vs product of float evaluations,
    // couple of eigenvalue lists with <= 4 variables and degree <= 4
    std::vector<std::vector<double>> points = {
        {0.5, -1.25}, {2.0, 3.0, -1.0}, {1.0, 0.25, -0.75, 2.5}};
    std::vector<SymPoly> polys;
    SymPoly a = SymPoly::monomial(Partition{2}) + SymPoly::monomial(Partition{1, 1}) * Rational(3);
    SymPoly b = SymPoly::monomial(Partition{1}) + SymPoly::constant(Rational(-2));
    polys.push_back(sym_multiply(a, b));
    for (const auto& pt : points) {
        double lhs = polys[0].eval(pt);
        double rhs = a.eval(pt) * b.eval(pt);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("eval_monomial_basis") {
    CHECK(SymPoly::monomial(Partition{1}).eval({2, 3}) == doctest::Approx(5));
    CHECK(SymPoly::monomial(Partition{1, 1}).eval({2, 3}) == doctest::Approx(6));
    CHECK(SymPoly::monomial(Partition{2}).eval({2}) == doctest::Approx(4));
    // shorter lists zero out longer monomials
    CHECK(SymPoly::monomial(Partition{1, 1, 1}).eval({2, 3}) == doctest::Approx(0));
}

TEST_CASE("monomial to power sum and back") {
    // m_(1) = t_1, m_(2) = t_2, m_(1,1) = (t_1^2 - t_2)/2
    auto p1 = monomial_to_powersum(SymPoly::monomial(Partition{1}), 1);
    CHECK(p1.terms().size() == 1);
    CHECK(p1.terms().at(Partition{1}) == 1);

    auto p2 = monomial_to_powersum(SymPoly::monomial(Partition{2}), 1);
    CHECK(p2.terms().at(Partition{2}) == 1);
    CHECK(p2.terms().size() == 1);

    auto p11 = monomial_to_powersum(SymPoly::monomial(Partition{1, 1}), 2);
    CHECK(p11.terms().at(Partition{1, 1}) == Rational(1, 2));
    CHECK(p11.terms().at(Partition{2}) == Rational(-1, 2));

    CHECK_THROWS_AS(monomial_to_powersum(SymPoly::monomial(Partition{1, 1}), 1),
                    std::invalid_argument);

    // round trip is the exact identity up to degree 6
    for (int k = 1; k <= 6; ++k) {
        for (const auto& lam : enumerate_partitions(k, k)) {
            SymPoly m = SymPoly::monomial(lam, Rational(3, 7));
            CHECK(powersum_to_monomial(monomial_to_powersum(m, k)) == m);
        }
    }
}

TEST_CASE("shift_variables") {
    // constants are fixed
    SymPoly c = SymPoly::constant(Rational(5, 3));
    CHECK(shift_variables(c, 3) == c);

    // m_(2) in 2 variables, shifted, evaluated at (0,0) gives (0+1)^2 + (0+1)^2 = 2
    SymPoly m2 = SymPoly::monomial(Partition{2});
    SymPoly shifted = shift_variables(m2, 2);
    CHECK(shifted.eval({0.0, 0.0}) == doctest::Approx(2.0));
    // and at (1, -1): 4 + 0 = 4
    CHECK(shifted.eval({1.0, -1.0}) == doctest::Approx(4.0));

    // m_(1) in 3 variables picks up the variable-count constant
    SymPoly m1s = shift_variables(SymPoly::monomial(Partition{1}), 3);
    CHECK(m1s.coeff(Partition{1}) == 1);
    CHECK(m1s.coeff(Partition{}) == 3);

    // shift then unshift is the identity (checked through evaluations)
    SymPoly p = SymPoly::monomial(Partition{2, 1}) + SymPoly::monomial(Partition{1}) * Rational(2);
    SymPoly sh = shift_variables(p, 3);
    std::vector<std::vector<double>> pts = {{0.3, -0.9, 2.0}, {1.0, 1.0, 1.0}};
    for (const auto& z : pts) {
        std::vector<double> zp(z);
        for (auto& x : zp) x += 1.0;
        CHECK(sh.eval(z) == doctest::Approx(p.eval(zp)).epsilon(1e-12));
    }
}

TEST_CASE("powersum evaluation consistency") {
    PowerSumPoly p;
    p.add_term(Partition{2, 1}, Rational(1, 3));  // (1/3) t_2 t_1
    std::vector<double> eigs = {1.5, -0.5};
    double t1 = 1.0, t2 = 1.5 * 1.5 + 0.25;
    CHECK(p.eval(eigs) == doctest::Approx(t1 * t2 / 3.0));
}
