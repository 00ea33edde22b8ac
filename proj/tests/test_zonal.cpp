#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "mhp/zonal.hpp"

using namespace mhp;

namespace {
const ZonalTable& table6() {
    static ZonalTable t(6);
    return t;
}
}  // namespace

TEST_CASE("golden rows up to degree 3 in the power-sum basis") {
    const auto& t = table6();
    auto row = [&](const Partition& k) { return t.zonal_powersum(k); };

    // C_(1) = t1
    CHECK(row(Partition{1}).terms().at(Partition{1}) == 1);
    CHECK(row(Partition{1}).terms().size() == 1);

    // C_(2) = (1/3)(t1^2 + 2 t2), C_(1,1) = (2/3)(t1^2 - t2)
    CHECK(row(Partition{2}).terms().at(Partition{1, 1}) == Rational(1, 3));
    CHECK(row(Partition{2}).terms().at(Partition{2}) == Rational(2, 3));
    CHECK(row(Partition{1, 1}).terms().at(Partition{1, 1}) == Rational(2, 3));
    CHECK(row(Partition{1, 1}).terms().at(Partition{2}) == Rational(-2, 3));

    // C_(3) = (1/15)(t1^3 + 6 t1 t2 + 8 t3)
    CHECK(row(Partition{3}).terms().at(Partition{1, 1, 1}) == Rational(1, 15));
    CHECK(row(Partition{3}).terms().at(Partition{2, 1}) == Rational(6, 15));
    CHECK(row(Partition{3}).terms().at(Partition{3}) == Rational(8, 15));
    // C_(2,1) = (3/5)(t1^3 + t1 t2 - 2 t3)
    CHECK(row(Partition{2, 1}).terms().at(Partition{1, 1, 1}) == Rational(3, 5));
    CHECK(row(Partition{2, 1}).terms().at(Partition{2, 1}) == Rational(3, 5));
    CHECK(row(Partition{2, 1}).terms().at(Partition{3}) == Rational(-6, 5));
    // C_(1,1,1) = (1/3)(t1^3 - 3 t1 t2 + 2 t3)
    CHECK(row(Partition{1, 1, 1}).terms().at(Partition{1, 1, 1}) == Rational(1, 3));
    CHECK(row(Partition{1, 1, 1}).terms().at(Partition{2, 1}) == Rational(-1));
    CHECK(row(Partition{1, 1, 1}).terms().at(Partition{3}) == Rational(2, 3));
}

TEST_CASE("sum over kappa of C_kappa equals (t_1)^k exactly, k <= 6") {
    const auto& t = table6();
    for (int k = 0; k <= 6; ++k) {
        PowerSumPoly acc;
        for (const auto& kap : t.partitions_of(k)) acc += t.zonal_powersum(kap);
        Partition ones(std::vector<int>(k, 1));
        REQUIRE(acc.terms().size() == 1);
        CHECK(acc.terms().at(ones) == 1);
    }
}

TEST_CASE("identity values: closed form vs table, and paper values") {
    const auto& t = table6();
    for (int k = 0; k <= 6; ++k)
        for (const auto& kap : t.partitions_of(k))
            for (int m = 1; m <= 6; ++m)
                CHECK(t.identity_value(kap, m) == ZonalTable::identity_value_closed_form(kap, m));

    // C_(1)(Id_l) = l ; C_(1,1)(Id_l) = (2/3) l(l-1) ; C_(2)(Id_3) = 5
    for (int l = 1; l <= 6; ++l) {
        CHECK(t.identity_value(Partition{1}, l) == l);
        CHECK(t.identity_value(Partition{1, 1}, l) == Rational(2 * l * (l - 1), 3));
    }
    CHECK(t.identity_value(Partition{2}, 3) == 5);
}

TEST_CASE("generalized binomial values and sum rule") {
    const auto& t = table6();
    // top term and frozen low-order values
    CHECK(t.generalized_binomial(Partition{3}, Partition{3}) == 1);
    CHECK(t.generalized_binomial(Partition{2}, Partition{1}) == 2);
    CHECK(t.generalized_binomial(Partition{1, 1}, Partition{1}) == 2);
    CHECK(t.generalized_binomial(Partition{2, 1}, Partition{1}) == 3);
    CHECK(t.generalized_binomial(Partition{2, 1}, Partition{2}) == Rational(4, 3));
    CHECK(t.generalized_binomial(Partition{2, 1}, Partition{1, 1}) == Rational(5, 3));
    // unsupported pair is exact zero, not an error
    CHECK(t.generalized_binomial(Partition{2}, Partition{1, 1}) == 0);

    // sum rule: sum_{sigma |- s} (kappa choose sigma) = C(k, s), all kappa up to weight 6
    for (int k = 0; k <= 6; ++k)
        for (const auto& kap : t.partitions_of(k))
            for (int s = 0; s <= k; ++s) {
                Rational tot = 0;
                for (const auto& sig : t.partitions_of(s)) tot += t.generalized_binomial(kap, sig);
                CHECK(tot == Rational(binomial(k, s)));
            }
}

TEST_CASE("linearization coefficients") {
    const auto& t = table6();
    // multiplying by the constant C_(0) = 1
    auto lin0 = t.linearization(Partition{1}, Partition{});
    REQUIRE(lin0.size() == 1);
    CHECK(lin0.at(Partition{1}) == 1);

    // C_(1)^2 = C_(2) + C_(1,1): t1^2 = (1/3)(t1^2+2t2) + (2/3)(t1^2-t2)
    auto lin = t.linearization(Partition{1}, Partition{1});
    CHECK(lin.at(Partition{2}) == 1);
    CHECK(lin.at(Partition{1, 1}) == 1);

    // evaluation consistency at Id_m for every pair with weight sum <= 6
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b)
            for (const auto& tau : t.partitions_of(a))
                for (const auto& sig : t.partitions_of(b))
                    for (int m = 1; m <= 4; ++m) {
                        Rational lhs = t.identity_value(tau, m) * t.identity_value(sig, m);
                        Rational rhs = 0;
                        for (const auto& [kap, c] : t.linearization(tau, sig))
                            rhs += c * t.identity_value(kap, m);
                        CHECK(lhs == rhs);
                    }
}

TEST_CASE("zonal_eval") {
    const auto& t = table6();
    // C_(1)(S) = sum of eigenvalues
    CHECK(t.zonal_eval(Partition{1}, {0.3, 1.2, -0.5}) == doctest::Approx(1.0));
    // matches identity value at the all-ones list
    CHECK(t.zonal_eval(Partition{2}, {1, 1, 1}) == doctest::Approx(5.0));
    // C_(1,1) at (2, 0): (2/3)(t1^2 - t2) = (2/3)(4 - 4) = 0
    CHECK(t.zonal_eval(Partition{1, 1}, {2.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("homogeneity under scaling") {
    const auto& t = table6();
    std::vector<double> eigs = {0.7, 2.3, -1.1};
    double c = 1.7;
    std::vector<double> scaled(eigs);
    for (auto& e : scaled) e *= c;
    for (int k = 1; k <= 4; ++k)
        for (const auto& kap : t.partitions_of(k)) {
            double lhs = t.zonal_eval(kap, scaled);
            double rhs = std::pow(c, k) * t.zonal_eval(kap, eigs);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
}

TEST_CASE("serialization round trip and version gate") {
    const ZonalTable t(3);
    auto path = std::filesystem::temp_directory_path() / "mhp_zonal_test_cache.json";
    t.save(path);
    ZonalTable back = ZonalTable::load(path);
    CHECK(back.max_degree() == 3);
    for (int k = 0; k <= 3; ++k)
        for (const auto& kap : back.partitions_of(k)) {
            CHECK(back.zonal_monomial(kap) == t.zonal_monomial(kap));
            CHECK(back.generalized_binomial(kap, Partition{1}) ==
                  t.generalized_binomial(kap, Partition{1}));
        }
    // corrupt the version and expect a rejection
    {
        std::string s = t.to_json_string();
        auto pos = s.find("mhp-zonal-1");
        s.replace(pos, 11, "mhp-zonal-0");
        FILE* f = fopen(path.c_str(), "w");
        fwrite(s.data(), 1, s.size(), f);
        fclose(f);
    }
    CHECK_THROWS_AS(ZonalTable::load(path), std::runtime_error);
    std::filesystem::remove(path);
}
