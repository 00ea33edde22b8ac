#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhp/partition.hpp"

using namespace mhp;

namespace {

// independent recursive counting oracle: partitions of k with at most m parts
long long count_partitions(int k, int m, int max_part) {
    if (k == 0) return 1;
    if (m == 0 || max_part == 0) return 0;
    long long total = 0;
    for (int p = std::min(k, max_part); p >= 1; --p) total += count_partitions(k - p, m - 1, p);
    return total;
}

}  // namespace

TEST_CASE("enumerate_partitions matches paper examples and counting oracle") {
    auto p22 = enumerate_partitions(2, 2);
    REQUIRE(p22.size() == 2);
    CHECK(p22[0] == Partition{2});
    CHECK(p22[1] == Partition{1, 1});

    auto p0 = enumerate_partitions(0, 5);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].empty());

    auto p42 = enumerate_partitions(4, 2);
    REQUIRE(p42.size() == 3);
    CHECK(p42[0] == Partition{4});
    CHECK(p42[1] == Partition{3, 1});
    CHECK(p42[2] == Partition{2, 2});

    for (int k = 0; k <= 8; ++k)
        for (int m = 1; m <= k + 1; ++m)
            CHECK(static_cast<long long>(enumerate_partitions(k, m).size()) ==
                  count_partitions(k, m, k));
}

TEST_CASE("enumeration order is reverse lexicographic") {
    auto parts = enumerate_partitions(6, 6);
    for (size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1].parts() > parts[i].parts());
}

TEST_CASE("partition invariants") {
    CHECK_THROWS(Partition{1, 2});            // not non-increasing
    CHECK_THROWS(Partition{0});               // zero part
    CHECK(Partition{3, 1}.weight() == 4);
    CHECK(Partition{3, 1}.length() == 2);
    CHECK(Partition::parse("2,1") == Partition{2, 1});
    CHECK(Partition::parse("0") == Partition{});
    CHECK_THROWS(Partition::parse("2,3"));
    CHECK(Partition{2, 1}.to_string() == "2,1");
}

TEST_CASE("gen_pochhammer closed values") {
    // (n/2)_{(1)} = n/2
    CHECK(gen_pochhammer(Rational(5, 2), Partition{1}) == Rational(5, 2));
    // (n/2)_{(1,1)} = n(n-1)/4 at n = 7
    CHECK(gen_pochhammer(Rational(7, 2), Partition{1, 1}) == Rational(7 * 6, 4));
    // (3/2)_{(2)} = (3/2)(5/2)
    CHECK(gen_pochhammer(Rational(3, 2), Partition{2}) == Rational(15, 4));
}

TEST_CASE("gen_pochhammer at single-row partitions is the rising factorial") {
    for (int k = 0; k <= 10; ++k) {
        Rational a(7, 3);
        std::vector<int> parts;
        if (k > 0) parts.push_back(k);
        CHECK(gen_pochhammer(a, Partition(parts)) == rising_factorial(a, k));
    }
}

TEST_CASE("multivariate gamma") {
    // l = 1 reduces to Gamma
    for (double a : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 7.5, 10.0})
        CHECK(multivariate_gamma(a, 1) == doctest::Approx(std::tgamma(a)).epsilon(1e-12));
    // Gamma_2(3/2) = pi/2 and Gamma_2(2) = pi/2
    CHECK(multivariate_gamma(1.5, 2) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(multivariate_gamma(2.0, 2) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK_THROWS_AS(multivariate_gamma(0.5, 2), std::domain_error);
}
