#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mhp/exact.hpp"
#include "mhp/partition.hpp"
#include "mhp/sympoly.hpp"

namespace mhp {

// Exact zonal polynomial tables up to a fixed degree: rows C_kappa in the
// monomial and power-sum bases, identity values, generalized binomial
// coefficients and linearization coefficients. Rows are built from the
// dominance-order recurrence with unit leading coefficient, then rescaled so
// that sum_{kappa |- k} C_kappa = (t_1)^k holds exactly for every degree.
// Built tables are immutable and safe for concurrent reads.
class ZonalTable {
  public:
    static constexpr const char* kCacheVersion = "mhp-zonal-1";
    static constexpr int kMaxSupportedDegree = 8;   // coefficient sizes explode beyond
    static constexpr int kDefaultMaxDegree = 6;     // everything downstream needs <= 6

    explicit ZonalTable(int max_degree);

    int max_degree() const { return max_degree_; }
    const std::vector<Partition>& partitions_of(int k) const;

    const SymPoly& zonal_monomial(const Partition& kappa) const;
    const PowerSumPoly& zonal_powersum(const Partition& kappa) const;

    // C_kappa(Id_m): exact table evaluation at (1,...,1).
    Rational identity_value(const Partition& kappa, int m) const;
    // Closed form 2^{2k} k! (m/2)_kappa prod_{i<j}(2k_i-2k_j-i+j) / prod_j (2k_j+p-j)!.
    static Rational identity_value_closed_form(const Partition& kappa, int m);

    // Generalized binomial coefficient (kappa choose sigma); exact 0 for
    // unsupported pairs. Requires weight(sigma) <= weight(kappa) <= max_degree.
    Rational generalized_binomial(const Partition& kappa, const Partition& sigma) const;

    // Coefficients a^kappa_{tau,sigma} of C_tau C_sigma = sum_kappa a C_kappa.
    const std::map<Partition, Rational, RevLexLess>& linearization(const Partition& tau,
                                                                   const Partition& sigma) const;

    // C_kappa(S) from the eigenvalues of S (only eigenvalues enter, so
    // C_kappa(AB) = C_kappa(BA) holds by construction).
    double zonal_eval(const Partition& kappa, const std::vector<double>& eigenvalues) const;

    // Expand a homogeneous symmetric polynomial of the given degree over the
    // zonal basis restricted to nvars variables (exact triangular solve).
    std::map<Partition, Rational, RevLexLess> expand_in_zonal(const SymPoly& poly, int degree,
                                                              int nvars) const;

    // Versioned on-disk cache; rationals stored as "num/den" strings. load()
    // throws std::runtime_error on a version mismatch.
    void save(const std::filesystem::path& path) const;
    static ZonalTable load(const std::filesystem::path& path);
    std::string to_json_string() const;

  private:
    ZonalTable() = default;
    void build(int max_degree);
    Rational binomial_at_nvars(const Partition& kappa, const Partition& sigma, int nvars) const;

    using PartitionPair = std::pair<Partition, Partition>;
    struct PairLess {
        bool operator()(const PartitionPair& a, const PartitionPair& b) const {
            RevLexLess lt;
            if (lt(a.first, b.first)) return true;
            if (lt(b.first, a.first)) return false;
            return lt(a.second, b.second);
        }
    };

    int max_degree_ = 0;
    std::vector<std::vector<Partition>> partitions_;  // [k] -> rev-lex list
    std::map<Partition, SymPoly, RevLexLess> monomial_rows_;
    std::map<Partition, PowerSumPoly, RevLexLess> powersum_rows_;
    std::map<PartitionPair, Rational, PairLess> binomials_;
    std::map<PartitionPair, std::map<Partition, Rational, RevLexLess>, PairLess> linearization_;
};

// Process-wide shared table, grown on demand (never shrunk).
const ZonalTable& shared_zonal_table(int min_degree = ZonalTable::kDefaultMaxDegree);

}  // namespace mhp
