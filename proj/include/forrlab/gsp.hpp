#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "forrlab/rng.hpp"

// Generalized Simon's Problem over F_p^n: a p^k-to-1 function constant
// exactly on the cosets of a hidden k-dimensional subgroup S, an adaptive
// coset-representative recovery strategy, and query-count experiments.
namespace forrlab::gsp {

struct FpVector {
    unsigned p = 2;
    unsigned n = 0;
    std::vector<std::uint8_t> coords; // values in [0, p)

    friend bool operator==(const FpVector&, const FpVector&) = default;
    friend auto operator<=>(const FpVector&, const FpVector&) = default;
};

FpVector fp_zero(unsigned p, unsigned n);
FpVector fp_add(const FpVector& a, const FpVector& b);
FpVector fp_sub(const FpVector& a, const FpVector& b);
FpVector fp_scale(const FpVector& a, unsigned c);

struct FpBasis {
    unsigned p = 2;
    unsigned n = 0;
    std::vector<FpVector> rows; // RREF with unit leading entries

    unsigned rank() const { return static_cast<unsigned>(rows.size()); }
};

// RREF over F_p with unit leading entries; canonical per subspace.
FpBasis fp_rref(unsigned p, unsigned n, const std::vector<FpVector>& vectors);

// residue of x modulo the span: leading coordinates eliminated
FpVector fp_reduce(const FpBasis& basis, FpVector x);

class GSPInstance {
  public:
    GSPInstance(unsigned p, unsigned n, unsigned k, FpBasis subgroup,
                std::vector<std::uint64_t> labels);

    unsigned p() const { return p_; }
    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    const FpBasis& subgroup() const { return subgroup_; }

    // index of x's S-coset in [0, p^{n-k})
    std::uint64_t coset_index(const FpVector& x) const;
    std::uint64_t query(const FpVector& x) const { return labels_[coset_index(x)]; }
    std::uint64_t coset_count() const { return labels_.size(); }

  private:
    unsigned p_, n_, k_;
    FpBasis subgroup_;
    std::vector<std::uint64_t> labels_;
    std::vector<unsigned> free_coords_; // non-pivot coordinates of S
};

// S uniform over dim-k subgroups; distinct uniform 64-bit labels per coset.
GSPInstance sample_gsp_instance(unsigned p, unsigned n, unsigned k, Rng& rng);

using GspOracle = std::function<std::uint64_t(const FpVector&)>;

struct RecoveryResult {
    FpBasis subgroup;
    std::uint64_t queries = 0;
};

// Adaptive recovery: query only canonical representatives of the cosets of
// the currently discovered subgroup, so every label collision contributes a
// new independent generator. Returns after k generators.
RecoveryResult adaptive_recover(const GspOracle& oracle, unsigned p, unsigned n, unsigned k,
                                Rng& rng);

struct GspStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double mean_queries = 0;
    std::uint64_t median_queries = 0;
    std::uint64_t q25 = 0, q75 = 0;
    std::vector<std::uint64_t> per_trial;
};

GspStats gsp_experiment(unsigned p, unsigned n, unsigned k, std::uint64_t trials,
                        std::uint64_t seed);

} // namespace forrlab::gsp
