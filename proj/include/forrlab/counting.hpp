#pragma once

#include <cstdint>
#include <vector>

#include "forrlab/exact.hpp"
#include "forrlab/rng.hpp"

// Exact evaluation of the subspace-counting formulas and probabilistic
// bounds, plus Monte Carlo estimators that must respect them.
namespace forrlab::counting {

// (n choose k)_p: the number of k-dimensional subspaces of F_p^n.
BigCount gaussian_binomial(unsigned n, unsigned k, unsigned p);

// Independent oracle: exhaustive count via enumeration of matrices in
// reduced row echelon form. Guarded at p^n <= 2^16.
BigCount count_subspaces_brute(unsigned n, unsigned k, unsigned p);

// The four completion counts of the 2-collision ratio argument:
//   with_point          m-dim subspaces of F_2^{2m} containing a fixed
//                       nonzero point                        (2m-1 ch m-1)_2
//   with_point_ortho    same, additionally orthogonal to a vector
//                       orthogonal to that point             (2m-2 ch m-1)_2
//   complement          m-dim complements of a fixed m-dim subspace = 2^{m^2}
//   avoiding_t          m-dim subspaces of a (2m-1)-dim space avoiding a
//                       fixed 2^t-point subspace of it
struct CompletionCounts2Col {
    BigCount with_point;
    BigCount with_point_ortho;
    BigCount complement;
    BigCount avoiding_t;
};

CompletionCounts2Col completion_counts_2col(unsigned m, unsigned t);

// R = (with_point * avoiding_t) / (with_point_ortho * complement); the
// inverse bounds how much likelier an occupied dual bucket is than an
// empty one. 1/R <= 2 across the valid range.
ExactRational ratio_R_2col(unsigned m, unsigned t);

// k-collision analogue. Preconditions: k >= 2, 1 <= t <= m-k-1, m > 2k^2-4k.
ExactRational ratio_R_kcol(unsigned m, unsigned k, unsigned t);

// prod_{r=1}^{m} (1 - 2^-(r+2)) / (1 - 2^-r), exactly.
ExactRational telescoping_product(unsigned m);

// Closed form (1 - 2^-(m+1))(1 - 2^-(m+2)) / ((1 - 2^-1)(1 - 2^-2)).
ExactRational telescoping_product_closed(unsigned m);

// ||P||_k^k for the three-valued bucket distribution with z0 zero buckets,
// z1 buckets at 2^{k-1} p_e and the rest at p_e, over a support of
// 2^m + 1 - l buckets.
ExactRational norm_P(unsigned m, std::uint64_t l, std::uint64_t z0, std::uint64_t z1, unsigned k);

// Distribution over bins; exact entries for bound checks, with a floating
// view for the samplers.
struct BinDistribution {
    std::vector<ExactRational> probs;

    std::size_t bins() const { return probs.size(); }
    static BinDistribution uniform(std::size_t n);
    // The norm_P shape: z0 zeros, z1 at 2^{k-1} p_e, rest at p_e.
    static BinDistribution three_valued(unsigned m, std::uint64_t l, std::uint64_t z0,
                                        std::uint64_t z1, unsigned k);

    ExactRational norm_pow(unsigned k) const; // sum_j p_j^k
};

// Pr[max load >= k] <= C(l, k) * ||D||_k^k
ExactRational max_load_bound(std::uint64_t l, unsigned k, const BinDistribution& d);

// Pr[#collisions >= k] <= C(l, 2) * ||D||_2^2 / k
ExactRational collision_count_bound(std::uint64_t l, unsigned k, const BinDistribution& d);

struct BinsStats {
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> maxload_at_least; // [k] = #trials with B_l >= k
    double collisions_mean = 0;
    double collisions_stderr = 0;

    double p_maxload_ge(unsigned k) const;
    double p_maxload_ge_stderr(unsigned k) const;
};

// Monte Carlo tosses of l balls into the bins of d; trials are seeded
// independently so parallel and serial runs agree.
BinsStats mc_bins(std::uint64_t l, const BinDistribution& d, std::uint64_t trials, std::uint64_t seed);

struct CompletionCountG4 {
    BigCount count;            // 0 when a factor is nonpositive
    bool positive = false;     // all numerator factors positive
    BigCount smallest_factor;  // last (smallest) numerator factor
    BigCount forbidden;        // 2^{2k-2} * ceil((l-k+1) / (k-1))
};

// Lower bound on the number of completions of the maximally loaded subspace
// in the k-collision game after l queries.
CompletionCountG4 eligible_completion_count_g4(unsigned m, unsigned k, std::uint64_t l);

} // namespace forrlab::counting
