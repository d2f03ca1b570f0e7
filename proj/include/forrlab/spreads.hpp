#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forrlab/gf2.hpp"
#include "forrlab/rng.hpp"

namespace forrlab::spreads {

using gf2::SubspaceBasis;
using gf2::word;

// 2^m + 1 subspaces of F_2^{2m}, each of dimension m, pairwise intersecting
// only in 0, jointly covering every nonzero vector exactly once. Ordered:
// permuting the list yields an unequal Spread over the same partition.
struct Spread {
    unsigned n = 0; // ambient dimension, even
    unsigned m = 0; // n / 2
    std::vector<SubspaceBasis> subspaces;

    std::size_t size() const { return subspaces.size(); }
    friend bool operator==(const Spread&, const Spread&) = default;
};

// Split of a spread into D (2^{m-1} indices) and its complement, plus a
// nonzero offset vector.
struct PartialSpread {
    Spread spread;
    std::vector<std::size_t> d_indices; // sorted, |D| = 2^{m-1}
    word offset = 0;                    // nonzero

    bool in_d(std::size_t bucket) const;
};

struct ValidationIssue {
    std::string axiom;   // "count" | "dimension" | "intersection" | "cover"
    std::string witness;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Irreducible polynomial (bit i = coefficient of x^i, degree-m bit set)
// used for the F_{2^m} arithmetic behind the classical field spread.
word field_polynomial(unsigned m);
word gf2m_mul(unsigned m, word a, word b);

// The classical field spread of F_2^{2m} ~ F_{2^m} x F_{2^m}:
// E_s = {(x, s*x)} for each field element s, then E_inf = {(0, y)}.
Spread desarguesian_spread(unsigned m);

Spread scramble_spread(const Spread& s, const gf2::InvertibleMap& map);
Spread dual_spread(const Spread& s);
ValidationReport validate_spread(const Spread& s);

// Index of the unique subspace containing nonzero z; nullopt for z = 0.
std::optional<std::size_t> bucket_of(const Spread& s, word z);

PartialSpread sample_partial_spread(const Spread& s, Rng& rng);

// Sampled spread used by instance generation: a uniformly random invertible
// image of the field spread.
Spread sample_spread(unsigned n, Rng& rng);

// All 56 spreads of F_2^4, canonicalized (subspaces sorted) and sorted.
std::vector<Spread> enumerate_spreads(unsigned n = 4);

} // namespace forrlab::spreads
