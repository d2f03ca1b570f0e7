#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "forrlab/rng.hpp"

// Exact linear algebra over F_2^n with bit-packed vectors (n <= 64).
// Coordinate i of a vector lives in bit i, so the display string "1100"
// (coordinate 0 first) is the word 0b0011.
namespace forrlab::gf2 {

using word = std::uint64_t;

inline word mask_n(unsigned n) {
    return n >= 64 ? ~word{0} : ((word{1} << n) - 1);
}

inline int dot(word a, word b) { return std::popcount(a & b) & 1; }

struct BitVec {
    unsigned n = 0;
    word bits = 0;

    friend bool operator==(const BitVec&, const BitVec&) = default;
};

BitVec parse_bits(const std::string& s);      // "1100" -> coordinate-0-first
std::string format_bits(word bits, unsigned n);

// Canonical basis of a subspace: rows in reduced row echelon form with
// strictly increasing pivot coordinates. Two equal subspaces have identical
// representations, so equality of subspaces is equality of bases.
struct SubspaceBasis {
    unsigned n = 0;
    std::vector<word> rows;

    unsigned dim() const { return static_cast<unsigned>(rows.size()); }
    friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;
    friend auto operator<=>(const SubspaceBasis&, const SubspaceBasis&) = default;
};

struct InvertibleMap {
    unsigned n = 0;
    std::vector<word> rows; // row i holds <row_i, x> = bit i of Mx
};

SubspaceBasis rref(unsigned n, const std::vector<word>& rows);
SubspaceBasis rref(const std::vector<BitVec>& rows); // checks matching n

unsigned rank(unsigned n, const std::vector<word>& rows);

// Reduce x against the basis; x is in the span iff the residue is zero.
word reduce(const SubspaceBasis& basis, word x);
bool membership(const SubspaceBasis& basis, word x);
bool membership(const SubspaceBasis& basis, const BitVec& x);

// Canonical basis of {x : <r, x> = 0 for every input row r}.
SubspaceBasis kernel(unsigned n, const std::vector<word>& rows);
SubspaceBasis kernel(const std::vector<BitVec>& rows);

SubspaceBasis orthogonal_complement(const SubspaceBasis& basis);

// y = Mx, bit i of y = <row_i, x>
word apply(const InvertibleMap& m, word x);

InvertibleMap random_invertible(unsigned n, Rng& rng);
InvertibleMap inverse(const InvertibleMap& m);

// All 2^dim elements of the span, zero included. Guarded at dim <= 24.
std::vector<word> enumerate_subspace(const SubspaceBasis& basis);

} // namespace forrlab::gf2
