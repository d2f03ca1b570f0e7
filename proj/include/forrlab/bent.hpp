#pragma once

#include <cstdint>
#include <vector>

#include "forrlab/spreads.hpp"

namespace forrlab::bent {

using gf2::word;

// Exact dyadic rational num / 2^log2_den.
struct Dyadic {
    std::int64_t num = 0;
    unsigned log2_den = 0;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

// Truth table with values in {-1, +1}, indexed by the n-bit point.
struct SignTable {
    unsigned n = 0;
    std::vector<std::int8_t> values; // size 2^n

    int at(word x) const { return values[x]; }
};

// Fourier table over the 1/2^n-normalized transform: entry y holds the
// integer numerator of fhat(y) = num / 2^n.
struct FourierTable {
    unsigned n = 0;
    std::vector<std::int32_t> num; // size 2^n

    Dyadic at(word y) const { return {num[y], n}; }
};

// The partial spread function f(x): +1 at x = a, -1 on the offset-shifted
// nonzero points of the D-side subspaces, +1 elsewhere. f(a) = +1 always.
class PartialSpreadFunction {
  public:
    explicit PartialSpreadFunction(spreads::PartialSpread ps);

    int eval(word x) const {
        const word z = (x ^ ps_.offset) & gf2::mask_n(n_);
        return in_union_d_[z] ? -1 : +1;
    }

    // (-1)^{<a,y>} * (+-2^{-m}), negative exactly on the nonzero points of
    // the D-side dual subspaces.
    Dyadic closed_form_fourier(word y) const;

    SignTable table() const;

    unsigned n() const { return n_; }
    unsigned m() const { return ps_.spread.m; }
    const spreads::PartialSpread& partial_spread() const { return ps_; }

  private:
    spreads::PartialSpread ps_;
    unsigned n_;
    std::vector<bool> in_union_d_;      // nonzero points of U_{i in D} E_i
    std::vector<bool> in_union_d_perp_; // nonzero points of U_{i in D} E_i^perp
};

// Fast Walsh-Hadamard transform, 1/2^n-normalized (numerators kept exact).
// wht() may run the butterfly in parallel; the serial reference is kept for
// testing and benchmarking. Both are bit-exact. Guarded at n <= 26.
FourierTable wht(const SignTable& t);
FourierTable wht_serial(const SignTable& t);

// |fhat(y)| = 2^{-n/2} for every y, exactly. False for odd n.
bool is_bent(const FourierTable& t);

// g(x) = f(x ^ a)
SignTable translate_table(const SignTable& t, word a);

} // namespace forrlab::bent
