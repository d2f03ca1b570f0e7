#include "forrlab/bent.hpp"

#include <stdexcept>
#include <utility>

namespace forrlab::bent {

PartialSpreadFunction::PartialSpreadFunction(spreads::PartialSpread ps)
    : ps_(std::move(ps)), n_(ps_.spread.n) {
    if (n_ > 24) throw std::invalid_argument("PartialSpreadFunction: n above the 24 table guard");
    if (ps_.offset == 0) throw std::invalid_argument("PartialSpreadFunction: offset must be nonzero");
    in_union_d_.assign(std::size_t{1} << n_, false);
    in_union_d_perp_.assign(std::size_t{1} << n_, false);
    for (std::size_t i : ps_.d_indices) {
        for (word v : gf2::enumerate_subspace(ps_.spread.subspaces[i]))
            if (v) in_union_d_[v] = true;
        const auto perp = gf2::orthogonal_complement(ps_.spread.subspaces[i]);
        for (word v : gf2::enumerate_subspace(perp))
            if (v) in_union_d_perp_[v] = true;
    }
}

Dyadic PartialSpreadFunction::closed_form_fourier(word y) const {
    y &= gf2::mask_n(n_);
    const int sign_a = gf2::dot(ps_.offset, y) ? -1 : +1;
    const int body = (y != 0 && in_union_d_perp_[y]) ? -1 : +1;
    return {sign_a * body, m()};
}

SignTable PartialSpreadFunction::table() const {
    SignTable t;
    t.n = n_;
    t.values.resize(std::size_t{1} << n_);
    for (word x = 0; x < (word{1} << n_); ++x)
        t.values[x] = static_cast<std::int8_t>(eval(x));
    return t;
}

namespace {

void butterfly(std::vector<std::int32_t>& v, unsigned n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t half = 1; half < size; half <<= 1) {
        const std::size_t stride = half << 1;
#pragma omp parallel for schedule(static) if (size >= (std::size_t{1} << 16))
        for (std::size_t block = 0; block < size; block += stride) {
            for (std::size_t i = block; i < block + half; ++i) {
                const std::int32_t a = v[i];
                const std::int32_t b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
        }
    }
}

void butterfly_serial(std::vector<std::int32_t>& v, unsigned n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t half = 1; half < size; half <<= 1) {
        const std::size_t stride = half << 1;
        for (std::size_t block = 0; block < size; block += stride) {
            for (std::size_t i = block; i < block + half; ++i) {
                const std::int32_t a = v[i];
                const std::int32_t b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
        }
    }
}

FourierTable wht_impl(const SignTable& t, bool parallel) {
    if (t.n > 26) throw std::invalid_argument("wht: n above the 26 size guard");
    if (t.values.size() != (std::size_t{1} << t.n))
        throw std::invalid_argument("wht: table size is not 2^n");
    FourierTable f;
    f.n = t.n;
    f.num.assign(t.values.begin(), t.values.end());
    if (parallel)
        butterfly(f.num, t.n);
    else
        butterfly_serial(f.num, t.n);
    // fhat(y) = num(y) / 2^n; numerators stay exact integers
    return f;
}

} // namespace

FourierTable wht(const SignTable& t) { return wht_impl(t, true); }
FourierTable wht_serial(const SignTable& t) { return wht_impl(t, false); }

bool is_bent(const FourierTable& t) {
    if (t.n % 2 != 0) return false;
    const std::int32_t want = std::int32_t{1} << (t.n / 2);
    for (std::int32_t v : t.num)
        if (v != want && v != -want) return false;
    return true;
}

SignTable translate_table(const SignTable& t, word a) {
    if ((a & ~gf2::mask_n(t.n)) != 0)
        throw std::invalid_argument("translate_table: offset outside F_2^n");
    SignTable out;
    out.n = t.n;
    out.values.resize(t.values.size());
    for (word x = 0; x < t.values.size(); ++x) out.values[x] = t.values[x ^ a];
    return out;
}

} // namespace forrlab::bent
