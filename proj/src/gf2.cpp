#include "forrlab/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace forrlab::gf2 {

BitVec parse_bits(const std::string& s) {
    BitVec v;
    v.n = static_cast<unsigned>(s.size());
    if (v.n > 64) throw std::invalid_argument("parse_bits: dimension above 64");
    for (unsigned i = 0; i < v.n; ++i) {
        if (s[i] == '1')
            v.bits |= word{1} << i;
        else if (s[i] != '0')
            throw std::invalid_argument("parse_bits: expected '0'/'1'");
    }
    return v;
}

std::string format_bits(word bits, unsigned n) {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i)
        if ((bits >> i) & 1) s[i] = '1';
    return s;
}

SubspaceBasis rref(unsigned n, const std::vector<word>& rows) {
    if (n == 0 || n > 64) throw std::invalid_argument("rref: dimension must be in [1, 64]");
    SubspaceBasis b;
    b.n = n;
    const word mask = mask_n(n);
    for (word r : rows) {
        word v = r & mask;
        for (word piv : b.rows)
            if (v & (piv & -piv)) v ^= piv;
        if (v == 0) continue;
        const word lead = v & -v;
        for (word& piv : b.rows)
            if (piv & lead) piv ^= v;
        b.rows.push_back(v);
    }
    std::sort(b.rows.begin(), b.rows.end(),
              [](word a, word c) { return (a & -a) < (c & -c); });
    return b;
}

SubspaceBasis rref(const std::vector<BitVec>& rows) {
    if (rows.empty()) throw std::invalid_argument("rref: empty BitVec list has no dimension");
    const unsigned n = rows.front().n;
    std::vector<word> ws;
    ws.reserve(rows.size());
    for (const BitVec& r : rows) {
        if (r.n != n) throw std::invalid_argument("rref: dimension mismatch among rows");
        ws.push_back(r.bits);
    }
    return rref(n, ws);
}

unsigned rank(unsigned n, const std::vector<word>& rows) {
    return rref(n, rows).dim();
}

word reduce(const SubspaceBasis& basis, word x) {
    for (word piv : basis.rows)
        if (x & (piv & -piv)) x ^= piv;
    return x;
}

bool membership(const SubspaceBasis& basis, word x) {
    return reduce(basis, x & mask_n(basis.n)) == 0;
}

bool membership(const SubspaceBasis& basis, const BitVec& x) {
    if (x.n != basis.n) throw std::invalid_argument("membership: dimension mismatch");
    return membership(basis, x.bits);
}

SubspaceBasis kernel(unsigned n, const std::vector<word>& rows) {
    const SubspaceBasis r = rref(n, rows);
    word pivots = 0;
    for (word row : r.rows) pivots |= row & -row;

    std::vector<word> gens;
    for (unsigned j = 0; j < n; ++j) {
        const word ej = word{1} << j;
        if (pivots & ej) continue;
        // free coordinate j: set it, then solve the pivot coordinates
        word v = ej;
        for (word row : r.rows)
            if (row & ej) v |= row & -row;
        gens.push_back(v);
    }
    return rref(n, gens);
}

SubspaceBasis kernel(const std::vector<BitVec>& rows) {
    return kernel(rref(rows).n, [&] {
        std::vector<word> ws;
        for (const BitVec& r : rows) ws.push_back(r.bits);
        return ws;
    }());
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& basis) {
    return kernel(basis.n, basis.rows);
}

word apply(const InvertibleMap& m, word x) {
    word y = 0;
    for (unsigned i = 0; i < m.n; ++i)
        y |= word{dot(m.rows[i], x)} << i;
    return y;
}

InvertibleMap random_invertible(unsigned n, Rng& rng) {
    if (n < 1 || n > 64) throw std::invalid_argument("random_invertible: n must be in [1, 64]");
    const word mask = mask_n(n);
    InvertibleMap m;
    m.n = n;
    m.rows.resize(n);
    while (true) {
        for (unsigned i = 0; i < n; ++i) m.rows[i] = rng.next_u64() & mask;
        if (rank(n, m.rows) == n) return m;
    }
}

InvertibleMap inverse(const InvertibleMap& m) {
    const unsigned n = m.n;
    // Gauss-Jordan on [M | I]
    std::vector<word> a = m.rows;
    std::vector<word> inv(n);
    for (unsigned i = 0; i < n; ++i) inv[i] = word{1} << i;
    for (unsigned col = 0; col < n; ++col) {
        const word cbit = word{1} << col;
        unsigned piv = col;
        while (piv < n && !(a[piv] & cbit)) ++piv;
        if (piv == n) throw std::invalid_argument("inverse: map is singular");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        for (unsigned r = 0; r < n; ++r) {
            if (r != col && (a[r] & cbit)) {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    InvertibleMap r;
    r.n = n;
    r.rows = std::move(inv);
    return r;
}

std::vector<word> enumerate_subspace(const SubspaceBasis& basis) {
    const unsigned d = basis.dim();
    if (d > 24) throw std::invalid_argument("enumerate_subspace: dimension above the 24 guard");
    std::vector<word> out;
    out.reserve(std::size_t{1} << d);
    out.push_back(0);
    // Gray-code walk: element for index g differs from g-1 by one basis row
    word cur = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << d); ++i) {
        cur ^= basis.rows[std::countr_zero(i)];
        out.push_back(cur);
    }
    return out;
}

} // namespace forrlab::gf2
