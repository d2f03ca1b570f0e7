#include "forrlab/spreads.hpp"

#include <algorithm>
#include <stdexcept>

namespace forrlab::spreads {

bool PartialSpread::in_d(std::size_t bucket) const {
    return std::binary_search(d_indices.begin(), d_indices.end(), bucket);
}

word field_polynomial(unsigned m) {
    // Least primitive polynomial per degree, from the standard tables.
    static constexpr word polys[13] = {
        0,
        0b11,                // x + 1
        0b111,               // x^2 + x + 1
        0b1011,              // x^3 + x + 1
        0b10011,             // x^4 + x + 1
        0b100101,            // x^5 + x^2 + 1
        0b1000011,           // x^6 + x + 1
        0b10000011,          // x^7 + x + 1
        0b100011101,         // x^8 + x^4 + x^3 + x^2 + 1
        0b1000010001,        // x^9 + x^4 + 1
        0b10000001001,       // x^10 + x^3 + 1
        0b100000000101,      // x^11 + x^2 + 1
        0b1000001010011,     // x^12 + x^6 + x^4 + x + 1
    };
    if (m < 1 || m > 12) throw std::invalid_argument("field_polynomial: m must be in [1, 12]");
    return polys[m];
}

word gf2m_mul(unsigned m, word a, word b) {
    const word poly = field_polynomial(m);
    word prod = 0;
    while (b) {
        if (b & 1) prod ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (word{1} << m)) a ^= poly;
    }
    return prod;
}

Spread desarguesian_spread(unsigned m) {
    if (m < 1 || m > 12) throw std::invalid_argument("desarguesian_spread: m must be in [1, 12]");
    const unsigned n = 2 * m;
    Spread s;
    s.n = n;
    s.m = m;
    s.subspaces.reserve((std::size_t{1} << m) + 1);
    for (word slope = 0; slope < (word{1} << m); ++slope) {
        std::vector<word> rows(m);
        for (unsigned i = 0; i < m; ++i) {
            const word x = word{1} << i;
            rows[i] = x | (gf2m_mul(m, slope, x) << m);
        }
        s.subspaces.push_back(gf2::rref(n, rows));
    }
    std::vector<word> inf(m);
    for (unsigned i = 0; i < m; ++i) inf[i] = word{1} << (m + i);
    s.subspaces.push_back(gf2::rref(n, inf));
    return s;
}

Spread scramble_spread(const Spread& s, const gf2::InvertibleMap& map) {
    if (map.n != s.n) throw std::invalid_argument("scramble_spread: dimension mismatch");
    if (gf2::rank(map.n, map.rows) != map.n)
        throw std::invalid_argument("scramble_spread: map is not invertible");
    Spread out;
    out.n = s.n;
    out.m = s.m;
    out.subspaces.reserve(s.size());
    for (const SubspaceBasis& e : s.subspaces) {
        std::vector<word> img(e.rows.size());
        for (std::size_t i = 0; i < e.rows.size(); ++i) img[i] = gf2::apply(map, e.rows[i]);
        out.subspaces.push_back(gf2::rref(s.n, img));
    }
    return out;
}

Spread dual_spread(const Spread& s) {
    Spread out;
    out.n = s.n;
    out.m = s.m;
    out.subspaces.reserve(s.size());
    for (const SubspaceBasis& e : s.subspaces)
        out.subspaces.push_back(gf2::orthogonal_complement(e));
    return out;
}

ValidationReport validate_spread(const Spread& s) {
    ValidationReport rep;
    const std::size_t want = (std::size_t{1} << s.m) + 1;
    if (s.n != 2 * s.m || s.m == 0)
        rep.issues.push_back({"dimension", "ambient dimension is not 2m"});
    if (s.size() != want)
        rep.issues.push_back({"count", "expected " + std::to_string(want) +
                                           " subspaces, found " + std::to_string(s.size())});
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.subspaces[i].n != s.n) {
            rep.issues.push_back({"dimension", "subspace " + std::to_string(i) + " has wrong ambient n"});
            return rep;
        }
        if (s.subspaces[i].dim() != s.m)
            rep.issues.push_back({"dimension", "subspace " + std::to_string(i) + " has dim " +
                                                   std::to_string(s.subspaces[i].dim())});
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            std::vector<word> all = s.subspaces[i].rows;
            all.insert(all.end(), s.subspaces[j].rows.begin(), s.subspaces[j].rows.end());
            if (gf2::rank(s.n, all) != s.subspaces[i].dim() + s.subspaces[j].dim()) {
                rep.issues.push_back({"intersection",
                                      "subspaces " + std::to_string(i) + " and " + std::to_string(j) +
                                          " intersect nontrivially"});
                if (rep.issues.size() > 8) return rep;
            }
        }
    }
    // Direct cover check for small n; for valid axioms 1-3 the counting
    // already forces an exact cover.
    if (rep.ok() && s.n <= 20) {
        std::vector<std::uint8_t> hits(std::size_t{1} << s.n, 0);
        for (const SubspaceBasis& e : s.subspaces)
            for (word v : gf2::enumerate_subspace(e)) ++hits[v];
        for (std::size_t v = 1; v < hits.size(); ++v) {
            if (hits[v] != 1) {
                rep.issues.push_back({"cover", "vector " + std::to_string(v) + " covered " +
                                                   std::to_string(hits[v]) + " times"});
                break;
            }
        }
    }
    return rep;
}

std::optional<std::size_t> bucket_of(const Spread& s, word z) {
    if ((z & gf2::mask_n(s.n)) == 0) return std::nullopt;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (gf2::membership(s.subspaces[i], z)) return i;
    return std::nullopt;
}

PartialSpread sample_partial_spread(const Spread& s, Rng& rng) {
    PartialSpread ps;
    ps.spread = s;
    ps.d_indices = rng.subset(s.size(), std::size_t{1} << (s.m - 1));
    ps.offset = 1 + rng.below((word{1} << s.n) - 1);
    return ps;
}

Spread sample_spread(unsigned n, Rng& rng) {
    if (n % 2 != 0 || n < 2) throw std::invalid_argument("sample_spread: n must be even and >= 2");
    const unsigned m = n / 2;
    gf2::InvertibleMap map = gf2::random_invertible(n, rng);
    return scramble_spread(desarguesian_spread(m), map);
}

namespace {

Spread canonical_order(Spread s) {
    std::sort(s.subspaces.begin(), s.subspaces.end());
    return s;
}

void search_spreads(const std::vector<SubspaceBasis>& all,
                    const std::vector<word>& covers, word covered,
                    std::vector<std::size_t>& chosen, std::vector<Spread>& out) {
    if (chosen.size() == 5) {
        Spread s;
        s.n = 4;
        s.m = 2;
        for (std::size_t i : chosen) s.subspaces.push_back(all[i]);
        out.push_back(canonical_order(std::move(s)));
        return;
    }
    // lowest uncovered nonzero point
    word lowest = 0;
    for (unsigned v = 1; v < 16; ++v) {
        if (!((covered >> v) & 1)) {
            lowest = v;
            break;
        }
    }
    // The branch on the lowest uncovered point generates each unordered
    // spread exactly once.
    for (std::size_t i = 0; i < all.size(); ++i) {
        if ((covers[i] & covered) != 0) continue;
        if (!((covers[i] >> lowest) & 1)) continue;
        chosen.push_back(i);
        search_spreads(all, covers, covered | covers[i], chosen, out);
        chosen.pop_back();
    }
}

} // namespace

std::vector<Spread> enumerate_spreads(unsigned n) {
    if (n != 4) throw std::invalid_argument("enumerate_spreads: only n = 4 is supported");
    // all 35 dim-2 subspaces of F_2^4
    std::vector<SubspaceBasis> all;
    for (word a = 1; a < 16; ++a) {
        for (word b = a + 1; b < 16; ++b) {
            SubspaceBasis s = gf2::rref(4, {a, b});
            if (s.dim() != 2) continue;
            if (std::find(all.begin(), all.end(), s) == all.end()) all.push_back(s);
        }
    }
    std::sort(all.begin(), all.end());

    std::vector<word> covers(all.size(), 0); // bitmask of the nonzero points
    for (std::size_t i = 0; i < all.size(); ++i)
        for (word v : gf2::enumerate_subspace(all[i]))
            if (v) covers[i] |= word{1} << v;

    std::vector<Spread> out;
    std::vector<std::size_t> chosen;
    search_spreads(all, covers, 0, chosen, out);
    std::sort(out.begin(), out.end(), [](const Spread& a, const Spread& b) {
        return a.subspaces < b.subspaces;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace forrlab::spreads
