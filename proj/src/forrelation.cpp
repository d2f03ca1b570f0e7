#include "forrlab/forrelation.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace forrlab::forrel {

ExactRational forr(const SignTable& f, const SignTable& g) {
    if (f.n != g.n) throw std::invalid_argument("forr: size mismatch");
    if (f.n % 2 != 0) throw std::invalid_argument("forr: n must be even");
    const bent::FourierTable fh = bent::wht(f);
    std::int64_t s = 0;
    for (word x = 0; x < f.values.size(); ++x) s += std::int64_t{fh.num[x]} * g.values[x];
    // fhat = num / 2^n, so forr = s / 2^{n + n/2}
    return ExactRational(BigCount(s), pow2(f.n + f.n / 2));
}

SignTable ForrelationInstance::f_table() const {
    SignTable t = psf_.table();
    if (label_ == Label::no)
        for (auto& v : t.values) v = -v;
    return t;
}

SignTable ForrelationInstance::g_table() const {
    SignTable t;
    t.n = n();
    t.values.resize(std::size_t{1} << n());
    for (word y = 0; y < t.values.size(); ++y)
        t.values[y] = static_cast<std::int8_t>(eval_g(y));
    return t;
}

ForrelationInstance sample_instance(unsigned n, Label label, Rng& rng) {
    if (n % 2 != 0 || n < 4 || n > 26) throw std::invalid_argument("sample_instance: n must be even, in [4, 26]");
    if (n > 24) throw std::invalid_argument("sample_instance: n above the 24 table guard");
    spreads::Spread s = spreads::sample_spread(n, rng);
    spreads::PartialSpread ps = spreads::sample_partial_spread(s, rng);
    return ForrelationInstance(label, bent::PartialSpreadFunction(std::move(ps)));
}

namespace {

struct Tables4 {
    // bucket index per nonzero point, for the spread and its dual
    std::array<std::uint8_t, 16> bucket;
    std::array<std::uint8_t, 16> dual_bucket;
};

struct Enumeration4 {
    std::vector<spreads::Spread> spreads_list;
    std::vector<Tables4> tables;
    std::vector<std::vector<std::size_t>> d_sets; // all C(5,2) index pairs
};

const Enumeration4& enumeration4() {
    static const Enumeration4 e = [] {
        Enumeration4 out;
        out.spreads_list = spreads::enumerate_spreads(4);
        out.tables.reserve(out.spreads_list.size());
        for (const auto& s : out.spreads_list) {
            Tables4 t{};
            const spreads::Spread dual = spreads::dual_spread(s);
            for (word v = 1; v < 16; ++v) {
                t.bucket[v] = static_cast<std::uint8_t>(*spreads::bucket_of(s, v));
                t.dual_bucket[v] = static_cast<std::uint8_t>(*spreads::bucket_of(dual, v));
            }
            out.tables.push_back(t);
        }
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) out.d_sets.push_back({i, j});
        return out;
    }();
    return e;
}

} // namespace

ExactRational tv_distance_oracle(unsigned n, const std::vector<TvQuery>& queries,
                                 const TvOptions& opts) {
    if (n != 4) throw std::invalid_argument("tv_distance_oracle: only n = 4 is supported");
    // two bits per response in a 64-bit transcript key
    if (queries.size() > 32) throw std::invalid_argument("tv_distance_oracle: more than 32 queries");

    const Enumeration4& e = enumeration4();

    // transcript -> (yes count, no count); responses are ternary (-1, +1,
    // offset-reveal), packed two bits per query
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
    std::uint64_t atoms_yes = 0, atoms_no = 0;

    for (std::size_t si = 0; si < e.spreads_list.size(); ++si) {
        const Tables4& tab = e.tables[si];
        for (const auto& d : e.d_sets) {
            const auto in_d = [&](std::uint8_t b) { return b == d[0] || b == d[1]; };
            for (word a = 1; a < 16; ++a) {
                // conditioning events, label-independent
                bool offset_hit = false;
                bool collision = false;
                bool reuse = false;
                std::array<std::uint8_t, 5> f_load{};
                std::array<std::uint8_t, 5> g_load{};
                for (const TvQuery& q : queries) {
                    if (q.side == Side::f) {
                        if (q.point == a) {
                            offset_hit = true;
                        } else {
                            ++f_load[tab.bucket[q.point ^ a]];
                        }
                    } else if (q.point != 0) {
                        ++g_load[tab.dual_bucket[q.point]];
                    }
                }
                for (int b = 0; b < 5; ++b) {
                    if (f_load[b] >= 2 || g_load[b] >= 2) collision = true;
                    if (f_load[b] + g_load[b] >= 2) reuse = true;
                }
                if (opts.condition_no_offset_hit && offset_hit) continue;
                if (opts.condition_no_collision && collision) continue;
                if (opts.condition_no_bucket_reuse && reuse) continue;

                // value transcripts under each label
                std::uint64_t t_yes = 0, t_no = 0;
                for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                    const TvQuery& q = queries[qi];
                    std::uint64_t r_yes, r_no;
                    if (q.side == Side::f) {
                        if (q.point == a) {
                            // f_ps(a) = +1, so the value is the label sign
                            r_yes = 1;
                            r_no = 0;
                        } else {
                            const int base = in_d(tab.bucket[q.point ^ a]) ? -1 : +1;
                            r_yes = base > 0 ? 1 : 0;
                            r_no = base > 0 ? 0 : 1;
                        }
                    } else {
                        int g;
                        if (q.point == 0) {
                            g = +1;
                        } else {
                            const int sign_a = gf2::dot(a, q.point) ? -1 : +1;
                            const int body = in_d(tab.dual_bucket[q.point]) ? -1 : +1;
                            g = sign_a * body;
                        }
                        r_yes = g > 0 ? 1 : 0;
                        r_no = r_yes;
                    }
                    t_yes |= r_yes << (2 * qi);
                    t_no |= r_no << (2 * qi);
                }
                counts[t_yes].first += 1;
                counts[t_no].second += 1;
                ++atoms_yes;
                ++atoms_no;
            }
        }
    }

    if (atoms_yes == 0) return ExactRational(0);

    // TV = (1/2) sum_t | P_yes(t) - P_no(t) |
    ExactRational tv = 0;
    for (const auto& [t, c] : counts) {
        ExactRational diff = ExactRational(BigCount(c.first), BigCount(atoms_yes)) -
                             ExactRational(BigCount(c.second), BigCount(atoms_no));
        if (diff < 0) diff = -diff;
        tv += diff;
    }
    return tv / 2;
}

} // namespace forrlab::forrel
