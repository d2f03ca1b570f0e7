#include <doctest.h>

#include "forrlab/forrelation.hpp"

using namespace forrlab;
using forrel::Label;
using forrel::Side;
using forrel::TvQuery;
using gf2::word;

namespace {

forrel::ForrelationInstance make_instance(unsigned n, Label label, std::uint64_t seed) {
    Rng rng(seed);
    return forrel::sample_instance(n, label, rng);
}

} // namespace

TEST_CASE("forr is exactly the label sign on sampled instances") {
    for (unsigned n : {4u, 6u, 8u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto yes = make_instance(n, Label::yes, 100 + trial);
            CHECK(forrel::forr(yes.f_table(), yes.g_table()) == 1);
            const auto no = make_instance(n, Label::no, 200 + trial);
            CHECK(forrel::forr(no.f_table(), no.g_table()) == -1);
        }
    }
}

TEST_CASE("forr bounds and antisymmetry on arbitrary tables") {
    Rng rng(111);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 2 * (1 + rng.below(4));
        bent::SignTable f, g;
        f.n = g.n = n;
        f.values.resize(std::size_t{1} << n);
        g.values.resize(std::size_t{1} << n);
        for (auto& v : f.values) v = rng.coin() ? 1 : -1;
        for (auto& v : g.values) v = rng.coin() ? 1 : -1;
        const ExactRational v = forrel::forr(f, g);
        CHECK(v >= -1);
        CHECK(v <= 1);
        bent::SignTable nf = f;
        for (auto& x : nf.values) x = -x;
        CHECK(forrel::forr(nf, g) == -v);
    }
    bent::SignTable odd;
    odd.n = 3;
    odd.values.assign(8, 1);
    CHECK_THROWS_AS(forrel::forr(odd, odd), std::invalid_argument);
}

TEST_CASE("dual oracle: g(0) = +1, unit magnitude, matches 2^m * wht") {
    Rng rng(112);
    for (unsigned n : {4u, 6u, 8u, 10u}) {
        for (int trial = 0; trial < (n <= 6 ? 20 : 5); ++trial) {
            const auto inst = forrel::sample_instance(n, Label::yes, rng);
            CHECK(inst.eval_g(0) == 1);
            const auto fh = bent::wht(inst.psf().table());
            const std::int32_t scale = 1 << (n / 2);
            for (word y = 0; y < (word{1} << n); ++y) {
                const int g = inst.eval_g(y);
                CHECK((g == 1 || g == -1));
                CHECK(g * scale == fh.num[y]);
            }
        }
    }
}

TEST_CASE("g tables are identical across labels for a shared partial spread") {
    Rng rng(113);
    const auto s = spreads::sample_spread(6, rng);
    const auto ps = spreads::sample_partial_spread(s, rng);
    const forrel::ForrelationInstance yes(Label::yes, bent::PartialSpreadFunction(ps));
    const forrel::ForrelationInstance no(Label::no, bent::PartialSpreadFunction(ps));
    CHECK(yes.g_table().values == no.g_table().values);
    const auto fy = yes.f_table(), fn = no.f_table();
    for (std::size_t i = 0; i < fy.values.size(); ++i) CHECK(fy.values[i] == -fn.values[i]);
}

TEST_CASE("the rejected g-flip design is 1-query distinguishable; ours is not") {
    Rng rng(114);
    const auto s = spreads::sample_spread(6, rng);
    const auto ps = spreads::sample_partial_spread(s, rng);
    const bent::PartialSpreadFunction psf(ps);
    // rejected design: the sign rides on g instead of f
    const int g_yes_at_0 = psf.closed_form_fourier(0).num;  // +1
    const int g_no_at_0 = -g_yes_at_0;
    CHECK(g_yes_at_0 == 1);
    CHECK(g_no_at_0 == -1); // g(0) splits the labels immediately
    // our design: g(0) = +1 under both labels
    const forrel::ForrelationInstance yes(Label::yes, bent::PartialSpreadFunction(ps));
    const forrel::ForrelationInstance no(Label::no, bent::PartialSpreadFunction(ps));
    CHECK(yes.eval_g(0) == 1);
    CHECK(no.eval_g(0) == 1);
}

TEST_CASE("oracle handle counts (point, oracle) evaluations") {
    const auto inst = make_instance(4, Label::yes, 5);
    forrel::OracleHandle h(inst);
    CHECK(h.queries() == 0);
    h.query_f(3);
    h.query_g(3);
    h.query_f(9);
    CHECK(h.queries() == 3);
}

TEST_CASE("tv oracle: empty query list gives 0") {
    CHECK(forrel::tv_distance_oracle(4, {}) == 0);
    CHECK_THROWS_AS(forrel::tv_distance_oracle(6, {}), std::invalid_argument);
}

TEST_CASE("tv oracle: full truth tables give 1") {
    std::vector<TvQuery> queries;
    for (word x = 0; x < 16; ++x) queries.push_back({x, Side::f});
    for (word y = 0; y < 16; ++y) queries.push_back({y, Side::g});
    CHECK(forrel::tv_distance_oracle(4, queries) == 1);
}

TEST_CASE("tv oracle: g-only query sets are label-independent, exactly") {
    std::vector<TvQuery> queries;
    for (word y = 0; y < 16; ++y) queries.push_back({y, Side::g});
    CHECK(forrel::tv_distance_oracle(4, queries) == 0);
    forrel::TvOptions cond;
    cond.condition_no_collision = true;
    cond.condition_no_offset_hit = true;
    CHECK(forrel::tv_distance_oracle(4, {{0, Side::g}, {7, Side::g}}, cond) == 0);
}

TEST_CASE("tv oracle: a single f query carries the exact 2^-m label bias") {
    // P[f(0) = +1] is |Dbar|/(2^m+1) = 3/5 under yes and 2/5 under no:
    // TV = 1/5, and conditioning on no collision / no offset hit cannot
    // remove it. This is the exact finite-size form of the 1/2 +- O(2^-m)
    // response bias of non-offset f queries.
    CHECK(forrel::tv_distance_oracle(4, {{0, Side::f}}) == ExactRational(1, 5));
    forrel::TvOptions cond;
    cond.condition_no_collision = true;
    cond.condition_no_offset_hit = true;
    CHECK(forrel::tv_distance_oracle(4, {{0, Side::f}}, cond) == ExactRational(1, 5));
    // at x != 0 the unconditioned TV picks up the offset-hit atoms
    CHECK(forrel::tv_distance_oracle(4, {{5, Side::f}}) == ExactRational(19, 75));
    CHECK(forrel::tv_distance_oracle(4, {{5, Side::f}}, cond) == ExactRational(1, 5));
}

TEST_CASE("tv oracle guards") {
    std::vector<TvQuery> too_many(33, TvQuery{0, Side::f});
    CHECK_THROWS_AS(forrel::tv_distance_oracle(4, too_many), std::invalid_argument);
}

TEST_CASE("instance sampling guards") {
    Rng rng(1);
    CHECK_THROWS_AS(forrel::sample_instance(5, Label::yes, rng), std::invalid_argument);
    CHECK_THROWS_AS(forrel::sample_instance(2, Label::yes, rng), std::invalid_argument);
}
