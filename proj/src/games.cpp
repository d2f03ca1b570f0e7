#include "forrlab/games.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace forrlab::games {

void GameConfig::validate() const {
    if (n % 2 != 0 || n < 4) throw std::invalid_argument("GameConfig: n must be even and >= 4");
    if (game < 1 || game > 4) throw std::invalid_argument("GameConfig: game must be in 1..4");
    if (k < 2) throw std::invalid_argument("GameConfig: k must be >= 2");
    if (query_budget == 0) throw std::invalid_argument("GameConfig: query budget must be positive");
    if (game >= 2 && enforce_budget_bound) {
        const std::uint64_t cap = ((std::uint64_t{1} << m()) + 1) / 4;
        if (query_budget * 4 >= (std::uint64_t{1} << m()) + 1)
            throw std::invalid_argument(
                "GameConfig: Games 2-4 require l < (2^m + 1)/4; got l = " +
                std::to_string(query_budget) + " with bound " + std::to_string(cap));
    }
    if (game == 4 && double(k) >= c1 * std::sqrt(double(m())))
        throw std::invalid_argument("GameConfig: Game 4 requires k < c1 * sqrt(m)");
}

std::string to_string(Cause c) {
    switch (c) {
        case Cause::offset_hit: return "offset-hit";
        case Cause::f_side_k_collision: return "f-side-k-collision";
        case Cause::g_side_k_collision: return "g-side-k-collision";
        case Cause::budget_exhausted: return "budget-exhausted";
        case Cause::correct_guess: return "correct-guess";
        case Cause::wrong_guess: return "wrong-guess";
    }
    return "?";
}

Assigner::Assigner(const GameConfig& cfg, Rng& rng)
    : inst_(forrel::sample_instance(cfg.n,
                                    rng.coin() ? Label::yes : Label::no, rng)),
      dual_(spreads::dual_spread(inst_.psf().partial_spread().spread)) {}

std::optional<std::size_t> Assigner::f_bucket(word x) const {
    const word z = x ^ offset();
    return spreads::bucket_of(inst_.psf().partial_spread().spread, z);
}

std::size_t Assigner::g_bucket(word x) const {
    const auto b = spreads::bucket_of(dual_, x);
    return b ? *b : kNoBucket;
}

Response Assigner::answer(const QueryRequest& q, bool value_mode) const {
    Response r;
    if (q.point == offset() && (q.side == Side::f || q.side == Side::both)) r.offset_hit = true;
    if (value_mode) {
        if (q.side != Side::g) r.f_value = inst_.eval_f(q.point);
        if (q.side != Side::f) r.g_value = inst_.eval_g(q.point);
    } else {
        if (!r.offset_hit) r.f_bucket = *f_bucket(q.point);
        r.g_bucket = g_bucket(q.point);
    }
    return r;
}

namespace {

// rank-tracking basis per bucket
struct BucketBasis {
    std::vector<word> rows;

    bool insert(word v) { // true if v was independent
        for (word r : rows)
            if (v & (r & -r)) v ^= r;
        if (v == 0) return false;
        rows.push_back(v);
        std::sort(rows.begin(), rows.end(), [](word a, word b) { return (a & -a) < (b & -b); });
        return true;
    }
    unsigned rank() const { return static_cast<unsigned>(rows.size()); }
};

} // namespace

GameOutcome detect_win(const Transcript& t, unsigned k, word offset) {
    GameOutcome out;
    out.queries_used = t.entries.size();
    std::map<std::size_t, BucketBasis> f_bases, g_bases;
    std::map<std::size_t, std::vector<word>> f_points, g_points;
    for (const TranscriptEntry& e : t.entries) {
        if (!e.response.f_bucket && !e.response.g_bucket && !e.response.offset_hit)
            throw std::invalid_argument("detect_win: value-mode transcript passed in");
        if (e.response.offset_hit) {
            out.won = true;
            out.cause = Cause::offset_hit;
            out.witness = WinWitness{Side::f, 0, {e.query.point}};
            return out;
        }
        if (e.response.f_bucket) {
            const std::size_t b = *e.response.f_bucket;
            // offset-shifted points carry the independence requirement
            if (f_bases[b].insert(e.query.point ^ offset)) {
                f_points[b].push_back(e.query.point);
                if (f_bases[b].rank() >= k) {
                    out.won = true;
                    out.cause = Cause::f_side_k_collision;
                    out.witness = WinWitness{Side::f, b, f_points[b]};
                    return out;
                }
            }
        }
        if (e.response.g_bucket && *e.response.g_bucket != kNoBucket) {
            const std::size_t b = *e.response.g_bucket;
            if (g_bases[b].insert(e.query.point)) {
                g_points[b].push_back(e.query.point);
                if (g_bases[b].rank() >= k) {
                    out.won = true;
                    out.cause = Cause::g_side_k_collision;
                    out.witness = WinWitness{Side::g, b, g_points[b]};
                    return out;
                }
            }
        }
    }
    out.cause = Cause::budget_exhausted;
    return out;
}

Label Strategy::guess(const Transcript&) { return Label::yes; }

GameOutcome run_game(const GameConfig& cfg, Strategy& adversary, Rng& rng) {
    cfg.validate();
    if (adversary.adaptive() && !cfg.adaptive && cfg.game != 3)
        throw std::invalid_argument("run_game: adaptive strategy in nonadaptive mode");
    Assigner assigner(cfg, rng);
    const bool value_mode = cfg.game == 1;
    const bool adaptive = cfg.adaptive || cfg.game == 3;

    adversary.reset(cfg, derive_seed(cfg.seed, 0x5eed));

    Transcript t;
    if (!adaptive) {
        // collect all points before any response is revealed
        Transcript queries_only;
        std::vector<QueryRequest> reqs;
        for (std::uint64_t i = 0; i < cfg.query_budget; ++i) {
            QueryRequest q = adversary.next(queries_only);
            reqs.push_back(q);
            queries_only.entries.push_back({q, {}});
        }
        for (const QueryRequest& q : reqs)
            t.entries.push_back({q, assigner.answer(q, value_mode)});
        if (!value_mode) {
            GameOutcome out = detect_win(t, cfg.k, assigner.offset());
            out.transcript = t;
            return out;
        }
    } else {
        for (std::uint64_t i = 0; i < cfg.query_budget; ++i) {
            QueryRequest q = adversary.next(t);
            t.entries.push_back({q, assigner.answer(q, value_mode)});
            if (!value_mode) {
                GameOutcome out = detect_win(t, cfg.k, assigner.offset());
                if (out.won) {
                    out.transcript = t;
                    return out;
                }
            }
        }
        if (!value_mode) {
            GameOutcome out = detect_win(t, cfg.k, assigner.offset());
            out.transcript = t;
            return out;
        }
    }

    // Game 1: the adversary guesses the label
    GameOutcome out;
    out.queries_used = t.entries.size();
    const Label g = adversary.guess(t);
    out.won = g == assigner.hidden().label();
    out.cause = out.won ? Cause::correct_guess : Cause::wrong_guess;
    out.transcript = t;
    return out;
}

namespace {

class RandomDistinct final : public Strategy {
  public:
    void reset(const GameConfig& cfg, std::uint64_t seed) override {
        n_ = cfg.n;
        rng_ = std::make_unique<Rng>(seed);
        seen_.clear();
    }
    QueryRequest next(const Transcript&) override {
        if (seen_.size() >= (word{1} << n_))
            throw std::invalid_argument("random-distinct: point space exhausted");
        word p;
        do {
            p = rng_->below(word{1} << n_);
        } while (seen_.count(p));
        seen_.insert(p);
        return {p, Side::both};
    }
    Label guess(const Transcript&) override { return rng_->coin() ? Label::yes : Label::no; }

  private:
    unsigned n_ = 0;
    std::unique_ptr<Rng> rng_;
    std::set<word> seen_;
};

// x, y, then x ^ y: the third point of each triple lies in the span of the
// first two, forcing the assigner's span-closure case.
class PairSum final : public Strategy {
  public:
    void reset(const GameConfig& cfg, std::uint64_t seed) override {
        n_ = cfg.n;
        rng_ = std::make_unique<Rng>(seed);
        seen_.clear();
        pending_.clear();
    }
    QueryRequest next(const Transcript&) override {
        if (pending_.empty()) {
            word x = fresh(), y = fresh();
            pending_ = {x, y, x ^ y};
        }
        const word p = pending_.front();
        pending_.erase(pending_.begin());
        return {p, Side::both};
    }
    Label guess(const Transcript&) override { return rng_->coin() ? Label::yes : Label::no; }

  private:
    word fresh() {
        word p;
        do {
            p = rng_->below(word{1} << n_);
        } while (seen_.count(p));
        seen_.insert(p);
        return p;
    }
    unsigned n_ = 0;
    std::unique_ptr<Rng> rng_;
    std::set<word> seen_;
    std::vector<word> pending_;
};

// Queries the points of one random m-dim subspace in span-filling order, so
// early prefixes are rich in dependent triples.
class WithinSubspace final : public Strategy {
  public:
    void reset(const GameConfig& cfg, std::uint64_t seed) override {
        Rng rng(seed);
        const unsigned n = cfg.n;
        const unsigned m = cfg.n / 2;
        std::vector<word> rows;
        while (gf2::rank(n, rows) < m) rows.push_back(rng.next_u64() & gf2::mask_n(n));
        gf2::SubspaceBasis basis = gf2::rref(n, rows);
        points_.clear();
        for (word v : gf2::enumerate_subspace(basis))
            if (v) points_.push_back(v);
        idx_ = 0;
        rng_ = std::make_unique<Rng>(rng.next_u64());
        n_ = n;
        seen_.assign(points_.begin(), points_.end());
    }
    QueryRequest next(const Transcript&) override {
        if (idx_ < points_.size()) return {points_[idx_++], Side::both};
        // subspace exhausted; fall back to fresh random points
        word p;
        do {
            p = rng_->below(word{1} << n_);
        } while (std::find(seen_.begin(), seen_.end(), p) != seen_.end());
        seen_.push_back(p);
        return {p, Side::both};
    }
    Label guess(const Transcript&) override { return rng_->coin() ? Label::yes : Label::no; }

  private:
    std::vector<word> points_;
    std::vector<word> seen_;
    std::size_t idx_ = 0;
    unsigned n_ = 0;
    std::unique_ptr<Rng> rng_;
};

// Game 1 adversary that reads both truth tables and answers with the sign
// of the forrelation. Needs a budget of 2 * 2^n.
class FullTable final : public Strategy {
  public:
    void reset(const GameConfig& cfg, std::uint64_t) override {
        n_ = cfg.n;
        next_ = 0;
    }
    QueryRequest next(const Transcript&) override {
        const word size = word{1} << n_;
        QueryRequest q;
        if (next_ < size) {
            q = {next_, Side::f};
        } else {
            q = {next_ - size, Side::g};
        }
        ++next_;
        return q;
    }
    Label guess(const Transcript& t) override {
        bent::SignTable f, g;
        f.n = g.n = n_;
        f.values.assign(std::size_t{1} << n_, 1);
        g.values.assign(std::size_t{1} << n_, 1);
        for (const TranscriptEntry& e : t.entries) {
            if (e.response.f_value) f.values[e.query.point] = static_cast<std::int8_t>(*e.response.f_value);
            if (e.response.g_value) g.values[e.query.point] = static_cast<std::int8_t>(*e.response.g_value);
        }
        return forrel::forr(f, g) > 0 ? Label::yes : Label::no;
    }

  private:
    unsigned n_ = 0;
    word next_ = 0;
};

} // namespace

std::map<std::string, std::function<std::unique_ptr<Strategy>()>> builtin_adversaries() {
    return {
        {"random-distinct", [] { return std::make_unique<RandomDistinct>(); }},
        {"pair-sum", [] { return std::make_unique<PairSum>(); }},
        {"within-subspace", [] { return std::make_unique<WithinSubspace>(); }},
        {"full-table", [] { return std::make_unique<FullTable>(); }},
    };
}

SwapResult swap_to_opposite_instance(const ForrelationInstance& inst, const Transcript& t) {
    const auto& ps = inst.psf().partial_spread();
    const spreads::Spread& spread = ps.spread;
    const spreads::Spread dual = spreads::dual_spread(spread);
    const word a = ps.offset;
    const std::size_t buckets = spread.size();

    std::set<std::size_t> f_touched, g_touched;
    for (const TranscriptEntry& e : t.entries) {
        const Side side = e.query.side;
        if (side != Side::g) {
            if (e.query.point == a)
                return {std::nullopt, SwapFailure{"offset hit in transcript"}};
            f_touched.insert(*spreads::bucket_of(spread, e.query.point ^ a));
        }
        if (side != Side::f && e.query.point != 0)
            g_touched.insert(*spreads::bucket_of(dual, e.query.point));
    }

    for (std::size_t b : f_touched)
        if (g_touched.count(b))
            return {std::nullopt,
                    SwapFailure{"bucket " + std::to_string(b) + " touched on both sides"}};

    // D' must flip membership of the f-touched buckets and keep the
    // g-touched ones
    std::vector<std::size_t> required_in, free_buckets;
    for (std::size_t b = 0; b < buckets; ++b) {
        const bool in_d = ps.in_d(b);
        if (f_touched.count(b)) {
            if (!in_d) required_in.push_back(b); // flip into D
        } else if (g_touched.count(b)) {
            if (in_d) required_in.push_back(b);  // keep in D
        } else {
            free_buckets.push_back(b);
        }
    }
    const std::size_t d_size = std::size_t{1} << (spread.m - 1);
    if (required_in.size() > d_size)
        return {std::nullopt, SwapFailure{"too many buckets forced into D"}};
    if (d_size - required_in.size() > free_buckets.size())
        return {std::nullopt, SwapFailure{"not enough untouched buckets to fill D"}};

    std::vector<std::size_t> new_d = required_in;
    // deterministic fill: prefer untouched buckets that were already in D
    std::stable_sort(free_buckets.begin(), free_buckets.end(),
                     [&](std::size_t x, std::size_t y) {
                         return ps.in_d(x) > ps.in_d(y);
                     });
    for (std::size_t i = 0; new_d.size() < d_size; ++i) new_d.push_back(free_buckets[i]);
    std::sort(new_d.begin(), new_d.end());

    spreads::PartialSpread flipped;
    flipped.spread = spread;
    flipped.d_indices = std::move(new_d);
    flipped.offset = a;
    const Label opposite = inst.label() == Label::yes ? Label::no : Label::yes;
    return {ForrelationInstance(opposite, bent::PartialSpreadFunction(std::move(flipped))),
            std::nullopt};
}

double TrialStats::stderr_() const {
    const double p = win_rate();
    return trials ? std::sqrt(p * (1 - p) / double(trials)) : 0.0;
}

namespace {

TrialStats run_trials_impl(const GameConfig& cfg, const std::string& adversary,
                           std::uint64_t trials, bool parallel) {
    auto catalog = builtin_adversaries();
    auto it = catalog.find(adversary);
    if (it == catalog.end()) throw std::invalid_argument("unknown adversary: " + adversary);
    cfg.validate();

    std::vector<std::uint8_t> won(trials, 0);
    std::vector<std::uint8_t> cause(trials, 0);

    const auto factory = it->second;
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto strat = factory();
        GameConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        Rng rng(c.seed);
        GameOutcome out = run_game(c, *strat, rng);
        won[i] = out.won ? 1 : 0;
        cause[i] = static_cast<std::uint8_t>(out.cause);
    }

    TrialStats st;
    st.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        st.wins += won[i];
        ++st.causes[to_string(static_cast<Cause>(cause[i]))];
    }
    return st;
}

} // namespace

TrialStats run_trials(const GameConfig& cfg, const std::string& adversary, std::uint64_t trials) {
    return run_trials_impl(cfg, adversary, trials, true);
}

TrialStats run_trials_serial(const GameConfig& cfg, const std::string& adversary,
                             std::uint64_t trials) {
    return run_trials_impl(cfg, adversary, trials, false);
}

} // namespace forrlab::games
