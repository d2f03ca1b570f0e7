#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "forrlab/bent.hpp"
#include "forrlab/exact.hpp"

namespace forrlab::forrel {

using bent::SignTable;
using gf2::word;

enum class Label : int { yes = +1, no = -1 };

inline int sign_of(Label l) { return static_cast<int>(l); }

// forr(f, g) = 2^{-n/2} sum_x fhat(x) g(x), exactly. Requires even n.
ExactRational forr(const SignTable& f, const SignTable& g);

// The hard instance: f carries the label sign, g = 2^m fhat is shared by
// both labels.
class ForrelationInstance {
  public:
    ForrelationInstance(Label label, bent::PartialSpreadFunction psf)
        : label_(label), psf_(std::move(psf)) {}

    Label label() const { return label_; }
    unsigned n() const { return psf_.n(); }
    unsigned m() const { return psf_.m(); }

    int eval_f(word x) const { return sign_of(label_) * psf_.eval(x); }
    // g(y) = 2^m * fhat(y), already Boolean by bentness; label-independent
    int eval_g(word y) const { return psf_.closed_form_fourier(y).num; }

    SignTable f_table() const;
    SignTable g_table() const;

    const bent::PartialSpreadFunction& psf() const { return psf_; }

  private:
    Label label_;
    bent::PartialSpreadFunction psf_;
};

ForrelationInstance sample_instance(unsigned n, Label label, Rng& rng);

// Query-counting wrapper over a hidden instance; one query = one
// (point, oracle) evaluation.
class OracleHandle {
  public:
    explicit OracleHandle(const ForrelationInstance& inst) : inst_(&inst) {}

    int query_f(word x) {
        ++count_;
        return inst_->eval_f(x);
    }
    int query_g(word y) {
        ++count_;
        return inst_->eval_g(y);
    }
    std::uint64_t queries() const { return count_.load(); }

  private:
    const ForrelationInstance* inst_;
    std::atomic<std::uint64_t> count_{0};
};

enum class Side : std::uint8_t { f, g };

struct TvQuery {
    word point = 0;
    Side side = Side::f;
};

struct TvOptions {
    // exclude (spread, D, a) atoms whose induced assignment has two queries
    // in one subspace bucket on the f side or on the g side
    bool condition_no_collision = false;
    // exclude atoms where an f query hits the offset
    bool condition_no_offset_hit = false;
    // stronger bucket reading: a bucket index may be touched at most once
    // across both sides
    bool condition_no_bucket_reuse = false;
};

// Exact total-variation distance between the yes- and no-label value
// transcript distributions at n = 4, by exhaustive enumeration over all
// 56 spreads x 10 D-sets x 15 offsets. Guarded at 8 queries.
ExactRational tv_distance_oracle(unsigned n, const std::vector<TvQuery>& queries,
                                 const TvOptions& opts = {});

} // namespace forrlab::forrel
