#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forrlab/forrelation.hpp"

// Engine for the four query games: a concrete hidden-instance assigner,
// pluggable adversaries, transcript recording, win detection, and the
// yes/no swapping procedure.
namespace forrlab::games {

using forrel::ForrelationInstance;
using forrel::Label;
using gf2::word;

inline constexpr std::size_t kNoBucket = static_cast<std::size_t>(-1); // zero sentinel

struct GameConfig {
    unsigned n = 0;
    unsigned game = 2;            // 1..4
    unsigned k = 2;               // collision order, Games 2-4
    std::uint64_t query_budget = 0; // points for Games 2-4, (point, oracle) queries for Game 1
    bool adaptive = false;
    std::uint64_t seed = 0;
    // Games 2-4 analysis assumes l < (2^m + 1)/4; scaling sweeps may lift it
    bool enforce_budget_bound = true;
    double c1 = 0.5; // Game 4 requires k < c1 * sqrt(m)

    unsigned m() const { return n / 2; }
    void validate() const;
};

enum class Side : std::uint8_t { f, g, both };

struct QueryRequest {
    word point = 0;
    Side side = Side::both; // Game 1 picks f or g; Games 2-4 answer both
};

struct Response {
    // value mode (Game 1, replay checks)
    std::optional<int> f_value;
    std::optional<int> g_value;
    // bucket mode (Games 2-4): subspace indices, kNoBucket for the g side
    // of the zero vector
    std::optional<std::size_t> f_bucket;
    std::optional<std::size_t> g_bucket;
    bool offset_hit = false;

    friend bool operator==(const Response&, const Response&) = default;
};

struct TranscriptEntry {
    QueryRequest query;
    Response response;
};

struct Transcript {
    std::vector<TranscriptEntry> entries;
};

enum class Cause {
    offset_hit,
    f_side_k_collision,
    g_side_k_collision,
    budget_exhausted,
    correct_guess,
    wrong_guess,
};

std::string to_string(Cause c);

struct WinWitness {
    Side side = Side::f;
    std::size_t bucket = 0;
    std::vector<word> points; // k queried points (raw, unshifted)
};

struct GameOutcome {
    bool won = false;
    Cause cause = Cause::budget_exhausted;
    std::uint64_t queries_used = 0;
    std::optional<WinWitness> witness;
    Transcript transcript;
};

// Concrete assigner: the hidden instance is fully sampled up front, and
// bucket lookups are answered from it.
class Assigner {
  public:
    Assigner(const GameConfig& cfg, Rng& rng);

    const ForrelationInstance& hidden() const { return inst_; }
    word offset() const { return inst_.psf().partial_spread().offset; }

    // f-side bucket of x: the subspace containing x ^ a. nullopt when x = a.
    std::optional<std::size_t> f_bucket(word x) const;
    // g-side bucket of x: the dual subspace containing x; kNoBucket at 0.
    std::size_t g_bucket(word x) const;

    Response answer(const QueryRequest& q, bool value_mode) const;

  private:
    ForrelationInstance inst_;
    spreads::Spread dual_;
};

// Win detection over a bucket-mode transcript.
GameOutcome detect_win(const Transcript& t, unsigned k, word offset);

// Adversary strategy. Nonadaptive strategies must produce their points
// without looking at responses; the engine enforces this by passing a
// response-stripped transcript view.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual void reset(const GameConfig& cfg, std::uint64_t seed) = 0;
    virtual QueryRequest next(const Transcript& so_far) = 0;
    virtual Label guess(const Transcript& so_far);
    virtual bool adaptive() const { return false; }
};

GameOutcome run_game(const GameConfig& cfg, Strategy& adversary, Rng& rng);

// name -> factory; at least random-distinct, pair-sum, within-subspace,
// and full-table (Game 1)
std::map<std::string, std::function<std::unique_ptr<Strategy>()>> builtin_adversaries();

struct SwapFailure {
    std::string reason;
};

struct SwapResult {
    std::optional<ForrelationInstance> instance;
    std::optional<SwapFailure> failure;
    bool ok() const { return instance.has_value(); }
};

// Build the opposite-label instance whose D-set flips the f-touched buckets
// and keeps the g-touched ones, so the value-mode transcript replays
// identically. Fails when a bucket is touched on both sides or the D-size
// constraint cannot be met.
SwapResult swap_to_opposite_instance(const ForrelationInstance& inst, const Transcript& t);

// Win-rate experiment: independent trials with derived seeds; parallel and
// serial runs produce identical results.
struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t wins = 0;
    std::map<std::string, std::uint64_t> causes;
    double win_rate() const { return trials ? double(wins) / double(trials) : 0.0; }
    double stderr_() const;
};

TrialStats run_trials(const GameConfig& cfg, const std::string& adversary, std::uint64_t trials);
TrialStats run_trials_serial(const GameConfig& cfg, const std::string& adversary, std::uint64_t trials);

} // namespace forrlab::games
