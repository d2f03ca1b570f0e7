#include "forrlab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forrlab/counting.hpp"
#include "forrlab/games.hpp"
#include "forrlab/gsp.hpp"
#include "forrlab/io.hpp"

namespace forrlab::cli {

namespace {

std::string rational_str(const ExactRational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

json gen_instance(const ExperimentConfig& cfg) {
    const unsigned n = cfg.params.at("n").get<unsigned>();
    const std::string label_s = cfg.params.value("label", "yes");
    if (label_s != "yes" && label_s != "no")
        throw std::invalid_argument("gen-instance: label must be yes or no");
    Rng rng(cfg.seed);
    const auto inst = forrel::sample_instance(
        n, label_s == "yes" ? forrel::Label::yes : forrel::Label::no, rng);
    return io::instance_to_json(inst, cfg.params.value("reveal_hidden", false));
}

json verify_bent(const ExperimentConfig& cfg) {
    const unsigned n = cfg.params.at("n").get<unsigned>();
    const std::uint64_t instances = cfg.params.value("instances", std::uint64_t{50});
    if (n % 2 != 0 || n < 4 || n > 16)
        throw std::invalid_argument("verify-bent: n must be even, in [4, 16]");
    json entries = json::array();
    bool all_ok = true;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng rng(derive_seed(cfg.seed, i));
        const auto inst = forrel::sample_instance(n, forrel::Label::yes, rng);
        const auto fhat = bent::wht(inst.f_table());
        const bool ok = bent::is_bent(fhat);
        // closed form must agree with the transform everywhere
        bool closed_ok = true;
        for (gf2::word y = 0; y < (gf2::word{1} << n); ++y) {
            if (inst.psf().closed_form_fourier(y).num * (1 << (n - n / 2)) != fhat.num[y]) {
                closed_ok = false;
                break;
            }
        }
        all_ok = all_ok && ok && closed_ok;
        entries.push_back({{"instance", i}, {"bent", ok}, {"closed_form_matches", closed_ok}});
    }
    return json{{"n", n}, {"instances", instances}, {"all_pass", all_ok}, {"entries", entries}};
}

json forrelation_cmd(const ExperimentConfig& cfg) {
    forrel::Label label = forrel::Label::yes;
    std::optional<forrel::ForrelationInstance> inst;
    if (cfg.params.contains("instance_file")) {
        std::ifstream f(cfg.params.at("instance_file").get<std::string>());
        if (!f) throw std::invalid_argument("forrelation: cannot open instance file");
        inst = io::instance_from_json(json::parse(f));
    } else {
        const unsigned n = cfg.params.at("n").get<unsigned>();
        const std::string label_s = cfg.params.value("label", "yes");
        label = label_s == "yes" ? forrel::Label::yes : forrel::Label::no;
        Rng rng(cfg.seed);
        inst = forrel::sample_instance(n, label, rng);
    }
    const ExactRational v = forrel::forr(inst->f_table(), inst->g_table());
    return json{{"n", inst->n()}, {"forrelation", rational_str(v)},
                {"extremal", v == 1 || v == -1}};
}

games::GameConfig game_config_from(const ExperimentConfig& cfg) {
    games::GameConfig gc;
    gc.n = cfg.params.at("n").get<unsigned>();
    gc.game = cfg.params.at("game").get<unsigned>();
    gc.k = cfg.params.value("k", 2u);
    gc.query_budget = cfg.params.at("l").get<std::uint64_t>();
    gc.adaptive = cfg.params.value("adaptive", false);
    gc.enforce_budget_bound = cfg.params.value("enforce_budget_bound", true);
    gc.c1 = cfg.params.value("c1", 0.5);
    gc.seed = cfg.seed;
    return gc;
}

json play_game(const ExperimentConfig& cfg) {
    games::GameConfig gc = game_config_from(cfg);
    const std::string adversary = cfg.params.value("adversary", "random-distinct");
    const std::uint64_t trials = cfg.params.value("trials", std::uint64_t{1});
    gc.validate();
    if (trials == 1) {
        auto catalog = games::builtin_adversaries();
        auto it = catalog.find(adversary);
        if (it == catalog.end()) throw std::invalid_argument("play-game: unknown adversary " + adversary);
        auto strat = it->second();
        Rng rng(gc.seed);
        const games::GameOutcome out = games::run_game(gc, *strat, rng);
        json j = io::outcome_to_json(out);
        j["transcript"] = io::transcript_to_json(out.transcript);
        return j;
    }
    const games::TrialStats st = games::run_trials(gc, adversary, trials);
    return json{{"trials", st.trials}, {"wins", st.wins}, {"win_rate", st.win_rate()},
                {"stderr", st.stderr_()}, {"causes", st.causes}};
}

json collision_experiment(const ExperimentConfig& cfg) {
    games::GameConfig base = game_config_from(cfg);
    const std::string adversary = cfg.params.value("adversary", "random-distinct");
    const std::uint64_t trials = cfg.params.value("trials", std::uint64_t{100});
    std::vector<std::uint64_t> l_list;
    if (cfg.params.contains("l_list"))
        l_list = cfg.params.at("l_list").get<std::vector<std::uint64_t>>();
    else
        l_list = {base.query_budget};
    // scaling sweeps may pass the analysis bound on l
    base.enforce_budget_bound = cfg.params.value("enforce_budget_bound", false);
    json rows = json::array();
    for (std::size_t i = 0; i < l_list.size(); ++i) {
        games::GameConfig gc = base;
        gc.query_budget = l_list[i];
        gc.seed = derive_seed(cfg.seed, i);
        const games::TrialStats st = games::run_trials(gc, adversary, trials);
        rows.push_back({{"n", gc.n}, {"l", l_list[i]}, {"win_rate", st.win_rate()},
                        {"stderr", st.stderr_()}, {"trials", st.trials}});
    }
    return json{{"game", base.game}, {"adversary", adversary}, {"rows", rows}};
}

json count_cmd(const ExperimentConfig& cfg) {
    const std::string formula = cfg.params.at("formula").get<std::string>();
    const json& p = cfg.params;
    json out{{"formula", formula}};
    const auto big_str = [](const BigCount& b) {
        std::ostringstream os;
        os << b;
        return os.str();
    };
    if (formula == "gaussian-binomial") {
        out["value"] = big_str(counting::gaussian_binomial(
            p.at("n").get<unsigned>(), p.at("k").get<unsigned>(), p.at("p").get<unsigned>()));
    } else if (formula == "subspaces-brute") {
        out["value"] = big_str(counting::count_subspaces_brute(
            p.at("n").get<unsigned>(), p.at("k").get<unsigned>(), p.at("p").get<unsigned>()));
    } else if (formula == "completion-2col") {
        const auto c = counting::completion_counts_2col(p.at("m").get<unsigned>(),
                                                        p.at("t").get<unsigned>());
        out["value"] = {{"with_point", big_str(c.with_point)},
                        {"with_point_ortho", big_str(c.with_point_ortho)},
                        {"complement", big_str(c.complement)},
                        {"avoiding_t", big_str(c.avoiding_t)}};
    } else if (formula == "ratio-2col") {
        out["value"] = rational_str(
            counting::ratio_R_2col(p.at("m").get<unsigned>(), p.at("t").get<unsigned>()));
    } else if (formula == "ratio-kcol") {
        out["value"] = rational_str(counting::ratio_R_kcol(
            p.at("m").get<unsigned>(), p.at("k").get<unsigned>(), p.at("t").get<unsigned>()));
    } else if (formula == "telescoping") {
        out["value"] = rational_str(counting::telescoping_product(p.at("m").get<unsigned>()));
    } else if (formula == "norm-p") {
        out["value"] = rational_str(counting::norm_P(
            p.at("m").get<unsigned>(), p.at("l").get<std::uint64_t>(),
            p.at("z0").get<std::uint64_t>(), p.at("z1").get<std::uint64_t>(),
            p.at("k").get<unsigned>()));
    } else if (formula == "max-load-bound" || formula == "collision-bound") {
        counting::BinDistribution d =
            p.contains("bins") ? counting::BinDistribution::uniform(p.at("bins").get<std::size_t>())
                               : counting::BinDistribution::three_valued(
                                     p.at("m").get<unsigned>(), p.at("l").get<std::uint64_t>(),
                                     p.at("z0").get<std::uint64_t>(), p.at("z1").get<std::uint64_t>(),
                                     p.at("k").get<unsigned>());
        if (formula == "max-load-bound")
            out["value"] = rational_str(counting::max_load_bound(
                p.at("l").get<std::uint64_t>(), p.at("k").get<unsigned>(), d));
        else
            out["value"] = rational_str(counting::collision_count_bound(
                p.at("l").get<std::uint64_t>(), p.at("k").get<unsigned>(), d));
    } else if (formula == "completion-g4") {
        const auto c = counting::eligible_completion_count_g4(
            p.at("m").get<unsigned>(), p.at("k").get<unsigned>(), p.at("l").get<std::uint64_t>());
        out["value"] = {{"count", big_str(c.count)},
                        {"positive", c.positive},
                        {"smallest_factor", big_str(c.smallest_factor)},
                        {"forbidden", big_str(c.forbidden)}};
    } else {
        throw std::invalid_argument("count: unknown formula " + formula);
    }
    return out;
}

json gsp_experiment_cmd(const ExperimentConfig& cfg) {
    const unsigned p = cfg.params.at("p").get<unsigned>();
    const unsigned n = cfg.params.at("n").get<unsigned>();
    const unsigned k = cfg.params.at("k").get<unsigned>();
    const std::uint64_t trials = cfg.params.value("trials", std::uint64_t{100});
    const gsp::GspStats st = gsp::gsp_experiment(p, n, k, trials, cfg.seed);
    json per_trial = json::array();
    for (std::uint64_t q : st.per_trial) per_trial.push_back(q);
    return json{{"p", p}, {"n", n}, {"k", k}, {"trials", st.trials},
                {"successes", st.successes}, {"success_rate",
                 st.trials ? double(st.successes) / double(st.trials) : 0.0},
                {"mean_queries", st.mean_queries}, {"median_queries", st.median_queries},
                {"q25", st.q25}, {"q75", st.q75}, {"per_trial", per_trial}};
}

std::string csv_escape(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

} // namespace

json Report::to_json() const {
    return json{{"schema", "report/1"},    {"tool_version", tool_version},
                {"config", config_echo},   {"results", results},
                {"wall_ms", wall_ms},      {"seed", seed}};
}

Report run(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.seed = config.seed;
    rep.config_echo = json{{"subcommand", config.subcommand},
                           {"params", config.params},
                           {"seed", config.seed},
                           {"format", config.format}};

    if (config.subcommand == "gen-instance")
        rep.results = gen_instance(config);
    else if (config.subcommand == "verify-bent")
        rep.results = verify_bent(config);
    else if (config.subcommand == "forrelation")
        rep.results = forrelation_cmd(config);
    else if (config.subcommand == "play-game")
        rep.results = play_game(config);
    else if (config.subcommand == "collision-experiment")
        rep.results = collision_experiment(config);
    else if (config.subcommand == "count")
        rep.results = count_cmd(config);
    else if (config.subcommand == "gsp-experiment")
        rep.results = gsp_experiment_cmd(config);
    else
        throw std::invalid_argument("run: unknown subcommand " + config.subcommand);

    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();

    std::optional<std::string> path = config.output_path;
    if (!path) {
        if (const char* dir = std::getenv(kOutputDirEnv)) {
            path = std::string(dir) + "/" + config.subcommand + "-report.json";
        }
    }
    const std::string body = config.format == "csv" && config.subcommand == "gsp-experiment"
                                 ? emit_scaling_table({rep})
                                 : rep.to_json().dump(2) + "\n";
    if (path) {
        std::ofstream f(*path);
        if (!f) throw std::invalid_argument("run: unwritable output path " + *path);
        f << body;
    } else {
        std::cout << body;
    }
    return rep;
}

std::string emit_scaling_table(const std::vector<Report>& results) {
    std::ostringstream out;
    if (results.empty()) {
        out << "subcommand,metric,value\n";
        return out.str();
    }
    std::string kind;
    for (const Report& r : results) {
        const std::string sc = r.config_echo.at("subcommand").get<std::string>();
        if (kind.empty())
            kind = sc;
        else if (kind != sc)
            throw std::invalid_argument("emit_scaling_table: heterogeneous result kinds");
    }
    if (kind == "collision-experiment") {
        out << "n,l,win_rate,stderr,trials\n";
        for (const Report& r : results)
            for (const auto& row : r.results.at("rows"))
                out << row.at("n") << ',' << row.at("l") << ',' << row.at("win_rate") << ','
                    << row.at("stderr") << ',' << row.at("trials") << '\n';
    } else if (kind == "gsp-experiment") {
        out << "p,n,k,median_queries,q25,q75\n";
        for (const Report& r : results)
            out << r.results.at("p") << ',' << r.results.at("n") << ',' << r.results.at("k") << ','
                << r.results.at("median_queries") << ',' << r.results.at("q25") << ','
                << r.results.at("q75") << '\n';
    } else {
        out << "subcommand,results\n";
        for (const Report& r : results) out << kind << ',' << csv_escape(r.results) << '\n';
    }
    return out.str();
}

} // namespace forrlab::cli
