#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forrlab/cli.hpp"

namespace {

using forrlab::cli::ExperimentConfig;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* app, CommonOpts& c) {
    app->add_option("--seed", c.seed, "64-bit master seed");
    app->add_option("-o,--out", c.out, "output path (default stdout or $FORRLAB_OUT_DIR)");
    app->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

ExperimentConfig make_config(const std::string& sub, const CommonOpts& c,
                             nlohmann::json params) {
    ExperimentConfig cfg;
    cfg.subcommand = sub;
    cfg.params = std::move(params);
    cfg.seed = c.seed;
    if (!c.out.empty()) cfg.output_path = c.out;
    cfg.format = c.format;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forrlab: extremal forrelation instances, query games, and exact counting"};
    app.require_subcommand(1);

    // gen-instance
    CommonOpts gi_c;
    unsigned gi_n = 8;
    std::string gi_label = "yes";
    bool gi_reveal = false;
    auto* gi = app.add_subcommand("gen-instance", "sample an extremal instance and export it");
    gi->add_option("--n", gi_n, "even dimension in [4, 24]")->required();
    gi->add_option("--label", gi_label, "yes | no")->check(CLI::IsMember({"yes", "no"}));
    gi->add_flag("--reveal", gi_reveal, "include the hidden spread, D-set, offset, and label");
    add_common(gi, gi_c);

    // verify-bent
    CommonOpts vb_c;
    unsigned vb_n = 8;
    std::uint64_t vb_instances = 50;
    auto* vb = app.add_subcommand("verify-bent", "check bentness and the closed-form transform");
    vb->add_option("--n", vb_n)->required();
    vb->add_option("--instances", vb_instances);
    add_common(vb, vb_c);

    // forrelation
    CommonOpts fo_c;
    unsigned fo_n = 8;
    std::string fo_label = "yes", fo_file;
    auto* fo = app.add_subcommand("forrelation", "compute forr(f, g) exactly");
    fo->add_option("--n", fo_n);
    fo->add_option("--label", fo_label)->check(CLI::IsMember({"yes", "no"}));
    fo->add_option("--instance", fo_file, "instance JSON written by gen-instance --reveal");
    add_common(fo, fo_c);

    // play-game
    CommonOpts pg_c;
    unsigned pg_game = 2, pg_n = 12, pg_k = 2;
    std::uint64_t pg_l = 8, pg_trials = 1;
    std::string pg_adv = "random-distinct";
    bool pg_adaptive = false, pg_anyl = false;
    double pg_c1 = 0.5;
    auto* pg = app.add_subcommand("play-game", "run one game or a batch of trials");
    pg->add_option("--game", pg_game, "1..4")->required();
    pg->add_option("--n", pg_n)->required();
    pg->add_option("--l", pg_l, "query budget (points)")->required();
    pg->add_option("--k", pg_k, "collision order");
    pg->add_option("--adversary", pg_adv);
    pg->add_option("--trials", pg_trials);
    pg->add_option("--c1", pg_c1, "Game 4 requires k < c1*sqrt(m)");
    pg->add_flag("--adaptive", pg_adaptive);
    pg->add_flag("--allow-any-l", pg_anyl, "lift the l < (2^m+1)/4 analysis bound");
    add_common(pg, pg_c);

    // collision-experiment
    CommonOpts ce_c;
    unsigned ce_game = 2, ce_n = 12, ce_k = 2;
    std::uint64_t ce_trials = 1000;
    std::vector<std::uint64_t> ce_ls;
    std::string ce_adv = "random-distinct";
    double ce_c1 = 0.5;
    auto* ce = app.add_subcommand("collision-experiment", "win-rate sweep over query budgets");
    ce->add_option("--game", ce_game)->required();
    ce->add_option("--n", ce_n)->required();
    ce->add_option("--l-list", ce_ls, "query budgets to sweep")->required();
    ce->add_option("--k", ce_k);
    ce->add_option("--adversary", ce_adv);
    ce->add_option("--trials", ce_trials);
    ce->add_option("--c1", ce_c1);
    add_common(ce, ce_c);

    // count
    CommonOpts co_c;
    std::string co_formula;
    std::vector<std::string> co_params;
    auto* co = app.add_subcommand("count", "evaluate a counting formula exactly");
    co->add_option("--formula", co_formula,
                   "gaussian-binomial | subspaces-brute | completion-2col | ratio-2col | "
                   "ratio-kcol | telescoping | norm-p | max-load-bound | collision-bound | "
                   "completion-g4")
        ->required();
    co->add_option("--param", co_params, "name=value, repeatable");
    add_common(co, co_c);

    // gsp-experiment
    CommonOpts ge_c;
    unsigned ge_p = 2, ge_n = 10, ge_k = 1;
    std::uint64_t ge_trials = 100;
    auto* ge = app.add_subcommand("gsp-experiment", "adaptive subgroup recovery statistics");
    ge->add_option("--p", ge_p, "prime modulus")->required();
    ge->add_option("--n", ge_n)->required();
    ge->add_option("--k", ge_k)->required();
    ge->add_option("--trials", ge_trials);
    add_common(ge, ge_c);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (gi->parsed()) {
            cfg = make_config("gen-instance", gi_c,
                              {{"n", gi_n}, {"label", gi_label}, {"reveal_hidden", gi_reveal}});
        } else if (vb->parsed()) {
            cfg = make_config("verify-bent", vb_c, {{"n", vb_n}, {"instances", vb_instances}});
        } else if (fo->parsed()) {
            nlohmann::json p{{"n", fo_n}, {"label", fo_label}};
            if (!fo_file.empty()) p["instance_file"] = fo_file;
            cfg = make_config("forrelation", fo_c, p);
        } else if (pg->parsed()) {
            cfg = make_config("play-game", pg_c,
                              {{"game", pg_game},
                               {"n", pg_n},
                               {"l", pg_l},
                               {"k", pg_k},
                               {"adversary", pg_adv},
                               {"trials", pg_trials},
                               {"adaptive", pg_adaptive},
                               {"c1", pg_c1},
                               {"enforce_budget_bound", !pg_anyl}});
        } else if (ce->parsed()) {
            cfg = make_config("collision-experiment", ce_c,
                              {{"game", ce_game},
                               {"n", ce_n},
                               {"l", ce_ls.empty() ? 8 : ce_ls.front()},
                               {"l_list", ce_ls},
                               {"k", ce_k},
                               {"adversary", ce_adv},
                               {"trials", ce_trials},
                               {"c1", ce_c1}});
        } else if (co->parsed()) {
            nlohmann::json p{{"formula", co_formula}};
            for (const std::string& kv : co_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("count: --param expects name=value");
                p[kv.substr(0, eq)] = std::stoull(kv.substr(eq + 1));
            }
            cfg = make_config("count", co_c, p);
        } else if (ge->parsed()) {
            cfg = make_config("gsp-experiment", ge_c,
                              {{"p", ge_p}, {"n", ge_n}, {"k", ge_k}, {"trials", ge_trials}});
        }
        forrlab::cli::run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
