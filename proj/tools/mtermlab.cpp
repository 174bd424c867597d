// mtermlab: batch driver for the trigonometric approximation laboratory.
//
// Exit codes: 0 success, 2 assertion/invariant failure, 64 config error.

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "mterm/approx.hpp"
#include "mterm/csv.hpp"
#include "mterm/experiment.hpp"
#include "mterm/extremal.hpp"
#include "mterm/psi.hpp"
#include "mterm/spectral.hpp"

using namespace mterm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitConfig = 64;

struct PsiFlags {
    std::string kind = "exp_power";
    double alpha = 1.0;
    double r = 1.0;

    PsiFunction build() const {
        if (kind == "exp_power") return PsiFunction::exp_power(alpha, r);
        if (kind == "power") return PsiFunction::power(r);
        throw config_error("kind must be exp_power or power");
    }
};

void add_psi_flags(CLI::App* cmd, PsiFlags& flags) {
    cmd->add_option("--kind", flags.kind, "generator family: exp_power | power");
    cmd->add_option("--alpha", flags.alpha, "exp_power decay rate");
    cmd->add_option("--r", flags.r, "exponent");
}

struct ConfigCli {
    std::string config_path;
    std::string s_text, p_text;
    int n_min = -1, n_max = -1;
    double beta = std::nan("");
    std::string out_dir;
    int sample_count = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_config_flags(CLI::App* cmd, ConfigCli& cli) {
    cmd->add_option("--config", cli.config_path, "experiment config file");
    cmd->add_option("--n-min", cli.n_min, "first n");
    cmd->add_option("--n-max", cli.n_max, "last n");
    cmd->add_option("--s", cli.s_text, "approximation metric (>= 1 or inf)");
    cmd->add_option("--p", cli.p_text, "class ball exponent (>= 1 or inf)");
    cmd->add_option("--beta", cli.beta, "phase parameter");
    cmd->add_option("--samples", cli.sample_count, "random class elements");
    cmd->add_option("--seed", cli.seed, "generator seed")
        ->each([&](const std::string&) { cli.seed_set = true; });
    cmd->add_option("--out", cli.out_dir, "output directory");
}

ExperimentConfig resolve_config(const ConfigCli& cli, const PsiFlags* psi) {
    ExperimentConfig cfg = cli.config_path.empty()
                               ? ExperimentConfig{}
                               : parse_config_file(cli.config_path);
    if (psi) cfg.psi = psi->build();
    if (cli.n_min >= 0) cfg.n_min = cli.n_min;
    if (cli.n_max >= 0) cfg.n_max = cli.n_max;
    if (!cli.s_text.empty()) cfg.s = parse_norm_index_text(cli.s_text, "s");
    if (!cli.p_text.empty()) cfg.p = parse_norm_index_text(cli.p_text, "p");
    if (!std::isnan(cli.beta)) cfg.beta = cli.beta;
    if (cli.sample_count >= 0) cfg.sample_count = cli.sample_count;
    if (cli.seed_set) cfg.seed = cli.seed;
    if (!cli.out_dir.empty()) cfg.output_dir = cli.out_dir;
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw config_error("need 1 <= n_min <= n_max");
    return cfg;
}

int cmd_psi_info(const PsiFlags& flags, double t_max) {
    const PsiFunction psi = flags.build();
    const ClassifyOptions opts{t_max};
    const PsiCharacteristics ch = classify(psi, opts);
    std::printf("psi(t) = %s\n", psi.describe().c_str());
    std::printf("K0 (max eta(t)-t)   : %s\n", g17(ch.K0).c_str());
    std::printf("in_M                : %s\n", to_string(ch.in_M).c_str());
    std::printf("in_M_plus_inf       : %s\n", to_string(ch.in_M_plus_inf).c_str());
    std::printf("in_M_prime_inf      : %s\n", to_string(ch.in_M_prime_inf).c_str());
    std::printf("mu(1) -> mu(t_max)  : %s -> %s\n", g17(ch.mu_first).c_str(),
                g17(ch.mu_last).c_str());
    std::printf("\n%8s %22s %22s %22s\n", "t", "psi(t)", "eta(t)", "mu(t)");
    for (double t : {1.0, 2.0, 5.0, 10.0, 50.0, 100.0}) {
        if (eval_psi(psi, t) < 1e-290) break;
        std::printf("%8g %22.15g %22.15g %22.15g\n", t, eval_psi(psi, t),
                    eta(psi, t), mu(psi, t));
    }
    return kExitOk;
}

int cmd_build_fstar(const PsiFlags& flags, int n, const std::string& out) {
    const ExtremalFunction fs = build_fstar(flags.build(), n);
    write_text_file(out, extremal_to_csv(fs));
    std::printf("f*(psi;%d): K0=%s A=%s C1=%s bound=%s -> %s\n", n,
                g17(fs.K0).c_str(), g17(fs.A).c_str(), g17(fs.C1).c_str(),
                g17(lower_bound_value(fs)).c_str(), out.c_str());
    return kExitOk;
}

int cmd_approx(const PsiFlags& flags, const std::string& input, int n, int m,
               const std::string& s_text, const std::string& strategy_text,
               bool real_coefficients, const std::string& out) {
    const double s = parse_norm_index_text(s_text, "s");
    Method strategy = Method::GreedySwap;
    if (strategy_text == "exhaustive") strategy = Method::Exhaustive;
    else if (strategy_text == "greedy") strategy = Method::Greedy;
    else if (strategy_text != "greedyswap")
        throw config_error("strategy must be exhaustive|greedy|greedyswap");

    TrigPoly f;
    if (!input.empty())
        f = trigpoly_from_csv(read_text_file(input));
    else
        f = build_fstar(flags.build(), n).poly;

    std::vector<std::pair<int, double>> keys;
    std::vector<MTermResult> results;
    ApproxOptions opts;
    results.push_back(best_mterm(f, m, s, strategy, opts));
    keys.push_back({m, s});
    results.push_back(orthogonal_mterm(f, m, s, strategy, opts));
    keys.push_back({m, s});
    if (real_coefficients) {
        opts.real_coefficients = true;
        results.push_back(best_mterm(f, m, s, strategy, opts));
        keys.push_back({m, s});
    }
    write_text_file(out, mterm_results_to_csv(keys, results));
    std::printf("m=%d s=%s: error=%s orth=%s cert=%s -> %s\n", m,
                s_text.c_str(), g17(results[0].error).c_str(),
                g17(results[1].error).c_str(),
                g17(results[0].certificate.value_or(0.0)).c_str(), out.c_str());
    return kExitOk;
}

int cmd_chain(const ExperimentConfig& cfg) {
    const ChainExperimentReport rep = run_chain_experiment(cfg);
    write_text_file(cfg.output_dir + "/chain.csv", chain_report_csv(rep));
    write_text_file(cfg.output_dir + "/violations.csv",
                    chain_violations_csv(rep));
    std::printf("chain: %zu rows, %d violations -> %s\n", rep.rows.size(),
                rep.violations, cfg.output_dir.c_str());
    return rep.ok ? kExitOk : kExitAssertion;
}

int cmd_orders(const ExperimentConfig& cfg) {
    const OrderReport rep = run_order_experiment(cfg);
    write_order_outputs(rep, cfg.output_dir);
    for (const std::string& w : rep.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!rep.ok)
        std::fprintf(stderr, "invariant failure: %s\n", rep.failure.c_str());
    std::printf("orders: %zu rows, %zu sample rows -> %s\n", rep.rows.size(),
                rep.sample_rows.size(), cfg.output_dir.c_str());
    return rep.ok ? kExitOk : kExitAssertion;
}

int cmd_plots(const std::string& report_path, const std::string& out_dir) {
    const OrderReport rep = order_report_from_csv(read_text_file(report_path));
    const auto files = emit_plots(rep, out_dir);
    for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trigonometric m-term approximation laboratory"};
    app.require_subcommand(0, 1);
    bool print_schema = false;
    app.add_flag("--print-schema", print_schema,
                 "print the experiment config schema and exit");

    // psi-info
    auto* info = app.add_subcommand("psi-info", "generator characteristics");
    PsiFlags info_psi;
    double info_tmax = 1e3;
    add_psi_flags(info, info_psi);
    info->add_option("--t-max", info_tmax, "probe grid end");

    // build-fstar
    auto* bf = app.add_subcommand("build-fstar", "construct the extremal polynomial");
    PsiFlags bf_psi;
    int bf_n = 4;
    std::string bf_out = "fstar.csv";
    add_psi_flags(bf, bf_psi);
    bf->add_option("--n", bf_n, "degree parameter");
    bf->add_option("--out", bf_out, "output csv");

    // approx
    auto* ap = app.add_subcommand("approx", "m-term approximation of one function");
    PsiFlags ap_psi;
    std::string ap_input, ap_s = "2", ap_strategy = "greedyswap",
                ap_out = "mterm.csv";
    int ap_n = 4, ap_m = 4;
    bool ap_real = false;
    add_psi_flags(ap, ap_psi);
    ap->add_option("--input", ap_input, "TrigPoly csv (default: build f*)");
    ap->add_option("--n", ap_n, "f* degree parameter when no input given");
    ap->add_option("--m", ap_m, "number of kept harmonics");
    ap->add_option("--s", ap_s, "metric (>= 1 or inf)");
    ap->add_option("--strategy", ap_strategy, "exhaustive|greedy|greedyswap");
    ap->add_flag("--real-coefficients", ap_real,
                 "also report the real-restricted fit");
    ap->add_option("--out", ap_out, "output csv");

    // chain
    auto* ch = app.add_subcommand("chain", "verify the inequality chain");
    PsiFlags ch_psi;
    ConfigCli ch_cli;
    add_psi_flags(ch, ch_psi);
    add_config_flags(ch, ch_cli);

    // orders
    auto* od = app.add_subcommand("orders", "order-relation sweep over n");
    PsiFlags od_psi;
    ConfigCli od_cli;
    add_psi_flags(od, od_psi);
    add_config_flags(od, od_cli);

    // plots
    auto* pl = app.add_subcommand("plots", "render plots from an orders csv");
    std::string pl_report = "orders.csv", pl_out = ".";
    pl->add_option("--report", pl_report, "orders csv path");
    pl->add_option("--out", pl_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (print_schema) {
            std::fputs(config_schema().c_str(), stdout);
            return kExitOk;
        }
        if (info->parsed()) return cmd_psi_info(info_psi, info_tmax);
        if (bf->parsed()) return cmd_build_fstar(bf_psi, bf_n, bf_out);
        if (ap->parsed())
            return cmd_approx(ap_psi, ap_input, ap_n, ap_m, ap_s, ap_strategy,
                              ap_real, ap_out);
        if (ch->parsed()) {
            const bool psi_given =
                ch->count("--kind") || ch->count("--alpha") || ch->count("--r");
            return cmd_chain(resolve_config(ch_cli, psi_given ? &ch_psi : nullptr));
        }
        if (od->parsed()) {
            const bool psi_given =
                od->count("--kind") || od->count("--alpha") || od->count("--r");
            return cmd_orders(resolve_config(od_cli, psi_given ? &od_psi : nullptr));
        }
        if (pl->parsed()) return cmd_plots(pl_report, pl_out);
        std::fputs(app.help().c_str(), stdout);
        return kExitOk;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const enumeration_infeasible& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAssertion;
    }
}
