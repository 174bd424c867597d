#include "mterm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "mterm/csv.hpp"
#include "mterm/spectral.hpp"

namespace mterm {

ApproxOptions ExperimentConfig::approx_options() const {
    ApproxOptions o;
    o.real_coefficients = real_coefficients;
    o.oversample_finite = oversample_finite;
    o.oversample_inf = oversample_inf;
    return o;
}

SampleOptions ExperimentConfig::sample_options() const {
    return SampleOptions{sample_degree, amp_min};
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_norm_index(const std::string& v, const std::string& key) {
    if (v == "inf" || v == "Inf" || v == "INF")
        return std::numeric_limits<double>::infinity();
    try {
        const double x = std::stod(v);
        if (x < 1.0) throw std::exception();
        return x;
    } catch (...) {
        throw config_error(key + " must be a number >= 1 or 'inf'");
    }
}

}  // namespace

double parse_norm_index_text(const std::string& text, const std::string& name) {
    return parse_norm_index(text, name);
}

std::string config_schema() {
    return
        "# mtermlab experiment config: flat `key = value` lines, '#' comments.\n"
        "# Unknown keys are rejected.\n"
        "#\n"
        "# kind            = exp_power | power          generator family\n"
        "# alpha           = <positive real>            exp_power only (default 1)\n"
        "# r               = <real>                     exponent (exp_power: r >= 1; power: r > 0)\n"
        "# beta            = <real>                     phase parameter (default 0)\n"
        "# p               = <real >= 1 | inf>          class ball exponent (default 2)\n"
        "# s               = <real >= 1 | inf>          approximation metric (default 2)\n"
        "# n_min, n_max    = <int >= 1>                 n range (defaults 2, 8)\n"
        "# strategies      = auto|exhaustive|greedy|greedyswap\n"
        "#                   auto: exhaustive for s = 2 when feasible, greedyswap otherwise\n"
        "# seed            = <uint64>                   sample generator seed (default 1)\n"
        "# sample_count    = <int >= 0>                 random class elements (default 0)\n"
        "# sample_degree   = <int >= 1>                 degree of random elements (default 8)\n"
        "# amp_min         = <real in [0,1)>            harmonic amplitude floor (default 0.25)\n"
        "# oversample_finite = <int >= 2>               grid factor for finite s (default 8)\n"
        "# oversample_inf  = <int >= 2>                 grid factor for s = inf (default 32)\n"
        "# real_coefficients = true|false               also fit real-restricted coefficients\n"
        "# output_dir      = <path>                     artifact directory (default .)\n"
        "#\n"
        "# Randomness: one SplitMix64 stream seeded with `seed`; sample i consumes\n"
        "# draws 2*sample_degree*i .. 2*sample_degree*(i+1)-1 in the order\n"
        "# (amplitude_1, phase_1, amplitude_2, phase_2, ...). Amplitudes map a\n"
        "# [0,1) draw to [amp_min, 1); phases map to [0, 2*pi).\n"
        "#\n"
        "# Environment: MTERMLAB_WORKERS selects the worker count (absent = 1).\n"
        "# Output bytes are identical for any worker count.\n";
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::string kind = "exp_power";
    double alpha = 1.0, r = 1.0;
    bool saw_r = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "kind") kind = val;
            else if (key == "alpha") alpha = std::stod(val);
            else if (key == "r") { r = std::stod(val); saw_r = true; }
            else if (key == "beta") cfg.beta = std::stod(val);
            else if (key == "p") cfg.p = parse_norm_index(val, "p");
            else if (key == "s") cfg.s = parse_norm_index(val, "s");
            else if (key == "n_min") cfg.n_min = std::stoi(val);
            else if (key == "n_max") cfg.n_max = std::stoi(val);
            else if (key == "strategies") cfg.strategies = val;
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "sample_count") cfg.sample_count = std::stoi(val);
            else if (key == "sample_degree") cfg.sample_degree = std::stoi(val);
            else if (key == "amp_min") cfg.amp_min = std::stod(val);
            else if (key == "oversample_finite") cfg.oversample_finite = std::stoi(val);
            else if (key == "oversample_inf") cfg.oversample_inf = std::stoi(val);
            else if (key == "real_coefficients") cfg.real_coefficients = (val == "true" || val == "1");
            else if (key == "output_dir") cfg.output_dir = val;
            else throw config_error("unknown key `" + key + "`");
        } catch (const config_error&) {
            throw;
        } catch (...) {
            throw config_error("line " + std::to_string(lineno) +
                               ": bad value for `" + key + "`");
        }
    }

    try {
        if (kind == "exp_power")
            cfg.psi = PsiFunction::exp_power(alpha, saw_r ? r : 1.0);
        else if (kind == "power")
            cfg.psi = PsiFunction::power(saw_r ? r : 1.0);
        else
            throw config_error("kind must be exp_power or power");
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }

    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw config_error("need 1 <= n_min <= n_max");
    if (cfg.sample_count < 0) throw config_error("sample_count >= 0");
    if (cfg.sample_degree < 1) throw config_error("sample_degree >= 1");
    if (!(cfg.amp_min >= 0.0 && cfg.amp_min < 1.0))
        throw config_error("amp_min in [0, 1)");
    if (cfg.oversample_finite < 2 || cfg.oversample_inf < 2)
        throw config_error("oversample factors must be >= 2");
    if (cfg.strategies != "auto" && cfg.strategies != "exhaustive" &&
        cfg.strategies != "greedy" && cfg.strategies != "greedyswap")
        throw config_error("strategies must be auto|exhaustive|greedy|greedyswap");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    try {
        return parse_config_text(read_text_file(path));
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const config_error*>(&e)) throw;
        throw config_error(e.what());
    }
}

int worker_count() {
    const char* env = std::getenv("MTERMLAB_WORKERS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

namespace {

// Runs fn(0..count-1) on `workers` threads; each call is pure and writes
// only its own slot, so scheduling cannot affect the assembled output.
template <typename Fn>
void parallel_cells(int count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min(workers, count);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct StrategyPick {
    Method method;
    std::string warning;  // nonempty when a downgrade happened
};

StrategyPick pick_strategy(const ExperimentConfig& cfg, const TrigPoly& f,
                           int m) {
    const auto feasible = [&](long long cap) {
        // C(2N+1, m) against the enumeration cap
        const int items = 2 * f.degree() + 1;
        if (m >= items) return true;  // degenerate all-kept case, no enumeration
        long long c = 1;
        const int mm = std::min(m, items - m);
        for (int i = 1; i <= mm; ++i) {
            c = c * (items - mm + i) / i;
            if (c > cap) return false;
        }
        return true;
    };
    const ApproxOptions opts;  // default cap
    if (cfg.strategies == "greedy") return {Method::Greedy, ""};
    if (cfg.strategies == "greedyswap") return {Method::GreedySwap, ""};
    if (cfg.strategies == "exhaustive") {
        if (feasible(opts.enumeration_cap)) return {Method::Exhaustive, ""};
        return {Method::GreedySwap,
                "exhaustive infeasible for m=" + std::to_string(m) +
                    " (cap exceeded); downgraded to greedyswap"};
    }
    // auto: the exhaustive oracle is cheap only on the exact s = 2 path
    if (cfg.s == 2.0 && feasible(opts.enumeration_cap))
        return {Method::Exhaustive, ""};
    return {Method::GreedySwap, ""};
}

struct OrderCell {
    std::vector<OrderRow> rows;
    std::vector<std::string> warnings;
    std::string failure;
};

const double kChainRelTol = 1e-7;

bool leq_rel(double a, double b) {
    return a <= b + kChainRelTol * std::abs(b) + 1e-14;
}

OrderCell order_cell(const ExperimentConfig& cfg, int n) {
    OrderCell cell;
    const ExtremalFunction fs = build_fstar(cfg.psi, n);
    const ApproxOptions opts = cfg.approx_options();
    const double psi_n = eval_psi(cfg.psi, n);
    const double lb = lower_bound_value(fs);
    const double En = fourier_sum_error_shared(fs.poly, n, cfg.s, opts);

    for (int m = 2 * n - 1; m <= 2 * n; ++m) {
        const StrategyPick pick = pick_strategy(cfg, fs.poly, m);
        if (!pick.warning.empty())
            cell.warnings.push_back("n=" + std::to_string(n) + " m=" +
                                    std::to_string(m) + ": " + pick.warning);
        const MTermResult e = best_mterm(fs.poly, m, cfg.s, pick.method, opts);
        const MTermResult o =
            orthogonal_mterm(fs.poly, m, cfg.s, pick.method, opts);
        OrderRow row;
        row.n = n;
        row.m = m;
        row.psi_n_value = psi_n;
        row.e_m_upper = e.error;
        row.e_m_certificate = e.certificate.value_or(0.0);
        row.e_orth_upper = o.error;
        row.E_n_value = En;
        row.ratio_upper = row.e_m_upper / psi_n;
        row.ratio_cert = row.e_m_certificate / psi_n;
        cell.rows.push_back(row);

        auto fail = [&](const std::string& what) {
            if (cell.failure.empty())
                cell.failure = "n=" + std::to_string(n) +
                               " m=" + std::to_string(m) + ": " + what;
        };
        if (!leq_rel(row.e_m_certificate, row.e_m_upper))
            fail("certificate exceeds achieved error");
        if (!leq_rel(row.e_m_upper, row.e_orth_upper))
            fail("best error exceeds orthogonal error");
        if (!leq_rel(row.e_orth_upper, row.E_n_value))
            fail("orthogonal error exceeds Fourier remainder");
        if (n >= 2) {
            if (row.e_m_certificate < lb * (1.0 - 1e-12))
                fail("certificate below the constructive bound C1*psi(n)/(2A^2)");
        } else if (row.e_m_certificate < lb * (1.0 - 1e-12)) {
            // At n = 1 the k = 0 coefficient of f* is the smallest one, so the
            // honest duality certificate sits below C1*psi(1)/(2A^2).
            cell.warnings.push_back(
                "n=1 m=" + std::to_string(m) +
                ": certificate is the k=0 duality value, below C1*psi(1)/(2A^2)");
        }
    }
    return cell;
}

}  // namespace

OrderReport run_order_experiment(const ExperimentConfig& cfg) {
    const PsiCharacteristics ch = classify(cfg.psi);
    if (ch.in_M_prime_inf != Tristate::True)
        throw config_error(
            "generator is not classified with bounded eta(t)-t "
            "(in_M_prime_inf = " + to_string(ch.in_M_prime_inf) + ")");

    OrderReport report;
    const int n_count = cfg.n_max - cfg.n_min + 1;
    std::vector<OrderCell> cells(n_count);
    const int workers = worker_count();
    parallel_cells(n_count, workers, [&](int i) {
        cells[i] = order_cell(cfg, cfg.n_min + i);
    });
    for (const OrderCell& cell : cells) {
        report.rows.insert(report.rows.end(), cell.rows.begin(), cell.rows.end());
        report.warnings.insert(report.warnings.end(), cell.warnings.begin(),
                               cell.warnings.end());
        if (!cell.failure.empty() && report.failure.empty()) {
            report.ok = false;
            report.failure = cell.failure;
        }
    }

    if (cfg.sample_count > 0) {
        const ClassParams params{cfg.psi, cfg.beta, cfg.p};
        std::vector<std::vector<SampleRow>> sample_cells(cfg.sample_count);
        parallel_cells(cfg.sample_count, workers, [&](int i) {
            const TrigPoly f =
                random_class_sample(cfg.seed, i, params, cfg.sample_options());
            const ApproxOptions opts = cfg.approx_options();
            for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
                SampleRow row;
                row.n = n;
                row.sample_index = i;
                row.E_n_value = fourier_sum_error_shared(f, n, cfg.s, opts);
                row.psi_n_value = eval_psi(cfg.psi, n);
                row.ratio = row.E_n_value / row.psi_n_value;
                sample_cells[i].push_back(row);
            }
        });
        for (const auto& cell : sample_cells)
            report.sample_rows.insert(report.sample_rows.end(), cell.begin(),
                                      cell.end());
        std::sort(report.sample_rows.begin(), report.sample_rows.end(),
                  [](const SampleRow& a, const SampleRow& b) {
                      return a.n != b.n ? a.n < b.n
                                        : a.sample_index < b.sample_index;
                  });
    }

    std::sort(report.rows.begin(), report.rows.end(),
              [](const OrderRow& a, const OrderRow& b) {
                  return a.n != b.n ? a.n < b.n : a.m < b.m;
              });
    return report;
}

std::string order_report_csv(const OrderReport& report) {
    std::string out =
        "n,m,psi_n_value,e_m_upper,e_m_certificate,e_orth_upper,E_n_value,"
        "ratio_upper,ratio_cert\n";
    for (const OrderRow& r : report.rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.m) + "," +
               g17(r.psi_n_value) + "," + g17(r.e_m_upper) + "," +
               g17(r.e_m_certificate) + "," + g17(r.e_orth_upper) + "," +
               g17(r.E_n_value) + "," + g17(r.ratio_upper) + "," +
               g17(r.ratio_cert) + "\n";
    }
    return out;
}

std::string sample_rows_csv(const OrderReport& report) {
    std::string out = "n,sample_index,E_n_value,psi_n_value,ratio\n";
    for (const SampleRow& r : report.sample_rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.sample_index) + "," +
               g17(r.E_n_value) + "," + g17(r.psi_n_value) + "," +
               g17(r.ratio) + "\n";
    }
    return out;
}

std::string warnings_csv(const OrderReport& report) {
    std::string out = "message\n";
    for (const std::string& w : report.warnings) out += w + "\n";
    return out;
}

void write_order_outputs(const OrderReport& report, const std::string& dir) {
    write_text_file(dir + "/orders.csv", order_report_csv(report));
    write_text_file(dir + "/samples_en.csv", sample_rows_csv(report));
    write_text_file(dir + "/warnings.csv", warnings_csv(report));
}

OrderReport order_report_from_csv(const std::string& text) {
    OrderReport report;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("n,m,", 0) == 0) continue;  // header
        OrderRow r;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &r.n,
                        &r.m, &r.psi_n_value, &r.e_m_upper, &r.e_m_certificate,
                        &r.e_orth_upper, &r.E_n_value, &r.ratio_upper,
                        &r.ratio_cert) != 9)
            throw config_error("orders csv: bad row: " + line);
        report.rows.push_back(r);
    }
    return report;
}

ChainExperimentReport run_chain_experiment(const ExperimentConfig& cfg) {
    const PsiCharacteristics ch = classify(cfg.psi);
    if (ch.in_M_prime_inf != Tristate::True)
        throw config_error(
            "generator is not classified with bounded eta(t)-t "
            "(in_M_prime_inf = " + to_string(ch.in_M_prime_inf) + ")");

    ChainExperimentReport report;
    const int n_count = cfg.n_max - cfg.n_min + 1;
    const int cell_count = n_count * (1 + cfg.sample_count);
    std::vector<std::vector<ChainExperimentRow>> cells(cell_count);
    const ApproxOptions opts = cfg.approx_options();
    const ClassParams params{cfg.psi, cfg.beta, cfg.p};

    parallel_cells(cell_count, worker_count(), [&](int cell) {
        const int n = cfg.n_min + cell % n_count;
        const int which = cell / n_count;  // 0 = fstar, 1.. = samples
        TrigPoly f;
        std::string name;
        if (which == 0) {
            f = build_fstar(cfg.psi, n).poly;
            name = "fstar";
        } else {
            f = random_class_sample(cfg.seed, which - 1, params,
                                    cfg.sample_options());
            name = "sample" + std::to_string(which - 1);
        }
        const ChainReport cr = chain_check(f, n, cfg.s, opts);
        for (const ChainRow& row : cr.rows) {
            ChainExperimentRow out;
            out.function = name;
            out.n = n;
            out.m = row.m;
            out.s = cfg.s;
            out.e_best = row.e_best;
            out.e_orth = row.e_orth;
            out.E_n = cr.E_n;
            out.ok = row.ok;
            cells[cell].push_back(out);
        }
    });

    for (const auto& cell : cells)
        report.rows.insert(report.rows.end(), cell.begin(), cell.end());
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ChainExperimentRow& a, const ChainExperimentRow& b) {
                  if (a.function != b.function) return a.function < b.function;
                  return a.n != b.n ? a.n < b.n : a.m < b.m;
              });
    for (const auto& row : report.rows)
        if (!row.ok) ++report.violations;
    report.ok = report.violations == 0;
    return report;
}

namespace {
std::string chain_rows_csv(const std::vector<ChainExperimentRow>& rows,
                           bool only_violations) {
    std::string out = "function,n,m,s,e_m,e_orth,E_n,ok\n";
    for (const auto& r : rows) {
        if (only_violations && r.ok) continue;
        out += r.function + "," + std::to_string(r.n) + "," +
               std::to_string(r.m) + "," + g17(r.s) + "," + g17(r.e_best) +
               "," + g17(r.e_orth) + "," + g17(r.E_n) + "," +
               (r.ok ? "1" : "0") + "\n";
    }
    return out;
}
}  // namespace

std::string chain_report_csv(const ChainExperimentReport& report) {
    return chain_rows_csv(report.rows, false);
}

std::string chain_violations_csv(const ChainExperimentReport& report) {
    return chain_rows_csv(report.rows, true);
}

}  // namespace mterm
