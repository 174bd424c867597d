#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mterm/approx.hpp"
#include "mterm/extremal.hpp"
#include "mterm/psi.hpp"
#include "mterm/sampling.hpp"

namespace mterm {

/// Raised for malformed configs / infeasible requests; maps to exit code 64.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One experiment: a generator, class parameters, an n range and the
/// strategy/grid/seed knobs. Parsed from a flat "key = value" file; every
/// key is documented by config_schema().
struct ExperimentConfig {
    PsiFunction psi = PsiFunction::exp_power(1.0, 1.0);
    double beta = 0.0;
    double p = 2.0;
    double s = 2.0;
    int n_min = 2;
    int n_max = 8;
    std::string strategies = "auto";  // auto | exhaustive | greedy | greedyswap
    std::uint64_t seed = 1;
    int sample_count = 0;
    int sample_degree = 8;
    double amp_min = 0.25;
    int oversample_finite = 8;
    int oversample_inf = 32;
    bool real_coefficients = false;
    std::string output_dir = ".";

    ApproxOptions approx_options() const;
    SampleOptions sample_options() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string config_schema();

/// "1", "2.5", "inf" -> norm index; rejects values below 1.
double parse_norm_index_text(const std::string& text, const std::string& name);

/// Worker count from the MTERMLAB_WORKERS environment variable; absent or
/// invalid means sequential.
int worker_count();

struct OrderRow {
    int n = 0;
    int m = 0;
    double psi_n_value = 0.0;
    double e_m_upper = 0.0;
    double e_m_certificate = 0.0;
    double e_orth_upper = 0.0;
    double E_n_value = 0.0;
    double ratio_upper = 0.0;
    double ratio_cert = 0.0;
};

struct SampleRow {
    int n = 0;
    int sample_index = 0;
    double E_n_value = 0.0;
    double psi_n_value = 0.0;
    double ratio = 0.0;
};

struct OrderReport {
    std::vector<OrderRow> rows;            // sorted by (n, m)
    std::vector<SampleRow> sample_rows;    // sorted by (n, sample_index)
    std::vector<std::string> warnings;
    bool ok = true;
    std::string failure;  // first violated invariant, empty when ok
};

/// Builds f* for each n in range, computes e_m upper bounds and duality
/// certificates for m in {2n-1, 2n}, the orthogonal errors, and the
/// partial-sum remainder on f* and on sample_count random class elements.
/// All row invariants (certificate <= error <= orthogonal <= remainder) are
/// checked; ok reflects them.
OrderReport run_order_experiment(const ExperimentConfig& config);

std::string order_report_csv(const OrderReport& report);
std::string sample_rows_csv(const OrderReport& report);
std::string warnings_csv(const OrderReport& report);

/// Writes orders.csv, samples_en.csv and warnings.csv under output_dir.
void write_order_outputs(const OrderReport& report, const std::string& dir);

/// Reads the orders.csv rows back (for plot generation from an artifact).
OrderReport order_report_from_csv(const std::string& text);

struct ChainExperimentRow {
    std::string function;  // "fstar" or "sample<i>"
    int n = 0;
    int m = 0;
    double s = 2.0;
    double e_best = 0.0;
    double e_orth = 0.0;
    double E_n = 0.0;
    bool ok = true;
};

struct ChainExperimentReport {
    std::vector<ChainExperimentRow> rows;
    int violations = 0;
    bool ok = true;
};

/// chain_check across f* and the seeded random class elements for every n
/// in range, at the config's s.
ChainExperimentReport run_chain_experiment(const ExperimentConfig& config);

std::string chain_report_csv(const ChainExperimentReport& report);
std::string chain_violations_csv(const ChainExperimentReport& report);

/// Static SVG plots derived from an order report: a log plot of the error
/// bounds against psi(n), and a ratio band plot with the display range
/// clamped to [1e-4, 1e4]. Refuses an empty report. Returns the files
/// written.
std::vector<std::string> emit_plots(const OrderReport& report,
                                    const std::string& output_dir);

}  // namespace mterm
