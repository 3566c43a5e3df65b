#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "resspec/lag_selection.hpp"
#include "resspec/residual_test.hpp"
#include "resspec/simulation.hpp"

namespace resspec {

// Rectangular per-region time series table (rows = time, columns = regions).
struct Dataset {
    Eigen::MatrixXd table;
    std::vector<std::string> regions;
    std::string group_label;

    Eigen::Index length() const noexcept { return table.rows(); }
    Eigen::Index region_count() const noexcept { return table.cols(); }
};

struct CsvOptions {
    bool header = false;       // first row holds region names
    bool long_format = false;  // columns: time, subject, region, value
};

// Wide CSV: columns = regions. Long CSV: stacked (time, subject, region,
// value) rows, averaged across subjects per region. Throws parse_error with
// a row/column location on ragged rows, non-numeric cells, or empty input;
// std::invalid_argument if fewer than 2 regions survive.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});
Dataset parse_csv_text(const std::string& text, const CsvOptions& options = {});

// order-th difference of every column; order in {0,1,2}, length > order + 8.
Dataset difference(const Dataset& d, int order);

enum class PairColor { white, blue, red, purple };
enum class Scenario { linear, joint_quadratic };

const char* color_name(PairColor c);
const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// white: neither group rejects; blue: only A; red: only B; purple: both.
PairColor classify_pair(bool reject_a, bool reject_b);

struct PairResult {
    int x0_region = 0;  // index into ConnectivityGrid::regions
    int x1_region = 0;
    bool ok = true;  // false => untestable, color meaningless
    bool reject_a = false;
    bool reject_b = false;
    PairColor color = PairColor::white;
};

struct UntestablePair {
    int x0_region = 0;
    int x1_region = 0;
    std::string message;
};

struct ConnectivityGrid {
    std::vector<std::string> regions;  // analyzed subset, in order
    Scenario scenario = Scenario::linear;
    double alpha = 0.0;
    std::vector<PairResult> pairs;  // ordered pairs (i,j), i != j, row-major
    std::array<int, 4> color_counts{};  // white, blue, red, purple
    std::vector<UntestablePair> untestable;
};

// All ordered region pairs, both directions. scenario linear: run_test with
// K = 1; joint_quadratic: run_joint_test with lags {0..5} and the quadratic
// map. Per-pair failures are recorded as untestable instead of aborting.
// region_subset: indices into the datasets' region list (empty = all).
ConnectivityGrid connectivity(const Dataset& group_a, const Dataset& group_b,
                              const std::vector<int>& region_subset, Scenario scenario,
                              double alpha, const TestConfig& config = {});

// ---- emission ----------------------------------------------------------
// JSON documents are {"schema_version": 1, "config": {...}, "results": {...}}
// with results keyed by operation; CSV column orders are fixed (see README).

inline constexpr int kSchemaVersion = 1;

struct EmitConfig {
    TestConfig test;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool has_alpha = false;
    bool has_seed = false;
};

std::string test_report_json(const TestReport& r, const EmitConfig& cfg);
std::string test_report_csv(const TestReport& r);
std::string mc_result_json(const MCResult& r, const EmitConfig& cfg);
std::string mc_result_csv(const MCResult& r);
std::string lag_scores_json(const std::vector<LagScore>& scores, const EmitConfig& cfg);
std::string lag_scores_csv(const std::vector<LagScore>& scores);
std::string connectivity_json(const ConnectivityGrid& grid, const EmitConfig& cfg);
std::string connectivity_csv(const ConnectivityGrid& grid);
// lambda, f_{GjGj} curves, cumulative coherences per row
std::string decomposition_json(const Decomposition& dec, const EmitConfig& cfg);
std::string decomposition_csv(const Decomposition& dec);
std::string spectral_json(const SpectralField& f, const EmitConfig& cfg);
// lambda, then re/im per upper-triangle entry
std::string spectral_csv(const SpectralField& f);

// Inverse of connectivity_json (round-trip exact).
ConnectivityGrid connectivity_from_json(const std::string& text);

// format in {"csv","json"}; path "-" writes to stdout.
void emit(const std::string& payload, const std::string& path);

}  // namespace resspec
