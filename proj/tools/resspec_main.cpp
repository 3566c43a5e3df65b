// resspec: residual-spectrum analysis of multivariate time series.
//
// Subcommands: estimate, decompose, test, joint-test, select-lag, simulate,
// connectivity. Exit codes: 0 success, 2 invalid input, 3 numerical failure,
// 4 connectivity grid finished with untestable pairs.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "resspec/errors.hpp"
#include "resspec/joint_test.hpp"
#include "resspec/lag_selection.hpp"
#include "resspec/pipeline.hpp"
#include "resspec/simulation.hpp"

namespace {

struct GlobalOptions {
    std::string window = "parzen";
    int bandwidth = 0;
    std::size_t grid = resspec::FrequencyGrid::kDefaultSize;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out = "-";
    int threads = 0;
};

resspec::TestConfig test_config(const GlobalOptions& g) {
    resspec::TestConfig cfg;
    cfg.window = g.window;
    cfg.bandwidth = g.bandwidth;
    cfg.grid_size = g.grid;
    cfg.threads = g.threads;
    return cfg;
}

resspec::EmitConfig emit_config(const GlobalOptions& g, bool with_alpha, bool with_seed = false) {
    resspec::EmitConfig cfg;
    cfg.test = test_config(g);
    cfg.alpha = g.alpha;
    cfg.seed = g.seed;
    cfg.has_alpha = with_alpha;
    cfg.has_seed = with_seed;
    return cfg;
}

// "0-5" or "0,1,2" or "3"
std::vector<int> parse_int_set(const std::string& spec) {
    std::vector<int> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        const auto dash = token.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(std::stoi(token));
        } else {
            const int lo = std::stoi(token.substr(0, dash));
            const int hi = std::stoi(token.substr(dash + 1));
            if (hi < lo) throw std::invalid_argument("bad range '" + token + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
        token.clear();
    };
    for (char ch : spec) {
        if (ch == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            token.push_back(ch);
        }
    }
    flush();
    if (out.empty()) throw std::invalid_argument("empty index set '" + spec + "'");
    return out;
}

resspec::Dataset load_input(const std::string& path, bool header, bool long_format,
                            int diff_order) {
    resspec::CsvOptions opts;
    opts.header = header;
    opts.long_format = long_format;
    resspec::Dataset d = resspec::load_csv(path, opts);
    if (diff_order > 0) d = resspec::difference(d, diff_order);
    return d;
}

resspec::MultiSeries dataset_as_series(const resspec::Dataset& d) {
    std::vector<Eigen::VectorXd> cols;
    cols.reserve(static_cast<std::size_t>(d.region_count()));
    for (Eigen::Index c = 0; c < d.region_count(); ++c) cols.push_back(d.table.col(c));
    return resspec::MultiSeries::from_columns(cols, d.regions);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"residual-spectrum analysis for multivariate time series"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--window", g.window, "lag window: parzen, bartlett, daniell")
        ->capture_default_str();
    app.add_option("--bandwidth", g.bandwidth, "smoothing bandwidth M (0 = automatic)")
        ->capture_default_str();
    app.add_option("--grid", g.grid, "frequency grid size (even, >= 64)")->capture_default_str();
    app.add_option("--alpha", g.alpha, "test level")->capture_default_str();
    app.add_option("--seed", g.seed, "master seed for simulation")->capture_default_str();
    app.add_option("--format", g.format, "output format: json or csv")->capture_default_str();
    app.add_option("--out", g.out, "output path (- = stdout)")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")->capture_default_str();

    std::string in_path, in_a, in_b;
    bool header = false, long_format = false;
    int diff_order = 0;
    auto add_input = [&](CLI::App* cmd, std::string& target) {
        cmd->add_option("--in", target, "input CSV")->required();
        cmd->add_flag("--header", header, "first row holds region names");
        cmd->add_flag("--long", long_format, "long format (time, subject, region, value)");
        cmd->add_option("--diff", diff_order, "difference order applied after loading (0-2)");
    };

    auto* c_estimate = app.add_subcommand("estimate", "kernel spectral density matrix");
    add_input(c_estimate, in_path);

    auto* c_decompose = app.add_subcommand("decompose", "residual spectra and coherences");
    add_input(c_decompose, in_path);

    auto* c_test = app.add_subcommand(
        "test", "existence test for the last covariate (x0 = column 0, covariates = the rest)");
    add_input(c_test, in_path);

    auto* c_joint = app.add_subcommand(
        "joint-test", "joint multi-lag quadratic test (x0 = column 0, x1 = column 1)");
    add_input(c_joint, in_path);
    std::string lags_spec = "0-5";
    c_joint->add_option("--lags", lags_spec, "lag set, e.g. 0-5 or 0,2,4")->capture_default_str();

    auto* c_select = app.add_subcommand("select-lag", "interaction-lag scores and argmax");
    add_input(c_select, in_path);
    int max_lag = 5;
    std::string criterion = "integrated";
    c_select->add_option("--max-lag", max_lag, "largest candidate lag")->capture_default_str();
    c_select->add_option("--criterion", criterion, "integrated or peak")->capture_default_str();

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo size/power for a design case");
    int case_id = 1, n = 1000, reps = 1000;
    c_sim->add_option("--case", case_id, "case id 1..14")->required();
    c_sim->add_option("--n", n, "series length")->capture_default_str();
    c_sim->add_option("--reps", reps, "replications")->capture_default_str();

    auto* c_conn = app.add_subcommand("connectivity", "two-group pairwise connectivity grid");
    c_conn->add_option("--group-a", in_a, "group A CSV (e.g. controls)")->required();
    c_conn->add_option("--group-b", in_b, "group B CSV (e.g. cases)")->required();
    c_conn->add_flag("--header", header, "first row holds region names");
    c_conn->add_flag("--long", long_format, "long format input");
    c_conn->add_option("--diff", diff_order, "difference order applied after loading (0-2)");
    std::string scenario = "linear", regions_spec;
    c_conn->add_option("--scenario", scenario, "linear or joint-quadratic")->capture_default_str();
    c_conn->add_option("--regions", regions_spec, "region indices, e.g. 0-5 or 1,3,5 (default all)");

    // global flags may appear after the subcommand
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const bool csv = g.format == "csv";
        if (!csv && g.format != "json") {
            throw std::invalid_argument("unknown format '" + g.format + "'");
        }
        const resspec::TestConfig cfg = test_config(g);

        if (*c_estimate) {
            const auto d = load_input(in_path, header, long_format, diff_order);
            const auto series = dataset_as_series(d);
            const auto window = resspec::window_constants(cfg.window);
            const int m = cfg.bandwidth > 0
                              ? cfg.bandwidth
                              : resspec::default_bandwidth(series.n_eff(), cfg.bandwidth_scale);
            const auto field = resspec::estimate_spectral_field(series, window, m,
                                                                resspec::make_grid(cfg.grid_size));
            resspec::emit(csv ? resspec::spectral_csv(field)
                              : resspec::spectral_json(field, emit_config(g, false)),
                          g.out);
        } else if (*c_decompose) {
            const auto d = load_input(in_path, header, long_format, diff_order);
            const auto series = dataset_as_series(d);
            const auto window = resspec::window_constants(cfg.window);
            const int m = cfg.bandwidth > 0
                              ? cfg.bandwidth
                              : resspec::default_bandwidth(series.n_eff(), cfg.bandwidth_scale);
            const auto field = resspec::estimate_spectral_field(series, window, m,
                                                                resspec::make_grid(cfg.grid_size));
            const auto dec = resspec::decompose(field);
            resspec::emit(csv ? resspec::decomposition_csv(dec)
                              : resspec::decomposition_json(dec, emit_config(g, false)),
                          g.out);
        } else if (*c_test) {
            const auto d = load_input(in_path, header, long_format, diff_order);
            const auto r = resspec::run_test(dataset_as_series(d), g.alpha, cfg);
            resspec::emit(csv ? resspec::test_report_csv(r)
                              : resspec::test_report_json(r, emit_config(g, true)),
                          g.out);
        } else if (*c_joint) {
            const auto d = load_input(in_path, header, long_format, diff_order);
            const auto r = resspec::run_joint_test(d.table.col(0), {d.table.col(1)},
                                                   parse_int_set(lags_spec), g.alpha, cfg);
            resspec::emit(csv ? resspec::test_report_csv(r)
                              : resspec::test_report_json(r, emit_config(g, true)),
                          g.out);
        } else if (*c_select) {
            const auto d = load_input(in_path, header, long_format, diff_order);
            const auto scores =
                resspec::score_lags(d.table.col(0), d.table.col(1), max_lag,
                                    resspec::lag_criterion_from_name(criterion), cfg);
            resspec::emit(csv ? resspec::lag_scores_csv(scores)
                              : resspec::lag_scores_json(scores, emit_config(g, false)),
                          g.out);
        } else if (*c_sim) {
            const auto r = resspec::monte_carlo(case_id, n, reps, g.alpha, g.seed, cfg);
            resspec::emit(csv ? resspec::mc_result_csv(r)
                              : resspec::mc_result_json(r, emit_config(g, true, true)),
                          g.out);
        } else if (*c_conn) {
            resspec::CsvOptions opts;
            opts.header = header;
            opts.long_format = long_format;
            resspec::Dataset a = resspec::load_csv(in_a, opts);
            resspec::Dataset b = resspec::load_csv(in_b, opts);
            if (diff_order > 0) {
                a = resspec::difference(a, diff_order);
                b = resspec::difference(b, diff_order);
            }
            std::vector<int> subset;
            if (!regions_spec.empty()) subset = parse_int_set(regions_spec);
            const auto grid = resspec::connectivity(a, b, subset,
                                                    resspec::scenario_from_name(scenario), g.alpha,
                                                    cfg);
            resspec::emit(csv ? resspec::connectivity_csv(grid)
                              : resspec::connectivity_json(grid, emit_config(g, true)),
                          g.out);
            if (!grid.untestable.empty()) return 4;
        }
        return 0;
    } catch (const resspec::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resspec::singular_spectrum_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const resspec::singular_input_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
