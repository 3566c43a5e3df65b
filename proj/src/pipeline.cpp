#include "resspec/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "resspec/errors.hpp"
#include "resspec/joint_test.hpp"
#include "parallel.hpp"

namespace resspec {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string s = trimmed(raw);
    if (s.empty()) throw parse_error("empty cell", row, col);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw parse_error("non-numeric cell '" + s + "'", row, col);
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    return std::string(buf, res.ptr);
}

Dataset parse_wide(const std::vector<std::vector<std::string>>& rows, bool header) {
    std::size_t first = 0;
    std::vector<std::string> names;
    const std::size_t cols = rows[0].size();
    if (header) {
        for (const auto& cell : rows[0]) names.push_back(trimmed(cell));
        first = 1;
        if (rows.size() == first) throw parse_error("no data rows below the header");
    } else {
        for (std::size_t c = 0; c < cols; ++c) names.push_back("r" + std::to_string(c));
    }
    const std::size_t n = rows.size() - first;
    Eigen::MatrixXd table(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
    for (std::size_t r = first; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw parse_error("ragged row: expected " + std::to_string(cols) + " cells, got " +
                                  std::to_string(rows[r].size()),
                              r + 1);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            table(static_cast<Eigen::Index>(r - first), static_cast<Eigen::Index>(c)) =
                parse_cell(rows[r][c], r + 1, c + 1);
        }
    }
    Dataset d;
    d.table = std::move(table);
    d.regions = std::move(names);
    return d;
}

// long format: time, subject, region, value; averaged across subjects.
Dataset parse_long(const std::vector<std::vector<std::string>>& rows, bool header) {
    std::size_t first = header ? 1 : 0;
    if (rows.size() <= first) throw parse_error("no data rows");
    std::vector<std::string> region_order;
    std::map<std::string, std::map<std::string, std::vector<double>>> by_region;
    for (std::size_t r = first; r < rows.size(); ++r) {
        if (rows[r].size() != 4) {
            throw parse_error("long format needs 4 cells (time, subject, region, value)", r + 1);
        }
        const std::string subject = trimmed(rows[r][1]);
        const std::string region = trimmed(rows[r][2]);
        const double value = parse_cell(rows[r][3], r + 1, 4);
        auto it = by_region.find(region);
        if (it == by_region.end()) {
            region_order.push_back(region);
            it = by_region.emplace(region, std::map<std::string, std::vector<double>>{}).first;
        }
        it->second[subject].push_back(value);
    }
    Eigen::Index length = -1;
    for (const auto& [region, subjects] : by_region) {
        for (const auto& [subject, values] : subjects) {
            if (length < 0) length = static_cast<Eigen::Index>(values.size());
            if (static_cast<Eigen::Index>(values.size()) != length) {
                throw parse_error("subject '" + subject + "' region '" + region + "' has " +
                                  std::to_string(values.size()) + " samples, expected " +
                                  std::to_string(length));
            }
        }
    }
    Dataset d;
    d.table.resize(length, static_cast<Eigen::Index>(region_order.size()));
    for (std::size_t c = 0; c < region_order.size(); ++c) {
        const auto& subjects = by_region[region_order[c]];
        for (Eigen::Index t = 0; t < length; ++t) {
            double sum = 0.0;
            for (const auto& [subject, values] : subjects) sum += values[static_cast<std::size_t>(t)];
            d.table(t, static_cast<Eigen::Index>(c)) = sum / static_cast<double>(subjects.size());
        }
    }
    d.regions = std::move(region_order);
    return d;
}

json make_document(const EmitConfig& cfg) {
    json config;
    config["window"] = cfg.test.window;
    config["bandwidth"] = cfg.test.bandwidth;  // 0 = automatic
    config["grid"] = cfg.test.grid_size;
    if (cfg.has_alpha) config["alpha"] = cfg.alpha;
    if (cfg.has_seed) config["seed"] = cfg.seed;
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = std::move(config);
    doc["results"] = json::object();
    return doc;
}

json test_report_object(const TestReport& r) {
    json o;
    o["statistic"] = r.statistic;
    o["bias"] = r.bias;
    o["sigma_hat"] = r.sigma_hat;
    o["z"] = r.z;
    o["p_value"] = r.p_value;
    o["alpha"] = r.alpha;
    o["reject"] = r.reject;
    o["n_eff"] = r.n_eff;
    o["bandwidth"] = r.bandwidth;
    o["covariates"] = r.covariates;
    o["window"] = r.window;
    o["grid"] = r.grid_size;
    if (!r.lag_set.empty()) o["lag_set"] = r.lag_set;
    if (!r.warning.empty()) o["warning"] = r.warning;
    return o;
}

}  // namespace

Dataset parse_csv_text(const std::string& text, const CsvOptions& options) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (trimmed(line).empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw parse_error("empty input");
    Dataset d = options.long_format ? parse_long(rows, options.header)
                                    : parse_wide(rows, options.header);
    if (d.region_count() < 2) {
        throw std::invalid_argument("need at least 2 regions, got " +
                                    std::to_string(d.region_count()));
    }
    if (!d.table.allFinite()) throw std::invalid_argument("dataset has non-finite entries");
    return d;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv_text(buffer.str(), options);
}

Dataset difference(const Dataset& d, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("difference order must be 0, 1, or 2");
    if (d.length() <= order + 8) {
        throw std::invalid_argument("series too short for differencing order " +
                                    std::to_string(order));
    }
    Dataset out = d;
    for (int k = 0; k < order; ++k) {
        out.table = (out.table.bottomRows(out.table.rows() - 1) -
                     out.table.topRows(out.table.rows() - 1))
                        .eval();
    }
    return out;
}

const char* color_name(PairColor c) {
    switch (c) {
        case PairColor::white:
            return "white";
        case PairColor::blue:
            return "blue";
        case PairColor::red:
            return "red";
        case PairColor::purple:
            return "purple";
    }
    return "white";
}

const char* scenario_name(Scenario s) {
    return s == Scenario::linear ? "linear" : "joint-quadratic";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "linear") return Scenario::linear;
    if (name == "joint-quadratic") return Scenario::joint_quadratic;
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (expected linear or joint-quadratic)");
}

PairColor classify_pair(bool reject_a, bool reject_b) {
    if (reject_a && reject_b) return PairColor::purple;
    if (reject_a) return PairColor::blue;
    if (reject_b) return PairColor::red;
    return PairColor::white;
}

ConnectivityGrid connectivity(const Dataset& group_a, const Dataset& group_b,
                              const std::vector<int>& region_subset, Scenario scenario,
                              double alpha, const TestConfig& config) {
    if (group_a.regions != group_b.regions) {
        throw std::invalid_argument("the two groups carry different region sets");
    }
    std::vector<int> subset = region_subset;
    if (subset.empty()) {
        subset.resize(static_cast<std::size_t>(group_a.region_count()));
        for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = static_cast<int>(i);
    }
    for (int r : subset) {
        if (r < 0 || r >= group_a.region_count()) {
            throw std::invalid_argument("region index " + std::to_string(r) + " out of range");
        }
    }

    ConnectivityGrid grid;
    grid.scenario = scenario;
    grid.alpha = alpha;
    grid.regions.reserve(subset.size());
    for (int r : subset) grid.regions.push_back(group_a.regions[static_cast<std::size_t>(r)]);

    const std::size_t R = subset.size();
    grid.pairs.resize(R * (R - 1));
    std::vector<std::string> errors(grid.pairs.size());

    std::vector<std::pair<int, int>> order;  // (local i, local j)
    order.reserve(grid.pairs.size());
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < R; ++j) {
            if (i != j) order.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }

    auto run_one = [&](const Dataset& group, int i, int j, bool& reject, std::string& err) {
        const Eigen::VectorXd x0 = group.table.col(subset[static_cast<std::size_t>(i)]);
        const Eigen::VectorXd x1 = group.table.col(subset[static_cast<std::size_t>(j)]);
        try {
            if (scenario == Scenario::linear) {
                reject = run_test(MultiSeries::from_columns({x0, x1}), alpha, config).reject;
            } else {
                reject = run_joint_test(x0, {x1}, {0, 1, 2, 3, 4, 5}, alpha, config).reject;
            }
            return true;
        } catch (const std::exception& e) {
            err = e.what();
            return false;
        }
    };

    detail::parallel_for(order.size(), config.threads, [&](std::size_t p) {
        const auto [i, j] = order[p];
        PairResult& pr = grid.pairs[p];
        pr.x0_region = i;
        pr.x1_region = j;
        bool ra = false, rb = false;
        std::string ea, eb;
        const bool oka = run_one(group_a, i, j, ra, ea);
        const bool okb = run_one(group_b, i, j, rb, eb);
        pr.ok = oka && okb;
        pr.reject_a = ra;
        pr.reject_b = rb;
        pr.color = classify_pair(ra, rb);
        if (!pr.ok) {
            errors[p] = oka ? ("group B: " + eb)
                            : (okb ? ("group A: " + ea)
                                   : ("group A: " + ea + "; group B: " + eb));
        }
    });

    for (std::size_t p = 0; p < grid.pairs.size(); ++p) {
        const PairResult& pr = grid.pairs[p];
        if (!pr.ok) {
            grid.untestable.push_back({pr.x0_region, pr.x1_region, errors[p]});
        } else {
            ++grid.color_counts[static_cast<std::size_t>(pr.color)];
        }
    }
    return grid;
}

// ---- emission -----------------------------------------------------------

std::string test_report_json(const TestReport& r, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    doc["results"][r.lag_set.empty() ? "test" : "joint_test"] = test_report_object(r);
    return doc.dump(2) + "\n";
}

std::string test_report_csv(const TestReport& r) {
    std::string s =
        "statistic,bias,sigma_hat,z,p_value,alpha,reject,n_eff,bandwidth,covariates,window,grid\n";
    s += format_double(r.statistic) + "," + format_double(r.bias) + "," +
         format_double(r.sigma_hat) + "," + format_double(r.z) + "," + format_double(r.p_value) +
         "," + format_double(r.alpha) + "," + (r.reject ? "1" : "0") + "," +
         std::to_string(r.n_eff) + "," + std::to_string(r.bandwidth) + "," +
         std::to_string(r.covariates) + "," + r.window + "," + std::to_string(r.grid_size) + "\n";
    return s;
}

std::string mc_result_json(const MCResult& r, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    json o;
    o["case"] = r.case_id;
    o["n"] = r.n;
    o["replications"] = r.replications;
    o["alpha"] = r.alpha;
    o["rejection_rate"] = r.rejection_rate;
    o["seed"] = r.seed;
    doc["results"]["monte_carlo"] = std::move(o);
    return doc.dump(2) + "\n";
}

std::string mc_result_csv(const MCResult& r) {
    std::string s = "case,n,replications,alpha,rejection_rate,seed\n";
    s += std::to_string(r.case_id) + "," + std::to_string(r.n) + "," +
         std::to_string(r.replications) + "," + format_double(r.alpha) + "," +
         format_double(r.rejection_rate) + "," + std::to_string(r.seed) + "\n";
    return s;
}

std::string lag_scores_json(const std::vector<LagScore>& scores, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    json rows = json::array();
    for (const auto& s : scores) {
        json o;
        o["lag"] = s.lag;
        o["score"] = s.score;
        o["criterion"] = lag_criterion_name(s.criterion);
        rows.push_back(std::move(o));
    }
    doc["results"]["lag_scores"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string lag_scores_csv(const std::vector<LagScore>& scores) {
    std::string s = "lag,score,criterion\n";
    for (const auto& r : scores) {
        s += std::to_string(r.lag) + "," + format_double(r.score) + "," +
             lag_criterion_name(r.criterion) + "\n";
    }
    return s;
}

std::string connectivity_json(const ConnectivityGrid& grid, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    json o;
    o["regions"] = grid.regions;
    o["scenario"] = scenario_name(grid.scenario);
    o["alpha"] = grid.alpha;
    json pairs = json::array();
    for (const auto& p : grid.pairs) {
        json q;
        q["x0_region"] = p.x0_region;
        q["x1_region"] = p.x1_region;
        q["ok"] = p.ok;
        q["reject_a"] = p.reject_a;
        q["reject_b"] = p.reject_b;
        q["color"] = color_name(p.color);
        pairs.push_back(std::move(q));
    }
    o["pairs"] = std::move(pairs);
    json counts;
    counts["white"] = grid.color_counts[0];
    counts["blue"] = grid.color_counts[1];
    counts["red"] = grid.color_counts[2];
    counts["purple"] = grid.color_counts[3];
    o["color_counts"] = std::move(counts);
    json untestable = json::array();
    for (const auto& u : grid.untestable) {
        json q;
        q["x0_region"] = u.x0_region;
        q["x1_region"] = u.x1_region;
        q["message"] = u.message;
        untestable.push_back(std::move(q));
    }
    o["untestable"] = std::move(untestable);
    doc["results"]["connectivity"] = std::move(o);
    return doc.dump(2) + "\n";
}

std::string connectivity_csv(const ConnectivityGrid& grid) {
    std::string s = "x0_region,x1_region,ok,reject_a,reject_b,color\n";
    for (const auto& p : grid.pairs) {
        s += grid.regions[static_cast<std::size_t>(p.x0_region)] + "," +
             grid.regions[static_cast<std::size_t>(p.x1_region)] + "," + (p.ok ? "1" : "0") + "," +
             (p.reject_a ? "1" : "0") + "," + (p.reject_b ? "1" : "0") + "," +
             color_name(p.color) + "\n";
    }
    return s;
}

ConnectivityGrid connectivity_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != kSchemaVersion) {
        throw parse_error("unsupported or missing schema_version");
    }
    const json& o = doc.at("results").at("connectivity");
    ConnectivityGrid grid;
    grid.regions = o.at("regions").get<std::vector<std::string>>();
    grid.scenario = scenario_from_name(o.at("scenario").get<std::string>());
    grid.alpha = o.at("alpha").get<double>();
    for (const auto& q : o.at("pairs")) {
        PairResult p;
        p.x0_region = q.at("x0_region").get<int>();
        p.x1_region = q.at("x1_region").get<int>();
        p.ok = q.at("ok").get<bool>();
        p.reject_a = q.at("reject_a").get<bool>();
        p.reject_b = q.at("reject_b").get<bool>();
        const std::string color = q.at("color").get<std::string>();
        p.color = color == "purple"  ? PairColor::purple
                  : color == "blue"  ? PairColor::blue
                  : color == "red"   ? PairColor::red
                                     : PairColor::white;
        grid.pairs.push_back(p);
    }
    const json& counts = o.at("color_counts");
    grid.color_counts = {counts.at("white").get<int>(), counts.at("blue").get<int>(),
                         counts.at("red").get<int>(), counts.at("purple").get<int>()};
    for (const auto& q : o.at("untestable")) {
        grid.untestable.push_back({q.at("x0_region").get<int>(), q.at("x1_region").get<int>(),
                                   q.at("message").get<std::string>()});
    }
    return grid;
}

std::string decomposition_json(const Decomposition& dec, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    json o;
    o["covariates"] = dec.covariates;
    o["frequencies"] = dec.grid.frequencies();
    json spectra = json::array();
    for (const auto& curve : dec.residual_spectra) spectra.push_back(curve);
    o["residual_spectra"] = std::move(spectra);
    json coh = json::array();
    for (const auto& curve : dec.coherence) coh.push_back(curve);
    o["coherence"] = std::move(coh);
    doc["results"]["decomposition"] = std::move(o);
    return doc.dump(2) + "\n";
}

std::string decomposition_csv(const Decomposition& dec) {
    std::string s = "lambda";
    for (int j = 1; j <= dec.covariates; ++j) s += ",f_g" + std::to_string(j) + "g" + std::to_string(j);
    for (int d = 1; d <= dec.covariates; ++d) s += ",c" + std::to_string(d);
    s += "\n";
    for (std::size_t g = 0; g < dec.grid.size(); ++g) {
        s += format_double(dec.grid.frequency(g));
        for (const auto& curve : dec.residual_spectra) s += "," + format_double(curve[g]);
        for (const auto& curve : dec.coherence) s += "," + format_double(curve[g]);
        s += "\n";
    }
    return s;
}

std::string spectral_csv(const SpectralField& f) {
    std::string s = "lambda";
    for (int i = 0; i < f.dims; ++i) {
        for (int j = i; j < f.dims; ++j) {
            const std::string tag = std::to_string(i) + std::to_string(j);
            s += ",f" + tag + "_re,f" + tag + "_im";
        }
    }
    s += "\n";
    for (std::size_t g = 0; g < f.node_count(); ++g) {
        s += format_double(f.grid.frequency(g));
        for (int i = 0; i < f.dims; ++i) {
            for (int j = i; j < f.dims; ++j) {
                s += "," + format_double(f.at(g)(i, j).real()) + "," +
                     format_double(f.at(g)(i, j).imag());
            }
        }
        s += "\n";
    }
    return s;
}

std::string spectral_json(const SpectralField& f, const EmitConfig& cfg) {
    json doc = make_document(cfg);
    json o;
    o["dims"] = f.dims;
    o["bandwidth"] = f.bandwidth;
    o["window"] = f.window;
    o["frequencies"] = f.grid.frequencies();
    json nodes = json::array();
    for (std::size_t g = 0; g < f.node_count(); ++g) {
        json entries = json::array();
        for (int i = 0; i < f.dims; ++i) {
            for (int j = 0; j < f.dims; ++j) {
                entries.push_back(f.at(g)(i, j).real());
                entries.push_back(f.at(g)(i, j).imag());
            }
        }
        nodes.push_back(std::move(entries));
    }
    o["matrices_re_im_row_major"] = std::move(nodes);
    doc["results"]["spectral"] = std::move(o);
    return doc.dump(2) + "\n";
}

void emit(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to '" + path + "'");
    out << payload;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace resspec
