#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "resspec/residual_test.hpp"
#include "resspec/series.hpp"

namespace resspec {

// One row of the simulation design: AR(1) drivers with coefficient 0.4,
// response formula, and which covariate's existence is tested. Cases 11-14
// test a constructed quadratic covariate x1(t)*x1(t-u), u = id - 11.
struct SimCase {
    int id = 0;
    std::string model;       // response formula, for reporting
    std::string tested;      // covariate under test, for reporting
    int covariates = 0;      // K of the test
    int quadratic_lag = -1;  // >= 0 for cases 11-14
    bool is_null = false;    // cases 1, 4, 7
};

const SimCase& sim_case(int id);  // id in 1..14, else std::invalid_argument

struct MCResult {
    int case_id = 0;
    Eigen::Index n = 0;
    int replications = 0;
    double alpha = 0.0;
    double rejection_rate = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;  // in-memory only; never serialized
};

// Response and covariates per the design row; AR(1) drivers burned in for
// 500 steps; reproducible from (id, n, seed) alone.
MultiSeries generate_case(int id, Eigen::Index n, std::uint64_t seed);

// Rejection fraction of run_test over independent replication substreams
// derived from (seed, id, replication). Deterministic for any thread count.
MCResult monte_carlo(int id, Eigen::Index n, int replications, double alpha, std::uint64_t seed,
                     const TestConfig& config = {});

}  // namespace resspec
