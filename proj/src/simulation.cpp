#include "resspec/simulation.hpp"

#include <chrono>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "resspec/joint_test.hpp"
#include "resspec/rng.hpp"
#include "parallel.hpp"

namespace resspec {

namespace {

constexpr int kBurnIn = 500;
constexpr double kArCoefficient = 0.4;

const SimCase kCases[] = {
    {1, "x0 = e0", "x1", 1, -1, true},
    {2, "x0 = 0.05*x1 + e0", "x1", 1, -1, false},
    {3, "x0 = 0.1*x1 + e0", "x1", 1, -1, false},
    {4, "x0 = x1 + e0", "x2", 2, -1, true},
    {5, "x0 = x1 + 0.05*x2 + e0", "x2", 2, -1, false},
    {6, "x0 = x1 + 0.1*x2 + e0", "x2", 2, -1, false},
    {7, "x0 = x1 + x2 + e0", "x3", 3, -1, true},
    {8, "x0 = x1 + x2 + 0.05*x3 + e0", "x3", 3, -1, false},
    {9, "x0 = x1 + x2 + 0.1*x3 + e0", "x3", 3, -1, false},
    {10, "x0 = x1 + x2 + 0.05*x4 + e0", "x4", 3, -1, false},
    {11, "x0 = x1 + 0.05*x1^2 + e0", "x1(t)*x1(t)", 2, 0, false},
    {12, "x0 = x1 + 0.05*x1^2 + e0", "x1(t)*x1(t-1)", 2, 1, false},
    {13, "x0 = x1 + 0.05*x1^2 + e0", "x1(t)*x1(t-2)", 2, 2, false},
    {14, "x0 = x1 + 0.05*x1^2 + e0", "x1(t)*x1(t-3)", 2, 3, false},
};

// One AR(1) path with 500-step burn-in on its own counter stream.
Eigen::VectorXd ar1_path(std::uint64_t seed, std::uint64_t stream, Eigen::Index n) {
    Philox4x32 rng(seed, stream);
    double state = 0.0;
    for (int t = 0; t < kBurnIn; ++t) state = kArCoefficient * state + rng.next_normal();
    Eigen::VectorXd x(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        state = kArCoefficient * state + rng.next_normal();
        x[t] = state;
    }
    return x;
}

Eigen::VectorXd noise_path(std::uint64_t seed, std::uint64_t stream, Eigen::Index n) {
    Philox4x32 rng(seed, stream);
    Eigen::VectorXd x(n);
    for (Eigen::Index t = 0; t < n; ++t) x[t] = rng.next_normal();
    return x;
}

// Stream ids: one per driver so unused drivers cost nothing and the draw
// sequence of any one driver is independent of which case consumes it.
enum Driver : std::uint64_t { dX1 = 1, dX2 = 2, dX3 = 3, dE0 = 4, dE4 = 5 };

std::uint64_t driver_stream(int case_id, Driver d) {
    return (static_cast<std::uint64_t>(case_id) << 8) | static_cast<std::uint64_t>(d);
}

}  // namespace

const SimCase& sim_case(int id) {
    if (id < 1 || id > 14) throw std::invalid_argument("case id must lie in 1..14");
    return kCases[id - 1];
}

MultiSeries generate_case(int id, Eigen::Index n, std::uint64_t seed) {
    const SimCase& c = sim_case(id);
    if (n < 100) throw std::invalid_argument("simulation length must be >= 100");

    const Eigen::VectorXd x1 = ar1_path(seed, driver_stream(id, dX1), n);
    const Eigen::VectorXd e0 = noise_path(seed, driver_stream(id, dE0), n);

    if (c.quadratic_lag >= 0) {
        // cases 11-14: response with the quadratic term, covariates
        // (x1, x1(t)*x1(t-u)) via the standard construction
        Eigen::VectorXd x0 = x1 + 0.05 * x1.cwiseProduct(x1) + e0;
        return build_lagged_series(x0, {x1}, {c.quadratic_lag});
    }

    std::vector<Eigen::VectorXd> cols;
    cols.reserve(4);
    switch (id) {
        case 1:
            cols = {e0, x1};
            break;
        case 2:
            cols = {0.05 * x1 + e0, x1};
            break;
        case 3:
            cols = {0.1 * x1 + e0, x1};
            break;
        case 4: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            cols = {x1 + e0, x1, x2};
            break;
        }
        case 5: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            cols = {x1 + 0.05 * x2 + e0, x1, x2};
            break;
        }
        case 6: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            cols = {x1 + 0.1 * x2 + e0, x1, x2};
            break;
        }
        case 7: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            const Eigen::VectorXd x3 = ar1_path(seed, driver_stream(id, dX3), n);
            cols = {x1 + x2 + e0, x1, x2, x3};
            break;
        }
        case 8: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            const Eigen::VectorXd x3 = ar1_path(seed, driver_stream(id, dX3), n);
            cols = {x1 + x2 + 0.05 * x3 + e0, x1, x2, x3};
            break;
        }
        case 9: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            const Eigen::VectorXd x3 = ar1_path(seed, driver_stream(id, dX3), n);
            cols = {x1 + x2 + 0.1 * x3 + e0, x1, x2, x3};
            break;
        }
        case 10: {
            const Eigen::VectorXd x2 = ar1_path(seed, driver_stream(id, dX2), n);
            const Eigen::VectorXd x4 = x2 + noise_path(seed, driver_stream(id, dE4), n);
            cols = {x1 + x2 + 0.05 * x4 + e0, x1, x2, x4};
            break;
        }
        default:
            throw std::invalid_argument("unhandled case id");
    }
    return MultiSeries::from_columns(cols);
}

MCResult monte_carlo(int id, Eigen::Index n, int replications, double alpha, std::uint64_t seed,
                     const TestConfig& config) {
    sim_case(id);  // validates id
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    const auto start = std::chrono::steady_clock::now();

    std::vector<unsigned char> rejected(static_cast<std::size_t>(replications), 0);
    std::mutex error_context_mutex;
    std::string error_context;
    try {
        detail::parallel_for(
            static_cast<std::size_t>(replications), config.threads, [&](std::size_t rep) {
                try {
                    const std::uint64_t rep_seed = philox_mix(seed, rep, static_cast<std::uint64_t>(id));
                    const MultiSeries x = generate_case(id, n, rep_seed);
                    rejected[rep] = run_test(x, alpha, config).reject ? 1 : 0;
                } catch (const std::exception& e) {
                    {
                        std::lock_guard<std::mutex> lock(error_context_mutex);
                        error_context = "replication " + std::to_string(rep) + ": " + e.what();
                    }
                    throw;
                }
            });
    } catch (...) {
        if (!error_context.empty()) throw std::runtime_error("monte_carlo failed at " + error_context);
        throw;
    }

    int count = 0;
    for (unsigned char r : rejected) count += r;

    MCResult result;
    result.case_id = id;
    result.n = n;
    result.replications = replications;
    result.alpha = alpha;
    result.rejection_rate = static_cast<double>(count) / replications;
    result.seed = seed;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace resspec
