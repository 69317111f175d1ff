#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lpball/solver.hpp"

namespace lpball {

/// Grid of benchmark cells. Every (n, gamma, p) trial draws one instance
/// that all tolerances and algorithms then share.
struct BenchSpec {
    std::vector<int> sizes;
    std::vector<double> radii;
    std::vector<double> p_values;
    std::vector<double> tolerances;
    int trials = 20;
    std::uint64_t seed = 0;
    std::vector<Algorithm> algorithms{Algorithm::Erbp, Algorithm::Irbp};
    double weight_guard = 1e-12;
    int max_iter = 1000;
    double tau = 2.0;
    double M = 100.0;
    unsigned threads = 1;

    void validate() const;
};

struct BenchRow {
    int n = 0;
    double gamma = 0.0;
    double p = 0.0;
    double upsilon = 0.0;
    Algorithm algorithm = Algorithm::Erbp;
    int trial = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    double cpu_seconds = 0.0; ///< wall clock around the solve call only
    double alpha = 0.0;
    double beta = 0.0;
    double objective = 0.0;
    SolveStatus status = SolveStatus::AlreadyFeasible;
};

/// Per-cell means over trials.
struct BenchCell {
    int n = 0;
    double gamma = 0.0;
    double p = 0.0;
    double upsilon = 0.0;
    Algorithm algorithm = Algorithm::Erbp;
    int trials = 0;
    int converged = 0;
    double mean_iterations = 0.0;
    double mean_cpu_seconds = 0.0;
};

/// Rows come out ordered by n, gamma, p, upsilon, algorithm, trial regardless
/// of the thread count. Iteration-cap failures are recorded, not thrown.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

/// Cells in order of first appearance.
std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows);

/// With include_timing false the cpu_seconds column is dropped, leaving
/// output that is byte-identical across runs.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     bool include_timing = true);
void write_aggregate_csv(std::ostream& out, const std::vector<BenchCell>& cells);

/// k, epsilon, lambda, alpha, beta, objective, lp_norm_p, epsilon_reduced.
void write_trajectory_csv(std::ostream& out, const SolveReport& report);

struct TrajectoryDump {
    std::string erbp_path;
    std::string irbp_path;
    SolveReport erbp;
    SolveReport irbp;
};

/// Solves y with both algorithms under cfg and writes <stem>_erbp.csv and
/// <stem>_irbp.csv. Throws IoError if either file cannot be written.
TrajectoryDump dump_trajectory(const Vector& y, SolverConfig cfg, const std::string& stem);

} // namespace lpball
