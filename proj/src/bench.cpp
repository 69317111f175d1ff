#include "lpball/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#include "lpball/csv.hpp"
#include "lpball/errors.hpp"
#include "lpball/random.hpp"

namespace lpball {

void BenchSpec::validate() const {
    if (trials < 1)
        throw InvalidInput("bench: trials must be at least 1");
    for (int n : sizes)
        if (n < 1)
            throw InvalidInput("bench: sizes must be positive");
    for (double g : radii)
        if (!(g > 0.0) || !std::isfinite(g))
            throw InvalidInput("bench: radii must be positive and finite");
    for (double p : p_values)
        if (!(p > 0.0 && p < 1.0))
            throw InvalidInput("bench: p must lie in (0, 1)");
    for (double t : tolerances)
        if (!(t > 0.0) || !std::isfinite(t))
            throw InvalidInput("bench: tolerances must be positive and finite");
    if (threads < 1)
        throw InvalidInput("bench: threads must be at least 1");
    SolverConfig probe;
    probe.weight_guard = weight_guard;
    probe.max_iter = max_iter;
    probe.tau = tau;
    probe.M = M;
    probe.validate();
}

namespace {

struct Task {
    int n;
    double gamma;
    double p;
    double upsilon;
    Algorithm algorithm;
    int trial;
};

} // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
    spec.validate();

    std::vector<Task> tasks;
    for (int n : spec.sizes)
        for (double gamma : spec.radii)
            for (double p : spec.p_values)
                for (double upsilon : spec.tolerances)
                    for (Algorithm a : spec.algorithms)
                        for (int t = 0; t < spec.trials; ++t)
                            tasks.push_back({n, gamma, p, upsilon, a, t});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& task = tasks[i];
            const std::uint64_t seed = stream_seed(spec.seed, static_cast<std::uint64_t>(task.n),
                                                   task.gamma, task.p,
                                                   static_cast<std::uint64_t>(task.trial));
            Rng rng(seed);
            const Vector y = generate_instance(task.n, task.gamma, task.p, rng);

            SolverConfig cfg;
            cfg.p = task.p;
            cfg.gamma = task.gamma;
            cfg.tol = task.upsilon;
            cfg.max_iter = spec.max_iter;
            cfg.tau = spec.tau;
            cfg.M = spec.M;
            cfg.weight_guard = spec.weight_guard;
            cfg.algorithm = task.algorithm;
            cfg.keep_iterates = false;
            const SolveReport rep = solve(y, cfg);

            BenchRow& row = rows[i];
            row.n = task.n;
            row.gamma = task.gamma;
            row.p = task.p;
            row.upsilon = task.upsilon;
            row.algorithm = task.algorithm;
            row.trial = task.trial;
            row.seed = seed;
            row.iterations = rep.iterations;
            row.cpu_seconds = rep.wall_time;
            row.alpha = rep.alpha;
            row.beta = rep.beta;
            row.objective = rep.objective;
            row.status = rep.status;
        }
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(spec.threads, std::max<std::size_t>(tasks.size(), 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    return rows;
}

std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows) {
    using Key = std::tuple<int, double, double, double, int>;
    std::map<Key, std::size_t> index;
    std::vector<BenchCell> cells;
    for (const BenchRow& r : rows) {
        const Key key{r.n, r.gamma, r.p, r.upsilon, static_cast<int>(r.algorithm)};
        auto [it, inserted] = index.emplace(key, cells.size());
        if (inserted) {
            BenchCell c;
            c.n = r.n;
            c.gamma = r.gamma;
            c.p = r.p;
            c.upsilon = r.upsilon;
            c.algorithm = r.algorithm;
            cells.push_back(c);
        }
        BenchCell& c = cells[it->second];
        ++c.trials;
        c.converged += r.status != SolveStatus::IterationCapReached;
        c.mean_iterations += r.iterations;
        c.mean_cpu_seconds += r.cpu_seconds;
    }
    for (BenchCell& c : cells) {
        c.mean_iterations /= c.trials;
        c.mean_cpu_seconds /= c.trials;
    }
    return cells;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool include_timing) {
    CsvWriter csv(out);
    if (include_timing)
        csv.header({"n", "gamma", "p", "upsilon", "algorithm", "trial", "seed", "iterations",
                    "cpu_seconds", "alpha", "beta", "objective", "status"});
    else
        csv.header({"n", "gamma", "p", "upsilon", "algorithm", "trial", "seed", "iterations",
                    "alpha", "beta", "objective", "status"});
    for (const BenchRow& r : rows) {
        csv.field(r.n).field(r.gamma).field(r.p).field(r.upsilon).field(to_string(r.algorithm));
        csv.field(r.trial).field(std::to_string(r.seed)).field(r.iterations);
        if (include_timing)
            csv.field(r.cpu_seconds);
        csv.field(r.alpha).field(r.beta).field(r.objective).field(to_string(r.status));
        csv.end_row();
    }
}

void write_aggregate_csv(std::ostream& out, const std::vector<BenchCell>& cells) {
    CsvWriter csv(out);
    csv.header({"n", "gamma", "p", "upsilon", "algorithm", "trials", "converged",
                "mean_iterations", "mean_cpu_seconds"});
    for (const BenchCell& c : cells) {
        csv.field(c.n).field(c.gamma).field(c.p).field(c.upsilon).field(to_string(c.algorithm));
        csv.field(c.trials).field(c.converged).field(c.mean_iterations).field(c.mean_cpu_seconds);
        csv.end_row();
    }
}

void write_trajectory_csv(std::ostream& out, const SolveReport& report) {
    CsvWriter csv(out);
    csv.header({"k", "epsilon", "lambda", "alpha", "beta", "objective", "lp_norm_p",
                "epsilon_reduced"});
    for (const IterateRecord& r : report.trajectory) {
        csv.field(r.k).field(r.epsilon).field(r.lambda).field(r.alpha).field(r.beta);
        csv.field(r.objective).field(r.lp_norm_p).flag(r.epsilon_reduced);
        csv.end_row();
    }
}

namespace {

void write_file(const std::string& path, const SolveReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    write_trajectory_csv(out, report);
    out.flush();
    if (!out)
        throw IoError("failed writing " + path);
}

} // namespace

TrajectoryDump dump_trajectory(const Vector& y, SolverConfig cfg, const std::string& stem) {
    TrajectoryDump dump;
    dump.erbp_path = stem + "_erbp.csv";
    dump.irbp_path = stem + "_irbp.csv";
    cfg.algorithm = Algorithm::Erbp;
    dump.erbp = solve(y, cfg);
    cfg.algorithm = Algorithm::Irbp;
    dump.irbp = solve(y, cfg);
    write_file(dump.erbp_path, dump.erbp);
    write_file(dump.irbp_path, dump.irbp);
    return dump;
}

} // namespace lpball
