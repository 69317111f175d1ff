// lpball: projection onto the lp quasi-norm ball from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lpball/bench.hpp"
#include "lpball/csv.hpp"
#include "lpball/errors.hpp"
#include "lpball/matrix_io.hpp"
#include "lpball/oracle.hpp"
#include "lpball/random.hpp"
#include "lpball/recovery.hpp"
#include "lpball/solver.hpp"

using namespace lpball;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

struct SolverFlags {
    double p = 0.5;
    double gamma = 1.0;
    double tol = 1e-8;
    int max_iter = 1000;
    std::string algorithm = "erbp";
    double weight_guard = 1e-12;
    double tau = 2.0;
    double M = 100.0;
    double eps0 = 0.0;

    void add_to(CLI::App& app) {
        app.add_option("--p", p, "Quasi-norm exponent in (0, 1)");
        app.add_option("--gamma", gamma, "Ball radius");
        app.add_option("--tol", tol, "Tolerance on both optimality residuals");
        app.add_option("--max-iter", max_iter, "Iteration cap");
        app.add_option("--algorithm", algorithm, "erbp or irbp");
        app.add_option("--weight-guard", weight_guard, "Added to the base of each weight");
        app.add_option("--tau", tau, "Trigger exponent");
        app.add_option("--M", M, "Trigger threshold");
        app.add_option("--eps0", eps0, "Initial perturbation; 0 derives it from gamma and n");
    }

    SolverConfig config() const {
        SolverConfig cfg;
        cfg.p = p;
        cfg.gamma = gamma;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.algorithm = parse_algorithm(algorithm);
        cfg.weight_guard = weight_guard;
        cfg.tau = tau;
        cfg.M = M;
        if (eps0 > 0.0)
            cfg.eps0 = eps0;
        return cfg;
    }
};

// Instance from --y, --input, or a seeded draw of length --n.
struct InstanceFlags {
    std::vector<double> y;
    std::string input;
    int n = 0;
    std::uint64_t seed = 0;

    void add_to(CLI::App& app) {
        app.add_option("--y", y, "Comma-separated signal")->delimiter(',');
        app.add_option("--input", input, "Signal file (\"rows cols\" header, then values)");
        app.add_option("--n", n, "Length of a generated signal");
        app.add_option("--seed", seed, "Seed of the generated signal");
    }

    Vector load(double gamma, double p) const {
        const int sources = !y.empty() + !input.empty() + (n > 0);
        if (sources != 1)
            throw InvalidInput("give exactly one of --y, --input, --n");
        if (!y.empty())
            return Eigen::Map<const Vector>(y.data(), static_cast<Eigen::Index>(y.size()));
        if (!input.empty())
            return read_vector_file(input);
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(n), gamma, p, 0));
        return generate_instance(n, gamma, p, rng);
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    return out;
}

void print_report(const SolveReport& rep) {
    CsvWriter csv(std::cout);
    csv.header({"algorithm", "status", "iterations", "alpha", "beta", "objective", "lambda",
                "lp_norm_p", "epsilon0", "epsilon_final", "wall_seconds"});
    csv.field(to_string(rep.config.algorithm)).field(to_string(rep.status)).field(rep.iterations);
    csv.field(rep.alpha).field(rep.beta).field(rep.objective).field(rep.lambda);
    csv.field(lp_norm_p(rep.x_star, rep.config.p)).field(rep.epsilon0).field(rep.epsilon_final);
    csv.field(rep.wall_time);
    csv.end_row();
}

int run_project(const SolverFlags& sf, const InstanceFlags& inst, const std::string& out) {
    const SolverConfig cfg = sf.config();
    const Vector y = inst.load(cfg.gamma, cfg.p);
    const SolveReport rep = solve(y, cfg);
    print_report(rep);
    if (!out.empty())
        write_matrix_file(out, rep.x_star);
    return kExitOk;
}

struct BenchFlags {
    std::vector<int> sizes{10};
    std::vector<double> radii{8.0};
    std::vector<double> p_values{0.4};
    std::vector<double> tolerances{1e-4};
    std::vector<std::string> algorithms{"erbp", "irbp"};
    int trials = 20;
    std::uint64_t seed = 0;
    double weight_guard = 1e-12;
    int max_iter = 1000;
    double tau = 2.0;
    double M = 100.0;
    unsigned threads = 1;
    bool no_timing = false;
    std::string out;
    std::string summary;
};

int run_bench_cmd(const BenchFlags& f) {
    BenchSpec spec;
    spec.sizes = f.sizes;
    spec.radii = f.radii;
    spec.p_values = f.p_values;
    spec.tolerances = f.tolerances;
    spec.trials = f.trials;
    spec.seed = f.seed;
    spec.algorithms.clear();
    for (const std::string& a : f.algorithms)
        if (a != "none")
            spec.algorithms.push_back(parse_algorithm(a));
    spec.weight_guard = f.weight_guard;
    spec.max_iter = f.max_iter;
    spec.tau = f.tau;
    spec.M = f.M;
    spec.threads = f.threads;

    const std::vector<BenchRow> rows = run_bench(spec);
    if (f.out.empty()) {
        write_bench_csv(std::cout, rows, !f.no_timing);
    } else {
        std::ofstream out = open_out(f.out);
        write_bench_csv(out, rows, !f.no_timing);
    }
    if (!f.summary.empty()) {
        std::ofstream out = open_out(f.summary);
        write_aggregate_csv(out, aggregate(rows));
    } else if (!f.out.empty()) {
        write_aggregate_csv(std::cout, aggregate(rows));
    }
    return kExitOk;
}

int run_trajectory(const SolverFlags& sf, const InstanceFlags& inst, const std::string& stem) {
    const SolverConfig cfg = sf.config();
    const Vector y = inst.load(cfg.gamma, cfg.p);
    const TrajectoryDump dump = dump_trajectory(y, cfg, stem);
    print_report(dump.erbp);
    std::cout << dump.erbp_path << '\n' << dump.irbp_path << '\n';
    return kExitOk;
}

struct RecoverFlags {
    std::string matrix;
    std::string observations;
    int n = 256;
    int m = 200;
    int sparsity = 10;
    std::uint64_t seed = 0;
    double p = 0.5;
    double gamma = 0.0;
    double step = 0.0;
    int max_iter = 500;
    double tol = 1e-10;
    double inner_tol = 1e-8;
    int inner_max_iter = 1000;
    double weight_guard = kRecoveryWeightGuard;
    std::string algorithm = "erbp";
    unsigned threads = 1;
    std::string out;
};

void print_recovery(const std::vector<RecoveryReport>& reports) {
    CsvWriter csv(std::cout);
    csv.header({"column", "iterations", "step_size", "residual_norm", "relative_error",
                "inner_iterations", "inner_seconds"});
    for (std::size_t j = 0; j < reports.size(); ++j) {
        const RecoveryReport& r = reports[j];
        long long inner = 0;
        double seconds = 0.0;
        for (const ProjectionStats& s : r.per_projection_stats) {
            inner += s.iterations;
            seconds += s.seconds;
        }
        csv.field(static_cast<long long>(j)).field(r.iterations).field(r.step_size);
        csv.field(r.residual_norm);
        if (r.relative_error)
            csv.field(*r.relative_error);
        else
            csv.field("");
        csv.field(inner).field(seconds);
        csv.end_row();
    }
}

int run_recover(const RecoverFlags& f) {
    SolverConfig inner = recovery_inner_config();
    inner.tol = f.inner_tol;
    inner.max_iter = f.inner_max_iter;
    inner.weight_guard = f.weight_guard;
    const Algorithm algo = parse_algorithm(f.algorithm);

    RecoveryProblem rp;
    rp.p = f.p;
    rp.step_size = f.step;
    rp.max_iter = f.max_iter;
    rp.tol = f.tol;

    std::vector<RecoveryReport> reports;
    if (f.matrix.empty() != f.observations.empty())
        throw InvalidInput("--matrix and --observations go together");
    if (!f.matrix.empty()) {
        if (!(f.gamma > 0.0))
            throw InvalidInput("--gamma is required with --matrix");
        const Matrix A = read_matrix_file(f.matrix);
        const Matrix B = read_matrix_file(f.observations);
        rp.gamma = f.gamma;
        reports = pgd_solve_columns(A, B, rp, {}, algo, inner, f.threads);
        if (!f.out.empty()) {
            Matrix X(A.cols(), B.cols());
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                X.col(j) = reports[static_cast<std::size_t>(j)].x_hat;
            write_matrix_file(f.out, X);
        }
    } else {
        Rng rng(f.seed);
        const CsInstance cs = make_cs_instance(f.n, f.m, f.sparsity, rng);
        rp.A = cs.A;
        rp.b = cs.b;
        rp.gamma = f.gamma > 0.0 ? f.gamma : lp_norm_p(cs.x_true, f.p);
        reports.push_back(pgd_solve(rp, algo, inner, &cs.x_true));
        if (!f.out.empty())
            write_matrix_file(f.out, reports.front().x_hat);
    }
    print_recovery(reports);
    return kExitOk;
}

struct OracleFlags {
    std::vector<double> y;
    int trials = 10;
    std::uint64_t seed = 0;
    double p = 0.5;
    double gamma = 1.0;
    long resolution = 100000;
    double tol = 1e-10;
    std::string algorithm = "erbp";
};

int run_oracle_check(const OracleFlags& f) {
    std::vector<Vector> instances;
    std::vector<double> gammas;
    if (!f.y.empty()) {
        if (f.y.size() != 2)
            throw InvalidInput("--y must have exactly two entries");
        instances.push_back(Vector{{f.y[0], f.y[1]}});
        gammas.push_back(f.gamma);
    } else {
        if (f.trials < 1)
            throw InvalidInput("--trials must be at least 1");
        for (int t = 0; t < f.trials; ++t) {
            Rng stream(stream_seed(f.seed, 2, f.gamma, f.p, static_cast<std::uint64_t>(t)));
            instances.push_back(generate_instance(2, f.gamma, f.p, stream));
            gammas.push_back(f.gamma);
        }
    }

    CsvWriter csv(std::cout);
    csv.header({"trial", "y1", "y2", "solver_objective", "oracle_objective", "worse",
                "stationary"});
    for (std::size_t t = 0; t < instances.size(); ++t) {
        SolverConfig cfg;
        cfg.p = f.p;
        cfg.gamma = gammas[t];
        cfg.tol = f.tol;
        cfg.algorithm = parse_algorithm(f.algorithm);
        const SolveReport rep = solve(instances[t], cfg);

        ProjectionProblem prob{instances[t].cwiseAbs(), f.p, gammas[t]};
        const bool outside = lp_norm_p(prob.y, f.p) >= prob.gamma;
        const double oracle_obj =
            outside ? sphere_search_2d(prob, f.resolution).objective : 0.0;
        const Vector x_abs = rep.x_star.cwiseAbs();
        const bool stationary =
            !outside || stationarity_check(x_abs, rep.lambda, prob, 1e-9);
        const bool worse = rep.objective > oracle_obj + 1e-3 * (1.0 + oracle_obj);

        csv.field(static_cast<long long>(t)).field(instances[t][0]).field(instances[t][1]);
        csv.field(rep.objective).field(oracle_obj).flag(worse).flag(stationary);
        csv.end_row();
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean projection onto the lp quasi-norm ball"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    SolverFlags project_solver;
    InstanceFlags project_inst;
    std::string project_out;
    CLI::App* project = app.add_subcommand("project", "Project one signal onto the ball");
    project_solver.add_to(*project);
    project_inst.add_to(*project);
    project->add_option("--out", project_out, "Write the projection to this file");

    BenchFlags bf;
    CLI::App* bench = app.add_subcommand("bench", "Paired benchmark over a grid of cells");
    bench->add_option("--n", bf.sizes, "Signal lengths")->delimiter(',');
    bench->add_option("--gamma", bf.radii, "Radii")->delimiter(',');
    bench->add_option("--p", bf.p_values, "Exponents")->delimiter(',');
    bench->add_option("--tol", bf.tolerances, "Tolerances")->delimiter(',');
    bench->add_option("--algorithm", bf.algorithms, "erbp, irbp, or none")->delimiter(',');
    bench->add_option("--trials", bf.trials, "Trials per cell");
    bench->add_option("--seed", bf.seed, "Base seed");
    bench->add_option("--weight-guard", bf.weight_guard, "Added to the base of each weight");
    bench->add_option("--max-iter", bf.max_iter, "Iteration cap");
    bench->add_option("--tau", bf.tau, "Trigger exponent");
    bench->add_option("--M", bf.M, "Trigger threshold");
    bench->add_option("--threads", bf.threads, "Worker threads");
    bench->add_flag("--no-timing", bf.no_timing, "Omit the cpu_seconds column");
    bench->add_option("--out", bf.out, "Per-trial CSV; stdout when empty");
    bench->add_option("--summary", bf.summary, "Per-cell means CSV");

    SolverFlags traj_solver;
    InstanceFlags traj_inst;
    std::string traj_stem;
    CLI::App* trajectory =
        app.add_subcommand("trajectory", "Per-iteration CSV for both algorithms on one signal");
    traj_solver.add_to(*trajectory);
    traj_inst.add_to(*trajectory);
    trajectory->add_option("--out", traj_stem, "Stem; writes <stem>_erbp.csv and <stem>_irbp.csv")
        ->required();

    RecoverFlags rf;
    CLI::App* recover = app.add_subcommand(
        "recover", "Sparse recovery by projected gradient descent");
    recover->add_option("--matrix", rf.matrix, "Measurement matrix file");
    recover->add_option("--observations", rf.observations,
                        "Observation file; each column is recovered separately");
    recover->add_option("--n", rf.n, "Synthetic signal length");
    recover->add_option("--m", rf.m, "Synthetic measurement count");
    recover->add_option("--sparsity", rf.sparsity, "Synthetic nonzero count");
    recover->add_option("--seed", rf.seed, "Seed of the synthetic instance");
    recover->add_option("--p", rf.p, "Quasi-norm exponent in (0, 1)");
    recover->add_option("--gamma", rf.gamma, "Radius; 0 uses the synthetic truth");
    recover->add_option("--step", rf.step, "Step size; 0 uses 1 / sigma_max(A)^2");
    recover->add_option("--max-iter", rf.max_iter, "Outer iteration cap");
    recover->add_option("--tol", rf.tol, "Relative change that stops the outer loop");
    recover->add_option("--inner-tol", rf.inner_tol, "Tolerance of each projection");
    recover->add_option("--inner-max-iter", rf.inner_max_iter, "Iteration cap of each projection");
    recover->add_option("--weight-guard", rf.weight_guard, "Weight guard of each projection");
    recover->add_option("--algorithm", rf.algorithm, "erbp or irbp");
    recover->add_option("--threads", rf.threads, "Worker threads over columns");
    recover->add_option("--out", rf.out, "Write the recovered signal(s) to this file");

    OracleFlags of;
    CLI::App* oracle =
        app.add_subcommand("oracle-check", "Compare the solver with a grid search for n = 2");
    oracle->add_option("--y", of.y, "Comma-separated pair; random draws when empty")
        ->delimiter(',');
    oracle->add_option("--trials", of.trials, "Number of random pairs");
    oracle->add_option("--seed", of.seed, "Base seed");
    oracle->add_option("--p", of.p, "Quasi-norm exponent in (0, 1)");
    oracle->add_option("--gamma", of.gamma, "Ball radius");
    oracle->add_option("--resolution", of.resolution, "Grid cells of the search");
    oracle->add_option("--tol", of.tol, "Solver tolerance");
    oracle->add_option("--algorithm", of.algorithm, "erbp or irbp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*project)
            return run_project(project_solver, project_inst, project_out);
        if (*bench)
            return run_bench_cmd(bf);
        if (*trajectory)
            return run_trajectory(traj_solver, traj_inst, traj_stem);
        if (*recover)
            return run_recover(rf);
        if (*oracle)
            return run_oracle_check(of);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
