#include "lpball/solver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "lpball/csv.hpp"
#include "lpball/errors.hpp"

namespace lpball {

namespace {

// ε stops shrinking at the smallest normal double; φ(0) = (1 − p) ε^p is
// already far below any attainable residual there.
constexpr double kFeasibilityTrap = 1e-6;
constexpr double kMinEpsilon = std::numeric_limits<double>::min();

} // namespace

std::string_view to_string(Algorithm a) {
    return a == Algorithm::Erbp ? "ERBP" : "IRBP";
}

Algorithm parse_algorithm(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "erbp")
        return Algorithm::Erbp;
    if (lower == "irbp")
        return Algorithm::Irbp;
    throw InvalidInput("unknown algorithm '" + std::string(name) + "' (expected erbp or irbp)");
}

std::string_view to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::IterationCapReached: return "IterationCapReached";
    case SolveStatus::AlreadyFeasible: return "AlreadyFeasible";
    }
    return "Unknown";
}

void SolverConfig::validate() const {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidInput("p must lie in (0, 1)");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvalidInput("gamma must be positive and finite");
    if (!(tol > 0.0))
        throw InvalidInput("tolerance must be positive");
    if (max_iter < 1)
        throw InvalidInput("max_iter must be at least 1");
    if (!(tau > 1.0))
        throw InvalidInput("tau must exceed 1");
    if (!(M > 0.0))
        throw InvalidInput("M must be positive");
    if (!(delta_floor > 0.0 && delta_floor < 1.0))
        throw InvalidInput("delta_floor must lie in (0, 1)");
    if (!(eps0_factor > 0.0))
        throw InvalidInput("eps0_factor must be positive");
    if (eps0 && !(*eps0 > 0.0 && std::isfinite(*eps0)))
        throw InvalidInput("eps0 must be positive and finite");
    if (!(weight_guard >= 0.0) || !std::isfinite(weight_guard))
        throw InvalidInput("weight_guard must be nonnegative and finite");
}

Preprocessed preprocess(const Vector& y_raw) {
    Preprocessed pre;
    pre.full_size = y_raw.size();
    for (Eigen::Index i = 0; i < y_raw.size(); ++i) {
        if (!std::isfinite(y_raw[i]))
            throw InvalidInput("signal contains a non-finite entry");
        if (y_raw[i] != 0.0) {
            pre.support.push_back(i);
            pre.signs.push_back(y_raw[i] > 0.0 ? 1 : -1);
        }
    }
    pre.magnitudes.resize(static_cast<Eigen::Index>(pre.support.size()));
    for (std::size_t j = 0; j < pre.support.size(); ++j)
        pre.magnitudes[static_cast<Eigen::Index>(j)] = std::abs(y_raw[pre.support[j]]);
    return pre;
}

Vector postprocess(const Preprocessed& pre, const Vector& x_reduced) {
    if (x_reduced.size() != static_cast<Eigen::Index>(pre.support.size()))
        throw InvalidInput("postprocess: reduced vector does not match the support size");
    Vector x = Vector::Zero(pre.full_size);
    for (std::size_t j = 0; j < pre.support.size(); ++j)
        x[pre.support[j]] = pre.signs[j] * x_reduced[static_cast<Eigen::Index>(j)];
    return x;
}

double surrogate_sum(const Vector& x, double epsilon, double p, Algorithm algorithm) {
    if (algorithm == Algorithm::Erbp)
        return phi_sum(x, SmoothingParams(epsilon, p));
    return irbp_smooth_sum(x, epsilon, p);
}

Subproblem build_subproblem(const Vector& x_k, double epsilon_k, const ProjectionProblem& prob,
                            Algorithm algorithm, double weight_guard) {
    if (x_k.size() != prob.y.size())
        throw InvalidInput("build_subproblem: iterate and signal differ in length");
    const double p = prob.p;
    const double surrogate = surrogate_sum(x_k, epsilon_k, p, algorithm);
    // A guard much larger than epsilon under-weights the epsilon-set, so small
    // overshoots are possible; only gross ones are treated as a broken invariant.
    if (surrogate > prob.gamma + kFeasibilityTrap * std::max(1.0, prob.gamma))
        throw InvariantViolation("iterate is infeasible for its smoothed constraint: surplus " +
                                 format_double(surrogate - prob.gamma));

    Subproblem sub;
    sub.weights.resize(x_k.size());
    for (Eigen::Index i = 0; i < x_k.size(); ++i) {
        const double base = algorithm == Algorithm::Erbp ? std::max(x_k[i], epsilon_k)
                                                         : x_k[i] + epsilon_k;
        sub.weights[i] = p * std::pow(base + weight_guard, p - 1.0);
    }
    sub.budget = prob.gamma - surrogate + sub.weights.dot(x_k);
    if (!(sub.budget > 0.0))
        throw InvariantViolation("subproblem budget is not positive");
    return sub;
}

double trigger_value(const Vector& x_prev, const Vector& x_next, const Vector& weights,
                     double tau) {
    if (x_prev.size() != x_next.size() || weights.size() != x_next.size())
        throw InvalidInput("trigger_value: length mismatch");
    double largest = 0.0;
    for (Eigen::Index i = 0; i < x_prev.size(); ++i)
        if (x_next[i] != x_prev[i])
            largest = std::max(largest, std::abs(weights[i]));
    if (largest == 0.0)
        return 0.0;
    double scaled_sq = 0.0;
    for (Eigen::Index i = 0; i < x_prev.size(); ++i)
        if (x_next[i] != x_prev[i])
            scaled_sq += (weights[i] / largest) * (weights[i] / largest);
    const double step = (x_next - x_prev).norm();
    // The weighted sign norm can be ~1e185 for tiny ε; squaring or raising it to τ directly overflows.
    return std::exp(std::log(step) + tau * (std::log(largest) + 0.5 * std::log(scaled_sq)));
}

double shrink_factor(double beta_prev, int k, double p, double floor) {
    const double cap = k == 0 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(k));
    return std::max(floor, std::pow(std::min(beta_prev, cap), 1.0 / p));
}

SolveReport solve(const Vector& y_raw, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    SolveReport report;
    report.config = cfg;
    report.min_trigger_lambda = std::numeric_limits<double>::infinity();

    const Preprocessed pre = preprocess(y_raw);
    if (pre.empty() || lp_norm_p(pre.magnitudes, cfg.p) <= cfg.gamma) {
        report.x_star = y_raw;
        report.status = SolveStatus::AlreadyFeasible;
        if (!pre.empty())
            report.beta = std::abs(lp_norm_p(pre.magnitudes, cfg.p) - cfg.gamma);
        report.wall_time = elapsed();
        return report;
    }

    const ProjectionProblem prob{pre.magnitudes, cfg.p, cfg.gamma};
    const auto n = static_cast<double>(prob.y.size());
    double epsilon = cfg.eps0 ? *cfg.eps0 : cfg.eps0_factor * std::pow(cfg.gamma / n, 1.0 / cfg.p);
    report.epsilon0 = epsilon;

    Vector x = Vector::Zero(prob.y.size());
    double beta_prev = cfg.gamma; // β(x⁰) with x⁰ = 0
    SubproblemSolution sol;
    ResidualReport res;
    report.status = SolveStatus::IterationCapReached;

    for (int k = 0; k < cfg.max_iter; ++k) {
        const Subproblem sub = build_subproblem(x, epsilon, prob, cfg.algorithm, cfg.weight_guard);
        sol = project_weighted_l1(prob.y, sub.weights, sub.budget);
        res = residuals(sol.x, sol.lambda, prob);
        const bool converged = res.alpha <= cfg.tol && res.beta <= cfg.tol;

        bool fired = false;
        double next_epsilon = epsilon;
        if (!converged && trigger_value(x, sol.x, sub.weights, cfg.tau) <= cfg.M) {
            fired = true;
            next_epsilon = std::max(shrink_factor(beta_prev, k, cfg.p, cfg.delta_floor) * epsilon,
                                    kMinEpsilon);
            report.min_trigger_lambda = std::min(report.min_trigger_lambda, sol.lambda);
        }

        IterateRecord rec;
        rec.k = k + 1;
        rec.epsilon = next_epsilon;
        rec.lambda = sol.lambda;
        rec.alpha = res.alpha;
        rec.beta = res.beta;
        rec.objective = 0.5 * (sol.x - prob.y).squaredNorm();
        rec.lp_norm_p = lp_norm_p(sol.x, cfg.p);
        rec.surrogate = surrogate_sum(sol.x, next_epsilon, cfg.p, cfg.algorithm);
        rec.budget = sub.budget;
        rec.budget_gap = sub.budget - sub.weights.dot(sol.x);
        rec.step_sq = (sol.x - x).squaredNorm();
        rec.epsilon_reduced = fired;
        if (cfg.keep_iterates)
            rec.x = sol.x;
        report.trajectory.push_back(std::move(rec));

        x = sol.x;
        epsilon = next_epsilon;
        beta_prev = res.beta;
        report.iterations = k + 1;
        if (converged) {
            report.status = SolveStatus::Converged;
            break;
        }
    }

    report.x_star = postprocess(pre, x);
    report.lambda = sol.lambda;
    report.alpha = res.alpha;
    report.beta = res.beta;
    report.objective = 0.5 * (x - prob.y).squaredNorm();
    report.epsilon_final = epsilon;
    report.wall_time = elapsed();
    return report;
}

SolveReport erbp_solve(const Vector& y_raw, SolverConfig cfg) {
    cfg.algorithm = Algorithm::Erbp;
    return solve(y_raw, cfg);
}

SolveReport irbp_solve(const Vector& y_raw, SolverConfig cfg) {
    cfg.algorithm = Algorithm::Irbp;
    return solve(y_raw, cfg);
}

} // namespace lpball
