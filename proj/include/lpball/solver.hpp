#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lpball/quasinorm.hpp"
#include "lpball/weighted_l1.hpp"

namespace lpball {

/// Which smoothing drives the reweighted l1-ball iteration.
///
/// Erbp linearizes the localized surrogate phi (exact above ε), Irbp the
/// global smoothing (t + ε)^p. Both share the same outer loop.
enum class Algorithm { Erbp, Irbp };

std::string_view to_string(Algorithm a);
/// Accepts "erbp" / "irbp" in any case; throws InvalidInput otherwise.
Algorithm parse_algorithm(std::string_view name);

struct SolverConfig {
    double p = 0.5;
    double gamma = 1.0;
    double tol = 1e-8;        ///< bound on both optimality residuals
    int max_iter = 1000;
    double tau = 2.0;         ///< exponent in the perturbation trigger, > 1
    double M = 100.0;         ///< right-hand side of the perturbation trigger
    double delta_floor = 1e-6;
    double eps0_factor = 0.4; ///< ε⁰ = eps0_factor · (γ / n)^{1/p}
    std::optional<double> eps0; ///< explicit ε⁰, overrides eps0_factor
    double weight_guard = 1e-12; ///< added to the base of (·)^{p−1}
    Algorithm algorithm = Algorithm::Erbp;
    bool keep_iterates = true; ///< store x^k in each IterateRecord

    void validate() const;
};

/// One row of the solver trajectory. Vectors live in the reduced
/// (support-only, nonnegative) coordinates.
struct IterateRecord {
    int k = 0;
    Vector x;                  ///< x^k (empty unless keep_iterates)
    double epsilon = 0.0;      ///< ε^k, the perturbation used to build the next subproblem
    double lambda = 0.0;       ///< dual of the subproblem that produced x^k
    double alpha = 0.0;
    double beta = 0.0;
    double objective = 0.0;    ///< ½‖x^k − y‖²
    double lp_norm_p = 0.0;    ///< Σ (x_i^k)^p
    double surrogate = 0.0;    ///< smoothed constraint at (x^k, ε^k); never exceeds γ
    double budget = 0.0;       ///< budget of the subproblem that produced x^k
    double budget_gap = 0.0;   ///< budget − Σ w_i x_i^k for that subproblem
    double step_sq = 0.0;      ///< ‖x^k − x^{k−1}‖²
    bool epsilon_reduced = false; ///< the perturbation trigger fired at this step
};

enum class SolveStatus { Converged, IterationCapReached, AlreadyFeasible };

std::string_view to_string(SolveStatus s);

struct SolveReport {
    Vector x_star;             ///< in the caller's coordinates, signs restored
    double lambda = 0.0;
    int iterations = 0;
    SolveStatus status = SolveStatus::AlreadyFeasible;
    double alpha = 0.0;
    double beta = 0.0;
    double objective = 0.0;
    double epsilon0 = 0.0;
    double epsilon_final = 0.0;
    /// Smallest λ over iterations where the trigger fired; +inf if it never did.
    double min_trigger_lambda = 0.0;
    std::vector<IterateRecord> trajectory;
    double wall_time = 0.0;    ///< seconds
    SolverConfig config;
};

/// Signed input reduced to the magnitudes of its nonzero entries.
struct Preprocessed {
    Vector magnitudes;
    std::vector<Eigen::Index> support; ///< support[j] = original index of magnitudes[j]
    std::vector<signed char> signs;
    Eigen::Index full_size = 0;

    bool empty() const { return support.empty(); }
};

/// Throws InvalidInput on non-finite entries.
Preprocessed preprocess(const Vector& y_raw);

/// Scatter a reduced nonnegative solution back, restoring signs and zeros.
Vector postprocess(const Preprocessed& pre, const Vector& x_reduced);

/// Smoothed constraint value Σ φ(x_i; ε) (Erbp) or Σ (x_i + ε)^p (Irbp).
double surrogate_sum(const Vector& x, double epsilon, double p, Algorithm algorithm);

/// Linearize the smoothed constraint at x_k.
///
/// Throws InvariantViolation if x_k is not feasible for its own surrogate.
Subproblem build_subproblem(const Vector& x_k, double epsilon_k, const ProjectionProblem& prob,
                            Algorithm algorithm, double weight_guard = 1e-12);

/// Left-hand side of the perturbation trigger
///   ‖x⁺ − x‖₂ · ‖w ⊙ sign(x⁺ − x)‖₂^τ,
/// where w are the weights of the subproblem that produced x⁺. On the
/// ε-set these equal p ε^{p−1}; elsewhere they are the smaller p x_i^{p−1}.
/// Entries that compare equal do not count. Returns 0 when nothing moved.
double trigger_value(const Vector& x_prev, const Vector& x_next, const Vector& weights,
                     double tau);

/// Perturbation shrink factor max(floor, min(β, 1/√k)^{1/p}); the k = 0 step uses min(β, 1).
double shrink_factor(double beta_prev, int k, double p, double floor);

/// Runs the algorithm selected in cfg.algorithm.
SolveReport solve(const Vector& y_raw, const SolverConfig& cfg);
SolveReport erbp_solve(const Vector& y_raw, SolverConfig cfg);
SolveReport irbp_solve(const Vector& y_raw, SolverConfig cfg);

} // namespace lpball
