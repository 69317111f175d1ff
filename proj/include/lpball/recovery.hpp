#pragma once

#include <optional>
#include <vector>

#include "lpball/random.hpp"
#include "lpball/solver.hpp"

namespace lpball {

/// min ‖A x − b‖² s.t. Σ |x_i|^p ≤ gamma, attacked by projected gradient descent.
struct RecoveryProblem {
    Matrix A;
    Vector b;
    double p = 0.5;
    double gamma = 1.0;
    double step_size = 0.0; ///< η; 0 selects 1 / σ_max(A)²
    int max_iter = 500;
    double tol = 1e-10;     ///< stop once ‖x⁺ − x‖ ≤ tol · max(1, ‖x‖)

    void validate() const;
};

struct ProjectionStats {
    int iterations = 0;
    double seconds = 0.0;
    SolveStatus status = SolveStatus::AlreadyFeasible;
};

struct RecoveryReport {
    Vector x_hat;
    int iterations = 0;
    double step_size = 0.0;
    double residual_norm = 0.0;            ///< ‖A x̂ − b‖₂
    std::optional<double> relative_error;  ///< ‖x̂ − x_true‖ / ‖x_true‖ when the truth is known
    std::vector<ProjectionStats> per_projection_stats;
    std::vector<double> lp_history;        ///< Σ |x_i^k|^p after every outer step
    std::vector<double> fidelity_history;  ///< ‖A x^k − b‖² after every outer step
};

/// Inner projections inside PGD start close to the ball, so epsilon quickly falls far
/// below the default weight guard; this smaller guard keeps every outer iterate feasible.
inline constexpr double kRecoveryWeightGuard = 1e-24;

/// SolverConfig suited to PGD inner projections: tolerance 1e-8 and kRecoveryWeightGuard.
SolverConfig recovery_inner_config();

/// σ_max(A)² by power iteration on AᵀA from a fixed start vector.
double spectral_norm_sq(const Matrix& A, int iterations = 100);

/// x⁺ = Π(x + η Aᵀ(b − A x)) from x⁰ = 0, where Π is the lp-ball projection
/// computed by `projector`. inner.p and inner.gamma are overwritten from rp.
RecoveryReport pgd_solve(const RecoveryProblem& rp, Algorithm projector, SolverConfig inner,
                         const Vector* x_true = nullptr);

/// Recover every column of B independently against the shared dictionary A.
/// When gammas is empty each column uses rp.gamma; otherwise gammas[j] is used.
/// Columns are distributed over `threads` workers; results do not depend on it.
std::vector<RecoveryReport> pgd_solve_columns(const Matrix& A, const Matrix& B,
                                              const RecoveryProblem& settings,
                                              const std::vector<double>& gammas,
                                              Algorithm projector, const SolverConfig& inner,
                                              unsigned threads = 1);

/// Synthetic compressive-sensing draw: A has i.i.d. N(0, 1/m) entries,
/// x_true has `sparsity` N(0, 1) entries on a uniformly random support, b = A x_true.
struct CsInstance {
    Matrix A;
    Vector x_true;
    Vector b;
};

CsInstance make_cs_instance(int n, int m, int sparsity, Rng& rng);

/// 10 log10(peak² / MSE); +inf for identical inputs.
double psnr(const Matrix& reference, const Matrix& estimate, double peak = 1.0);

} // namespace lpball
