#pragma once

#include "lpball/quasinorm.hpp"

namespace lpball {

/// One convex subproblem: min ½‖x − y‖² s.t. Σ w_i x_i ≤ budget, x ≥ 0.
/// The anchor y is held by the caller.
struct Subproblem {
    Vector weights;
    double budget = 0.0;
};

struct SubproblemSolution {
    Vector x;
    double lambda = 0.0; ///< multiplier of the budget constraint
    bool active = false; ///< budget constraint tight at x
};

/// Exact Euclidean projection of a nonnegative y onto
/// {x ≥ 0 : Σ w_i x_i ≤ r}. Breakpoints y_i / w_i are sorted once and the
/// multiplier is read off from prefix sums, so the cost is O(n log n).
///
/// Throws InvalidInput for mismatched sizes, a negative or non-finite y,
/// a non-positive weight or a non-positive budget.
SubproblemSolution project_weighted_l1(const Vector& y, const Vector& w, double r);

/// Independent KKT verifier for a weighted l1 projection:
///   x_i = max(y_i − λ w_i, 0), λ ≥ 0, Σ w_i x_i ≤ r + tol, λ (r − Σ w_i x_i) ≤ tol.
bool kkt_check(const Vector& y, const Vector& w, double r, const SubproblemSolution& sol,
               double tol);

} // namespace lpball
