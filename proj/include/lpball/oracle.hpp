#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "lpball/quasinorm.hpp"

namespace lpball {

struct OracleResult {
    Vector x_best;
    double objective = 0.0;
    double grid_resolution = 0.0; ///< spacing of the scan in the share variable s = x₁^p
    bool refined = false;
};

/// Brute-force global projection for n = 2.
///
/// The optimum lies on the sphere Σ x_i^p = γ, so the search walks the arc
/// x₁ = s^{1/p}, x₂ = (γ − s)^{1/p} for s ∈ [0, min(y₁^p, γ)], which sweeps
/// x₁ over [0, min(y₁, γ^{1/p})]. Both axis points are always scored, then
/// a golden-section search refines ±2 cells around the best scan point.
///
/// Requires n = 2 and Σ y_i^p ≥ γ; throws InvalidInput otherwise.
OracleResult sphere_search_2d(const ProjectionProblem& prob, long resolution);

/// First-order conditions of the nonnegative projection problem within tol:
///   |(y_i − x_i) x_i − λ p x_i^p| ≤ tol for all i,  |Σ x_i^p − γ| ≤ tol,
///   x ≥ −tol,  λ ≥ −tol.
bool stationarity_check(const Vector& x, double lambda, const ProjectionProblem& prob, double tol);

/// Canonical hex key of an instance (FNV-1a over the exact decimal text of p, γ and y).
std::string instance_key(const ProjectionProblem& prob);

/// Plain-text fixture store: one "key value" pair per line, '#' starts a comment.
std::map<std::string, double> read_fixtures(std::istream& in);
void write_fixtures(std::ostream& out, const std::map<std::string, double>& fixtures);

} // namespace lpball
