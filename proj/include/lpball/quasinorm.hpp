#pragma once

#include <Eigen/Core>

namespace lpball {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// min ½‖x − y‖² s.t. Σ x_i^p ≤ gamma, x ≥ 0, for a nonnegative signal y.
struct ProjectionProblem {
    Vector y;
    double p = 0.5;
    double gamma = 1.0;

    /// Hölder conjugate of p, negative for 0 < p < 1.
    double q() const { return p / (p - 1.0); }

    /// Throws InvalidInput unless 0 < p < 1, gamma > 0 and y is finite and nonnegative.
    void validate() const;
};

/// Perturbation ε together with the derived point u_ε = ε^{p−1}.
///
/// The surrogate switches branches at u_ε^{q−1}, which equals ε because
/// (q − 1)(p − 1) = 1. u_ε^q is kept as ε^p so that no intermediate
/// overflows when ε is tiny.
class SmoothingParams {
public:
    SmoothingParams(double epsilon, double p);

    double epsilon() const { return epsilon_; }
    double p() const { return p_; }
    double u_eps() const { return u_eps_; }
    double threshold() const { return epsilon_; }
    /// u_ε^q, evaluated as ε^p.
    double u_pow_q() const { return eps_pow_p_; }

private:
    double epsilon_;
    double p_;
    double u_eps_;
    double eps_pow_p_;
};

struct ResidualReport {
    double alpha = 0.0; ///< Σ |(y_i − x_i) x_i − λ p x_i^p|
    double beta = 0.0;  ///< |Σ x_i^p − γ|
};

/// Σ |x_i|^p with 0^p = 0. Throws InvalidInput on non-finite entries.
double lp_norm_p(const Vector& x, double p);

/// Localized concave surrogate of t^p: exact above ε, affine on [0, ε].
double phi(double t, const SmoothingParams& sp);

/// Derivative of phi; p·u_ε on [0, ε].
double phi_prime(double t, const SmoothingParams& sp);

/// Baseline global smoothing (t + ε)^p.
double irbp_smooth(double t, double epsilon, double p);

/// Σ phi(x_i) over a nonnegative vector.
double phi_sum(const Vector& x, const SmoothingParams& sp);

/// Σ (x_i + ε)^p over a nonnegative vector.
double irbp_smooth_sum(const Vector& x, double epsilon, double p);

/// First-order optimality residuals of (x, λ) for the nonnegative projection problem.
ResidualReport residuals(const Vector& x, double lambda, const ProjectionProblem& prob);

} // namespace lpball
