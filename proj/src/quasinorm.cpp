#include "lpball/quasinorm.hpp"

#include <cmath>
#include <string>

#include "lpball/errors.hpp"

namespace lpball {

namespace {

void require_exponent(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidInput("exponent p must lie in (0, 1), got " + std::to_string(p));
}

void require_magnitude(double t, const char* who) {
    if (!(t >= 0.0))
        throw DomainError(std::string(who) + ": argument must be a nonnegative magnitude");
}

} // namespace

void ProjectionProblem::validate() const {
    require_exponent(p);
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvalidInput("radius gamma must be positive and finite");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]))
            throw InvalidInput("signal contains a non-finite entry");
        if (y[i] < 0.0)
            throw InvalidInput("projection problem expects a nonnegative signal");
    }
}

SmoothingParams::SmoothingParams(double epsilon, double p) : epsilon_(epsilon), p_(p) {
    require_exponent(p);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidInput("perturbation epsilon must be positive and finite");
    u_eps_ = std::pow(epsilon, p - 1.0);
    eps_pow_p_ = std::pow(epsilon, p);
}

double lp_norm_p(const Vector& x, double p) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double v = x[i];
        if (!std::isfinite(v))
            throw InvalidInput("lp_norm_p: non-finite entry");
        if (v != 0.0)
            sum += std::pow(std::abs(v), p);
    }
    return sum;
}

double phi(double t, const SmoothingParams& sp) {
    require_magnitude(t, "phi");
    if (t > sp.threshold())
        return std::pow(t, sp.p());
    // p(t·u − u^q/q) rewritten as ε^p (p·t/ε + 1 − p); t·u never materializes.
    const double p = sp.p();
    return sp.u_pow_q() * (p * (t / sp.epsilon()) + (1.0 - p));
}

double phi_prime(double t, const SmoothingParams& sp) {
    require_magnitude(t, "phi_prime");
    if (t > sp.threshold())
        return sp.p() * std::pow(t, sp.p() - 1.0);
    return sp.p() * sp.u_eps();
}

double irbp_smooth(double t, double epsilon, double p) {
    require_magnitude(t, "irbp_smooth");
    if (!(epsilon > 0.0))
        throw InvalidInput("irbp_smooth: epsilon must be positive");
    return std::pow(t + epsilon, p);
}

double phi_sum(const Vector& x, const SmoothingParams& sp) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        sum += phi(x[i], sp);
    return sum;
}

double irbp_smooth_sum(const Vector& x, double epsilon, double p) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        sum += irbp_smooth(x[i], epsilon, p);
    return sum;
}

ResidualReport residuals(const Vector& x, double lambda, const ProjectionProblem& prob) {
    if (x.size() != prob.y.size())
        throw InvalidInput("residuals: dimension mismatch between x and y");
    ResidualReport r;
    double norm_p = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        if (!std::isfinite(xi))
            throw InvalidInput("residuals: non-finite iterate");
        const double xp = xi == 0.0 ? 0.0 : std::pow(xi, prob.p);
        norm_p += xp;
        r.alpha += std::abs((prob.y[i] - xi) * xi - lambda * prob.p * xp);
    }
    r.beta = std::abs(norm_p - prob.gamma);
    return r;
}

} // namespace lpball
