#include "lpball/weighted_l1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lpball/errors.hpp"

namespace lpball {

namespace {

constexpr double kFeasibleSlack = 1e-14;

void validate_inputs(const Vector& y, const Vector& w, double r) {
    if (y.size() != w.size())
        throw InvalidInput("project_weighted_l1: y and w differ in length");
    if (!(r > 0.0) || !std::isfinite(r))
        throw InvalidInput("project_weighted_l1: budget must be positive and finite");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (!(w[i] > 0.0) || !std::isfinite(w[i]))
            throw InvalidInput("project_weighted_l1: weights must be positive and finite");
        if (!(y[i] >= 0.0) || !std::isfinite(y[i]))
            throw InvalidInput("project_weighted_l1: anchor must be nonnegative and finite");
    }
}

} // namespace

SubproblemSolution project_weighted_l1(const Vector& y, const Vector& w, double r) {
    validate_inputs(y, w, r);

    SubproblemSolution sol;
    const double scale = w.maxCoeff();
    if ((w / scale).dot(y) <= (r / scale) * (1.0 + kFeasibleSlack)) {
        sol.x = y;
        return sol;
    }

    // Zero entries stay zero and carry no breakpoint.
    std::vector<Eigen::Index> order;
    order.reserve(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] > 0.0)
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return y[a] / w[a] > y[b] / w[b];
    });

    // On the interval where exactly the first j+1 sorted entries are positive,
    // Σ w_i max(y_i − λ w_i, 0) = S_wy − λ S_ww is affine in λ.
    // The sums are held as S_wy = c·a and S_ww = c²·b, with c the largest weight seen,
    // so that weights near the overflow threshold do not overflow when squared.
    double c = 0.0;
    double a = 0.0;
    double b = 0.0;
    double lambda = 0.0;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const Eigen::Index i = order[j];
        if (w[i] > c) {
            if (c > 0.0) {
                const double ratio = c / w[i];
                a *= ratio;
                b *= ratio * ratio;
            }
            c = w[i];
        }
        const double wi = w[i] / c;
        a += wi * y[i];
        b += wi * wi;
        lambda = (a - r / c) / b / c;
        const double next_breakpoint =
            j + 1 < order.size() ? y[order[j + 1]] / w[order[j + 1]] : 0.0;
        if (lambda >= next_breakpoint)
            break;
    }

    sol.lambda = lambda;
    sol.active = true;
    sol.x = (y - lambda * w).cwiseMax(0.0);
    return sol;
}

bool kkt_check(const Vector& y, const Vector& w, double r, const SubproblemSolution& sol,
               double tol) {
    if (sol.x.size() != y.size() || w.size() != y.size())
        return false;
    if (!(sol.lambda >= 0.0))
        return false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double expected = std::max(y[i] - sol.lambda * w[i], 0.0);
        if (!(std::abs(sol.x[i] - expected) <= tol))
            return false;
    }
    const double used = w.dot(sol.x);
    if (!(used <= r + tol))
        return false;
    return sol.lambda * (r - used) <= tol;
}

} // namespace lpball
