#include "lpball/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "lpball/errors.hpp"

namespace lpball {

void RecoveryProblem::validate() const {
    if (A.rows() != b.size())
        throw InvalidInput("recovery: A has " + std::to_string(A.rows()) + " rows but b has " +
                           std::to_string(b.size()) + " entries");
    if (A.cols() == 0)
        throw InvalidInput("recovery: A has no columns");
    if (!A.allFinite() || !b.allFinite())
        throw InvalidInput("recovery: non-finite data");
    if (!(p > 0.0 && p < 1.0))
        throw InvalidInput("recovery: p must lie in (0, 1)");
    if (!(gamma > 0.0))
        throw InvalidInput("recovery: gamma must be positive");
    if (step_size < 0.0 || !std::isfinite(step_size))
        throw InvalidInput("recovery: step size must be positive (or 0 for automatic)");
    if (max_iter < 1)
        throw InvalidInput("recovery: max_iter must be at least 1");
    if (!(tol > 0.0))
        throw InvalidInput("recovery: tol must be positive");
}

double spectral_norm_sq(const Matrix& A, int iterations) {
    if (A.size() == 0)
        return 0.0;
    Vector v = Vector::Ones(A.cols()) / std::sqrt(static_cast<double>(A.cols()));
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector w = A.transpose() * (A * v);
        const double norm = w.norm();
        if (norm == 0.0)
            return estimate;
        estimate = v.dot(w);
        v = w / norm;
    }
    return estimate;
}

SolverConfig recovery_inner_config() {
    SolverConfig cfg;
    cfg.tol = 1e-8;
    cfg.weight_guard = kRecoveryWeightGuard;
    return cfg;
}

RecoveryReport pgd_solve(const RecoveryProblem& rp, Algorithm projector, SolverConfig inner,
                         const Vector* x_true) {
    rp.validate();
    if (x_true && x_true->size() != rp.A.cols())
        throw InvalidInput("recovery: ground truth has the wrong length");
    inner.p = rp.p;
    inner.gamma = rp.gamma;
    inner.algorithm = projector;
    inner.keep_iterates = false;

    RecoveryReport report;
    report.step_size = rp.step_size > 0.0 ? rp.step_size : 1.0 / spectral_norm_sq(rp.A);
    if (!std::isfinite(report.step_size))
        throw InvalidInput("recovery: A is zero, no automatic step size");

    Vector x = Vector::Zero(rp.A.cols());
    for (int k = 0; k < rp.max_iter; ++k) {
        const Vector gradient_step = x + report.step_size * (rp.A.transpose() * (rp.b - rp.A * x));
        const SolveReport proj = solve(gradient_step, inner);
        report.per_projection_stats.push_back({proj.iterations, proj.wall_time, proj.status});

        const double change = (proj.x_star - x).norm();
        const double scale = std::max(1.0, x.norm());
        x = proj.x_star;
        report.iterations = k + 1;
        report.lp_history.push_back(lp_norm_p(x, rp.p));
        report.fidelity_history.push_back((rp.A * x - rp.b).squaredNorm());
        if (change <= rp.tol * scale)
            break;
    }

    report.x_hat = x;
    report.residual_norm = (rp.A * x - rp.b).norm();
    if (x_true) {
        const double truth = x_true->norm();
        report.relative_error = truth > 0.0 ? (x - *x_true).norm() / truth : (x - *x_true).norm();
    }
    return report;
}

std::vector<RecoveryReport> pgd_solve_columns(const Matrix& A, const Matrix& B,
                                              const RecoveryProblem& settings,
                                              const std::vector<double>& gammas,
                                              Algorithm projector, const SolverConfig& inner,
                                              unsigned threads) {
    if (B.rows() != A.rows())
        throw InvalidInput("recovery: observation matrix row count differs from A");
    if (!gammas.empty() && gammas.size() != static_cast<std::size_t>(B.cols()))
        throw InvalidInput("recovery: one radius per column required");

    RecoveryProblem base = settings;
    base.A = A;
    base.b = Vector::Zero(A.rows());
    if (base.step_size == 0.0)
        base.step_size = 1.0 / spectral_norm_sq(A);

    std::vector<RecoveryReport> reports(static_cast<std::size_t>(B.cols()));
    std::atomic<Eigen::Index> next{0};
    auto worker = [&] {
        for (Eigen::Index j = next++; j < B.cols(); j = next++) {
            RecoveryProblem rp;
            rp.A = A;
            rp.b = B.col(j);
            rp.p = base.p;
            rp.gamma = gammas.empty() ? base.gamma : gammas[static_cast<std::size_t>(j)];
            rp.step_size = base.step_size;
            rp.max_iter = base.max_iter;
            rp.tol = base.tol;
            reports[static_cast<std::size_t>(j)] = pgd_solve(rp, projector, inner);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    return reports;
}

CsInstance make_cs_instance(int n, int m, int sparsity, Rng& rng) {
    if (n < 1 || m < 1 || sparsity < 0 || sparsity > n)
        throw InvalidInput("make_cs_instance: need n, m >= 1 and 0 <= sparsity <= n");
    CsInstance inst;
    inst.A.resize(m, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < m; ++r)
            inst.A(r, c) = scale * rng.normal();

    // Partial Fisher–Yates for the support.
    std::vector<int> index(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        index[static_cast<std::size_t>(i)] = i;
    inst.x_true = Vector::Zero(n);
    for (int s = 0; s < sparsity; ++s) {
        const auto pick = s + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - s)));
        std::swap(index[static_cast<std::size_t>(s)], index[static_cast<std::size_t>(pick)]);
        inst.x_true[index[static_cast<std::size_t>(s)]] = rng.normal();
    }
    inst.b = inst.A * inst.x_true;
    return inst;
}

double psnr(const Matrix& reference, const Matrix& estimate, double peak) {
    if (reference.rows() != estimate.rows() || reference.cols() != estimate.cols())
        throw InvalidInput("psnr: shape mismatch");
    const double mse = (reference - estimate).squaredNorm() / static_cast<double>(reference.size());
    if (mse == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

} // namespace lpball
