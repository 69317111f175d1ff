#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/oracles.hpp"
#include "lpball/errors.hpp"
#include "lpball/oracle.hpp"
#include "lpball/random.hpp"
#include "lpball/solver.hpp"

using namespace lpball;

namespace {

const Vector kFourEntry{{0.18, 1.88, 0.20, 0.64}};

SolverConfig config(double p, double gamma, Algorithm a = Algorithm::Erbp) {
    SolverConfig cfg;
    cfg.p = p;
    cfg.gamma = gamma;
    cfg.algorithm = a;
    return cfg;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("preprocess keeps the support and signs") {
    const Preprocessed pre = preprocess(Vector{{-3.0, 0.0, 1.0}});
    CHECK(pre.magnitudes == Vector{{3.0, 1.0}});
    CHECK(pre.support == std::vector<Eigen::Index>{0, 2});
    CHECK(pre.signs == std::vector<signed char>{-1, 1});
    CHECK(postprocess(pre, pre.magnitudes) == Vector{{-3.0, 0.0, 1.0}});
    CHECK_THROWS_AS(preprocess(Vector{{1.0, std::nan("")}}), InvalidInput);
    CHECK_THROWS_AS(postprocess(pre, Vector{{1.0}}), InvalidInput);
}

TEST_CASE("zero and interior signals are already feasible") {
    const SolveReport zero = solve(Vector::Zero(2), config(0.5, 1.0));
    CHECK(zero.status == SolveStatus::AlreadyFeasible);
    CHECK(zero.x_star == Vector::Zero(2));

    const Vector inside{{0.01, 0.01}};
    for (Algorithm a : {Algorithm::Erbp, Algorithm::Irbp}) {
        const SolveReport r = solve(inside, config(0.5, 1.0, a));
        CHECK(r.status == SolveStatus::AlreadyFeasible);
        CHECK(r.x_star == inside);
        CHECK(r.trajectory.empty());
    }
}

TEST_CASE("subproblem at the origin") {
    const ProjectionProblem prob{Vector{{1.0, 1.0}}, 0.5, 1.0};
    const Vector origin = Vector::Zero(2);
    const Subproblem e = build_subproblem(origin, 0.04, prob, Algorithm::Erbp, 0.0);
    const Subproblem i = build_subproblem(origin, 0.04, prob, Algorithm::Irbp, 0.0);
    CHECK(e.weights[0] == doctest::Approx(2.5));
    CHECK(e.weights[1] == doctest::Approx(2.5));
    CHECK(e.budget == doctest::Approx(1.0 - 2 * oracles::surrogate(0.0, 0.04, 0.5)));
    CHECK(e.budget == doctest::Approx(0.8));
    CHECK(i.weights == e.weights);
    CHECK(i.budget == doctest::Approx(0.6));
    CHECK(e.budget > i.budget);
    CHECK(e.budget - i.budget == doctest::Approx(2 * 0.5 * std::pow(0.04, 0.5)));

    // The default guard perturbs the weights only in the last digits here.
    const Subproblem guarded = build_subproblem(origin, 0.04, prob, Algorithm::Erbp);
    CHECK(guarded.weights[0] == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("subproblem above the threshold uses exact weights") {
    const ProjectionProblem prob{Vector{{2.0, 3.0, 1.0}}, 0.4, 3.0};
    const Vector x{{0.5, 0.9, 0.3}};
    const Subproblem s = build_subproblem(x, 0.01, prob, Algorithm::Erbp, 0.0);
    for (int i = 0; i < 3; ++i)
        CHECK(s.weights[i] == doctest::Approx(0.4 * std::pow(x[i], -0.6)));
    CHECK(s.budget == doctest::Approx(3.0 + (0.4 - 1.0) * oracles::sum_pow(x, 0.4)));
}

TEST_CASE("subproblem rejects an iterate outside its smoothed ball") {
    const ProjectionProblem prob{Vector{{4.0, 4.0}}, 0.5, 1.0};
    CHECK_THROWS_AS(build_subproblem(Vector{{2.0, 2.0}}, 0.01, prob, Algorithm::Erbp),
                    InvariantViolation);
    CHECK_THROWS_AS(build_subproblem(Vector{{1.0}}, 0.01, prob, Algorithm::Erbp), InvalidInput);
}

TEST_CASE("trigger and shrink factor") {
    const Vector a{{1.0, 2.0, 3.0}};
    CHECK(trigger_value(a, a, Vector::Ones(3), 2.0) == 0.0);
    const Vector b{{1.0, 2.5, 3.0}};
    // one entry moved by 0.5 with weight 4: 0.5 * 4^2
    CHECK(trigger_value(a, b, Vector::Constant(3, 4.0), 2.0) == doctest::Approx(8.0));
    // squaring these weights overflows although the trigger value does not
    const Vector huge = Vector::Constant(3, 1e170);
    CHECK(trigger_value(a, b, huge, 1.5) == doctest::Approx(0.5 * std::pow(1e170, 1.5)));
    CHECK(std::isinf(trigger_value(a, b, Vector::Constant(3, 1e200), 2.0)));

    CHECK(shrink_factor(0.25, 0, 0.5, 1e-6) == doctest::Approx(0.0625));
    CHECK(shrink_factor(5.0, 0, 0.5, 1e-6) == doctest::Approx(1.0));
    CHECK(shrink_factor(5.0, 4, 0.5, 1e-6) == doctest::Approx(0.25));
    CHECK(shrink_factor(1e-12, 4, 0.5, 1e-6) == 1e-6);
}

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    auto broken = [](auto mutate) {
        SolverConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.p = 1.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.gamma = 0.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.tol = 0.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.max_iter = 0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.tau = 1.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.M = 0.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(broken([](SolverConfig& c) { c.eps0 = -1.0; }).validate(), InvalidInput);
    CHECK_THROWS_AS(solve(Vector{{1.0, INFINITY}}, cfg), InvalidInput);
    CHECK(parse_algorithm("IrBp") == Algorithm::Irbp);
    CHECK_THROWS_AS(parse_algorithm("admm"), InvalidInput);
}

TEST_CASE("four-entry example: both algorithms reach the sphere") {
    for (Algorithm a : {Algorithm::Erbp, Algorithm::Irbp}) {
        SolverConfig cfg = config(0.5, 1.0, a);
        cfg.eps0 = 0.025;
        const SolveReport r = solve(kFourEntry, cfg);
        CHECK(r.status == SolveStatus::Converged);
        CHECK(std::abs(lp_norm_p(r.x_star, 0.5) - 1.0) <= 1e-4);
        CHECK(r.alpha <= cfg.tol);
        CHECK(r.beta <= cfg.tol);
        for (const IterateRecord& rec : r.trajectory)
            CHECK(rec.lp_norm_p <= 1.0 + 1e-12);
    }
}

TEST_CASE("four-entry example: ERBP norms dominate IRBP norms") {
    SolverConfig cfg = config(0.5, 1.0);
    cfg.eps0 = 0.025;
    const SolveReport e = erbp_solve(kFourEntry, cfg);
    const SolveReport i = irbp_solve(kFourEntry, cfg);
    const std::size_t common = std::min(e.trajectory.size(), i.trajectory.size());
    REQUIRE(common > 0);
    for (std::size_t k = 0; k < common; ++k)
        CHECK(e.trajectory[k].lp_norm_p >= i.trajectory[k].lp_norm_p);
}

TEST_CASE("signs and zeros are restored") {
    const Vector y{{-0.18, 0.0, 1.88, -0.20, 0.64}};
    const SolveReport r = solve(y, config(0.5, 1.0));
    CHECK(r.x_star.size() == 5);
    CHECK(r.x_star[1] == 0.0);
    for (int i = 0; i < 5; ++i)
        CHECK(r.x_star[i] * y[i] >= 0.0);
    CHECK(std::abs(lp_norm_p(r.x_star, 0.5) - 1.0) <= 1e-8);
}

TEST_CASE("trajectory invariants on random instances") {
    Rng rng(314);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng.below(60));
        const double p = rng.uniform(0.3, 0.9);
        const double gamma = std::pow(2.0, rng.uniform(0.0, 5.0));
        const Vector y = generate_instance(n, gamma, p, rng);
        for (Algorithm a : {Algorithm::Erbp, Algorithm::Irbp}) {
            const SolveReport r = solve(y, config(p, gamma, a));
            REQUIRE(r.status == SolveStatus::Converged);
            const Vector ya = y.cwiseAbs();
            double eps_prev = r.epsilon0;
            for (const IterateRecord& rec : r.trajectory) {
                REQUIRE(rec.surrogate <= gamma + 1e-12);
                REQUIRE(rec.lp_norm_p <= rec.surrogate + 1e-12);
                REQUIRE(rec.epsilon <= eps_prev);
                REQUIRE((rec.x.array() >= 0.0).all());
                REQUIRE((rec.x.array() <= ya.array()).all());
                REQUIRE(rec.x.norm() > 0.0);
                eps_prev = rec.epsilon;
            }
            REQUIRE(r.epsilon_final < r.epsilon0);
            REQUIRE(std::isfinite(r.min_trigger_lambda));
            REQUIRE(std::abs(lp_norm_p(r.x_star, p) - gamma) <= 1e-8);
        }
    }
}

TEST_CASE("converged runs pass the stationarity checker") {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(rng.below(20));
        const double p = rng.uniform(0.3, 0.8);
        const double gamma = rng.uniform(0.5, 10.0);
        const Vector y = generate_instance(n, gamma, p, rng);
        SolverConfig cfg = config(p, gamma);
        cfg.tol = 1e-9;
        const SolveReport r = solve(y, cfg);
        REQUIRE(r.status == SolveStatus::Converged);
        const ProjectionProblem prob{y.cwiseAbs(), p, gamma};
        REQUIRE(stationarity_check(r.x_star.cwiseAbs(), r.lambda, prob, 10 * cfg.tol));
    }
}

TEST_CASE("random two-entry instances match the sphere search") {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const double gamma = rng.uniform(0.5, 4.0);
        const Vector y = generate_instance(2, gamma, 0.5, rng);
        const SolveReport r = solve(y, config(0.5, gamma));
        const ProjectionProblem prob{y.cwiseAbs(), 0.5, gamma};
        const OracleResult o = sphere_search_2d(prob, 20000);
        CHECK(r.objective <= o.objective + 1e-3 * (1 + o.objective));
    }
}

TEST_CASE("iteration cap and determinism") {
    SolverConfig cfg = config(0.5, 1.0);
    cfg.max_iter = 1;
    const SolveReport r = solve(kFourEntry, cfg);
    CHECK(r.status == SolveStatus::IterationCapReached);
    CHECK(r.trajectory.size() == 1);
    CHECK(r.iterations == 1);

    const SolveReport a = solve(kFourEntry, config(0.5, 1.0));
    const SolveReport b = solve(kFourEntry, config(0.5, 1.0));
    CHECK(a.x_star == b.x_star);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("keep_iterates off drops the vectors but keeps the scalars") {
    SolverConfig cfg = config(0.5, 1.0);
    cfg.keep_iterates = false;
    const SolveReport r = solve(kFourEntry, cfg);
    REQUIRE_FALSE(r.trajectory.empty());
    CHECK(r.trajectory.front().x.size() == 0);
    CHECK(r.trajectory.back().lp_norm_p > 0.0);
}

}
