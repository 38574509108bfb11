#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "halfspace/learner.hpp"

using namespace halfspace;

namespace {

std::pair<Dataset, MarginHalfspaceInstance> make_data(std::size_t d, double gamma,
                                                      double eta, std::size_t n,
                                                      std::uint64_t seed,
                                                      std::uint64_t stream = 0) {
    SimulatorConfig cfg;
    cfg.d = d;
    cfg.gamma = gamma;
    cfg.eta = eta;
    cfg.n = n;
    cfg.seed = seed;
    cfg.stream = stream;
    cfg.w_star_mode = WStarMode::random_unit;
    return generate_dataset(cfg);
}

}  // namespace

TEST_CASE("derive_params matches the closed forms") {
    SUBCASE("eta = 1/3, gamma = 0.2, eps = 0.2") {
        const auto p = derive_params(0.2, 0.1, 1.0 / 3.0, 0.2);
        CHECK(p.T == 4444);
        CHECK(p.mu == doctest::Approx(3.0 / std::sqrt(4445.0)).epsilon(1e-12));
        CHECK(p.mu == doctest::Approx(0.04500).epsilon(1e-3));
    }
    SUBCASE("eta = 1/3, gamma = 0.1, eps = 0.1") {
        CHECK(derive_params(0.1, 0.1, 1.0 / 3.0, 0.1).T == 71111);
    }
    SUBCASE("mu (1-eta) sqrt(T+1) = 2 identity") {
        for (double eta : {0.1, 0.25, 0.4})
            for (double gamma : {0.05, 0.2})
                for (double eps : {0.1, 0.3}) {
                    const auto p = derive_params(eps, 0.1, eta, gamma);
                    CHECK(p.mu * (1.0 - eta) * std::sqrt(static_cast<double>(p.T + 1)) ==
                          doctest::Approx(2.0).epsilon(1e-12));
                }
    }
    SUBCASE("out-of-range inputs throw") {
        CHECK_THROWS_AS(derive_params(0.0, 0.1, 0.2, 0.2), std::invalid_argument);
        CHECK_THROWS_AS(derive_params(0.2, 0.1, 0.5, 0.2), std::invalid_argument);
        CHECK_THROWS_AS(derive_params(0.2, 0.1, 0.2, 1.0), std::invalid_argument);
    }
}

TEST_CASE("project_to_ball") {
    const Vec a = project_to_ball(Vec{3.0, 4.0});
    CHECK(a[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(a[1] == doctest::Approx(0.8).epsilon(1e-15));
    const Vec b = project_to_ball(Vec{0.1, 0.2});
    CHECK(b[0] == 0.1);
    CHECK(b[1] == 0.2);
    const Vec z = project_to_ball(Vec{0.0, 0.0});
    CHECK(norm2(z) == 0.0);
    CHECK_THROWS_AS(project_to_ball(Vec{std::nan("")}), std::invalid_argument);
    // idempotent
    const Vec again = project_to_ball(a);
    CHECK(again[0] == a[0]);
}

TEST_CASE("run_psgd step exactness and T = 0") {
    const auto [train, inst] = make_data(5, 0.2, 0.2, 200, 31);
    LearnerParams p = derive_params(0.5, 0.1, 0.2, 0.2);
    p.T = 3;
    p.mu = 0.7;
    const IterateTrace trace = run_psgd(train, p);
    REQUIRE(trace.iterates.size() == 4);
    CHECK(norm2(trace.iterates[0]) == 0.0);
    // each step is exactly proj(w_t - mu g_N(w_t))
    for (std::size_t t = 0; t + 1 < trace.iterates.size(); ++t) {
        const Vec g = empirical_subgradient(trace.iterates[t], train.examples, p.eta);
        Vec expect = trace.iterates[t];
        for (std::size_t i = 0; i < expect.size(); ++i) expect[i] -= p.mu * g[i];
        expect = project_to_ball(std::move(expect));
        for (std::size_t i = 0; i < expect.size(); ++i)
            REQUIRE(trace.iterates[t + 1][i] == expect[i]);
    }

    p.T = 0;
    const IterateTrace only_w0 = run_psgd(train, p);
    CHECK(only_w0.iterates.size() == 1);
}

TEST_CASE("noiseless separable data stalls once consistent") {
    const auto [train, inst] = make_data(4, 0.3, 0.1, 300, 33);
    // strip the noise: relabel by w*
    Dataset clean = train;
    for (auto& ex : clean.examples) ex.y = sign_fn(dot(inst.w_star, ex.x));
    LearnerParams p = derive_params(0.3, 0.1, 0.25, 0.3);
    p.eta = 0.0;  // eta = 0 subgradient field
    p.T = 400;
    p.mu = 0.5;
    const IterateTrace trace = run_psgd(clean, p);
    // find the first iterate classifying everything correctly
    std::size_t first_perfect = trace.iterates.size();
    for (std::size_t t = 0; t < trace.iterates.size(); ++t) {
        if (evaluate_error(trace.iterates[t], clean) == 0.0) {
            first_perfect = t;
            break;
        }
    }
    REQUIRE(first_perfect < trace.iterates.size());
    for (std::size_t t = first_perfect; t + 1 < trace.iterates.size(); ++t)
        for (std::size_t i = 0; i < trace.iterates[t].size(); ++i)
            REQUIRE(trace.iterates[t + 1][i] == trace.iterates[t][i]);
}

TEST_CASE("select_hypothesis picks the holdout minimizer, lowest index wins") {
    const auto [holdout, inst] = make_data(3, 0.2, 0.1, 400, 35);
    IterateTrace trace;
    trace.iterates.push_back(Vec{0.0, 1.0, 0.0});
    const auto one = select_hypothesis(trace, holdout);
    CHECK(one.index == 0);

    trace.iterates.insert(trace.iterates.begin(), inst.w_star);  // better hypothesis first
    const auto best = select_hypothesis(trace, holdout);
    CHECK(best.index == 0);
    CHECK(best.holdout_error <= one.holdout_error);

    IterateTrace ties;
    ties.iterates = {inst.w_star, inst.w_star, inst.w_star};
    CHECK(select_hypothesis(ties, holdout).index == 0);
}

TEST_CASE("evaluate_error basics and RCN level") {
    const auto [data, inst] = make_data(6, 0.25, 0.25, 100000, 37);
    Dataset clean = data;
    for (auto& ex : clean.examples) ex.y = sign_fn(dot(inst.w_star, ex.x));
    CHECK(evaluate_error(inst.w_star, clean) == 0.0);
    Vec neg = inst.w_star;
    for (auto& c : neg) c = -c;
    CHECK(evaluate_error(neg, clean) == 1.0);
    CHECK(std::fabs(evaluate_error(inst.w_star, data) - 0.25) <= 0.005);
}

TEST_CASE("derived holdout size formula") {
    const std::size_t n = derive_holdout_size(0.15, 0.05, 11377);
    const double expect = std::ceil((2.0 / 0.0225) * (std::log(11378.0) + std::log(40.0)));
    CHECK(static_cast<double>(n) == expect);
}

TEST_CASE("learner invariants on an instrumented run") {
    const auto [train, inst] = make_data(8, 0.3, 0.2, 1200, 41);
    const auto [test, inst2] = make_data(8, 0.3, 0.2, 1200, 41, 1);
    LearnerParams p = derive_params(0.8, 0.1, 0.2, 0.3);
    const IterateTrace trace = run_psgd(train, p, &inst.w_star);
    REQUIRE(trace.diagnostics.size() == trace.iterates.size());

    SUBCASE("feasibility") {
        for (const auto& w : trace.iterates) REQUIRE(norm2(w) <= 1.0 + 1e-12);
    }
    SUBCASE("one-step contraction inequality") {
        const double one_minus_eta = 1.0 - p.eta;
        for (std::size_t t = 0; t + 1 < trace.diagnostics.size(); ++t) {
            const auto& dg = trace.diagnostics[t];
            if (dg.grad_dot_err > 0.5 * p.mu * one_minus_eta * one_minus_eta) {
                const double rhs = dg.dist_sq + p.mu * p.mu * one_minus_eta * one_minus_eta -
                                   2.0 * p.mu * dg.grad_dot_err;
                REQUIRE(trace.diagnostics[t + 1].dist_sq <= rhs + 1e-9);
            }
        }
    }
    SUBCASE("regret realization") {
        double mean = 0.0;
        for (const auto& dg : trace.diagnostics) mean += dg.grad_dot_err;
        mean /= static_cast<double>(trace.diagnostics.size());
        CHECK(mean <= 2.0 * (1.0 - p.eta) / std::sqrt(static_cast<double>(p.T + 1)) + 1e-9);
    }
    SUBCASE("disagreement regret decomposition") {
        const double denom = (1.0 - 2.0 * p.eta) * p.gamma;
        const double e1 =
            2.0 * (1.0 - p.eta) / (denom * std::sqrt(static_cast<double>(p.T + 1)));
        const double e2 =
            2.0 * norm2(empirical_subgradient(inst.w_star, train.examples, p.eta)) / denom;
        double e3 = 0.0, min_test = 1.0;
        for (std::size_t t = 0; t < trace.iterates.size(); ++t) {
            const double td = evaluate_disagreement(trace.iterates[t], inst.w_star, test);
            e3 += td - trace.diagnostics[t].train_disagreement;
            min_test = std::min(min_test, td);
        }
        e3 /= static_cast<double>(trace.iterates.size());
        CHECK(min_test <= e1 + e2 + e3 + 1e-6);
    }
}

TEST_CASE("train_and_select determinism") {
    const auto [train, inst] = make_data(5, 0.25, 0.15, 500, 43);
    const auto [holdout, inst2] = make_data(5, 0.25, 0.15, 300, 43, 1);
    LearnerParams p = derive_params(0.5, 0.1, 0.15, 0.25);
    p.T = 50;
    const auto r1 = train_and_select(train, holdout, p);
    const auto r2 = train_and_select(train, holdout, p);
    CHECK(r1.selected.index == r2.selected.index);
    CHECK(r1.selected.holdout_error == r2.selected.holdout_error);
    for (std::size_t i = 0; i < r1.selected.w.size(); ++i)
        CHECK(r1.selected.w[i] == r2.selected.w[i]);

    p.T = 0;
    const auto w0_only = train_and_select(train, holdout, p);
    CHECK(w0_only.selected.index == 0);
    CHECK(w0_only.selected.holdout_error == evaluate_error(Vec(5, 0.0), holdout));
}
