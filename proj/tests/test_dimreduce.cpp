#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "halfspace/dimreduce.hpp"

using namespace halfspace;

namespace {

Vec rand_unit(std::size_t d, SplitRng& rng) {
    Vec x(d);
    double n2;
    do {
        n2 = 0.0;
        for (auto& v : x) {
            v = rng.next_gaussian();
            n2 += v * v;
        }
    } while (n2 == 0.0);
    for (auto& v : x) v /= std::sqrt(n2);
    return x;
}

}  // namespace

TEST_CASE("derive_jl_dimension formula") {
    JlConfig cfg;
    cfg.beta = 1e-3;
    cfg.gamma = 0.1;
    cfg.cm = 64.0;
    CHECK(derive_jl_dimension(cfg) ==
          static_cast<std::size_t>(std::ceil(64.0 * std::log(1000.0) / 0.01)));
    cfg.m = 17;  // explicit m wins
    CHECK(derive_jl_dimension(cfg) == 17);
}

TEST_CASE("sample_jl_matrix entries and determinism") {
    JlConfig cfg;
    cfg.m = 100;
    cfg.seed = 12;
    const JlMatrix A = sample_jl_matrix(cfg, 50);
    REQUIRE(A.m == 100);
    REQUIRE(A.d == 50);
    REQUIRE(A.entries.size() == 5000);
    const double s = 1.0 / std::sqrt(100.0);
    for (const double e : A.entries) REQUIRE(std::fabs(e) == s);

    const JlMatrix B = sample_jl_matrix(cfg, 50);
    CHECK(A.entries == B.entries);
    cfg.seed = 13;
    const JlMatrix C = sample_jl_matrix(cfg, 50);
    CHECK(A.entries != C.entries);

    SUBCASE("sign balance over a large matrix") {
        JlConfig big;
        big.m = 1000;
        big.seed = 3;
        const JlMatrix M = sample_jl_matrix(big, 1000);
        std::size_t pos = 0;
        for (const double e : M.entries)
            if (e > 0) ++pos;
        const double frac = static_cast<double>(pos) / 1e6;
        CHECK(std::fabs(frac - 0.5) <= 0.0016);  // ~3.2 sigma
    }
}

TEST_CASE("jl_apply and jl_lift algebra") {
    JlConfig cfg;
    cfg.m = 40;
    cfg.seed = 8;
    const JlMatrix A = sample_jl_matrix(cfg, 25);
    SplitRng rng(71);

    SUBCASE("zero maps to zero") {
        CHECK(norm2(jl_apply(A, Vec(25, 0.0))) == 0.0);
        CHECK(norm2(jl_lift(A, Vec(40, 0.0))) == 0.0);
    }
    SUBCASE("linearity") {
        const Vec x = rand_unit(25, rng), y = rand_unit(25, rng);
        Vec combo(25);
        for (std::size_t i = 0; i < 25; ++i) combo[i] = 2.0 * x[i] - 0.5 * y[i];
        const Vec ax = jl_apply(A, x), ay = jl_apply(A, y), ac = jl_apply(A, combo);
        for (std::size_t i = 0; i < 40; ++i)
            REQUIRE(std::fabs(ac[i] - (2.0 * ax[i] - 0.5 * ay[i])) <= 1e-12);
    }
    SUBCASE("transpose pairing is exact") {
        // (A^T w).x == w.(A x) up to summation order; both sides are plain
        // double sums so agreement should be very tight
        for (int r = 0; r < 200; ++r) {
            const Vec x = rand_unit(25, rng);
            const Vec w = rand_unit(40, rng);
            const double lhs = dot(jl_lift(A, w), x);
            const double rhs = dot(w, jl_apply(A, x));
            REQUIRE(std::fabs(lhs - rhs) <= 1e-12);
        }
    }
}

TEST_CASE("projected inner products are unbiased across matrices") {
    SplitRng rng(91);
    const std::size_t d = 30;
    const Vec x = rand_unit(d, rng), y = rand_unit(d, rng);
    const double target = dot(x, y);
    JlConfig cfg;
    cfg.m = 20;
    double mean = 0.0;
    const int reps = 10000;
    for (int r = 0; r < reps; ++r) {
        cfg.seed = static_cast<std::uint64_t>(r);
        const JlMatrix A = sample_jl_matrix(cfg, d);
        mean += dot(jl_apply(A, x), jl_apply(A, y));
    }
    mean /= reps;
    // var of a single estimate is O(1/m); 10^4 reps gives se ~ 0.0022
    CHECK(std::fabs(mean - target) <= 0.008);
}

TEST_CASE("norm concentration at the derived dimension") {
    // with m = ceil(cm ln(1/beta) / gamma^2), ||Ax||^2 should sit within
    // gamma/2 of 1 for most matrices
    SplitRng rng(17);
    const std::size_t d = 50;
    JlConfig cfg;
    cfg.gamma = 0.5;
    cfg.beta = 0.1;
    cfg.cm = 64.0;
    const std::size_t m = derive_jl_dimension(cfg);
    cfg.m = m;
    const Vec x = rand_unit(d, rng);
    int bad = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(r);
        const JlMatrix A = sample_jl_matrix(cfg, d);
        const Vec ax = jl_apply(A, x);
        const double n2 = dot(ax, ax);
        if (std::fabs(n2 - 1.0) > cfg.gamma / 2.0) ++bad;
    }
    const double se = std::sqrt(cfg.beta * (1 - cfg.beta) / reps);
    CHECK(static_cast<double>(bad) / reps <= cfg.beta + 3 * se);
}

TEST_CASE("reduced_train contract at desk scale") {
    SimulatorConfig sc;
    sc.d = 40;
    sc.gamma = 0.3;
    sc.eta = 0.1;
    sc.n = 800;
    sc.seed = 55;
    sc.w_star_mode = WStarMode::random_unit;
    const auto [train, inst] = generate_dataset(sc);
    sc.stream = 1;
    sc.n = 400;
    const auto [holdout, inst2] = generate_dataset(sc);
    sc.stream = 2;
    sc.n = 4000;
    const auto [test, inst3] = generate_dataset(sc);

    JlConfig jl;
    jl.m = 30;
    jl.seed = 2;
    const auto res = reduced_train(train, holdout, 0.4, 0.1, 0.1, 0.3, jl, 300);
    CHECK(res.m == 30);
    CHECK(res.T == 300);
    CHECK(res.mu == doctest::Approx(1.0 / (0.9 * std::sqrt(301.0))).epsilon(1e-12));
    REQUIRE(res.selected.w.size() == 40);  // lifted back to the input dimension
    CHECK(norm2(res.selected.w) <= 1.0 + 1e-12);

    // learning should beat chance comfortably at these settings
    const double err = evaluate_error(res.selected.w, test);
    CHECK(err < 0.35);

    // deterministic reruns
    const auto res2 = reduced_train(train, holdout, 0.4, 0.1, 0.1, 0.3, jl, 300);
    CHECK(res.selected.index == res2.selected.index);
    for (std::size_t i = 0; i < res.selected.w.size(); ++i)
        CHECK(res.selected.w[i] == res2.selected.w[i]);
}

TEST_CASE("derived T for the reduced run") {
    // eta = 0.2, gamma = 0.25, eps = 0.2: T = ceil((48*0.8/(0.6*0.25*0.2))^2 - 1)
    SimulatorConfig sc;
    sc.d = 10;
    sc.gamma = 0.25;
    sc.eta = 0.2;
    sc.n = 50;
    sc.seed = 77;
    const auto [train, inst] = generate_dataset(sc);
    sc.stream = 1;
    const auto [holdout, inst2] = generate_dataset(sc);
    JlConfig jl;
    jl.m = 5;
    const auto res = reduced_train(train, holdout, 0.2, 0.1, 0.2, 0.25, jl, 1);
    CHECK(res.T == 1);  // override respected
    const double base = 48.0 * 0.8 / (0.6 * 0.25 * 0.2);
    const auto expect = static_cast<std::size_t>(std::ceil(base * base - 1.0));
    CHECK(expect == 1638400);  // frozen double-precision value of the closed form
}
