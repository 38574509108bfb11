#include "halfspace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "halfspace/dimreduce.hpp"
#include "halfspace/hardness.hpp"
#include "halfspace/learner.hpp"
#include "halfspace/simulate.hpp"

namespace halfspace {

namespace {

using hard::Rational;

Vec random_unit(std::size_t d, SplitRng& rng) {
    Vec x(d);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& v : x) {
            v = rng.next_gaussian();
            n2 += v * v;
        }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : x) v *= inv;
    return x;
}

Vec random_in_ball(std::size_t d, SplitRng& rng) {
    Vec w = random_unit(d, rng);
    const double r = std::pow(rng.next_double(), 1.0 / static_cast<double>(d));
    for (auto& v : w) v *= r;
    return w;
}

std::string suite_norm_bound(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 101);
    const std::size_t trials = o.quick ? 10000 : 100000;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t d = 1 + (rng.next_u64() % 8);
        const Vec w = random_in_ball(d, rng);
        const Vec x = random_unit(d, rng);
        const int y = rng.next_double() < 0.5 ? 1 : -1;
        const double eta = 0.49 * rng.next_double();
        const Vec g = leaky_relu_subgradient(w, x, y, eta);
        ++checks;
        if (norm2(g) > 1.0 - eta + 1e-12) {
            std::ostringstream os;
            os << "||g|| = " << norm2(g) << " > 1 - eta = " << (1.0 - eta)
               << " at trial " << t;
            return os.str();
        }
    }
    return "";
}

std::string suite_key_identity(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 102);
    const std::size_t trials = o.quick ? 2000 : 20000;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t d = 1 + (rng.next_u64() % 8);
        const Vec w = random_in_ball(d, rng);
        const Vec wb = random_in_ball(d, rng);
        const Vec x = random_unit(d, rng);
        const int y = rng.next_double() < 0.5 ? 1 : -1;
        const double eta = 0.49 * rng.next_double();
        const Vec g = leaky_relu_subgradient(w, x, y, eta);
        const Vec gb = leaky_relu_subgradient(wb, x, y, eta);
        double lhs = 0.0;
        for (std::size_t i = 0; i < d; ++i) lhs += (g[i] - gb[i]) * (w[i] - wb[i]);
        const double wx = dot(w, x), wbx = dot(wb, x);
        const double rhs = (sign_fn(wx) != sign_fn(wbx))
                               ? (1.0 - 2.0 * eta) * (std::fabs(wx) + std::fabs(wbx))
                               : 0.0;
        ++checks;
        if (std::fabs(lhs - rhs) > 1e-10) {
            std::ostringstream os;
            os << "identity gap " << std::fabs(lhs - rhs) << " at trial " << t;
            return os.str();
        }
    }
    return "";
}

std::string suite_perm_invariance(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 103);
    const std::size_t rounds = o.quick ? 20 : 100;
    for (std::size_t r = 0; r < rounds; ++r) {
        const std::size_t d = 2 + (rng.next_u64() % 6);
        const std::size_t n = 5 + (rng.next_u64() % 40);
        std::vector<LabeledExample> ex(n);
        for (auto& e : ex) {
            e.x = random_unit(d, rng);
            e.y = rng.next_double() < 0.5 ? 1 : -1;
        }
        const Vec w = random_in_ball(d, rng);
        const double eta = 0.4 * rng.next_double();
        const Vec g1 = empirical_subgradient(w, ex, eta);
        // Fisher-Yates with our own uniforms
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(ex[i], ex[rng.next_u64() % (i + 1)]);
        const Vec g2 = empirical_subgradient(w, ex, eta);
        for (std::size_t i = 0; i < d; ++i) {
            ++checks;
            if (std::fabs(g1[i] - g2[i]) > 1e-12) {
                std::ostringstream os;
                os << "coordinate " << i << " differs by " << std::fabs(g1[i] - g2[i])
                   << " after permutation, round " << r;
                return os.str();
            }
        }
    }
    return "";
}

std::string suite_self_disagreement(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 104);
    const std::size_t trials = o.quick ? 1000 : 10000;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t d = 1 + (rng.next_u64() % 8);
        const Vec w = random_in_ball(d, rng);
        const Vec x = random_unit(d, rng);
        ++checks;
        if (disagreement_indicator(w, w, x) != 0)
            return "disagreement_indicator(w, w, x) != 0 at trial " + std::to_string(t);
    }
    return "";
}

std::string suite_simulate_determinism(const VerifyOptions& o, std::size_t& checks) {
    SimulatorConfig cfg;
    cfg.d = 12;
    cfg.gamma = 0.2;
    cfg.eta = 0.15;
    cfg.n = o.quick ? 200 : 2000;
    cfg.seed = o.seed;
    cfg.stream = 7;
    cfg.w_star_mode = WStarMode::random_unit;
    const auto a = generate_dataset(cfg);
    const auto b = generate_dataset(cfg);
    ++checks;
    if (dataset_to_string(a.first) != dataset_to_string(b.first))
        return "generate_dataset is not a pure function of its config";
    ++checks;
    if (a.second.w_star != b.second.w_star) return "w_star differs across identical runs";
    return "";
}

std::string suite_simulate_margin(const VerifyOptions& o, std::size_t& checks) {
    for (const CapSampler sampler : {CapSampler::reject, CapSampler::direct}) {
        SimulatorConfig cfg;
        cfg.d = sampler == CapSampler::reject ? 10 : 60;
        cfg.gamma = sampler == CapSampler::reject ? 0.25 : 0.4;
        cfg.eta = 0.1;
        cfg.n = o.quick ? 300 : 3000;
        cfg.seed = o.seed;
        cfg.sampler = sampler;
        cfg.w_star_mode = WStarMode::random_unit;
        const auto [ds, inst] = generate_dataset(cfg);
        for (std::size_t i = 0; i < ds.examples.size(); ++i) {
            const double t = dot(inst.w_star, ds.examples[i].x);
            ++checks;
            if (std::fabs(t) < cfg.gamma) {
                std::ostringstream os;
                os << "margin violation |w*.x| = " << std::fabs(t) << " < gamma = "
                   << cfg.gamma << " at row " << i << " (sampler "
                   << (sampler == CapSampler::reject ? "reject" : "direct") << ")";
                return os.str();
            }
            ++checks;
            if (std::fabs(norm2(ds.examples[i].x) - 1.0) > 1e-9) {
                std::ostringstream os;
                os << "non-unit sample at row " << i;
                return os.str();
            }
        }
    }
    return "";
}

std::string suite_simulate_rcn_rate(const VerifyOptions& o, std::size_t& checks) {
    SimulatorConfig cfg;
    cfg.d = 8;
    cfg.gamma = 0.2;
    cfg.eta = 0.2;
    cfg.n = o.quick ? 5000 : 40000;
    cfg.seed = o.seed;
    const auto [ds, inst] = generate_dataset(cfg);
    std::size_t flips = 0;
    for (const auto& ex : ds.examples)
        if (sign_fn(dot(inst.w_star, ex.x)) != ex.y) ++flips;
    const double frac = static_cast<double>(flips) / static_cast<double>(cfg.n);
    const double sigma =
        std::sqrt(cfg.eta * (1.0 - cfg.eta) / static_cast<double>(cfg.n));
    ++checks;
    if (std::fabs(frac - cfg.eta) > 4.0 * sigma) {
        std::ostringstream os;
        os << "flip fraction " << frac << " outside 4 sigma of eta = " << cfg.eta;
        return os.str();
    }
    return "";
}

struct LearnerRun {
    LearnerParams params;
    IterateTrace trace;
    Dataset train, test;
    Vec w_star;
};

LearnerRun small_learner_run(const VerifyOptions& o) {
    SimulatorConfig cfg;
    cfg.d = 8;
    cfg.gamma = 0.3;
    cfg.eta = 0.2;
    cfg.n = o.quick ? 400 : 1500;
    cfg.seed = o.seed;
    cfg.w_star_mode = WStarMode::random_unit;
    auto [train, inst] = generate_dataset(cfg);
    cfg.stream = 1;
    auto [test, inst2] = generate_dataset(cfg);
    (void)inst2;

    LearnerRun run;
    run.params = derive_params(0.8, 0.1, cfg.eta, cfg.gamma);
    run.trace = run_psgd(train, run.params, &inst.w_star);
    run.train = std::move(train);
    run.test = std::move(test);
    run.w_star = inst.w_star;
    return run;
}

std::string suite_iterate_feasibility(const VerifyOptions& o, std::size_t& checks) {
    const LearnerRun run = small_learner_run(o);
    for (std::size_t t = 0; t < run.trace.iterates.size(); ++t) {
        ++checks;
        if (norm2(run.trace.iterates[t]) > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "||w_" << t << "|| = " << norm2(run.trace.iterates[t]) << " > 1";
            return os.str();
        }
    }
    return "";
}

std::string suite_one_step_contraction(const VerifyOptions& o, std::size_t& checks) {
    const LearnerRun run = small_learner_run(o);
    const double mu = run.params.mu;
    const double one_minus_eta = 1.0 - run.params.eta;
    const auto& dg = run.trace.diagnostics;
    for (std::size_t t = 0; t + 1 < dg.size(); ++t) {
        // nonexpansivity of the projection gives the descent inequality; the
        // threshold on the correlation is when it is a strict contraction
        if (!(dg[t].grad_dot_err > 0.5 * mu * one_minus_eta * one_minus_eta)) continue;
        const double rhs = dg[t].dist_sq + mu * mu * one_minus_eta * one_minus_eta -
                           2.0 * mu * dg[t].grad_dot_err;
        ++checks;
        if (dg[t + 1].dist_sq > rhs + 1e-9) {
            std::ostringstream os;
            os << "contraction fails at step " << t << ": " << dg[t + 1].dist_sq
               << " > " << rhs;
            return os.str();
        }
    }
    return "";
}

std::string suite_regret_realization(const VerifyOptions& o, std::size_t& checks) {
    const LearnerRun run = small_learner_run(o);
    double mean = 0.0;
    for (const auto& d : run.trace.diagnostics) mean += d.grad_dot_err;
    mean /= static_cast<double>(run.trace.diagnostics.size());
    const double bound = 2.0 * (1.0 - run.params.eta) /
                         std::sqrt(static_cast<double>(run.params.T + 1));
    ++checks;
    if (mean > bound + 1e-9) {
        std::ostringstream os;
        os << "average regret " << mean << " exceeds " << bound;
        return os.str();
    }
    return "";
}

std::string suite_regret_decomposition(const VerifyOptions& o, std::size_t& checks) {
    const LearnerRun run = small_learner_run(o);
    const double one_minus_eta = 1.0 - run.params.eta;
    const double denom = (1.0 - 2.0 * run.params.eta) * run.params.gamma;
    const double e1 = 2.0 * one_minus_eta /
                      (denom * std::sqrt(static_cast<double>(run.params.T + 1)));
    const Vec g_star =
        empirical_subgradient(run.w_star, run.train.examples, run.params.eta);
    const double e2 = 2.0 * norm2(g_star) / denom;
    double e3 = 0.0, min_test = 1.0;
    const std::size_t count = run.trace.iterates.size();
    for (std::size_t t = 0; t < count; ++t) {
        const double test_dis =
            evaluate_disagreement(run.trace.iterates[t], run.w_star, run.test);
        e3 += test_dis - run.trace.diagnostics[t].train_disagreement;
        min_test = std::min(min_test, test_dis);
    }
    e3 /= static_cast<double>(count);
    ++checks;
    if (min_test > e1 + e2 + e3 + 1e-6) {
        std::ostringstream os;
        os << "min test disagreement " << min_test << " exceeds E1+E2+E3 = "
           << e1 << " + " << e2 << " + " << e3;
        return os.str();
    }
    return "";
}

std::string suite_jl_concentration(const VerifyOptions& o, std::size_t& checks) {
    const double gamma = 0.5, beta = 0.1;
    const std::size_t d = 50;
    const std::size_t trials = o.quick ? 60 : 200;
    JlConfig jl;
    jl.beta = beta;
    jl.gamma = gamma;
    SplitRng rng(o.seed, 105);
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        jl.seed = rng.next_u64();
        const JlMatrix A = sample_jl_matrix(jl, d);
        const Vec x = random_unit(d, rng);
        const Vec ax = jl_apply(A, x);
        const double q = dot(ax, ax);
        if (std::fabs(q - 1.0) > gamma / 2.0) ++failures;
    }
    const double rate = static_cast<double>(failures) / static_cast<double>(trials);
    const double slack =
        3.0 * std::sqrt(beta * (1.0 - beta) / static_cast<double>(trials));
    ++checks;
    if (rate > beta + slack) {
        std::ostringstream os;
        os << "JL failure rate " << rate << " exceeds beta = " << beta
           << " (+3 sigma slack " << slack << ")";
        return os.str();
    }
    return "";
}

std::string suite_transpose_pairing(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 106);
    const std::size_t rounds = o.quick ? 10 : 50;
    for (std::size_t r = 0; r < rounds; ++r) {
        const std::size_t d = 10 + (rng.next_u64() % 40);
        JlConfig jl;
        jl.m = 5 + (rng.next_u64() % 20);
        jl.seed = rng.next_u64();
        const JlMatrix A = sample_jl_matrix(jl, d);
        const Vec wr = random_in_ball(A.m, rng);
        const Vec lifted = jl_lift(A, wr);
        for (int i = 0; i < 20; ++i) {
            const Vec x = random_unit(d, rng);
            ++checks;
            if (sign_fn(dot(lifted, x)) != sign_fn(dot(wr, jl_apply(A, x)))) {
                std::ostringstream os;
                os << "transpose pairing sign mismatch at round " << r;
                return os.str();
            }
        }
    }
    return "";
}

std::string suite_kravchuk_properties(const VerifyOptions& o, std::size_t& checks) {
    const int n_max = o.quick ? 20 : 64;
    for (int n = 1; n <= n_max; ++n) {
        const hard::KravchukTable t = hard::kravchuk_table(n);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b) {
                const Rational& k = t.at(a, b);
                ++checks;
                if (k != t.at(b, a)) {
                    std::ostringstream os;
                    os << "symmetry fails at (n,a,b) = (" << n << "," << a << "," << b << ")";
                    return os.str();
                }
                ++checks;
                if (abs(numerator(k)) > denominator(k)) {
                    std::ostringstream os;
                    os << "|K| > 1 at (n,a,b) = (" << n << "," << a << "," << b << ")";
                    return os.str();
                }
                ++checks;
                const Rational refl = t.at(a, n - b);
                if (abs(numerator(k)) * denominator(refl) !=
                    abs(numerator(refl)) * denominator(k)) {
                    std::ostringstream os;
                    os << "reflection |K(n,a,b)| = |K(n,a,n-b)| fails at (n,a,b) = ("
                       << n << "," << a << "," << b << ")";
                    return os.str();
                }
            }
    }
    return "";
}

std::string suite_parseval(const VerifyOptions& o, std::size_t& checks) {
    const int d_max = o.quick ? 10 : 14;
    SplitRng rng(o.seed, 107);
    for (int d = 4; d <= d_max; d += 2) {
        const int s_star = 1 + static_cast<int>(rng.next_u64() % d);
        const hard::KravchukTable t = hard::kravchuk_table(d);
        // f-hat(T) = +-c_{|T|}; summing C(d,k) c_k^2 over levels is exactly
        // sum_T f-hat(T)^2
        Rational total = 0;
        const Rational inv2d(1, hard::BigInt(1) << d);
        for (int k = 0; k <= d; ++k) {
            Rational ck = 0;
            for (int s = s_star; s <= d; ++s)
                ck += Rational(hard::binomial(d, s)) * t.at(s, k);
            ck *= inv2d;
            total += Rational(hard::binomial(d, k)) * ck * ck;
        }
        ++checks;
        if (total != hard::tail_mass(d, s_star)) {
            std::ostringstream os;
            os << "Parseval fails at d = " << d << ", s_star = " << s_star;
            return os.str();
        }
    }
    return "";
}

hard::SignVector random_sign_vector(int d, SplitRng& rng) {
    hard::SignVector v(d);
    const std::uint64_t bits = rng.next_u64();
    for (int i = 0; i < d; ++i) v[i] = ((bits >> (i % 64)) & 1) ? 1 : -1;
    return v;
}

std::string suite_dual_path_fourier(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 108);
    const std::size_t triples = o.quick ? 40 : 200;
    for (std::size_t i = 0; i < triples; ++i) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 13);  // up to 14
        hard::ThresholdLtf ltf;
        ltf.v = random_sign_vector(d, rng);
        ltf.s_star = static_cast<int>(rng.next_u64() % (d + 2));
        const std::uint64_t T = rng.next_u64() & ((std::uint64_t{1} << d) - 1);
        ++checks;
        if (hard::fourier_coefficient(ltf, T) !=
            hard::fourier_coefficient_bruteforce(ltf, T)) {
            std::ostringstream os;
            os << "Fourier formula vs enumeration mismatch at d = " << d
               << ", s_star = " << ltf.s_star << ", T = " << T;
            return os.str();
        }
    }
    return "";
}

std::string suite_level_sum(const VerifyOptions& o, std::size_t& checks) {
    SplitRng rng(o.seed, 109);
    const std::size_t rounds = o.quick ? 10 : 40;
    for (std::size_t i = 0; i < rounds; ++i) {
        const int d = 4 + static_cast<int>(rng.next_u64() % 17);  // up to 20
        hard::ThresholdLtf v{random_sign_vector(d, rng),
                             1 + static_cast<int>(rng.next_u64() % d)};
        hard::ThresholdLtf u{random_sign_vector(d, rng), v.s_star};
        const auto rk = hard::rk_decomposition(v, u);
        const Rational total = std::accumulate(rk.begin(), rk.end(), Rational(0));
        const Rational joint = hard::joint_expectation(v, u);
        ++checks;
        if (total != joint) {
            std::ostringstream os;
            os << "level sum " << total << " != E[f_v f_u] " << joint << " at d = " << d
               << ", s_star = " << v.s_star;
            return os.str();
        }
        if (d <= 14) {
            ++checks;
            if (joint != hard::joint_expectation_bruteforce(v, u)) {
                std::ostringstream os;
                os << "joint expectation closed form vs enumeration mismatch at d = " << d;
                return os.str();
            }
        }
    }
    return "";
}

std::string suite_rk_decay(const VerifyOptions& o, std::size_t& checks) {
    (void)o;
    const int d = 32;
    const auto choice = hard::threshold_for_mass(d, 0.05);
    const double eps = choice.eps_actual.convert_to<double>();
    hard::ThresholdLtf v{hard::SignVector(d, 1), choice.s_star};
    hard::SignVector u_vec(d, 1);
    for (int i = 0; i < d / 2; ++i) u_vec[i] = -1;  // agreement m = d/2
    hard::ThresholdLtf u{u_vec, choice.s_star};
    const auto rk = hard::rk_decomposition(v, u);
    const double budget = eps * eps / d;
    const double L = std::log(static_cast<double>(d) / eps);
    for (int c = 1; c <= 6; ++c) {
        const int lo = static_cast<int>(std::ceil(c * L));
        const int hi = d - lo;
        if (lo > hi) break;
        double partial = 0.0;
        for (int k = lo; k <= hi; ++k)
            partial += std::fabs(rk[k].convert_to<double>());
        ++checks;
        if (partial <= budget) return "";
    }
    std::ostringstream os;
    os << "no c in [1,6] makes the mid-band sum of |R_k| fit under eps^2/d = " << budget;
    return os.str();
}

std::string suite_rk_small_k(const VerifyOptions& o, std::size_t& checks) {
    const int d = 32;
    const auto choice = hard::threshold_for_mass(d, 0.05);
    const double eps = choice.eps_actual.convert_to<double>();
    const double L = std::log(static_cast<double>(d) / eps);
    const auto family = hard::near_orthogonal_set(d, 0.25, 6, o.seed);
    double worst_mult = 0.0;
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b) {
            const long long ip = hard::sign_inner_product(family[a], family[b]);
            if (ip == 0) continue;  // the multiplicative bound needs |v.u| > 0
            hard::ThresholdLtf v{family[a], choice.s_star};
            hard::ThresholdLtf u{family[b], choice.s_star};
            const auto rk = hard::rk_decomposition(v, u);
            const double cl = 2.0 * L;  // small-degree window k <= c log(d/eps), c = 2
            const int k_max = std::min(d, static_cast<int>(cl));
            const double base = 4.0 * eps * eps * cl *
                                std::fabs(static_cast<double>(ip)) / d;
            for (int k = 0; k <= k_max; ++k) {
                ++checks;
                worst_mult =
                    std::max(worst_mult, std::fabs(rk[k].convert_to<double>()) / base);
            }
        }
    // "within a constant": the searched multiplier must exist and stay moderate
    if (worst_mult <= 4096.0) return "";
    std::ostringstream os;
    os << "small-degree |R_k| needs multiplier " << worst_mult
       << " over 4 eps^2 c log(d/eps) |v.u|/d";
    return os.str();
}

std::string suite_library_reproducibility(const VerifyOptions& o, std::size_t& checks) {
    // byte-identity of every serialized artifact across identical calls
    SimulatorConfig cfg;
    cfg.d = 10;
    cfg.gamma = 0.2;
    cfg.eta = 0.1;
    cfg.n = o.quick ? 100 : 1000;
    cfg.seed = o.seed;
    const std::string ds1 = dataset_to_string(generate_dataset(cfg).first);
    const std::string ds2 = dataset_to_string(generate_dataset(cfg).first);
    ++checks;
    if (fnv1a64(ds1) != fnv1a64(ds2) || ds1 != ds2)
        return "dataset serialization differs across identical configs";

    const auto choice = hard::threshold_for_mass(10, 0.3);
    hard::ThresholdLtf v{hard::SignVector(10, 1), choice.s_star};
    hard::SignVector u_vec(10, 1);
    u_vec[0] = u_vec[1] = -1;
    hard::ThresholdLtf u{u_vec, choice.s_star};
    const auto dv = hard::make_hard_distribution(v, Rational(1, 3));
    const auto du = hard::make_hard_distribution(u, Rational(1, 3));
    const std::string j1 = hard::correlation_report_to_json(hard::correlation_pair(dv, du));
    const std::string j2 = hard::correlation_report_to_json(hard::correlation_pair(dv, du));
    ++checks;
    if (j1 != j2) return "correlation report serialization is not deterministic";

    const auto fam1 = hard::near_orthogonal_set(24, 0.25, 8, o.seed);
    const auto fam2 = hard::near_orthogonal_set(24, 0.25, 8, o.seed);
    ++checks;
    if (fam1 != fam2) return "near-orthogonal family sampling is not deterministic";
    return "";
}

}  // namespace

std::vector<Suite> builtin_suites() {
    return {
        {"core/norm-bound", suite_norm_bound},
        {"core/key-identity", suite_key_identity},
        {"core/permutation-invariance", suite_perm_invariance},
        {"core/self-disagreement", suite_self_disagreement},
        {"simulate/determinism", suite_simulate_determinism},
        {"simulate/margin", suite_simulate_margin},
        {"simulate/rcn-rate", suite_simulate_rcn_rate},
        {"learner/iterate-feasibility", suite_iterate_feasibility},
        {"learner/one-step-contraction", suite_one_step_contraction},
        {"learner/regret-realization", suite_regret_realization},
        {"learner/regret-decomposition", suite_regret_decomposition},
        {"dimreduce/jl-concentration", suite_jl_concentration},
        {"dimreduce/transpose-pairing", suite_transpose_pairing},
        {"hardness/kravchuk-properties", suite_kravchuk_properties},
        {"hardness/parseval", suite_parseval},
        {"hardness/dual-path-fourier", suite_dual_path_fourier},
        {"hardness/level-sum", suite_level_sum},
        {"hardness/rk-decay", suite_rk_decay},
        {"hardness/rk-small-k", suite_rk_small_k},
        {"library/reproducibility", suite_library_reproducibility},
    };
}

std::vector<SuiteResult> run_suites(const VerifyOptions& opts,
                                    const std::vector<Suite>& extra) {
    std::vector<Suite> suites = builtin_suites();
    suites.insert(suites.end(), extra.begin(), extra.end());
    std::vector<SuiteResult> results;
    results.reserve(suites.size());
    for (const auto& s : suites) {
        SuiteResult r;
        r.name = s.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            r.detail = s.run(opts, r.checks);
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        r.millis = std::chrono::duration<double, std::milli>(stop - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

std::string format_report(const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.checks
           << " checks, " << r.millis << " ms)";
        if (!r.passed) {
            os << "\n      counterexample: " << r.detail;
            ++failed;
        }
        os << "\n";
    }
    os << (failed == 0 ? "all suites passed" : std::to_string(failed) + " suite(s) failed")
       << "\n";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace halfspace
