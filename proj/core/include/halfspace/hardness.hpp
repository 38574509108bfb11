// Hypercube threshold concepts, exact Fourier coefficients via normalized
// Kravchuk polynomials, noisy conditional distributions and their pairwise
// correlations, and nearly-orthogonal sign-vector families.  All
// combinatorics below the enumeration budgets use exact rational
// arithmetic.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfspace/rng.hpp"
#include "halfspace/simulate.hpp"

namespace halfspace::hard {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// budgets for exact exhaustive paths
inline constexpr std::size_t kMaxEnumerationDim = 24;   // 2^d point sweeps
inline constexpr std::size_t kMaxFourierDim = 14;       // all-2^d-subset sweeps
inline constexpr int kMaxExactBinomial = 1000;

// exact binomial coefficient, arbitrary precision
BigInt binomial(int n, int k);
// log-space companion for n beyond the exact budget
double log_binomial(double n, double k);

// normalized Kravchuk polynomial: the average of (-1)^{|A cap B|} over
// uniform subsets A, B of [n] with |A| = a, |B| = b.  Computed as
// sum_j (-1)^j C(a,j) C(n-a, b-j) / C(n,b).
Rational kravchuk(int n, int a, int b);

// brute-force oracle over all subset pairs; test support, n small
Rational kravchuk_bruteforce(int n, int a, int b);

struct KravchukTable {
    int n = 0;
    std::vector<Rational> values;  // (n+1) x (n+1)
    const Rational& at(int a, int b) const { return values[std::size_t(a) * (n + 1) + b]; }
};
KravchukTable kravchuk_table(int n);

struct KravchukBoundResult {
    double value = 0.0;   // |K(d,m,k)|
    double bound = 0.0;   // e^k 2^{3k} ((k/d)^{k/2} + (|d/2-m|/d)^k), 0^0 = 1
    bool holds = false;
};
// requires k <= d/2
KravchukBoundResult kravchuk_bound_check(int d, int m, int k);

// sign vector as +-1 chars; d <= 64 for the exact machinery
using SignVector = std::vector<signed char>;

struct ThresholdLtf {
    SignVector v;
    int s_star = 0;  // f_v(x) = 1 iff #{i : x_i = v_i} >= s_star; in [0, d+1]
};

struct ThresholdChoice {
    int s_star = 0;
    Rational eps_actual;  // realized mass 2^{-d} sum_{s >= s_star} C(d,s)
    bool degenerate = false;
};
// smallest s_star whose tail mass is <= target_mass
ThresholdChoice threshold_for_mass(int d, double target_mass);

Rational tail_mass(int d, int s_star);

// hypercube point as a bitmask: bit i set means x_i = +1
using CubePoint = std::uint64_t;

int agreement_count(const ThresholdLtf& ltf, CubePoint x);
int ltf_eval(const ThresholdLtf& ltf, CubePoint x);

// exact E[f_v(x) chi_T(x)] via the Kravchuk formula; T is a bitmask subset of [d]
Rational fourier_coefficient(const ThresholdLtf& ltf, std::uint64_t T_mask);
// exhaustive-enumeration oracle for the same quantity (d <= kMaxFourierDim ... 24)
Rational fourier_coefficient_bruteforce(const ThresholdLtf& ltf, std::uint64_t T_mask);

struct HardDistribution {
    ThresholdLtf ltf;
    Rational eta;         // in (0, 1/2); defaults to 1/3 at construction sites
    Rational eps_actual;  // E[f_v]
};
HardDistribution make_hard_distribution(ThresholdLtf ltf, const Rational& eta);

// closed-form conditional pmf; label 1 -> A_v, label 0 -> B_v
Rational pmf_conditional(const HardDistribution& dist, CubePoint x, int label);

// exact E[f_v f_u] from the agreement structure of v and u (O(d^2) sums)
Rational joint_expectation(const ThresholdLtf& ltf_v, const ThresholdLtf& ltf_u);
// exhaustive 2^d-point oracle for the same quantity
Rational joint_expectation_bruteforce(const ThresholdLtf& ltf_v, const ThresholdLtf& ltf_u);

struct CorrelationReport {
    int d = 0;
    int s_star = 0;
    long long inner_product = 0;  // v.u
    int agreement = 0;            // m = #{i : v_i = u_i}
    Rational eps_actual;
    Rational e_fv, e_fu, e_fvfu;
    Rational chi_pair;  // chi_{D0}(D_v, D_u)
    Rational chi_self;  // chi^2(D_v, D0)
    std::vector<Rational> rk_terms;  // R_0 .. R_d
    double bound_rhs = 0.0;  // C log^2(d/eps) eps^2 |v.u|/d + eps^2 at C = 1
    double min_c = 0.0;      // smallest C making the correlation bound hold (0 if v.u = 0)
    bool lemma_cov_bound_holds = false;   // chi_pair <= 2(1-2eta) Cov
    bool lemma_self_bound_holds = false;  // chi_self <= (1-2eta)(E[f] - E[f]^2)
};

// exact correlation report; throws beyond kMaxEnumerationDim unless
// allow_large (the closed forms stay exact at any d <= 64, only the
// per-point enumeration oracle has a budget)
CorrelationReport correlation_pair(const HardDistribution& dist_v,
                                   const HardDistribution& dist_u);

// direct-summation oracle for chi_{D0}(D_v, D_u) over {+-1}^d x {0,1}
Rational chi_pair_bruteforce(const HardDistribution& dist_v,
                             const HardDistribution& dist_u);
Rational chi_self_bruteforce(const HardDistribution& dist_v);

// R_k = C(d,k) (2^{-d} sum_{s>=s*} C(d,s) K(d,k,s))^2 K(d, d-m, k), where m
// is the agreement count of v and u; sum_k R_k = E[f_v f_u] exactly
std::vector<Rational> rk_decomposition(const ThresholdLtf& ltf_v,
                                       const ThresholdLtf& ltf_u);

struct CorrelationBoundCheck {
    double lhs = 0.0;        // E[f_v f_u]
    double rhs = 0.0;        // C log^2(d/eps) eps^2 |v.u|/d + eps^2
    bool holds = false;
    bool hypothesis_met = true;  // false when |v.u| is not small (e.g. u = v)
    double min_c = 0.0;          // smallest C making it hold; 0 when lhs <= eps^2
};
CorrelationBoundCheck correlation_bound_check(const HardDistribution& dist_v,
                                              const HardDistribution& dist_u, double C);

// rejection-sampled family with pairwise |v.u| < d^{1/2+c}
std::vector<SignVector> near_orthogonal_set(int d, double c, std::size_t count,
                                            std::uint64_t seed);

long long sign_inner_product(const SignVector& v, const SignVector& u);

// samples (x, y) from D_v and maps to a sphere-format dataset:
// x -> x/sqrt(d), y in {0,1} -> {-1,+1}
Dataset hard_to_learner_dataset(const HardDistribution& dist, std::size_t n,
                                std::uint64_t seed);

std::string correlation_report_to_json(const CorrelationReport& r);
std::string correlation_reports_to_csv(const std::vector<CorrelationReport>& rs);

}  // namespace halfspace::hard
