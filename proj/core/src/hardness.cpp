#include "halfspace/hardness.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace halfspace::hard {

namespace {

Rational pow2_inv(int d) {
    // 2^{-d}
    BigInt den = BigInt(1) << d;
    return Rational(1, den);
}

double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/"
       << boost::multiprecision::denominator(r);
    return os.str();
}

std::string decimal17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t plus_mask(const SignVector& v) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 0) m |= (std::uint64_t{1} << i);
    return m;
}

}  // namespace

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("binomial: k out of range");
    if (n > kMaxExactBinomial)
        throw std::invalid_argument("binomial: n beyond exact budget, use log_binomial");
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Rational kravchuk(int n, int a, int b) {
    if (a < 0 || b < 0 || a > n || b > n)
        throw std::invalid_argument("kravchuk: arguments out of range");
    BigInt num = 0;
    const int j_lo = std::max(0, b - (n - a));
    const int j_hi = std::min(a, b);
    for (int j = j_lo; j <= j_hi; ++j) {
        BigInt term = binomial(a, j) * binomial(n - a, b - j);
        if (j & 1) num -= term; else num += term;
    }
    return Rational(num, binomial(n, b));
}

Rational kravchuk_bruteforce(int n, int a, int b) {
    if (n > 16) throw std::invalid_argument("kravchuk_bruteforce: n too large");
    long long sum = 0, pairs = 0;
    const std::uint64_t lim = std::uint64_t{1} << n;
    for (std::uint64_t A = 0; A < lim; ++A) {
        if (std::popcount(A) != a) continue;
        for (std::uint64_t B = 0; B < lim; ++B) {
            if (std::popcount(B) != b) continue;
            sum += (std::popcount(A & B) & 1) ? -1 : 1;
            ++pairs;
        }
    }
    return Rational(sum, pairs);
}

KravchukTable kravchuk_table(int n) {
    KravchukTable t;
    t.n = n;
    t.values.resize(std::size_t(n + 1) * (n + 1));
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            Rational k = kravchuk(n, a, b);
            t.values[std::size_t(a) * (n + 1) + b] = k;
            t.values[std::size_t(b) * (n + 1) + a] = k;  // K(n,a,b) = K(n,b,a)
        }
    return t;
}

KravchukBoundResult kravchuk_bound_check(int d, int m, int k) {
    if (2 * k > d)
        throw std::invalid_argument("kravchuk_bound_check: bound requires k <= d/2");
    KravchukBoundResult r;
    r.value = std::fabs(rational_to_double(kravchuk(d, m, k)));
    const double kd = static_cast<double>(k) / d;
    const double md = std::fabs(0.5 * d - m) / d;
    // 0^0 = 1 convention makes the bound well defined at k = 0
    const double term1 = (k == 0) ? 1.0 : std::pow(kd, 0.5 * k);
    const double term2 = (k == 0) ? 1.0 : std::pow(md, k);
    r.bound = std::exp(static_cast<double>(k)) * std::pow(8.0, k) * (term1 + term2);
    r.holds = r.value <= r.bound;
    return r;
}

Rational tail_mass(int d, int s_star) {
    if (s_star > d) return Rational(0);
    BigInt num = 0;
    for (int s = std::max(0, s_star); s <= d; ++s) num += binomial(d, s);
    return Rational(num) * pow2_inv(d);
}

ThresholdChoice threshold_for_mass(int d, double target_mass) {
    if (!(target_mass > 0.0 && target_mass <= 1.0))
        throw std::invalid_argument("threshold_for_mass: target_mass must be in (0,1]");
    const Rational target(target_mass);  // exact binary value of the double
    for (int s = 0; s <= d; ++s) {
        Rational t = tail_mass(d, s);
        if (t <= target) return {s, t, false};
    }
    return {d + 1, Rational(0), true};
}

int agreement_count(const ThresholdLtf& ltf, CubePoint x) {
    const int d = static_cast<int>(ltf.v.size());
    return d - std::popcount(x ^ plus_mask(ltf.v));
}

int ltf_eval(const ThresholdLtf& ltf, CubePoint x) {
    return agreement_count(ltf, x) >= ltf.s_star ? 1 : 0;
}

Rational fourier_coefficient(const ThresholdLtf& ltf, std::uint64_t T_mask) {
    const int d = static_cast<int>(ltf.v.size());
    const int k = std::popcount(T_mask);
    // chi_T(v): product of v_i over i in T
    int neg = 0;
    for (int i = 0; i < d; ++i)
        if ((T_mask >> i) & 1 && ltf.v[i] < 0) ++neg;
    int sign = ((neg + k) & 1) ? -1 : 1;  // chi_T(v) * (-1)^{|T|}
    Rational sum = 0;
    for (int s = std::max(0, ltf.s_star); s <= d; ++s)
        sum += Rational(binomial(d, s)) * kravchuk(d, s, k);
    return Rational(sign) * pow2_inv(d) * sum;
}

Rational fourier_coefficient_bruteforce(const ThresholdLtf& ltf, std::uint64_t T_mask) {
    const int d = static_cast<int>(ltf.v.size());
    if (d > static_cast<int>(kMaxEnumerationDim))
        throw std::invalid_argument("fourier_coefficient_bruteforce: d over budget");
    long long sum = 0;
    const std::uint64_t lim = std::uint64_t{1} << d;
    for (std::uint64_t x = 0; x < lim; ++x) {
        if (!ltf_eval(ltf, x)) continue;
        // chi_T(x) = (-1)^{#{i in T : x_i = -1}}
        sum += (std::popcount(~x & T_mask) & 1) ? -1 : 1;
    }
    return Rational(sum) * pow2_inv(d);
}

HardDistribution make_hard_distribution(ThresholdLtf ltf, const Rational& eta) {
    if (!(eta > 0 && eta < Rational(1, 2)))
        throw std::invalid_argument("make_hard_distribution: eta must be in (0,1/2)");
    HardDistribution d;
    d.eps_actual = tail_mass(static_cast<int>(ltf.v.size()), ltf.s_star);
    d.ltf = std::move(ltf);
    d.eta = eta;
    return d;
}

Rational pmf_conditional(const HardDistribution& dist, CubePoint x, int label) {
    const int d = static_cast<int>(dist.ltf.v.size());
    const Rational f(ltf_eval(dist.ltf, x));
    const Rational one_minus_2eta = 1 - 2 * dist.eta;
    Rational num, den;
    if (label == 1) {
        num = dist.eta + one_minus_2eta * f;
        den = dist.eta + one_minus_2eta * dist.eps_actual;
    } else if (label == 0) {
        num = 1 - dist.eta - one_minus_2eta * f;
        den = 1 - dist.eta - one_minus_2eta * dist.eps_actual;
    } else {
        throw std::invalid_argument("pmf_conditional: label must be 0 or 1");
    }
    return num / den * pow2_inv(d);
}

Rational joint_expectation(const ThresholdLtf& ltf_v, const ThresholdLtf& ltf_u) {
    const int d = static_cast<int>(ltf_v.v.size());
    if (ltf_u.v.size() != ltf_v.v.size())
        throw std::invalid_argument("joint_expectation: dimension mismatch");
    int m = 0;
    for (int i = 0; i < d; ++i)
        if (ltf_v.v[i] == ltf_u.v[i]) ++m;
    // x agrees with v on p of the m shared coords and q of the d-m differing
    // ones; then it agrees with u on p + (d-m) - q
    BigInt count = 0;
    for (int p = 0; p <= m; ++p) {
        for (int q = 0; q <= d - m; ++q) {
            if (p + q < ltf_v.s_star) continue;
            if (p + (d - m) - q < ltf_u.s_star) continue;
            count += binomial(m, p) * binomial(d - m, q);
        }
    }
    return Rational(count) * pow2_inv(d);
}

Rational joint_expectation_bruteforce(const ThresholdLtf& ltf_v, const ThresholdLtf& ltf_u) {
    const int d = static_cast<int>(ltf_v.v.size());
    if (d > static_cast<int>(kMaxEnumerationDim))
        throw std::invalid_argument("joint_expectation_bruteforce: d over budget");
    const std::uint64_t mv = plus_mask(ltf_v.v), mu = plus_mask(ltf_u.v);
    long long cnt = 0;
    const std::uint64_t lim = std::uint64_t{1} << d;
    for (std::uint64_t x = 0; x < lim; ++x) {
        if (d - std::popcount(x ^ mv) >= ltf_v.s_star &&
            d - std::popcount(x ^ mu) >= ltf_u.s_star)
            ++cnt;
    }
    return Rational(cnt) * pow2_inv(d);
}

namespace {

// chi_{D0}(D_v, D_u) from the moments E[f_v], E[f_u], E[f_v f_u]; D0 is the
// product of U_d and D_v's label marginal
Rational chi_pair_from_moments(const Rational& eta, const Rational& ev,
                               const Rational& eu, const Rational& evu) {
    const Rational a = 1 - 2 * eta;
    const Rational p1 = eta + a * ev;
    const Rational p0 = 1 - p1;
    const Rational term1 = eta * eta + eta * a * (ev + eu) + a * a * evu;
    const Rational term2 =
        (1 - eta) * (1 - eta) - (1 - eta) * a * (ev + eu) + a * a * evu;
    return term1 / p1 + term2 / p0 - 1;
}

}  // namespace

Rational chi_pair_bruteforce(const HardDistribution& dist_v,
                             const HardDistribution& dist_u) {
    const int d = static_cast<int>(dist_v.ltf.v.size());
    if (d > static_cast<int>(kMaxEnumerationDim))
        throw std::invalid_argument("chi_pair_bruteforce: d over budget");
    const Rational a = 1 - 2 * dist_v.eta;
    const Rational p1 = dist_v.eta + a * dist_v.eps_actual;
    const Rational p0 = 1 - p1;
    // joint pmfs: D_v(x, y=1) = (eta + (1-2eta) f_v(x)) 2^{-d}, etc.; count
    // points by the (f_v, f_u) pattern so the rational work is O(1)
    long long n[2][2] = {{0, 0}, {0, 0}};
    const std::uint64_t lim = std::uint64_t{1} << d;
    for (std::uint64_t x = 0; x < lim; ++x)
        ++n[ltf_eval(dist_v.ltf, x)][ltf_eval(dist_u.ltf, x)];
    Rational total = 0;
    for (int fv = 0; fv < 2; ++fv)
        for (int fu = 0; fu < 2; ++fu) {
            if (n[fv][fu] == 0) continue;
            const Rational gv1 = dist_v.eta + a * fv;
            const Rational gu1 = dist_u.eta + a * fu;
            const Rational gv0 = 1 - gv1, gu0 = 1 - gu1;
            total += Rational(n[fv][fu]) * (gv1 * gu1 / p1 + gv0 * gu0 / p0);
        }
    return total * pow2_inv(d) - 1;
}

Rational chi_self_bruteforce(const HardDistribution& dist_v) {
    return chi_pair_bruteforce(dist_v, dist_v);
}

std::vector<Rational> rk_decomposition(const ThresholdLtf& ltf_v,
                                       const ThresholdLtf& ltf_u) {
    const int d = static_cast<int>(ltf_v.v.size());
    if (ltf_u.v.size() != ltf_v.v.size())
        throw std::invalid_argument("rk_decomposition: dimension mismatch");
    if (ltf_u.s_star != ltf_v.s_star)
        throw std::invalid_argument("rk_decomposition: shared s_star required");
    int m = 0;
    for (int i = 0; i < d; ++i)
        if (ltf_v.v[i] == ltf_u.v[i]) ++m;
    const KravchukTable kt = kravchuk_table(d);
    const Rational inv2d = pow2_inv(d);
    std::vector<Rational> rk(d + 1);
    for (int k = 0; k <= d; ++k) {
        Rational level = 0;
        for (int s = std::max(0, ltf_v.s_star); s <= d; ++s)
            level += Rational(binomial(d, s)) * kt.at(k, s);
        level *= inv2d;
        // the level-k inner product of the two Fourier transforms carries
        // (-1)^{|T cap D|} over the disagreement set D, i.e. K(d, d-m, k)
        rk[k] = Rational(binomial(d, k)) * level * level * kt.at(d - m, k);
    }
    return rk;
}

CorrelationReport correlation_pair(const HardDistribution& dist_v,
                                   const HardDistribution& dist_u) {
    const int d = static_cast<int>(dist_v.ltf.v.size());
    if (dist_u.ltf.v.size() != dist_v.ltf.v.size())
        throw std::invalid_argument("correlation_pair: dimension mismatch");
    if (dist_u.eta != dist_v.eta)
        throw std::invalid_argument("correlation_pair: shared eta required");
    if (dist_u.ltf.s_star != dist_v.ltf.s_star)
        throw std::invalid_argument("correlation_pair: shared s_star required");

    CorrelationReport r;
    r.d = d;
    r.s_star = dist_v.ltf.s_star;
    r.inner_product = sign_inner_product(dist_v.ltf.v, dist_u.ltf.v);
    r.agreement = static_cast<int>((r.inner_product + d) / 2);
    r.eps_actual = dist_v.eps_actual;
    r.e_fv = dist_v.eps_actual;
    r.e_fu = dist_u.eps_actual;
    r.e_fvfu = joint_expectation(dist_v.ltf, dist_u.ltf);
    r.chi_pair = chi_pair_from_moments(dist_v.eta, r.e_fv, r.e_fu, r.e_fvfu);
    r.chi_self = chi_pair_from_moments(dist_v.eta, r.e_fv, r.e_fv, r.e_fv);
    r.rk_terms = rk_decomposition(dist_v.ltf, dist_u.ltf);

    const Rational a = 1 - 2 * dist_v.eta;
    r.lemma_cov_bound_holds = r.chi_pair <= 2 * a * (r.e_fvfu - r.e_fv * r.e_fu);
    r.lemma_self_bound_holds = r.chi_self <= a * (r.e_fv - r.e_fv * r.e_fv);

    const auto bc = correlation_bound_check(dist_v, dist_u, 1.0);
    r.bound_rhs = bc.rhs;
    r.min_c = bc.min_c;
    return r;
}

CorrelationBoundCheck correlation_bound_check(const HardDistribution& dist_v,
                                              const HardDistribution& dist_u, double C) {
    const int d = static_cast<int>(dist_v.ltf.v.size());
    CorrelationBoundCheck res;
    const double eps = rational_to_double(dist_v.eps_actual);
    const long long ip = sign_inner_product(dist_v.ltf.v, dist_u.ltf.v);
    const double abs_ip = static_cast<double>(ip < 0 ? -ip : ip);
    const double log_term = std::log(static_cast<double>(d) / eps);
    // the small-inner-product hypothesis is asymptotic; the operative guard
    // is that u is not +-v, where the bound is vacuous
    res.hypothesis_met = abs_ip < static_cast<double>(d);
    res.lhs = rational_to_double(joint_expectation(dist_v.ltf, dist_u.ltf));
    res.rhs = C * log_term * log_term * eps * eps * abs_ip / d + eps * eps;
    res.holds = res.lhs <= res.rhs;
    if (res.lhs <= eps * eps) {
        res.min_c = 0.0;
    } else if (abs_ip == 0.0) {
        res.min_c = std::numeric_limits<double>::infinity();
    } else {
        res.min_c = (res.lhs - eps * eps) * d / (log_term * log_term * eps * eps * abs_ip);
    }
    return res;
}

long long sign_inner_product(const SignVector& v, const SignVector& u) {
    if (v.size() != u.size())
        throw std::invalid_argument("sign_inner_product: dimension mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += static_cast<long long>(v[i]) * u[i];
    return s;
}

std::vector<SignVector> near_orthogonal_set(int d, double c, std::size_t count,
                                            std::uint64_t seed) {
    if (!(c > 0.0 && c < 0.5))
        throw std::invalid_argument("near_orthogonal_set: c must be in (0,1/2)");
    if (d < 1 || d > 64)
        throw std::invalid_argument("near_orthogonal_set: d must be in [1,64]");
    const double threshold = std::pow(static_cast<double>(d), 0.5 + c);
    if (threshold < 1.0)
        throw std::invalid_argument("near_orthogonal_set: threshold below 1");
    constexpr std::size_t kRetryBudget = 1000000;
    SplitRng rng(seed, 0x6e6f);
    std::vector<SignVector> out;
    out.reserve(count);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > kRetryBudget)
            throw std::runtime_error(
                "near_orthogonal_set: retry budget exhausted (count too large for d, c)");
        SignVector v(d);
        std::uint64_t bits = rng.next_u64();
        for (int i = 0; i < d; ++i)
            v[i] = ((bits >> (i & 63)) & 1) ? 1 : -1;
        if (d > 64) continue;  // unreachable, d capped above
        bool ok = true;
        for (const auto& u : out) {
            const long long ip = sign_inner_product(v, u);
            if (std::fabs(static_cast<double>(ip)) >= threshold) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(v));
    }
    return out;
}

Dataset hard_to_learner_dataset(const HardDistribution& dist, std::size_t n,
                                std::uint64_t seed) {
    const int d = static_cast<int>(dist.ltf.v.size());
    const double eta = rational_to_double(dist.eta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    SplitRng rng(seed, 0x6864);
    Dataset ds;
    ds.format = DataFormat::sphere;
    ds.d = static_cast<std::size_t>(d);
    ds.examples.reserve(n);
    {
        std::ostringstream prov;
        prov << "hard-instance d=" << d << " s_star=" << dist.ltf.s_star
             << " n=" << n << " seed=" << seed;
        ds.provenance = prov.str();
    }
    const std::uint64_t mask = (d == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << d) - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const CubePoint x = rng.next_u64() & mask;
        int y = ltf_eval(dist.ltf, x);
        if (rng.next_double() < eta) y = 1 - y;
        LabeledExample ex;
        ex.y = y == 1 ? +1 : -1;
        ex.x.resize(d);
        for (int j = 0; j < d; ++j)
            ex.x[j] = ((x >> j) & 1) ? scale : -scale;
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

std::string correlation_report_to_json(const CorrelationReport& r) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"d\": " << r.d << ",\n";
    os << "  \"s_star\": " << r.s_star << ",\n";
    os << "  \"inner_product\": " << r.inner_product << ",\n";
    os << "  \"agreement\": " << r.agreement << ",\n";
    os << "  \"eps_actual\": \"" << rational_to_string(r.eps_actual) << "\",\n";
    os << "  \"e_fv\": \"" << rational_to_string(r.e_fv) << "\",\n";
    os << "  \"e_fu\": \"" << rational_to_string(r.e_fu) << "\",\n";
    os << "  \"e_fvfu\": \"" << rational_to_string(r.e_fvfu) << "\",\n";
    os << "  \"chi_pair\": \"" << rational_to_string(r.chi_pair) << "\",\n";
    os << "  \"chi_self\": \"" << rational_to_string(r.chi_self) << "\",\n";
    os << "  \"bound_rhs\": " << decimal17(r.bound_rhs) << ",\n";
    os << "  \"min_C\": " << decimal17(r.min_c) << ",\n";
    os << "  \"lemma_cov_bound_holds\": " << (r.lemma_cov_bound_holds ? "true" : "false")
       << ",\n";
    os << "  \"lemma_self_bound_holds\": " << (r.lemma_self_bound_holds ? "true" : "false")
       << ",\n";
    os << "  \"rk_terms\": [";
    for (std::size_t k = 0; k < r.rk_terms.size(); ++k) {
        if (k) os << ", ";
        os << "\"" << rational_to_string(r.rk_terms[k]) << "\"";
    }
    os << "]\n}\n";
    return os.str();
}

std::string correlation_reports_to_csv(const std::vector<CorrelationReport>& rs) {
    std::ostringstream os;
    os << "# correlation-report schema v1\n";
    os << "d,s_star,eps_actual,inner_product,e_fvfu,chi_pair,chi_self,bound_rhs,min_C\n";
    for (const auto& r : rs) {
        os << r.d << "," << r.s_star << "," << decimal17(rational_to_double(r.eps_actual))
           << "," << r.inner_product << "," << decimal17(rational_to_double(r.e_fvfu))
           << "," << decimal17(rational_to_double(r.chi_pair)) << ","
           << decimal17(rational_to_double(r.chi_self)) << "," << decimal17(r.bound_rhs)
           << "," << decimal17(r.min_c) << "\n";
    }
    return os.str();
}

}  // namespace halfspace::hard
