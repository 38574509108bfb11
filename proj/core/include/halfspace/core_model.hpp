// Shared domain types and the subgradient / disagreement primitives used by
// every other component.  All functions here are pure.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfspace {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

inline void axpy(double alpha, const Vec& x, Vec& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// sgn with the tie-break sgn(0) = +1; shared by every module.
int sign_fn(double t);

// A labeled point.  For sphere-format data x is unit norm and y in {-1,+1};
// for cube-format data the coordinates are +-1 and y in {0,1}.
struct LabeledExample {
    Vec x;
    int y = 1;
};

struct MarginHalfspaceInstance {
    Vec w_star;     // unit vector
    double gamma = 0.0;  // in (0,1)
    double eta = 0.0;    // in (0,1/2)
};

// relative tolerance used by all floating-point comparisons
inline constexpr double kRelTol = 1e-9;

inline bool is_unit(const Vec& v) {
    return std::fabs(norm2(v) - 1.0) <= kRelTol;
}

void validate_instance(const MarginHalfspaceInstance& inst);

// g_eta(w; x, y) = (1/2) [(1-2 eta) sign(w.x) - y] x.  Norm is at most 1-eta
// whenever x is unit.
Vec leaky_relu_subgradient(const Vec& w, const Vec& x, int y, double eta);

// In-place accumulation variant: out += g_eta(w; x, y).  Returns sign(w.x)
// so callers can reuse it for disagreement bookkeeping.
int accumulate_subgradient(const Vec& w, const Vec& x, int y, double eta, Vec& out);

// Mean of leaky_relu_subgradient over a nonempty example list.
Vec empirical_subgradient(const Vec& w, const std::vector<LabeledExample>& examples,
                          double eta);

// 1 iff sign(w.x) != sign(w_ref.x)
int disagreement_indicator(const Vec& w, const Vec& w_ref, const Vec& x);

}  // namespace halfspace
