#include "halfspace/core_model.hpp"

namespace halfspace {

int sign_fn(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("sign_fn: non-finite input");
    return t >= 0.0 ? +1 : -1;
}

void validate_instance(const MarginHalfspaceInstance& inst) {
    if (inst.w_star.empty())
        throw std::invalid_argument("instance: empty w_star");
    if (!is_unit(inst.w_star))
        throw std::invalid_argument("instance: w_star is not unit norm");
    if (!(inst.gamma > 0.0 && inst.gamma < 1.0))
        throw std::invalid_argument("instance: gamma must be in (0,1)");
    if (!(inst.eta > 0.0 && inst.eta < 0.5))
        throw std::invalid_argument("instance: eta must be in (0,1/2)");
}

Vec leaky_relu_subgradient(const Vec& w, const Vec& x, int y, double eta) {
    if (w.size() != x.size())
        throw std::invalid_argument("leaky_relu_subgradient: dimension mismatch");
    const double coef = 0.5 * ((1.0 - 2.0 * eta) * sign_fn(dot(w, x)) - y);
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = coef * x[i];
    return g;
}

int accumulate_subgradient(const Vec& w, const Vec& x, int y, double eta, Vec& out) {
    if (w.size() != x.size() || out.size() != x.size())
        throw std::invalid_argument("accumulate_subgradient: dimension mismatch");
    const int s = sign_fn(dot(w, x));
    const double coef = 0.5 * ((1.0 - 2.0 * eta) * s - y);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += coef * x[i];
    return s;
}

Vec empirical_subgradient(const Vec& w, const std::vector<LabeledExample>& examples,
                          double eta) {
    if (examples.empty())
        throw std::invalid_argument("empirical_subgradient: empty example list");
    Vec sum(w.size(), 0.0);
    for (const auto& ex : examples) accumulate_subgradient(w, ex.x, ex.y, eta, sum);
    const double inv = 1.0 / static_cast<double>(examples.size());
    for (double& v : sum) v *= inv;
    return sum;
}

int disagreement_indicator(const Vec& w, const Vec& w_ref, const Vec& x) {
    return sign_fn(dot(w, x)) != sign_fn(dot(w_ref, x)) ? 1 : 0;
}

}  // namespace halfspace
