#include "halfspace/dimreduce.hpp"

#include <cmath>

#include "halfspace/rng.hpp"

namespace halfspace {

std::size_t derive_jl_dimension(const JlConfig& config) {
    if (config.m > 0) return config.m;
    if (!(config.beta > 0.0 && config.beta < 1.0))
        throw std::invalid_argument("derive_jl_dimension: beta must be in (0,1)");
    if (!(config.gamma > 0.0 && config.gamma < 1.0))
        throw std::invalid_argument("derive_jl_dimension: gamma must be in (0,1)");
    return static_cast<std::size_t>(
        std::ceil(config.cm * std::log(1.0 / config.beta) / (config.gamma * config.gamma)));
}

JlMatrix sample_jl_matrix(const JlConfig& config, std::size_t d) {
    const std::size_t m = derive_jl_dimension(config);
    if (m == 0 || d == 0)
        throw std::invalid_argument("sample_jl_matrix: m and d must be positive");
    JlMatrix A;
    A.m = m;
    A.d = d;
    A.seed = config.seed;
    A.entries.resize(m * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    SplitRng rng(config.seed, 0x4a4c); // dedicated stream tag for JL matrices
    // 64 sign bits per draw
    std::uint64_t bits = 0;
    int avail = 0;
    for (auto& e : A.entries) {
        if (avail == 0) {
            bits = rng.next_u64();
            avail = 64;
        }
        e = (bits & 1u) ? scale : -scale;
        bits >>= 1;
        --avail;
    }
    return A;
}

Vec jl_apply(const JlMatrix& A, const Vec& x) {
    if (x.size() != A.d) throw std::invalid_argument("jl_apply: dimension mismatch");
    Vec out(A.m, 0.0);
    for (std::size_t i = 0; i < A.m; ++i) {
        const double* row = &A.entries[i * A.d];
        double s = 0.0;
        for (std::size_t j = 0; j < A.d; ++j) s += row[j] * x[j];
        out[i] = s;
    }
    return out;
}

Vec jl_lift(const JlMatrix& A, const Vec& w_reduced) {
    if (w_reduced.size() != A.m) throw std::invalid_argument("jl_lift: dimension mismatch");
    Vec out(A.d, 0.0);
    for (std::size_t i = 0; i < A.m; ++i) {
        const double* row = &A.entries[i * A.d];
        const double wi = w_reduced[i];
        for (std::size_t j = 0; j < A.d; ++j) out[j] += row[j] * wi;
    }
    return out;
}

ReducedTrainResult reduced_train(const Dataset& train, const Dataset& holdout,
                                 double eps, double delta, double eta, double gamma,
                                 const JlConfig& jl, std::size_t T_override) {
    if (train.format != DataFormat::sphere)
        throw std::invalid_argument("reduced_train: sphere-format dataset required");
    if (train.d != holdout.d)
        throw std::invalid_argument("reduced_train: train/holdout dimension mismatch");

    JlMatrix A = sample_jl_matrix(jl, train.d);

    Dataset reduced_train_ds;
    reduced_train_ds.format = DataFormat::sphere;
    reduced_train_ds.d = A.m;
    reduced_train_ds.examples.reserve(train.examples.size());
    for (const auto& ex : train.examples)
        reduced_train_ds.examples.push_back({jl_apply(A, ex.x), ex.y});

    LearnerParams params;
    params.eps = eps;
    params.delta = delta;
    params.eta = eta;
    params.gamma = gamma;
    const double one_minus_eta = 1.0 - eta;
    const double ratio = 48.0 * one_minus_eta / ((1.0 - 2.0 * eta) * gamma * eps);
    params.T = static_cast<std::size_t>(std::ceil(ratio * ratio - 1.0));
    if (T_override > 0) params.T = T_override;
    params.mu = 1.0 / (one_minus_eta * std::sqrt(static_cast<double>(params.T + 1)));

    IterateTrace trace = run_psgd(reduced_train_ds, params);

    // Selection happens in original coordinates; by the transpose pairing,
    // evaluating A^T w on x equals evaluating w on A x, so we project the
    // holdout once instead of lifting every iterate.
    Dataset reduced_holdout;
    reduced_holdout.format = DataFormat::sphere;
    reduced_holdout.d = A.m;
    reduced_holdout.examples.reserve(holdout.examples.size());
    for (const auto& ex : holdout.examples)
        reduced_holdout.examples.push_back({jl_apply(A, ex.x), ex.y});

    SelectedHypothesis sel = select_hypothesis(trace, reduced_holdout);

    ReducedTrainResult res;
    res.m = A.m;
    res.T = params.T;
    res.mu = params.mu;
    res.selected.index = sel.index;
    res.selected.holdout_error = sel.holdout_error;
    res.selected.w = project_to_ball(jl_lift(A, sel.w));
    return res;
}

}  // namespace halfspace
