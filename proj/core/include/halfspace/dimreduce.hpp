// Johnson-Lindenstrauss sign-matrix projection: train in the reduced space,
// lift iterates back with the transpose.
#pragma once

#include <cstdint>

#include "halfspace/learner.hpp"

namespace halfspace {

struct JlConfig {
    std::size_t m = 0;       // 0 means auto-derive
    std::uint64_t seed = 0;
    double beta = 1e-3;
    double gamma = 0.1;
    double cm = 64.0;        // constant in m = ceil(cm * ln(1/beta) / gamma^2)
};

std::size_t derive_jl_dimension(const JlConfig& config);

struct JlMatrix {
    std::size_t m = 0, d = 0;
    std::vector<double> entries;  // row-major, each +-1/sqrt(m)
    std::uint64_t seed = 0;

    double at(std::size_t i, std::size_t j) const { return entries[i * d + j]; }
};

// each entry independently uniform on {+-1/sqrt(m)}, deterministic from seed
JlMatrix sample_jl_matrix(const JlConfig& config, std::size_t d);

// A x (dimension d -> m)
Vec jl_apply(const JlMatrix& A, const Vec& x);

// A^T w (dimension m -> d)
Vec jl_lift(const JlMatrix& A, const Vec& w_reduced);

struct ReducedTrainResult {
    SelectedHypothesis selected;  // w lifted to the original dimension
    std::size_t m = 0;
    std::size_t T = 0;
    double mu = 0.0;
};

// Projects the data by A, runs projected subgradient descent in m dimensions
// with T = ceil((48(1-eta)/((1-2eta) gamma eps))^2 - 1) and
// mu = 1/((1-eta) sqrt(T+1)), then selects on the holdout in the original
// space (via the transpose pairing sign((A^T w).x) = sign(w.(A x))).
// T_override > 0 replaces the derived iteration count for exploratory runs.
ReducedTrainResult reduced_train(const Dataset& train, const Dataset& holdout,
                                 double eps, double delta, double eta, double gamma,
                                 const JlConfig& jl, std::size_t T_override = 0);

}  // namespace halfspace
