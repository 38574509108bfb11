// Projected subgradient descent on the empirical leaky-ReLU subgradient
// field, plus holdout hypothesis selection.
#pragma once

#include <optional>

#include "halfspace/core_model.hpp"
#include "halfspace/simulate.hpp"

namespace halfspace {

struct LearnerParams {
    double eps = 0.1;
    double delta = 0.1;
    double eta = 0.1;
    double gamma = 0.1;
    std::size_t T = 0;
    double mu = 0.0;
    Vec w0;  // defaults to the zero vector of the dataset dimension
};

// T = ceil(16 (1-eta)^2 / (gamma^2 eps^2) - 1), mu = 2 / ((1-eta) sqrt(T+1))
LearnerParams derive_params(double eps, double delta, double eta, double gamma);

// holdout size: N' = ceil((2/eps^2) (ln(T+1) + ln(2/delta)))
std::size_t derive_holdout_size(double eps, double delta, std::size_t T);

// w if ||w|| <= 1, else w/||w||; idempotent and nonexpansive
Vec project_to_ball(Vec w);

// Per-iterate diagnostics; filled only when w* is supplied.
struct IterateDiagnostics {
    double train_disagreement = 0.0;  // empirical P_N(w_t) vs w*
    double subgrad_norm = 0.0;        // ||g_N(w_t)||
    double grad_dot_err = 0.0;        // g_N(w_t).(w_t - w*)
    double dist_sq = 0.0;             // ||w_t - w*||^2
};

struct IterateTrace {
    std::vector<Vec> iterates;  // length T+1, iterates[0] = w0
    std::vector<IterateDiagnostics> diagnostics;  // length T+1 when enabled, else empty
};

IterateTrace run_psgd(const Dataset& train, const LearnerParams& params,
                      const Vec* w_star = nullptr);

struct SelectedHypothesis {
    Vec w;
    std::size_t index = 0;
    double holdout_error = 0.0;
};

// iterate of minimum empirical misclassification on holdout, lowest index wins ties
SelectedHypothesis select_hypothesis(const IterateTrace& trace, const Dataset& holdout);

// fraction of rows with sign(w.x) != y
double evaluate_error(const Vec& w, const Dataset& data);

// fraction of rows where w and w_ref classify differently
double evaluate_disagreement(const Vec& w, const Vec& w_ref, const Dataset& data);

struct TrainResult {
    SelectedHypothesis selected;
    IterateTrace trace;
};

TrainResult train_and_select(const Dataset& train, const Dataset& holdout,
                             const LearnerParams& params, const Vec* w_star = nullptr);

}  // namespace halfspace
