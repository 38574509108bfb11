#include "halfspace/learner.hpp"

#include <cmath>

namespace halfspace {

LearnerParams derive_params(double eps, double delta, double eta, double gamma) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("derive_params: eps out of range");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("derive_params: delta out of range");
    if (!(eta > 0.0 && eta < 0.5)) throw std::invalid_argument("derive_params: eta out of range");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("derive_params: gamma out of range");
    LearnerParams p;
    p.eps = eps;
    p.delta = delta;
    p.eta = eta;
    p.gamma = gamma;
    const double one_minus_eta = 1.0 - eta;
    p.T = static_cast<std::size_t>(
        std::ceil(16.0 * one_minus_eta * one_minus_eta / (gamma * gamma * eps * eps) - 1.0));
    p.mu = 2.0 / (one_minus_eta * std::sqrt(static_cast<double>(p.T + 1)));
    return p;
}

std::size_t derive_holdout_size(double eps, double delta, std::size_t T) {
    return static_cast<std::size_t>(std::ceil(
        (2.0 / (eps * eps)) *
        (std::log(static_cast<double>(T + 1)) + std::log(2.0 / delta))));
}

Vec project_to_ball(Vec w) {
    double s = 0.0;
    for (double v : w) {
        if (!std::isfinite(v)) throw std::invalid_argument("project_to_ball: non-finite input");
        s += v * v;
    }
    if (s > 1.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (double& v : w) v *= inv;
    }
    return w;
}

IterateTrace run_psgd(const Dataset& train, const LearnerParams& params,
                      const Vec* w_star) {
    if (train.examples.empty()) throw std::invalid_argument("run_psgd: empty training set");
    if (train.format != DataFormat::sphere)
        throw std::invalid_argument("run_psgd: sphere-format dataset required");
    const std::size_t d = train.d;
    Vec w0 = params.w0.empty() ? Vec(d, 0.0) : params.w0;
    if (w0.size() != d) throw std::invalid_argument("run_psgd: w0 dimension mismatch");
    if (w_star && w_star->size() != d)
        throw std::invalid_argument("run_psgd: w_star dimension mismatch");

    const std::size_t n = train.examples.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const bool diag = w_star != nullptr;

    // reference signs sign(w*.x_i), fixed over the run
    std::vector<signed char> ref_sign;
    if (diag) {
        ref_sign.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ref_sign[i] = static_cast<signed char>(sign_fn(dot(*w_star, train.examples[i].x)));
    }

    IterateTrace trace;
    trace.iterates.reserve(params.T + 1);
    if (diag) trace.diagnostics.reserve(params.T + 1);
    trace.iterates.push_back(project_to_ball(std::move(w0)));

    Vec grad(d);
    for (std::size_t t = 0; t <= params.T; ++t) {
        const Vec& w = trace.iterates.back();
        std::fill(grad.begin(), grad.end(), 0.0);
        std::size_t disagree = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int s = accumulate_subgradient(w, train.examples[i].x,
                                                 train.examples[i].y, params.eta, grad);
            if (diag && s != ref_sign[i]) ++disagree;
        }
        for (double& g : grad) g *= inv_n;

        if (diag) {
            IterateDiagnostics dg;
            dg.train_disagreement = static_cast<double>(disagree) * inv_n;
            dg.subgrad_norm = norm2(grad);
            double gd = 0.0, dist = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double diff = w[i] - (*w_star)[i];
                gd += grad[i] * diff;
                dist += diff * diff;
            }
            dg.grad_dot_err = gd;
            dg.dist_sq = dist;
            trace.diagnostics.push_back(dg);
        }

        if (t == params.T) break;
        Vec next(d);
        for (std::size_t i = 0; i < d; ++i) next[i] = w[i] - params.mu * grad[i];
        trace.iterates.push_back(project_to_ball(std::move(next)));
    }
    return trace;
}

SelectedHypothesis select_hypothesis(const IterateTrace& trace, const Dataset& holdout) {
    if (trace.iterates.empty()) throw std::invalid_argument("select_hypothesis: empty trace");
    if (holdout.examples.empty())
        throw std::invalid_argument("select_hypothesis: empty holdout");
    SelectedHypothesis best;
    best.index = 0;
    best.holdout_error = evaluate_error(trace.iterates[0], holdout);
    for (std::size_t t = 1; t < trace.iterates.size(); ++t) {
        const double err = evaluate_error(trace.iterates[t], holdout);
        if (err < best.holdout_error) {
            best.holdout_error = err;
            best.index = t;
        }
    }
    best.w = trace.iterates[best.index];
    return best;
}

double evaluate_error(const Vec& w, const Dataset& data) {
    if (data.examples.empty()) throw std::invalid_argument("evaluate_error: empty dataset");
    std::size_t wrong = 0;
    for (const auto& ex : data.examples)
        if (sign_fn(dot(w, ex.x)) != ex.y) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(data.examples.size());
}

double evaluate_disagreement(const Vec& w, const Vec& w_ref, const Dataset& data) {
    if (data.examples.empty())
        throw std::invalid_argument("evaluate_disagreement: empty dataset");
    std::size_t cnt = 0;
    for (const auto& ex : data.examples) cnt += disagreement_indicator(w, w_ref, ex.x);
    return static_cast<double>(cnt) / static_cast<double>(data.examples.size());
}

TrainResult train_and_select(const Dataset& train, const Dataset& holdout,
                             const LearnerParams& params, const Vec* w_star) {
    TrainResult res;
    res.trace = run_psgd(train, params, w_star);
    res.selected = select_hypothesis(res.trace, holdout);
    return res;
}

}  // namespace halfspace
