#include "halfspace/simulate.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace halfspace {

namespace {

constexpr std::uint64_t kMaxConsecutiveRejections = 1000000;
// below this cap probability the rejection sampler is hopeless and
// auto_mode switches to the direct conditional sampler
constexpr double kAutoRejectThreshold = 1e-4;

Vec random_unit_vector(std::size_t d, SplitRng& rng) {
    Vec v(d);
    while (true) {
        for (auto& c : v) c = rng.next_gaussian();
        const double n = norm2(v);
        if (n > 1e-12) {
            for (auto& c : v) c /= n;
            return v;
        }
    }
}

// uniform unit vector orthogonal to the unit vector w
Vec random_unit_orthogonal(const Vec& w, SplitRng& rng) {
    Vec v(w.size());
    while (true) {
        for (auto& c : v) c = rng.next_gaussian();
        axpy(-dot(v, w), w, v);
        const double n = norm2(v);
        if (n > 1e-12) {
            for (auto& c : v) c /= n;
            return v;
        }
    }
}

Vec sample_margin_point_reject(const MarginHalfspaceInstance& inst, SplitRng& rng) {
    for (std::uint64_t tries = 0; tries < kMaxConsecutiveRejections; ++tries) {
        Vec x = random_unit_vector(inst.w_star.size(), rng);
        if (std::fabs(dot(inst.w_star, x)) >= inst.gamma) return x;
    }
    throw std::runtime_error(
        "sample_margin_point: rejection budget exhausted (gamma too close to 1 "
        "or cap probability too small; use the direct sampler)");
}

// Draw t = w*.x from its conditional law given |t| >= gamma, then the
// orthogonal component uniformly.  t^2 follows Beta(1/2, (d-1)/2).
Vec sample_margin_point_direct(const MarginHalfspaceInstance& inst, SplitRng& rng) {
    const std::size_t d = inst.w_star.size();
    const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
    if (d == 1) {
        Vec x = inst.w_star;
        for (auto& c : x) c *= sign;
        return x;
    }
    const double a = 0.5, b = 0.5 * static_cast<double>(d - 1);
    const double f_lo = boost::math::ibeta(a, b, inst.gamma * inst.gamma);
    const double u = rng.next_double();
    const double q = f_lo + u * (1.0 - f_lo);
    double bsq = (q >= 1.0) ? 1.0 : boost::math::ibeta_inv(a, b, q);
    double t = std::sqrt(bsq);
    if (t < inst.gamma) t = inst.gamma;  // guard inverse-CDF rounding at the boundary
    Vec v = random_unit_orthogonal(inst.w_star, rng);
    Vec x(d);
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t i = 0; i < d; ++i)
        x[i] = sign * t * inst.w_star[i] + r * v[i];
    return x;
}

}  // namespace

double spherical_cap_margin_probability(std::size_t d, double gamma) {
    if (d == 0) throw std::invalid_argument("d must be positive");
    if (gamma <= 0.0) return 1.0;
    if (gamma >= 1.0) return 0.0;
    if (d == 1) return 1.0;  // both unit points have |w.x| = 1
    return boost::math::ibetac(0.5, 0.5 * static_cast<double>(d - 1), gamma * gamma);
}

Vec sample_margin_point(const MarginHalfspaceInstance& inst, SplitRng& rng,
                        CapSampler sampler) {
    validate_instance(inst);
    if (sampler == CapSampler::auto_mode) {
        const double p = spherical_cap_margin_probability(inst.w_star.size(), inst.gamma);
        sampler = p < kAutoRejectThreshold ? CapSampler::direct : CapSampler::reject;
    }
    return sampler == CapSampler::reject ? sample_margin_point_reject(inst, rng)
                                         : sample_margin_point_direct(inst, rng);
}

int apply_rcn(int clean_label, double eta, SplitRng& rng) {
    if (!(eta > 0.0 && eta < 0.5))
        throw std::invalid_argument("apply_rcn: eta must be in (0,1/2)");
    return rng.next_double() < eta ? -clean_label : clean_label;
}

std::pair<Dataset, MarginHalfspaceInstance> generate_dataset(const SimulatorConfig& config) {
    if (config.d == 0) throw std::invalid_argument("generate_dataset: d must be positive");
    if (!(config.gamma > 0.0 && config.gamma < 1.0))
        throw std::invalid_argument("generate_dataset: gamma must be in (0,1)");
    if (!(config.eta > 0.0 && config.eta < 0.5))
        throw std::invalid_argument("generate_dataset: eta must be in (0,1/2)");

    SplitRng rng(config.seed, config.stream);
    MarginHalfspaceInstance inst;
    inst.gamma = config.gamma;
    inst.eta = config.eta;
    if (config.w_star_mode == WStarMode::first_axis) {
        inst.w_star.assign(config.d, 0.0);
        inst.w_star[0] = 1.0;
    } else {
        inst.w_star = random_unit_vector(config.d, rng);
    }

    Dataset ds;
    ds.format = DataFormat::sphere;
    ds.d = config.d;
    ds.examples.reserve(config.n);
    {
        std::ostringstream prov;
        prov << "simulated d=" << config.d << " gamma=" << config.gamma
             << " eta=" << config.eta << " n=" << config.n
             << " seed=" << config.seed << " stream=" << config.stream;
        ds.provenance = prov.str();
    }
    for (std::size_t i = 0; i < config.n; ++i) {
        LabeledExample ex;
        ex.x = sample_margin_point(inst, rng, config.sampler);
        ex.y = apply_rcn(sign_fn(dot(inst.w_star, ex.x)), config.eta, rng);
        ds.examples.push_back(std::move(ex));
    }
    return {std::move(ds), std::move(inst)};
}

std::string dataset_to_string(const Dataset& dataset) {
    std::string out;
    char buf[64];
    out += "format=";
    out += dataset.format == DataFormat::sphere ? "sphere" : "cube";
    std::snprintf(buf, sizeof buf, " d=%zu n=%zu\n", dataset.d, dataset.examples.size());
    out += buf;
    for (const auto& ex : dataset.examples) {
        if (ex.x.size() != dataset.d)
            throw std::invalid_argument("dataset_to_string: row dimension mismatch");
        if (dataset.format == DataFormat::sphere) {
            out += ex.y >= 0 ? "+1" : "-1";
            for (double c : ex.x) {
                std::snprintf(buf, sizeof buf, " %.17g", c);
                out += buf;
            }
        } else {
            out += ex.y != 0 ? "1" : "0";
            for (double c : ex.x) {
                std::snprintf(buf, sizeof buf, " %d", c >= 0 ? 1 : -1);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

Dataset dataset_from_string(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error(origin + ": empty dataset file");
    Dataset ds;
    {
        char fmt[16];
        std::size_t d = 0, n = 0;
        if (std::sscanf(header.c_str(), "format=%15s d=%zu n=%zu", fmt, &d, &n) != 3)
            throw std::runtime_error(origin + ":1: malformed header '" + header + "'");
        if (std::strcmp(fmt, "sphere") == 0)
            ds.format = DataFormat::sphere;
        else if (std::strcmp(fmt, "cube") == 0)
            ds.format = DataFormat::cube;
        else
            throw std::runtime_error(origin + ":1: unknown format '" + std::string(fmt) + "'");
        if (d == 0) throw std::runtime_error(origin + ":1: d must be positive");
        ds.d = d;
        ds.examples.reserve(n);
        std::string line;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(in, line))
                throw std::runtime_error(origin + ": truncated file, expected " +
                                         std::to_string(n) + " rows");
            std::istringstream row(line);
            LabeledExample ex;
            int y;
            if (!(row >> y))
                throw std::runtime_error(origin + ":" + std::to_string(i + 2) +
                                         ": missing label");
            if (ds.format == DataFormat::sphere ? (y != 1 && y != -1) : (y != 0 && y != 1))
                throw std::runtime_error(origin + ":" + std::to_string(i + 2) +
                                         ": invalid label " + std::to_string(y));
            ex.y = y;
            ex.x.reserve(d);
            double c;
            while (row >> c) ex.x.push_back(c);
            if (ex.x.size() != d)
                throw std::runtime_error(origin + ":" + std::to_string(i + 2) +
                                         ": row has " + std::to_string(ex.x.size()) +
                                         " coordinates, expected " + std::to_string(d));
            ds.examples.push_back(std::move(ex));
        }
    }
    ds.provenance = origin;
    return ds;
}

void write_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_dataset: cannot open " + path);
    out << dataset_to_string(dataset);
    if (!out) throw std::runtime_error("write_dataset: write failed for " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_dataset: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return dataset_from_string(buf.str(), path);
}

}  // namespace halfspace
