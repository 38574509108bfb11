// Dataset generation for margin halfspaces with random classification noise,
// plus the on-disk dataset format.
//
// The x-marginal is uniform on the sphere conditioned on |w*.x| >= gamma.
// Two exact samplers for that distribution are provided: plain rejection
// (the contract sampler; fails after too many consecutive rejections) and a
// direct conditional sampler that draws w*.x from its 1-d conditional law
// and the orthogonal part uniformly.  Both target the same distribution;
// `auto_mode` switches to the direct sampler when the cap probability makes
// rejection impractical.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "halfspace/core_model.hpp"
#include "halfspace/rng.hpp"

namespace halfspace {

enum class WStarMode { first_axis, random_unit };
enum class CapSampler { auto_mode, reject, direct };

struct SimulatorConfig {
    std::size_t d = 1;
    double gamma = 0.1;
    double eta = 0.1;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;  // extra stream index for parallel trials
    WStarMode w_star_mode = WStarMode::first_axis;
    CapSampler sampler = CapSampler::auto_mode;
};

enum class DataFormat { sphere, cube };

struct Dataset {
    DataFormat format = DataFormat::sphere;
    std::size_t d = 0;
    std::vector<LabeledExample> examples;
    std::string provenance;  // config echo or file path
};

// probability that a uniform point on S^{d-1} satisfies |w.x| >= gamma
double spherical_cap_margin_probability(std::size_t d, double gamma);

// uniform on the sphere conditioned on |w*.x| >= gamma; throws
// std::runtime_error after 10^6 consecutive rejections in rejection mode
Vec sample_margin_point(const MarginHalfspaceInstance& inst, SplitRng& rng,
                        CapSampler sampler = CapSampler::auto_mode);

// flips the label with probability eta using one uniform draw
int apply_rcn(int clean_label, double eta, SplitRng& rng);

std::pair<Dataset, MarginHalfspaceInstance> generate_dataset(const SimulatorConfig& config);

void write_dataset(const Dataset& dataset, const std::string& path);
Dataset read_dataset(const std::string& path);

std::string dataset_to_string(const Dataset& dataset);
Dataset dataset_from_string(const std::string& text, const std::string& origin = "<string>");

}  // namespace halfspace
