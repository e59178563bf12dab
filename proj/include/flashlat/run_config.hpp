#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "flashlat/circuit.hpp"
#include "flashlat/model.hpp"

namespace flashlat {

/// One experiment description, loaded from a JSON file. All quantities are in
/// lattice units.
struct RunConfig {
    Strip strip;
    ModelParams params;
    std::vector<Event> seeds;

    double theta{0.0};
    double gamma{0.0};
    std::vector<std::tuple<int, int, double>> potential;  // (t, x, phase)

    std::string state_type;  // "product_gaussian" or "entangled_pair"
    std::vector<int> centers;
    double width{1.0};
    int spin{1};
    std::vector<int> branch_a, branch_b;

    std::uint64_t rng_seed{0};
    std::uint64_t max_configs{100000};
    int samples{256};

    bool has_probe{false};
    std::vector<int> probe_surface;                         // heights per site
    std::vector<std::tuple<int, int, double>> potential_b;  // second field

    std::string config_hash;  // fnv1a over the raw file bytes
};

RunConfig load_run_config(const std::string& path);

ModelInstance make_instance(const RunConfig& config);
PotentialTable make_potential(const RunConfig& config,
                              const std::vector<std::tuple<int, int, double>>& entries);
GateParams make_gate_params(const RunConfig& config);
Vec make_initial_state(const RunConfig& config);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace flashlat
