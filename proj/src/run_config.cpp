#include "flashlat/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace flashlat {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
    return out.str();
}

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

const json& require(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string(where) + " is missing \"" + key + "\"");
    return *it;
}

std::vector<std::tuple<int, int, double>> read_potential(const json& j, const char* where) {
    std::vector<std::tuple<int, int, double>> entries;
    for (const json& e : j) {
        entries.emplace_back(require(e, "t", where).get<int>(),
                             require(e, "x", where).get<int>(),
                             require(e, "phase", where).get<double>());
    }
    return entries;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();

    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }

    RunConfig config;
    config.config_hash = fnv1a_hex(bytes);

    const json& strip = require(j, "strip", "config");
    config.strip.sites = require(strip, "sites", "strip").get<int>();
    config.strip.t_max = require(strip, "t_max", "strip").get<int>();

    const json& particles = require(j, "particles", "config");
    config.params.flashes = require(particles, "flashes", "particles").get<std::vector<int>>();
    for (const json& s : require(particles, "seeds", "particles")) {
        config.seeds.push_back(Event{require(s, "t", "seed").get<int>(),
                                     require(s, "x", "seed").get<int>()});
    }

    const json& dynamics = require(j, "dynamics", "config");
    config.theta = require(dynamics, "theta", "dynamics").get<double>();
    config.gamma = require(dynamics, "gamma", "dynamics").get<double>();
    if (dynamics.contains("potential")) {
        config.potential = read_potential(dynamics["potential"], "dynamics.potential");
    }

    const json& collapse = require(j, "collapse", "config");
    config.params.sigma = require(collapse, "sigma", "collapse").get<double>();
    config.params.tau_hat = require(collapse, "tau_hat", "collapse").get<double>();
    config.params.delta_s = require(collapse, "delta_s", "collapse").get<double>();
    config.params.bands = require(collapse, "bands", "collapse").get<int>();
    const std::string metric = collapse.value("distance_metric", "steps");
    if (metric == "steps") {
        config.params.metric = ProfileMetric::Steps;
    } else if (metric == "minkowski") {
        config.params.metric = ProfileMetric::Minkowski;
    } else {
        fail("collapse.distance_metric must be \"steps\" or \"minkowski\"");
    }

    const json& state = require(j, "initial_state", "config");
    config.state_type = require(state, "type", "initial_state").get<std::string>();
    if (config.state_type == "product_gaussian") {
        config.centers = require(state, "centers", "initial_state").get<std::vector<int>>();
        config.width = require(state, "width", "initial_state").get<double>();
    } else if (config.state_type == "entangled_pair") {
        config.branch_a = require(state, "branch_a", "initial_state").get<std::vector<int>>();
        config.branch_b = require(state, "branch_b", "initial_state").get<std::vector<int>>();
    } else {
        fail("initial_state.type must be \"product_gaussian\" or \"entangled_pair\"");
    }
    config.spin = state.value("spin", 1);
    if (config.spin != 0 && config.spin != 1) fail("initial_state.spin must be 0 or 1");

    config.rng_seed = require(j, "rng_seed", "config").get<std::uint64_t>();
    if (j.contains("guards")) {
        config.max_configs = j["guards"].value("max_configs", std::uint64_t{100000});
    }
    config.samples = j.value("samples", 256);
    if (config.samples < 0) fail("samples must be non-negative");

    if (j.contains("param_independence")) {
        const json& probe = j["param_independence"];
        config.has_probe = true;
        if (probe.contains("surface")) {
            config.probe_surface = probe["surface"].get<std::vector<int>>();
        } else {
            const int h = require(probe, "flat_surface", "param_independence").get<int>();
            config.probe_surface.assign(static_cast<std::size_t>(config.strip.sites), h);
        }
        config.potential_b =
            read_potential(require(probe, "potential_b", "param_independence"),
                           "param_independence.potential_b");
    }

    // Fail fast on anything a module would reject later.
    make_instance(config).validate();
    make_potential(config, config.potential);
    if (config.has_probe) {
        Cut(config.probe_surface, config.strip);
        make_potential(config, config.potential_b);
    }
    make_initial_state(config);
    return config;
}

ModelInstance make_instance(const RunConfig& config) {
    ModelInstance instance;
    instance.strip = config.strip;
    instance.params = config.params;
    instance.seeds = config.seeds;
    return instance;
}

PotentialTable make_potential(const RunConfig& config,
                              const std::vector<std::tuple<int, int, double>>& entries) {
    PotentialTable table(config.strip.sites, config.strip.t_max);
    for (const auto& [t, x, phase] : entries) {
        if (t < 0 || t > config.strip.t_max || x < 0 || x >= config.strip.sites) {
            fail("potential entry (" + std::to_string(t) + "," + std::to_string(x) +
                 ") outside the strip");
        }
        table.set(t, x, phase);
    }
    return table;
}

GateParams make_gate_params(const RunConfig& config) {
    return GateParams{config.theta, config.gamma, make_potential(config, config.potential)};
}

Vec make_initial_state(const RunConfig& config) {
    const ModelInstance instance = make_instance(config);
    if (config.state_type == "product_gaussian") {
        return product_gaussian_state(instance, config.centers, config.width, config.spin);
    }
    return entangled_pair_state(instance, config.branch_a, config.branch_b, config.spin);
}

}  // namespace flashlat
