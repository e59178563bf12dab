#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flashlat/collapse.hpp"

namespace flashlat {

/// Everything that fixes one model instance except the dynamics.
struct ModelInstance {
    Strip strip;
    ModelParams params;
    std::vector<Event> seeds;

    void validate() const;
    std::uint64_t config_count() const;  // (bands * sites)^total_flashes
};

struct JointEntry {
    FlashConfig config;
    double probability{};
};

struct JointDistribution {
    std::vector<JointEntry> entries;
    double total{};
};

/// Deterministic enumeration order of all flash configs (last flash varies
/// fastest). Guarded by max_configs.
std::vector<FlashConfig> enumerate_configs(const ModelInstance& instance,
                                           std::uint64_t max_configs);

/// Exact joint flash distribution: probability of each config is
/// <psi0| D(config) |psi0>. Throws std::runtime_error if the total deviates
/// from 1 by more than 1e-6 (a broken discretization invariant).
JointDistribution joint_distribution(const Vec& psi0, const ModelInstance& instance,
                                     const Circuit& circuit,
                                     std::uint64_t max_configs = 100000, int threads = 1);

/// Sum of D(config) over every config; equals the identity for a sound model.
Mat povm_sum(const ModelInstance& instance, const Circuit& circuit,
             std::uint64_t max_configs = 100000, int threads = 1);

/// i.i.d. draws by inverse CDF over the enumerated configs. Uses an explicit
/// 53-bit uniform from mt19937_64 so the samples are reproducible across
/// platforms for a fixed seed.
std::vector<FlashConfig> sample_flashes(const JointDistribution& dist, std::uint64_t rng_seed,
                                        int count);

/// Wave function conditioned on the flash history up to a surface.
struct ConditionedState {
    Cut surface;
    FlashConfig past;  // prefix chains, at or below the surface
    StateVec psi;
    DenseOp w;             // positive square root of the future-summed density
    double event_probability{};  // <psi0| W^2 |psi0>
};

/// past[i] holds the first flashes of particle i (a prefix of its chain), all
/// at or below the surface. The remaining flashes are conditioned to lie
/// strictly above it. Throws if conditioning on a null event.
ConditionedState conditional_state(const Cut& surface, const FlashConfig& past,
                                   const Vec& psi0, const ModelInstance& instance,
                                   const Circuit& circuit, std::uint64_t max_configs = 100000);

/// Conditional probability of one completion given the conditioned state,
/// computed from psi_Sigma (not from the joint distribution).
double conditional_probability(const ConditionedState& state, const FlashConfig& completion,
                               const ModelInstance& instance, const Circuit& circuit);

/// Explicit two-particle, one-flash-each operator with the four-branch
/// past/future case split; equals big_L for either admissible sequence.
Mat simple_case_L(const FlashConfig& config, const ModelInstance& instance,
                  const Circuit& circuit);

/// Joint distribution built from the per-particle tensor-product construction
/// (valid only for a non-interacting circuit; throws if gamma != 0). Uses the
/// same cut-off profiles and temporal weights as the general machinery.
JointDistribution noninteracting_reference(const Vec& psi0, const ModelInstance& instance,
                                           const GateParams& params,
                                           std::uint64_t max_configs = 100000);

/// Joint distribution from the flat-slice chain (Heisenberg-evolved full-cut
/// Gaussian multiplications at exponential waiting times). Requires every
/// realized cut to be exactly flat; throws std::runtime_error otherwise.
JointDistribution flat_limit_reference(const Vec& psi0, const ModelInstance& instance,
                                       const Circuit& circuit,
                                       std::uint64_t max_configs = 100000);

/// Total-variation distance between the marginals of the flashes lying at or
/// below the surface, under two external fields that agree at and below it.
double parameter_independence_probe(const Cut& surface, const PotentialTable& field_a,
                                    const PotentialTable& field_b, const Vec& psi0,
                                    const ModelInstance& instance, double theta, double gamma,
                                    std::uint64_t max_configs = 100000);

/// Mutual information (natural log) between the flash chains of two particles.
double mutual_information(const JointDistribution& dist, int particle_a, int particle_b);

/// Total variation between two distributions over the same enumeration.
double total_variation(const JointDistribution& a, const JointDistribution& b);

/// Canonical printable key of a config (used for marginal grouping).
std::string config_key(const FlashConfig& config);

/// Marginal over the last flash of one particle, as a keyed map.
std::map<std::string, double> marginal_over_last_flash(const JointDistribution& dist,
                                                       int particle);

// Initial states (normalized).
Vec product_gaussian_state(const ModelInstance& instance, const std::vector<int>& centers,
                           double width, int spin);
Vec entangled_pair_state(const ModelInstance& instance, const std::vector<int>& branch_a,
                         const std::vector<int>& branch_b, int spin);
Vec random_state(long dim, std::uint64_t seed);

}  // namespace flashlat
