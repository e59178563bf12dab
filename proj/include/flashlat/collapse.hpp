#pragma once

#include <vector>

#include "flashlat/cells.hpp"
#include "flashlat/circuit.hpp"
#include "flashlat/hilbert.hpp"
#include "flashlat/lattice.hpp"

namespace flashlat {

enum class ProfileMetric {
    Steps,      // graph arc length along the cut (site steps)
    Minkowski,  // induced length: lightlike staircase steps count zero
};

struct ModelParams {
    double sigma{1.5};       // profile width, lattice units
    double tau_hat{4.0};     // expected waiting time, lattice units
    double delta_s{2.0};     // band width, lattice units
    int bands{1};            // M
    std::vector<int> flashes;  // n_i per particle
    ProfileMetric metric{ProfileMetric::Steps};

    int particles() const { return static_cast<int>(flashes.size()); }
    int total_flashes() const;
    void validate() const;  // throws std::invalid_argument on bad values
};

/// One flash: waiting-time band (1..M) and the site of its vertex on the
/// band's representative cut.
struct Flash {
    int band{};
    int site{};

    friend bool operator==(const Flash&, const Flash&) = default;
};

/// Full flash history: flashes[i][k-1] is particle i's k-th flash.
using FlashConfig = std::vector<std::vector<Flash>>;

/// Flash history with its induced geometry. Cut k of particle i is the
/// aligned hyperboloid at level band*delta_s based at flash (i,k-1) (the seed
/// for k = 1); the vertex of flash (i,k) is that cut's vertex at its site.
struct RealizedConfig {
    FlashConfig flashes;
    CellComplex complex;
    std::vector<std::vector<Event>> vertices;

    const Event& vertex(int particle, int k) const { return vertices[particle][k - 1]; }
};

RealizedConfig realize(const FlashConfig& config, const ModelParams& params,
                       const std::vector<Event>& seeds, const Strip& strip);

/// Arc distance between two sites along the cut, in the chosen metric.
double cut_distance(const Cut& cut, int a, int b, ProfileMetric metric);

/// Gaussian bump exp(-dist^2 / (4 sigma^2)) around the vertex at center_site.
std::vector<double> raw_profile(const Cut& cut, int center_site, double sigma,
                                ProfileMetric metric);

/// Cut-off normalized profile on the region A:
///   g(z) = 1_{z in A} raw(center)(z) / ||raw(z)||_A,
/// which satisfies sum_{center in A} g(z)^2 = 1_{z in A} exactly.
std::vector<double> cutoff_profile(const Cut& cut, const std::vector<int>& region_sites,
                                   int center_site, double sigma, ProfileMetric metric);

/// Waiting-time probability of band m; the last band absorbs the exponential
/// tail so that the weights sum to one exactly.
double temporal_weight(int band, const ModelParams& params);

/// Product of the band weights of every flash in the config.
double config_weight(const RealizedConfig& rc, const ModelParams& params);

/// Collapse operator of flash (particle,k): the multiplication by the cut-off
/// profile over the flash's 3-cell, Heisenberg-evolved to the initial surface.
Mat collapse_op(int particle, int k, const RealizedConfig& rc, const ModelParams& params,
                const Circuit& circuit);

/// Flashes in the order their 3-cells are crossed by the admissible sequence
/// (earliest first; ties resolved by particle then flash index — the tied
/// operators commute).
std::vector<std::pair<int, int>> crossing_order(const RealizedConfig& rc,
                                                const AdmissibleSequence& seq);

/// Ordered product of the collapse operators, rightmost factor crossed first.
Mat big_L(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
          const AdmissibleSequence& seq);

/// big_L applied to a state without forming the full matrix.
Vec big_L_apply(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
                const AdmissibleSequence& seq, const Vec& psi0);

/// POVM density D = (product of band weights) L^dagger L.
Mat density_op(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
               const AdmissibleSequence& seq);

}  // namespace flashlat
