#include "flashlat/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flashlat {

int ModelParams::total_flashes() const {
    int nu = 0;
    for (int ni : flashes) nu += ni;
    return nu;
}

void ModelParams::validate() const {
    if (sigma <= 0.0) throw std::invalid_argument("ModelParams: sigma must be positive");
    if (tau_hat <= 0.0) throw std::invalid_argument("ModelParams: tau_hat must be positive");
    if (delta_s <= 0.0) throw std::invalid_argument("ModelParams: delta_s must be positive");
    if (bands < 1) throw std::invalid_argument("ModelParams: need at least one band");
    if (flashes.empty()) throw std::invalid_argument("ModelParams: need at least one particle");
    for (int ni : flashes) {
        if (ni < 1) throw std::invalid_argument("ModelParams: every particle needs >= 1 flash");
    }
}

RealizedConfig realize(const FlashConfig& config, const ModelParams& params,
                       const std::vector<Event>& seeds, const Strip& strip) {
    if (config.size() != static_cast<std::size_t>(params.particles()) ||
        seeds.size() != config.size()) {
        throw std::invalid_argument("realize: config/seeds do not match the particle count");
    }
    RealizedConfig rc;
    rc.flashes = config;
    rc.complex.strip = strip;
    rc.complex.seeds = seeds;
    rc.complex.cuts.resize(config.size());
    rc.vertices.resize(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config[i].size() != static_cast<std::size_t>(params.flashes[i])) {
            throw std::invalid_argument("realize: flash count mismatch");
        }
        Event base = seeds[i];
        for (const Flash& f : config[i]) {
            if (f.band < 1 || f.band > params.bands || f.site < 0 || f.site >= strip.sites) {
                throw std::invalid_argument("realize: flash band or site out of range");
            }
            Cut cut = align_staircase(
                hyperboloid_cut(base, f.band * params.delta_s, strip), strip);
            base = Event{cut.height(f.site), f.site};
            rc.vertices[i].push_back(base);
            rc.complex.cuts[i].push_back(std::move(cut));
        }
    }
    return rc;
}

double cut_distance(const Cut& cut, int a, int b, ProfileMetric metric) {
    if (metric == ProfileMetric::Steps) return std::abs(a - b);
    double d = 0.0;
    for (int x = std::min(a, b); x < std::max(a, b); ++x) {
        if (cut.height(x + 1) == cut.height(x)) d += 1.0;  // lightlike steps have zero length
    }
    return d;
}

std::vector<double> raw_profile(const Cut& cut, int center_site, double sigma,
                                ProfileMetric metric) {
    std::vector<double> g(static_cast<std::size_t>(cut.sites()));
    for (int z = 0; z < cut.sites(); ++z) {
        const double d = cut_distance(cut, center_site, z, metric);
        g[static_cast<std::size_t>(z)] = std::exp(-d * d / (4.0 * sigma * sigma));
    }
    return g;
}

std::vector<double> cutoff_profile(const Cut& cut, const std::vector<int>& region_sites,
                                   int center_site, double sigma, ProfileMetric metric) {
    if (region_sites.empty()) throw std::invalid_argument("cutoff_profile: empty region");
    if (std::find(region_sites.begin(), region_sites.end(), center_site) == region_sites.end()) {
        throw std::invalid_argument("cutoff_profile: center lies outside the region");
    }
    std::vector<double> g(static_cast<std::size_t>(cut.sites()), 0.0);
    for (int z : region_sites) {
        double norm_sq = 0.0;
        for (int w : region_sites) {
            const double d = cut_distance(cut, z, w, metric);
            norm_sq += std::exp(-d * d / (2.0 * sigma * sigma));
        }
        const double d = cut_distance(cut, center_site, z, metric);
        g[static_cast<std::size_t>(z)] = std::exp(-d * d / (4.0 * sigma * sigma)) / std::sqrt(norm_sq);
    }
    return g;
}

double temporal_weight(int band, const ModelParams& params) {
    if (band < 1 || band > params.bands) {
        throw std::invalid_argument("temporal_weight: band out of range");
    }
    const double q = std::exp(-params.delta_s / params.tau_hat);
    const double tail = std::pow(q, band - 1);
    return band == params.bands ? tail : (1.0 - q) * tail;
}

double config_weight(const RealizedConfig& rc, const ModelParams& params) {
    double w = 1.0;
    for (const auto& chain : rc.flashes) {
        for (const Flash& f : chain) w *= temporal_weight(f.band, params);
    }
    return w;
}

Mat collapse_op(int particle, int k, const RealizedConfig& rc, const ModelParams& params,
                const Circuit& circuit) {
    const Cut& cut = rc.complex.cut(particle, k);
    const Event& v = rc.vertex(particle, k);
    const Cell3 cell = locate_3cell(particle, k, v, rc.complex);
    const std::vector<int> region = cell3_sites(cell, rc.complex);
    const std::vector<double> g = cutoff_profile(cut, region, v.x, params.sigma, params.metric);
    const Mat& u = circuit.unitary_below(cut);
    const Eigen::VectorXd diag = mult_diagonal(circuit.space_on(cut), particle,
                                               [&](int x) { return g[static_cast<std::size_t>(x)]; });
    return u.adjoint() * diag.cast<std::complex<double>>().asDiagonal() * u;
}

std::vector<std::pair<int, int>> crossing_order(const RealizedConfig& rc,
                                                const AdmissibleSequence& seq) {
    struct Item {
        int step;
        int particle;
        int k;
    };
    std::vector<Item> items;
    for (int i = 0; i < rc.complex.particles(); ++i) {
        for (int k = 1; k <= rc.complex.flash_count(i); ++k) {
            const Cell3 cell = locate_3cell(i, k, rc.vertex(i, k), rc.complex);
            const auto it = std::find(seq.begin(), seq.end(), cell.k);
            if (it == seq.end()) {
                throw std::invalid_argument("crossing_order: sequence does not cover the complex");
            }
            items.push_back(Item{static_cast<int>(it - seq.begin()), i, k});
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.step != b.step) return a.step < b.step;
        if (a.particle != b.particle) return a.particle < b.particle;
        return a.k < b.k;
    });
    std::vector<std::pair<int, int>> order;
    order.reserve(items.size());
    for (const Item& it : items) order.emplace_back(it.particle, it.k);
    return order;
}

Mat big_L(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
          const AdmissibleSequence& seq) {
    const long dim = circuit.dim();
    Mat l = Mat::Identity(dim, dim);
    for (const auto& [particle, k] : crossing_order(rc, seq)) {
        l = collapse_op(particle, k, rc, params, circuit) * l;
    }
    return l;
}

Vec big_L_apply(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
                const AdmissibleSequence& seq, const Vec& psi0) {
    Vec psi = psi0;
    for (const auto& [particle, k] : crossing_order(rc, seq)) {
        const Cut& cut = rc.complex.cut(particle, k);
        const Event& v = rc.vertex(particle, k);
        const Cell3 cell = locate_3cell(particle, k, v, rc.complex);
        const std::vector<int> region = cell3_sites(cell, rc.complex);
        const std::vector<double> g =
            cutoff_profile(cut, region, v.x, params.sigma, params.metric);
        const Mat& u = circuit.unitary_below(cut);
        const Eigen::VectorXd diag = mult_diagonal(
            circuit.space_on(cut), particle,
            [&](int x) { return g[static_cast<std::size_t>(x)]; });
        psi = u * psi;
        psi = diag.cast<std::complex<double>>().asDiagonal() * psi;
        psi = u.adjoint() * psi;
    }
    return psi;
}

Mat density_op(const RealizedConfig& rc, const ModelParams& params, const Circuit& circuit,
               const AdmissibleSequence& seq) {
    const Mat l = big_L(rc, params, circuit, seq);
    return config_weight(rc, params) * (l.adjoint() * l);
}

}  // namespace flashlat
