#include "flashlat/circuit.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace flashlat {

namespace {

using Complex = std::complex<double>;

// Mix two rows by a 2x2 matrix: (r0, r1) <- (c00 r0 + c01 r1, c10 r0 + c11 r1).
void mix_rows(Mat& m, long r0, long r1, Complex c00, Complex c01, Complex c10, Complex c11) {
    for (long c = 0; c < m.cols(); ++c) {
        const Complex a = m(r0, c);
        const Complex b = m(r1, c);
        m(r0, c) = c00 * a + c01 * b;
        m(r1, c) = c10 * a + c11 * b;
    }
}

void swap_rows(Mat& m, long r0, long r1) { m.row(r0).swap(m.row(r1)); }

}  // namespace

Circuit::Circuit(const Strip& strip, GateParams params, int particles)
    : strip_(strip), params_(std::move(params)), particles_(particles) {
    if (strip_.sites < 2 || strip_.t_max < 1) {
        throw std::invalid_argument("Circuit: strip must have >= 2 sites and t_max >= 1");
    }
    if (particles_ < 1) throw std::invalid_argument("Circuit: need at least one particle");
    if (params_.potential.phi.empty()) {
        params_.potential = PotentialTable(strip_.sites, strip_.t_max);
    } else if (params_.potential.sites != strip_.sites || params_.potential.t_max != strip_.t_max) {
        throw std::invalid_argument("Circuit: potential table does not match the strip");
    }
}

std::vector<Circuit::Gate> Circuit::all_gates() const {
    std::vector<Gate> gates;
    for (int t = 0; t < strip_.t_max; ++t) {
        // Pair gates tile the layer; a wall site left uncovered gets a
        // single-site reflection gate.
        if ((0 + t) % 2 == 1) gates.push_back(Gate{t, 0, true});
        for (int x = 0; x + 1 < strip_.sites; ++x) {
            if ((x + t) % 2 == 0) gates.push_back(Gate{t, x, false});
        }
        if ((strip_.sites - 2 + t) % 2 == 1) gates.push_back(Gate{t, strip_.sites - 1, true});
    }
    return gates;
}

bool Circuit::gate_fits_below(const Gate& g, const Cut& cut) const {
    if (g.wall) return g.t + 1 <= cut.height(g.x);
    return g.t + 1 <= cut.height(g.x) && g.t + 1 <= cut.height(g.x + 1);
}

std::vector<Circuit::Gate> Circuit::gates_between(const Cut& lo, const Cut& hi) const {
    std::vector<Gate> result;
    for (const Gate& g : all_gates()) {
        if (gate_fits_below(g, hi) && !gate_fits_below(g, lo)) result.push_back(g);
    }
    return result;
}

void Circuit::apply_gate(Mat& m, const Gate& g) const {
    const CutSpace space{flat_cut(0, strip_), particles_, 2};
    const long dim = m.rows();
    const Complex c00(std::cos(params_.theta), 0.0), c01(-std::sin(params_.theta), 0.0);
    const Complex c10(std::sin(params_.theta), 0.0), c11(std::cos(params_.theta), 0.0);

    long stride = 1;  // stride of slot i's single-particle index, built per slot
    for (int i = particles_ - 1; i >= 0; --i) {
        // Coin on each site of the gate; pair gates then exchange right-movers.
        const int nsites = g.wall ? 1 : 2;
        for (int s = 0; s < nsites; ++s) {
            const int p0 = (g.x + s) * 2;  // spin-0 component of that site
            for (long b = 0; b < dim; ++b) {
                if (space.slot_index(b, i) == p0) {
                    mix_rows(m, b, b + stride, c00, c01, c10, c11);
                }
            }
        }
        if (g.wall) {
            const int p0 = g.x * 2;
            for (long b = 0; b < dim; ++b) {
                if (space.slot_index(b, i) == p0) swap_rows(m, b, b + stride);
            }
        } else {
            const int pr = g.x * 2 + 1;  // right-mover at the left site
            for (long b = 0; b < dim; ++b) {
                if (space.slot_index(b, i) == pr) swap_rows(m, b, b + 2 * stride);
            }
        }
        stride *= space.single_dim();
    }

    // Contact interaction and external field, both diagonal.
    const Complex igamma = std::exp(Complex(0.0, params_.gamma));
    for (long b = 0; b < dim; ++b) {
        int in_pair = 0;
        double phase = 0.0;
        for (int i = 0; i < particles_; ++i) {
            const int site = space.slot_site(b, i);
            if (site == g.x || (!g.wall && site == g.x + 1)) {
                ++in_pair;
                phase += params_.potential.at(g.t + 1, site);
            }
        }
        Complex factor = std::exp(Complex(0.0, phase));
        if (in_pair >= 2) factor *= igamma;
        if (factor != Complex(1.0, 0.0)) m.row(b) *= factor;
    }
}

const Mat& Circuit::unitary_below(const Cut& cut) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(cut.heights());
    if (it != cache_.end()) return it->second;
    const long dim = CutSpace{cut, particles_, 2}.dim();
    Mat v = Mat::Identity(dim, dim);
    for (const Gate& g : all_gates()) {
        if (gate_fits_below(g, cut)) apply_gate(v, g);
    }
    return cache_.emplace(cut.heights(), std::move(v)).first->second;
}

Mat Circuit::evolve_op(const Cut& from, const Cut& to) const {
    if (from == to) return Mat::Identity(dim(), dim());
    return unitary_below(to) * unitary_below(from).adjoint();
}

StateVec Circuit::evolve(const StateVec& psi, const Cut& to) const {
    if (psi.space.cut == to) return StateVec{psi.amplitudes, space_on(to)};
    Vec out = unitary_below(to) * (unitary_below(psi.space.cut).adjoint() * psi.amplitudes);
    return StateVec{std::move(out), space_on(to)};
}

double Circuit::verify_interaction_locality(const Cut& from, const Cut& to,
                                            const std::vector<int>& overlap_sites,
                                            int slot) const {
    for (int x : overlap_sites) {
        if (from.height(x) != to.height(x)) {
            throw std::invalid_argument(
                "verify_interaction_locality: site set is not inside the cut overlap");
        }
    }
    const Mat proj = position_projector(space_on(from), slot, overlap_sites).matrix;
    const Mat u = evolve_op(from, to);
    return operator_norm(proj - u * proj * u.adjoint());
}

Mat Circuit::product_of(const std::vector<Gate>& gates) const {
    const long dim = this->dim();
    Mat v = Mat::Identity(dim, dim);
    for (const Gate& g : gates) apply_gate(v, g);
    return v;
}

}  // namespace flashlat
