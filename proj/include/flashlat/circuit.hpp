#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "flashlat/hilbert.hpp"
#include "flashlat/lattice.hpp"

namespace flashlat {

/// External field phase per event; absent entries are zero.
struct PotentialTable {
    int sites{};
    int t_max{};
    std::vector<double> phi;

    PotentialTable() = default;
    PotentialTable(int sites_, int t_max_)
        : sites(sites_), t_max(t_max_),
          phi(static_cast<std::size_t>(sites_) * (t_max_ + 1), 0.0) {}

    double at(int t, int x) const {
        return phi[static_cast<std::size_t>(t) * sites + x];
    }
    void set(int t, int x, double value) {
        phi[static_cast<std::size_t>(t) * sites + x] = value;
    }
};

struct GateParams {
    double theta{0.0};  // coin angle on spin
    double gamma{0.0};  // contact-interaction phase; 0 means non-interacting
    PotentialTable potential;
};

/// Interaction-local unitary hypersurface evolution as a brick-wall circuit.
///
/// Layer t carries one two-site gate per plaquette (t,{x,x+1}) with x+t even
/// plus single-site wall gates where the brick pattern leaves a wall site
/// uncovered. Per particle a pair gate applies the coin rotation on both
/// sites' spins, then exchanges the right-mover components of the two sites;
/// a wall gate applies the coin followed by a spin flip (reflection). Then a
/// diagonal phase e^{i gamma} multiplies components with at least two
/// particles in the gate's site set, and each particle picks up the external
/// field phase e^{i phi(t+1, site)}.
///
/// The evolution between two cuts is V(to) V(from)^dagger, where V(cut) is
/// the causally ordered product of all gates fitting entirely below the cut.
/// The groupoid laws hold exactly for every cut; for aligned cuts (see
/// lattice.hpp) no gate is ever split by a cut, so evolution between two
/// aligned cuts acts exactly as the identity on every site of their overlap.
class Circuit {
  public:
    struct Gate {
        int t{};
        int x{};      // left site (pair) or wall site
        bool wall{};
    };

    Circuit(const Strip& strip, GateParams params, int particles);

    const Strip& strip() const { return strip_; }
    const GateParams& params() const { return params_; }
    int particles() const { return particles_; }
    long dim() const { return space_on(flat_cut(0, strip_)).dim(); }

    CutSpace space_on(const Cut& cut) const { return CutSpace{cut, particles_, 2}; }

    /// Ordered product of the gates fitting entirely below the cut.
    const Mat& unitary_below(const Cut& cut) const;

    /// U^{to}_{from} = V(to) V(from)^dagger.
    Mat evolve_op(const Cut& from, const Cut& to) const;

    StateVec evolve(const StateVec& psi, const Cut& to) const;

    /// || P_{to}(A in slot) - U P_{from}(A in slot) U^dagger ||. A must lie in
    /// the overlap of the cuts (throws otherwise).
    double verify_interaction_locality(const Cut& from, const Cut& to,
                                       const std::vector<int>& overlap_sites, int slot) const;

    bool gate_fits_below(const Gate& g, const Cut& cut) const;
    std::vector<Gate> all_gates() const;
    /// Gates below `hi` but not below `lo`, in causal (layer-ascending) order.
    std::vector<Gate> gates_between(const Cut& lo, const Cut& hi) const;
    /// Product of the listed gates in the given order (rightmost first).
    Mat product_of(const std::vector<Gate>& gates) const;

  private:
    void apply_gate(Mat& m, const Gate& g) const;

    Strip strip_;
    GateParams params_;
    int particles_;
    mutable std::map<std::vector<int>, Mat> cache_;
    mutable std::mutex mutex_;
};

}  // namespace flashlat
