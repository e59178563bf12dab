#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "flashlat/lattice.hpp"

namespace flashlat {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Finite Hilbert space carried by a cut: N distinguishable particles, each
/// with (site, spin) degrees of freedom. Basis order is lexicographic in
/// (particle slot, site, spin) with slot 0 most significant:
///   index = sum_i (site_i * spin_dim + spin_i) * (sites*spin_dim)^(N-1-i).
struct CutSpace {
    Cut cut;
    int particles{};
    int spin_dim{2};

    int sites() const { return cut.sites(); }
    int single_dim() const { return sites() * spin_dim; }
    long dim() const;

    /// Single-particle index of slot i within basis index b.
    int slot_index(long b, int slot) const;
    int slot_site(long b, int slot) const { return slot_index(b, slot) / spin_dim; }
    int slot_spin(long b, int slot) const { return slot_index(b, slot) % spin_dim; }
    /// Replace slot i's single-particle index.
    long with_slot_index(long b, int slot, int p) const;
};

struct StateVec {
    Vec amplitudes;
    CutSpace space;

    double norm() const { return amplitudes.norm(); }
};

struct DenseOp {
    Mat matrix;
    CutSpace domain;
    CutSpace codomain;
};

/// Orthogonal projector onto basis states whose slot-i site lies in `sites`
/// (identity on spins and on the other slots).
DenseOp position_projector(const CutSpace& space, int slot, const std::vector<int>& sites);

/// Diagonal multiplication operator by f(site of slot i).
DenseOp mult_operator(const CutSpace& space, int slot,
                      const std::function<double(int)>& f);

/// Diagonal of mult_operator as a vector (fast path).
Eigen::VectorXd mult_diagonal(const CutSpace& space, int slot,
                              const std::function<double(int)>& f);

/// Unique PSD square root via eigendecomposition. Throws std::runtime_error
/// if an eigenvalue below -1e-8 is found (signals an upstream bug); small
/// negative eigenvalues are clamped to zero.
DenseOp hermitian_sqrt(const DenseOp& op);

/// Largest singular value; the global operator-comparison metric.
double operator_norm(const Mat& m);

}  // namespace flashlat
