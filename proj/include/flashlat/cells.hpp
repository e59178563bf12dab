#pragma once

#include <cstdint>
#include <vector>

#include "flashlat/lattice.hpp"

namespace flashlat {

/// Abstract 4-cell index: one component per particle, 0 <= k_i <= n_i.
using Cell4 = std::vector<int>;

/// Abstract 3-cell: a face of 4-cell `k` on particle i's k_i-th hyperboloid
/// (requires k[particle] >= 1).
struct Cell3 {
    int particle{};
    Cell4 k;

    friend bool operator==(const Cell3&, const Cell3&) = default;
};

/// Ordering of all abstract 4-cells whose prefixes are predecessor complete.
using AdmissibleSequence = std::vector<Cell4>;

/// Hyperboloid family of a flash history: cuts[i][k-1] is particle i's k-th
/// cut, based at its (k-1)-th flash. Per particle the cuts are nested
/// (pointwise non-decreasing in k).
struct CellComplex {
    Strip strip;
    std::vector<Event> seeds;
    std::vector<std::vector<Cut>> cuts;

    int particles() const { return static_cast<int>(cuts.size()); }
    int flash_count(int particle) const { return static_cast<int>(cuts[particle].size()); }
    /// 1-based flash index k.
    const Cut& cut(int particle, int k) const { return cuts[particle][k - 1]; }
    std::vector<int> flash_counts() const;
};

std::uint64_t count_cells(const std::vector<int>& n);

/// Index of the 4-cell containing e: component j counts particle-j cuts at or
/// below e (ties count as below, so the 4-cells partition the strip).
Cell4 locate_4cell(const Event& e, const CellComplex& complex);

/// 3-cell containing vertex v of cut (particle,k); v must lie on that cut.
Cell3 locate_3cell(int particle, int k, const Event& v, const CellComplex& complex);

/// Sites whose cut vertices belong to the given 3-cell.
std::vector<int> cell3_sites(const Cell3& cell, const CellComplex& complex);

bool is_predecessor_complete(const std::vector<Cell4>& members, const std::vector<int>& n);
bool is_admissible(const AdmissibleSequence& seq, const std::vector<int>& n);

/// All admissible sequences (orderings in which every predecessor occurs
/// earlier). Guarded: throws if the number of 4-cells exceeds 12.
std::vector<AdmissibleSequence> enumerate_admissible_sequences(const std::vector<int>& n);

/// The sequence ordered by k_1+...+k_N (lexicographic within a level);
/// admissible for every n without enumeration.
AdmissibleSequence canonical_sequence(const std::vector<int>& n);

/// Path of admissible sequences from a to b where consecutive members differ
/// by one adjacent transposition (bubble moves).
std::vector<AdmissibleSequence> deformation_path(const AdmissibleSequence& a,
                                                 const AdmissibleSequence& b,
                                                 const std::vector<int>& n);

/// Whether e lies in the closure of the geometric 4-cell indexed by k.
bool closed_cell_contains(const Cell4& k, const Event& e, const CellComplex& complex);

/// Whether the predecessor-complete set V's space-time region contains e
/// (the region at or below the initial surface t=0 always does).
bool region_contains(const std::vector<Cell4>& members, const Event& e,
                     const CellComplex& complex);

/// Boundary cut of the union of closed 4-cells in V plus the initial-surface
/// past region. V must be predecessor complete and not contain every 4-cell;
/// V = {} yields the flat initial surface t = 0.
Cut surface_of(const std::vector<Cell4>& members, const CellComplex& complex);

}  // namespace flashlat
