#include "flashlat/cells.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace flashlat {

std::vector<int> CellComplex::flash_counts() const {
    std::vector<int> n(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) n[i] = static_cast<int>(cuts[i].size());
    return n;
}

std::uint64_t count_cells(const std::vector<int>& n) {
    std::uint64_t total = 1;
    for (int ni : n) {
        if (ni < 0) throw std::invalid_argument("count_cells: negative flash count");
        total *= static_cast<std::uint64_t>(ni) + 1;
    }
    return total;
}

Cell4 locate_4cell(const Event& e, const CellComplex& complex) {
    Cell4 k(static_cast<std::size_t>(complex.particles()), 0);
    for (int j = 0; j < complex.particles(); ++j) {
        for (const Cut& cut : complex.cuts[j]) {
            if (cut.height(e.x) <= e.t) ++k[j];
        }
    }
    return k;
}

Cell3 locate_3cell(int particle, int k, const Event& v, const CellComplex& complex) {
    const Cut& own = complex.cut(particle, k);
    if (v.t != own.height(v.x)) {
        throw std::invalid_argument("locate_3cell: event is not a vertex of the cut");
    }
    Cell4 idx = locate_4cell(v, complex);
    idx[particle] = k;  // own-particle component is fixed, not counted
    return Cell3{particle, std::move(idx)};
}

std::vector<int> cell3_sites(const Cell3& cell, const CellComplex& complex) {
    const Cut& own = complex.cut(cell.particle, cell.k[cell.particle]);
    std::vector<int> sites;
    for (int x = 0; x < complex.strip.sites; ++x) {
        const Event v{own.height(x), x};
        if (locate_3cell(cell.particle, cell.k[cell.particle], v, complex) == cell) {
            sites.push_back(x);
        }
    }
    return sites;
}

static std::vector<Cell4> predecessors(const Cell4& k) {
    std::vector<Cell4> result;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] > 0) {
            Cell4 p = k;
            --p[j];
            result.push_back(std::move(p));
        }
    }
    return result;
}

bool is_predecessor_complete(const std::vector<Cell4>& members, const std::vector<int>& n) {
    std::set<Cell4> in(members.begin(), members.end());
    for (const Cell4& k : members) {
        if (k.size() != n.size()) return false;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (k[j] < 0 || k[j] > n[j]) return false;
        }
        for (const Cell4& p : predecessors(k)) {
            if (in.find(p) == in.end()) return false;
        }
    }
    return true;
}

bool is_admissible(const AdmissibleSequence& seq, const std::vector<int>& n) {
    if (seq.size() != count_cells(n)) return false;
    std::set<Cell4> seen;
    for (const Cell4& k : seq) {
        if (seen.count(k)) return false;
        for (const Cell4& p : predecessors(k)) {
            if (seen.find(p) == seen.end()) return false;
        }
        seen.insert(k);
    }
    return true;
}

static void enumerate_rec(const std::vector<Cell4>& all, std::vector<bool>& used,
                          std::set<Cell4>& placed, AdmissibleSequence& prefix,
                          std::vector<AdmissibleSequence>& out) {
    if (prefix.size() == all.size()) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (used[i]) continue;
        bool ready = true;
        for (const Cell4& p : predecessors(all[i])) {
            if (placed.find(p) == placed.end()) {
                ready = false;
                break;
            }
        }
        if (!ready) continue;
        used[i] = true;
        placed.insert(all[i]);
        prefix.push_back(all[i]);
        enumerate_rec(all, used, placed, prefix, out);
        prefix.pop_back();
        placed.erase(all[i]);
        used[i] = false;
    }
}

static std::vector<Cell4> all_cells(const std::vector<int>& n) {
    std::vector<Cell4> all;
    Cell4 k(n.size(), 0);
    for (;;) {
        all.push_back(k);
        std::size_t j = n.size();
        while (j > 0) {
            --j;
            if (k[j] < n[j]) {
                ++k[j];
                std::fill(k.begin() + static_cast<std::ptrdiff_t>(j) + 1, k.end(), 0);
                break;
            }
            if (j == 0) return all;
        }
    }
}

std::vector<AdmissibleSequence> enumerate_admissible_sequences(const std::vector<int>& n) {
    if (count_cells(n) > 12) {
        throw std::runtime_error("enumerate_admissible_sequences: more than 12 cells; "
                                 "use canonical_sequence instead");
    }
    std::vector<Cell4> all = all_cells(n);
    std::vector<bool> used(all.size(), false);
    std::set<Cell4> placed;
    AdmissibleSequence prefix;
    std::vector<AdmissibleSequence> out;
    enumerate_rec(all, used, placed, prefix, out);
    return out;
}

AdmissibleSequence canonical_sequence(const std::vector<int>& n) {
    std::vector<Cell4> all = all_cells(n);
    std::stable_sort(all.begin(), all.end(), [](const Cell4& a, const Cell4& b) {
        int ma = 0, mb = 0;
        for (int v : a) ma += v;
        for (int v : b) mb += v;
        if (ma != mb) return ma < mb;
        return a < b;
    });
    return all;
}

std::vector<AdmissibleSequence> deformation_path(const AdmissibleSequence& a,
                                                 const AdmissibleSequence& b,
                                                 const std::vector<int>& n) {
    if (!is_admissible(a, n) || !is_admissible(b, n)) {
        throw std::invalid_argument("deformation_path: inputs must be admissible sequences");
    }
    // Bubble each element of a leftwards into place in a copy of b; every
    // intermediate stays admissible because predecessors occur earlier in
    // both endpoints. Collect from b's side, then reverse so the path runs
    // from a to b.
    std::vector<AdmissibleSequence> reversed{b};
    AdmissibleSequence cur = b;
    for (std::size_t pos = 0; pos < a.size(); ++pos) {
        std::size_t at = pos;
        while (cur[at] != a[pos]) ++at;
        while (at > pos) {
            std::swap(cur[at - 1], cur[at]);
            reversed.push_back(cur);
            --at;
        }
    }
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

bool closed_cell_contains(const Cell4& k, const Event& e, const CellComplex& complex) {
    for (int j = 0; j < complex.particles(); ++j) {
        const int kj = k[static_cast<std::size_t>(j)];
        if (kj > 0 && complex.cut(j, kj).height(e.x) > e.t) return false;
        if (kj < complex.flash_count(j) && e.t > complex.cut(j, kj + 1).height(e.x)) return false;
    }
    return true;
}

bool region_contains(const std::vector<Cell4>& members, const Event& e,
                     const CellComplex& complex) {
    if (e.t <= 0) return true;
    for (const Cell4& k : members) {
        if (closed_cell_contains(k, e, complex)) return true;
    }
    return false;
}

Cut surface_of(const std::vector<Cell4>& members, const CellComplex& complex) {
    const std::vector<int> n = complex.flash_counts();
    if (!is_predecessor_complete(members, n)) {
        throw std::invalid_argument("surface_of: set is not predecessor complete");
    }
    if (members.size() == count_cells(n)) {
        throw std::invalid_argument("surface_of: set must not contain every 4-cell");
    }
    if (members.empty()) return flat_cut(0, complex.strip);
    return boundary_of_past_complete(
        [&](const Event& e) { return region_contains(members, e, complex); }, complex.strip);
}

}  // namespace flashlat
