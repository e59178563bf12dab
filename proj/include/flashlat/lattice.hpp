#pragma once

#include <functional>
#include <vector>

namespace flashlat {

/// Integer event on the 1+1 dimensional strip (c = 1, lattice units).
struct Event {
    int t{};
    int x{};

    friend bool operator==(const Event&, const Event&) = default;
};

/// Finite space-time strip: sites 0..sites-1, times 0..t_max.
struct Strip {
    int sites{};
    int t_max{};

    bool contains(const Event& e) const {
        return e.t >= 0 && e.t <= t_max && e.x >= 0 && e.x < sites;
    }
};

enum class CausalRelation {
    StrictPast,
    LightlikePast,
    Spacelike,
    Equal,
    LightlikeFuture,
    StrictFuture,
};

/// Relation of b with respect to a: b is in the causal future of a iff the
/// result is Equal, LightlikeFuture or StrictFuture (closed future cone).
CausalRelation causal_relation(const Event& a, const Event& b);

bool in_causal_future(const Event& a, const Event& b);

/// Invariant length sqrt(dt^2 - dx^2); throws std::invalid_argument unless
/// b lies in the closed causal future of a.
double proper_time(const Event& a, const Event& b);

/// Spacelike-or-lightlike staircase hypersurface: one integer time per site,
/// |T(x+1) - T(x)| <= 1. Values are clamped-valid for some strip; bounds are
/// checked against a strip on construction.
class Cut {
  public:
    Cut() = default;
    Cut(std::vector<int> heights, const Strip& strip);

    int height(int x) const { return heights_[static_cast<std::size_t>(x)]; }
    int sites() const { return static_cast<int>(heights_.size()); }
    const std::vector<int>& heights() const { return heights_; }

    /// Events at or below the cut (cut vertices belong to the past region).
    bool in_past_region(const Event& e) const { return e.t <= height(e.x); }

    friend bool operator==(const Cut&, const Cut&) = default;

  private:
    std::vector<int> heights_;
};

Cut flat_cut(int height, const Strip& strip);

/// Pointwise min / max of two cuts (both remain 1-Lipschitz).
Cut cut_meet(const Cut& a, const Cut& b);
Cut cut_join(const Cut& a, const Cut& b);

/// Discrete future hyperboloid: per site the smallest t in the strict future
/// of seed with proper time >= level, clamped into [0, t_max] where that t
/// falls outside the strip. Seeds may have negative t (virtual events below
/// the strip); seed.x must be a valid site.
Cut hyperboloid_cut(const Event& seed, double level, const Strip& strip);

/// Boundary of a past complete event set S, as the cut whose past region
/// equals S (cut vertices belong to S). Throws std::invalid_argument if S is
/// empty, all of the strip, or not past complete.
Cut boundary_of_past_complete(const std::function<bool(const Event&)>& in_set,
                              const Strip& strip);

/// Staircases compatible with the brick-wall gate layout (gates at plaquettes
/// (t,{x,x+1}) with x+t even): a unit step never cuts through a gate. Up-steps
/// need x+T(x) odd, down-steps x+T(x+1) odd. The class contains every flat cut
/// and is closed under cut_meet/cut_join, which keeps hypersurface evolution
/// exactly local on cut overlaps.
bool is_aligned(const Cut& cut);

/// Least aligned staircase lying nowhere below the given cut.
Cut align_staircase(const Cut& cut, const Strip& strip);

}  // namespace flashlat
