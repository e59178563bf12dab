#include "flashlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flashlat {

CausalRelation causal_relation(const Event& a, const Event& b) {
    const int dt = b.t - a.t;
    const int dx = std::abs(b.x - a.x);
    if (dt == 0 && dx == 0) return CausalRelation::Equal;
    if (dx < dt) return CausalRelation::StrictFuture;
    if (dx == dt && dt > 0) return CausalRelation::LightlikeFuture;
    if (dx < -dt) return CausalRelation::StrictPast;
    if (dx == -dt && dt < 0) return CausalRelation::LightlikePast;
    return CausalRelation::Spacelike;
}

bool in_causal_future(const Event& a, const Event& b) {
    const CausalRelation r = causal_relation(a, b);
    return r == CausalRelation::Equal || r == CausalRelation::LightlikeFuture ||
           r == CausalRelation::StrictFuture;
}

double proper_time(const Event& a, const Event& b) {
    if (!in_causal_future(a, b)) {
        throw std::invalid_argument("proper_time: second event is not in the causal future of the first");
    }
    const double dt = b.t - a.t;
    const double dx = b.x - a.x;
    return std::sqrt(dt * dt - dx * dx);
}

Cut::Cut(std::vector<int> heights, const Strip& strip) : heights_(std::move(heights)) {
    if (static_cast<int>(heights_.size()) != strip.sites) {
        throw std::invalid_argument("Cut: height profile does not cover the strip");
    }
    for (int x = 0; x < strip.sites; ++x) {
        if (heights_[x] < 0 || heights_[x] > strip.t_max) {
            throw std::invalid_argument("Cut: height out of range at site " + std::to_string(x));
        }
        if (x > 0 && std::abs(heights_[x] - heights_[x - 1]) > 1) {
            throw std::invalid_argument("Cut: profile is not 1-Lipschitz at site " + std::to_string(x));
        }
    }
}

Cut flat_cut(int height, const Strip& strip) {
    return Cut(std::vector<int>(static_cast<std::size_t>(strip.sites), height), strip);
}

static Cut combine(const Cut& a, const Cut& b, bool take_min) {
    if (a.sites() != b.sites()) {
        throw std::invalid_argument("cut_meet/cut_join: site counts differ");
    }
    std::vector<int> h(static_cast<std::size_t>(a.sites()));
    int t_max = 0;
    for (int x = 0; x < a.sites(); ++x) {
        h[x] = take_min ? std::min(a.height(x), b.height(x)) : std::max(a.height(x), b.height(x));
        t_max = std::max({t_max, a.height(x), b.height(x)});
    }
    return Cut(std::move(h), Strip{a.sites(), t_max});
}

Cut cut_meet(const Cut& a, const Cut& b) { return combine(a, b, true); }
Cut cut_join(const Cut& a, const Cut& b) { return combine(a, b, false); }

Cut hyperboloid_cut(const Event& seed, double level, const Strip& strip) {
    if (seed.x < 0 || seed.x >= strip.sites) {
        throw std::invalid_argument("hyperboloid_cut: seed site outside strip");
    }
    if (level <= 0.0) {
        throw std::invalid_argument("hyperboloid_cut: level must be positive");
    }
    std::vector<int> h(static_cast<std::size_t>(strip.sites), strip.t_max);
    for (int x = 0; x < strip.sites; ++x) {
        const int dx = std::abs(x - seed.x);
        // Smallest t > |dx| with t^2 - dx^2 >= level^2.
        const double reach = std::sqrt(level * level + static_cast<double>(dx) * dx);
        long long t = std::max<long long>(dx + 1, static_cast<long long>(std::ceil(reach)));
        while (static_cast<double>(t) * t - static_cast<double>(dx) * dx < level * level) ++t;
        const long long abs_t = std::clamp<long long>(seed.t + t, 0, strip.t_max);
        h[x] = static_cast<int>(abs_t);
    }
    return Cut(std::move(h), strip);
}

Cut boundary_of_past_complete(const std::function<bool(const Event&)>& in_set,
                              const Strip& strip) {
    std::vector<int> h(static_cast<std::size_t>(strip.sites), -1);
    bool any = false, all = true;
    for (int x = 0; x < strip.sites; ++x) {
        for (int t = 0; t <= strip.t_max; ++t) {
            if (in_set(Event{t, x})) {
                h[x] = std::max(h[x], t);
                any = true;
            } else {
                all = false;
            }
        }
    }
    if (!any) throw std::invalid_argument("boundary_of_past_complete: set is empty");
    if (all) throw std::invalid_argument("boundary_of_past_complete: set is the whole strip");
    for (int x = 0; x < strip.sites; ++x) {
        if (h[x] < 0) {
            throw std::invalid_argument("boundary_of_past_complete: set misses site column " +
                                        std::to_string(x));
        }
    }
    Cut cut(std::move(h), strip);
    for (int x = 0; x < strip.sites; ++x) {
        for (int t = 0; t <= strip.t_max; ++t) {
            if (in_set(Event{t, x}) != cut.in_past_region(Event{t, x})) {
                throw std::invalid_argument("boundary_of_past_complete: set is not past complete");
            }
        }
    }
    return cut;
}

bool is_aligned(const Cut& cut) {
    for (int x = 0; x + 1 < cut.sites(); ++x) {
        const int a = cut.height(x), b = cut.height(x + 1);
        if (b == a + 1 && (x + a) % 2 == 0) return false;
        if (b == a - 1 && (x + b) % 2 == 0) return false;
    }
    return true;
}

Cut align_staircase(const Cut& cut, const Strip& strip) {
    // Relaxation to the least majorant: every repair below is forced for any
    // aligned profile dominating the current one, so the fixpoint is minimal.
    // Bounded by the flat t_max cut, which is aligned.
    std::vector<int> h = cut.heights();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x + 1 < strip.sites; ++x) {
            const int a = h[x], b = h[x + 1];
            if (b > a + 1) {
                h[x] = b - 1;
                changed = true;
            } else if (a > b + 1) {
                h[x + 1] = a - 1;
                changed = true;
            } else if (b == a + 1 && (x + a) % 2 == 0) {
                h[x] = a + 1;
                changed = true;
            } else if (b == a - 1 && (x + b) % 2 == 0) {
                h[x + 1] = b + 1;
                changed = true;
            }
        }
    }
    return Cut(std::move(h), strip);
}

}  // namespace flashlat
