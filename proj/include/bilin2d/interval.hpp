#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace bilin2d {

/// Real interval with lo <= hi.  Endpoints may be +-infinity.  Whether the
/// ends are open or closed is decided by the context that produced the
/// interval (control-set feasibility regions are open, spectral ranges are
/// closed); the struct itself only carries the endpoints.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool strictly_contains(double x) const { return lo < x && x < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sort by lower endpoint and coalesce intervals that overlap or touch.
inline std::vector<Interval> merge_intervals(std::vector<Interval> xs) {
    if (xs.empty()) return xs;
    std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> out;
    out.push_back(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i].lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, xs[i].hi);
        } else {
            out.push_back(xs[i]);
        }
    }
    return out;
}

}  // namespace bilin2d
