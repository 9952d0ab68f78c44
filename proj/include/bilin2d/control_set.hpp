#pragma once

#include <cmath>
#include <stdexcept>

namespace bilin2d {

/// Admissible control values: either all of R or a closed interval [lo, hi].
struct ControlSet {
    bool all_reals = true;
    double lo = 0.0;  // meaningful only when !all_reals
    double hi = 0.0;

    static ControlSet reals() { return ControlSet{}; }

    static ControlSet interval(double lo, double hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("ControlSet: interval endpoints must be finite");
        if (!(lo < hi))
            throw std::invalid_argument("ControlSet: interval requires lo < hi");
        ControlSet u;
        u.all_reals = false;
        u.lo = lo;
        u.hi = hi;
        return u;
    }

    bool contains(double u) const { return all_reals || (lo <= u && u <= hi); }

    friend bool operator==(const ControlSet&, const ControlSet&) = default;
};

}  // namespace bilin2d
