#pragma once

#include "dgcat/error.hpp"

namespace dgcat {

// Truncation window for degrees. Content near the edges can be polluted by
// missing boundaries from outside, so claims are only asserted on the
// trusted range [lo + guard, hi - guard].
struct DegreeWindow {
    int lo = -10;
    int hi = 14;
    int guard = 3;

    DegreeWindow() = default;
    DegreeWindow(int lo_, int hi_, int guard_) : lo(lo_), hi(hi_), guard(guard_) {
        require(lo <= hi, Errc::ConfigError, "window lo > hi");
        require(guard >= 0, Errc::ConfigError, "window guard < 0");
    }

    bool contains(int n) const { return lo <= n && n <= hi; }
    int trusted_lo() const { return lo + guard; }
    int trusted_hi() const { return hi - guard; }
    bool trusted(int n) const { return trusted_lo() <= n && n <= trusted_hi(); }

    bool operator==(const DegreeWindow&) const = default;
};

}  // namespace dgcat
