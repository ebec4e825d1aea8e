#pragma once

#include "stresskit/calendar.hpp"

#include <string>
#include <vector>

namespace stresskit {

/// Labeled calendar interval; slicing treats it as [start, end).
struct CrisisInterval {
    std::string label;
    Date start{};
    Date end{};
};

struct CrisisRegistry {
    std::vector<CrisisInterval> intervals;

    /// Throws ConfigError on empty labels, duplicate labels, or start >= end.
    void validate() const;
};

/// The three stress episodes sliced out of catastrophe paths by default:
/// the biotech bubble, the sub-prime crisis, and the COVID crash.
CrisisRegistry default_crisis_registry();

/// Named market regimes covering 1997 through 2021, back to back.
CrisisRegistry market_period_registry();

} // namespace stresskit
