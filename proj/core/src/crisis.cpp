#include "stresskit/crisis.hpp"

#include "stresskit/errors.hpp"

#include <set>

namespace stresskit {

void CrisisRegistry::validate() const {
    std::set<std::string> seen;
    for (const CrisisInterval& iv : intervals) {
        if (iv.label.empty())
            throw ConfigError("crisis interval with empty label");
        if (!seen.insert(iv.label).second)
            throw ConfigError("duplicate crisis label: " + iv.label);
        if (iv.start >= iv.end)
            throw ConfigError("crisis interval " + iv.label + " has start >= end");
    }
}

CrisisRegistry default_crisis_registry() {
    return {{
        {"IBB", make_date(2000, 1, 1), make_date(2001, 12, 31)},
        {"SubPrime", make_date(2008, 1, 1), make_date(2009, 12, 31)},
        {"COVID", make_date(2020, 1, 1), make_date(2021, 12, 31)},
    }};
}

CrisisRegistry market_period_registry() {
    return {{
        {"DotComBoom", make_date(1997, 1, 1), make_date(2000, 1, 1)},
        {"InternetBubbleBurst", make_date(2000, 1, 1), make_date(2004, 1, 1)},
        {"EconomicRecovery", make_date(2004, 1, 1), make_date(2008, 1, 1)},
        {"SubPrimeCrisis", make_date(2008, 1, 1), make_date(2012, 1, 1)},
        {"PostGfcRecovery", make_date(2012, 1, 1), make_date(2015, 1, 1)},
        {"BullRun", make_date(2015, 1, 1), make_date(2020, 1, 1)},
        {"CovidPandemic", make_date(2020, 1, 1), make_date(2022, 1, 1)},
    }};
}

} // namespace stresskit
