#include "stresskit/series.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>

namespace stresskit {

std::string_view to_string(Measure m) noexcept {
    switch (m) {
    case Measure::mod_mse: return "mod_mse";
    case Measure::mod_mmse: return "mod_mmse";
    case Measure::inv_mod_mse: return "inv_mod_mse";
    case Measure::inv_mod_mmse: return "inv_mod_mmse";
    case Measure::det: return "det";
    case Measure::alis: return "alis";
    }
    return "unknown";
}

std::optional<Measure> measure_from_string(std::string_view name) noexcept {
    for (Measure m : {Measure::mod_mse, Measure::mod_mmse, Measure::inv_mod_mse,
                      Measure::inv_mod_mmse, Measure::det, Measure::alis}) {
        if (to_string(m) == name)
            return m;
    }
    return std::nullopt;
}

std::size_t StressSeries::gap_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [](const std::optional<double>& v) { return !v.has_value(); }));
}

AlignedChannels align_channels(const std::vector<const PriceSeries*>& series) {
    if (series.size() < 2)
        throw Error("channel alignment needs at least two series");
    for (const PriceSeries* s : series) {
        if (!s || s->size() == 0)
            throw Error("channel alignment given an empty series");
    }

    // Dates are sorted within each series, so the common grid is a k-way
    // sorted intersection.
    std::vector<Date> common = series.front()->dates;
    for (std::size_t k = 1; k < series.size() && !common.empty(); ++k) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(),
                              series[k]->dates.begin(), series[k]->dates.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.empty())
        throw Error("channel alignment found no common trading dates");

    AlignedChannels out;
    out.dates = common;
    for (const PriceSeries* s : series) {
        out.instrument_ids.push_back(s->instrument_id);
        std::vector<double> channel;
        channel.reserve(common.size());
        std::size_t i = 0;
        for (Date d : common) {
            while (s->dates[i] < d)
                ++i;
            channel.push_back(s->values[i]);
        }
        out.channels.push_back(std::move(channel));
    }
    return out;
}

} // namespace stresskit
