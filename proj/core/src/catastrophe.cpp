#include "stresskit/catastrophe.hpp"

#include "stresskit/errors.hpp"

#include <utility>

namespace stresskit {

namespace {

// Gap-free (date, value) entries smoothed by a centered moving mean over
// `smoothing` entries; entries without a full window are trimmed.
std::vector<std::pair<Date, double>> smoothed_entries(const StressSeries& series, int smoothing) {
    std::vector<std::pair<Date, double>> entries;
    entries.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.values[i])
            entries.emplace_back(series.dates[i], *series.values[i]);
    }
    if (smoothing <= 1)
        return entries;

    const std::size_t s = static_cast<std::size_t>(smoothing);
    if (entries.size() < s)
        return {};
    const std::size_t half_lo = (s - 1) / 2;
    const std::size_t half_hi = s / 2;
    std::vector<std::pair<Date, double>> out;
    out.reserve(entries.size() - s + 1);
    for (std::size_t i = half_lo; i + half_hi < entries.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i - half_lo; j <= i + half_hi; ++j)
            sum += entries[j].second;
        out.emplace_back(entries[i].first, sum / static_cast<double>(s));
    }
    return out;
}

} // namespace

CatastrophePath build_path(const StressSeries& performance, const StressSeries& arousal,
                           int smoothing) {
    if (performance.size() == 0 || arousal.size() == 0)
        throw Error("path building needs non-empty stress series");
    if (performance.measure != Measure::mod_mse)
        throw Error("performance series must carry the mod_mse measure");
    if (arousal.measure != Measure::inv_mod_mmse)
        throw Error("arousal series must carry the inv_mod_mmse measure");
    if (smoothing < 1)
        throw ConfigError("smoothing must be >= 1");

    const auto perf = smoothed_entries(performance, smoothing);
    const auto arou = smoothed_entries(arousal, smoothing);

    CatastrophePath path;
    path.asset_id = performance.instrument_id;
    path.smoothing = smoothing;
    std::size_t a = 0;
    for (const auto& [date, perf_value] : perf) {
        while (a < arou.size() && arou[a].first < date)
            ++a;
        if (a == arou.size())
            break;
        if (arou[a].first == date)
            path.points.push_back({date, arou[a].second, perf_value});
    }
    if (path.points.empty())
        throw Error("performance and arousal series share no dates");
    return path;
}

std::vector<CrisisSegment> slice_crises(const CatastrophePath& path, const CrisisRegistry& registry,
                                        std::vector<std::string>* warnings) {
    registry.validate();
    std::vector<CrisisSegment> segments;
    for (const CrisisInterval& interval : registry.intervals) {
        CrisisSegment seg;
        seg.label = interval.label;
        seg.start = interval.start;
        seg.end = interval.end;
        for (const PathPoint& pt : path.points) {
            if (pt.date >= interval.start && pt.date < interval.end)
                seg.points.push_back(pt);
        }
        if (seg.points.empty()) {
            if (warnings)
                warnings->push_back("crisis " + interval.label + " does not intersect the path of " +
                                    path.asset_id);
            continue;
        }
        seg.gradient_index.resize(seg.points.size());
        for (std::size_t i = 0; i < seg.points.size(); ++i)
            seg.gradient_index[i] = static_cast<int>(i);
        segments.push_back(std::move(seg));
    }
    return segments;
}

double segment_slope(const CrisisSegment& segment) {
    const std::size_t n = segment.points.size();
    if (n < 2)
        throw Error("slope needs at least 2 points");
    double mean_a = 0.0, mean_p = 0.0;
    for (const PathPoint& pt : segment.points) {
        mean_a += pt.arousal;
        mean_p += pt.performance;
    }
    mean_a /= static_cast<double>(n);
    mean_p /= static_cast<double>(n);
    double cov = 0.0, var = 0.0;
    for (const PathPoint& pt : segment.points) {
        cov += (pt.arousal - mean_a) * (pt.performance - mean_p);
        var += (pt.arousal - mean_a) * (pt.arousal - mean_a);
    }
    if (var <= 0.0)
        throw Error("slope undefined: arousal is constant over the segment");
    return cov / var;
}

} // namespace stresskit
