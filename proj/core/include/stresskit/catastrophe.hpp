#pragma once

#include "stresskit/crisis.hpp"
#include "stresskit/series.hpp"

#include <string>
#include <vector>

namespace stresskit {

struct PathPoint {
    Date date{};
    double arousal = 0.0;     // whole-market external stress, 1/Mod-MMSE
    double performance = 0.0; // per-asset internal complexity, Mod-MSE
};

/// Arousal-performance trace of one asset; coordinates inherit positivity
/// from the stress measures behind them.
struct CatastrophePath {
    std::string asset_id;
    int smoothing = 21; // trading days of centered pre-pairing smoothing
    std::vector<PathPoint> points;
};

/// Contiguous slice of a path covering [start, end); gradient_index ranks
/// points from lightest (earliest) to darkest for rendering.
struct CrisisSegment {
    std::string label;
    Date start{};
    Date end{};
    std::vector<PathPoint> points;
    std::vector<int> gradient_index;
};

/// Smooth each series with a centered moving mean over `smoothing`
/// non-gap entries (edges trimmed), then inner-join on dates.
/// Requires performance measured as mod_mse and arousal as inv_mod_mmse.
CatastrophePath build_path(const StressSeries& performance, const StressSeries& arousal,
                           int smoothing);

/// One segment per registry interval that intersects the path; empty
/// intersections are skipped with a warning line appended to *warnings.
std::vector<CrisisSegment> slice_crises(const CatastrophePath& path, const CrisisRegistry& registry,
                                        std::vector<std::string>* warnings = nullptr);

/// Least-squares slope of performance regressed on arousal.
/// Needs >= 2 points and non-constant arousal.
double segment_slope(const CrisisSegment& segment);

} // namespace stresskit
