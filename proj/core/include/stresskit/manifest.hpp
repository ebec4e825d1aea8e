#pragma once

#include "stresskit/alis.hpp"
#include "stresskit/calendar.hpp"
#include "stresskit/crisis.hpp"
#include "stresskit/entropy.hpp"
#include "stresskit/rqa.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stresskit {

/// Every tunable of the pipelines, with the documented defaults.
struct ToolkitConfig {
    SampEnConfig entropy;         // entropy.m/l/r/tau/window/increment
    bool entropy_reciprocal = false; // entropy.reciprocal: emit 1/entropy stress CSVs
    RqaConfig rqa;                // rqa.m/l/selection/epsilon_fraction/jmin/tau
    int rqa_window = 1044;        // rqa.window
    int rqa_increment = 1;        // rqa.increment
    AlisConfig alis;              // alis.lf_cut/hf_lo/hf_hi/trim/detrend_tau/window/increment
    int smoothing = 21;           // catastrophe.smoothing
    bool segments_svg = false;    // catastrophe.segments_svg: extra per-crisis chart
    TradingCalendar calendar;     // calendar.year_length/month_length
    CrisisRegistry registry = default_crisis_registry(); // crisis.<LABEL> overrides
    std::uint64_t seed = 0;
    int threads = 1;
};

enum class ArtifactFormat { csv, svg, both };

std::string_view to_string(ArtifactFormat f) noexcept;

/// One batch run: validated inputs, requested measures, resolved config.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> inputs; // (instrument_id, csv path), file order
    std::vector<std::string> basket;   // instrument ids for multichannel measures
    std::vector<std::string> targets;  // performance assets; empty = all inputs
    std::vector<std::string> measures; // subset of mse, mmse, det, alis, catastrophe
    ToolkitConfig config;
    std::string output_dir = ".";
    ArtifactFormat format = ArtifactFormat::both;
    bool registry_overridden = false; // first crisis.<LABEL> key clears the defaults
};

/// Apply one `key = value` assignment (manifest line or mirrored CLI flag).
/// Throws ConfigError on unknown keys or unparsable values.
void apply_key(RunManifest& manifest, const std::string& key, const std::string& value);

/// Parse a plain-text key=value manifest ('#' lines are comments).  All
/// problems are collected and thrown together as one ConfigError.
RunManifest parse_manifest(const std::filesystem::path& file);

/// Semantic validation; returns every problem found (empty = valid).
std::vector<std::string> validate_manifest(const RunManifest& manifest);

} // namespace stresskit
