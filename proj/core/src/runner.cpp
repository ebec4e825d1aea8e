#include "stresskit/runner.hpp"

#include "stresskit/catastrophe.hpp"
#include "stresskit/csv.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/svg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stresskit {

namespace {

namespace fs = std::filesystem;

bool wants(const RunManifest& manifest, std::string_view measure) {
    return std::find(manifest.measures.begin(), manifest.measures.end(), measure) !=
           manifest.measures.end();
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty())
            out.push_back(sep);
        out += item;
    }
    return out;
}

void write_text(const fs::path& file, std::string_view text) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw Error("cannot open " + file.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw Error("short write to " + file.string());
}

/// Every resolved analysis parameter, as a loadable manifest: rerunning the
/// metadata file reproduces the artifacts byte for byte.  Execution knobs
/// that cannot change a result (threads, output_dir) are deliberately
/// absent, which keeps the metadata itself schedule-independent.
std::string metadata_text(const RunManifest& manifest, const std::vector<std::string>& targets) {
    const ToolkitConfig& c = manifest.config;
    std::ostringstream out;
    out << "# resolved run configuration; this file is itself a loadable manifest\n";
    for (const auto& [id, path] : manifest.inputs)
        out << "input." << id << "=" << path << "\n";
    if (!manifest.basket.empty())
        out << "basket=" << join(manifest.basket, ',') << "\n";
    out << "targets=" << join(targets, ',') << "\n";
    out << "measures=" << join(manifest.measures, ',') << "\n";
    out << "format=" << to_string(manifest.format) << "\n";
    out << "seed=" << c.seed << "\n";

    const EmbeddingSpec& emb = c.entropy.embedding;
    out << "entropy.m=" << emb.dims.front() << "\n";
    out << "entropy.l=" << emb.delays.front() << "\n";
    out << "entropy.r=" << format_value(c.entropy.r) << "\n";
    out << "entropy.tau=" << c.entropy.tau << "\n";
    out << "entropy.window=" << c.entropy.window << "\n";
    out << "entropy.increment=" << c.entropy.increment << "\n";
    out << "entropy.reciprocal=" << (c.entropy_reciprocal ? "true" : "false") << "\n";

    out << "rqa.m=" << c.rqa.m << "\n";
    out << "rqa.l=" << c.rqa.l << "\n";
    out << "rqa.selection=" << (c.rqa.selection == EmbeddingSelection::fixed ? "fixed" : "auto")
        << "\n";
    out << "# rqa auto selection searches m " << c.rqa.grid_m_lo << ".." << c.rqa.grid_m_hi
        << ", l " << c.rqa.grid_l_lo << ".." << c.rqa.grid_l_hi << " against " << c.rqa.surrogates
        << " surrogate series per window\n";
    out << "rqa.epsilon_fraction=" << format_value(c.rqa.epsilon_fraction) << "\n";
    out << "rqa.jmin=" << c.rqa.j_min << "\n";
    out << "rqa.tau=" << c.rqa.tau << "\n";
    out << "rqa.window=" << c.rqa_window << "\n";
    out << "rqa.increment=" << c.rqa_increment << "\n";

    out << "alis.lf_cut=" << format_value(c.alis.bands.lf_cut) << "\n";
    out << "alis.hf_lo=" << format_value(c.alis.bands.hf_lo) << "\n";
    out << "alis.hf_hi=" << format_value(c.alis.bands.hf_hi) << "\n";
    out << "alis.trim=" << format_value(c.alis.trim) << "\n";
    out << "alis.detrend_tau=" << c.alis.detrend_tau << "\n";
    out << "alis.window=" << c.alis.window << "\n";
    out << "alis.increment=" << c.alis.increment << "\n";
    out << "# alis offset rule: each band is z-normalized over the emitted months, then its"
           " first month is subtracted from every month\n";
    out << "# alis month dating: end of the increment-sized block centred in each window\n";

    out << "catastrophe.smoothing=" << c.smoothing << "\n";
    out << "catastrophe.segments_svg=" << (c.segments_svg ? "true" : "false") << "\n";
    out << "calendar.year_length=" << c.calendar.days_per_year << "\n";
    out << "calendar.month_length=" << c.calendar.days_per_month << "\n";

    out << (manifest.registry_overridden ? "# crisis registry: manifest override\n"
                                         : "# crisis registry: toolkit defaults\n");
    for (const auto& interval : c.registry.intervals)
        out << "crisis." << interval.label << "=" << format_date(interval.start) << ":"
            << format_date(interval.end) << "\n";
    return out.str();
}

/// Ingested inputs plus caches for the expensive rolling measures, so a
/// series shared by several artifacts is computed once.
struct RunState {
    const RunManifest& manifest;
    RunReport& report;
    fs::path out_dir;
    std::map<std::string, PriceSeries> series;          // successfully ingested inputs
    std::map<std::string, StressSeries> mse_cache;      // plain mod_mse per target
    std::optional<StressSeries> arousal_cache;          // inv_mod_mmse over the basket

    const PriceSeries* find(const std::string& id, const std::string& artifact) {
        auto it = series.find(id);
        if (it != series.end())
            return &it->second;
        report.errors.push_back(artifact + ": input " + id + " unavailable (ingest failed)");
        return nullptr;
    }

    const StressSeries& plain_mse(const std::string& id) {
        auto it = mse_cache.find(id);
        if (it != mse_cache.end())
            return it->second;
        const PriceSeries& input = series.at(id);
        StressSeries s = rolling_mod_mse(input, manifest.config.entropy, false,
                                         manifest.config.threads);
        return mse_cache.emplace(id, std::move(s)).first->second;
    }

    std::vector<const PriceSeries*> basket_channels(const std::string& artifact) {
        std::vector<const PriceSeries*> channels;
        for (const auto& id : manifest.basket) {
            const PriceSeries* s = find(id, artifact);
            if (!s)
                return {};
            channels.push_back(s);
        }
        return channels;
    }

    const StressSeries* arousal(const std::string& artifact) {
        if (!arousal_cache) {
            auto channels = basket_channels(artifact);
            if (channels.empty())
                return nullptr;
            arousal_cache = rolling_mod_mmse(channels, manifest.config.entropy, true,
                                             manifest.config.threads);
        }
        return &*arousal_cache;
    }

    void record(const fs::path& file) { report.artifacts.push_back(file.string()); }
};

void run_mse(RunState& st, const std::vector<std::string>& targets) {
    const ToolkitConfig& c = st.manifest.config;
    for (const auto& id : targets) {
        const std::string artifact = "mse " + id;
        if (!st.find(id, artifact))
            continue;
        try {
            const fs::path file = st.out_dir / ("mse_" + id + ".csv");
            if (c.entropy_reciprocal) {
                write_stress_csv(file, rolling_mod_mse(st.series.at(id), c.entropy, true,
                                                       c.threads));
            } else {
                write_stress_csv(file, st.plain_mse(id));
            }
            st.record(file);
        } catch (const std::exception& e) {
            st.report.errors.push_back(artifact + ": " + e.what());
        }
    }
}

void run_mmse(RunState& st) {
    const ToolkitConfig& c = st.manifest.config;
    const std::string artifact = "mmse " + join(st.manifest.basket, '+');
    auto channels = st.basket_channels(artifact);
    if (channels.empty())
        return;
    try {
        StressSeries s = rolling_mod_mmse(channels, c.entropy, c.entropy_reciprocal, c.threads);
        const fs::path file = st.out_dir / ("mmse_" + s.instrument_id + ".csv");
        write_stress_csv(file, s);
        st.record(file);
    } catch (const std::exception& e) {
        st.report.errors.push_back(artifact + ": " + e.what());
    }
}

void run_det(RunState& st, const std::vector<std::string>& targets) {
    const ToolkitConfig& c = st.manifest.config;
    for (const auto& id : targets) {
        const std::string artifact = "det " + id;
        if (!st.find(id, artifact))
            continue;
        try {
            StressSeries s = rolling_det(st.series.at(id), c.rqa, c.rqa_window, c.rqa_increment,
                                         c.seed, c.threads);
            const fs::path file = st.out_dir / ("det_" + id + ".csv");
            write_stress_csv(file, s);
            st.record(file);
        } catch (const std::exception& e) {
            st.report.errors.push_back(artifact + ": " + e.what());
        }
    }
}

void run_alis(RunState& st, const std::vector<std::string>& targets) {
    const ToolkitConfig& c = st.manifest.config;
    for (const auto& id : targets) {
        const std::string artifact = "alis " + id;
        if (!st.find(id, artifact))
            continue;
        try {
            AlisSeries s = ia_alis(st.series.at(id), c.calendar, c.alis);
            const fs::path file = st.out_dir / ("alis_" + id + ".csv");
            write_alis_csv(file, s, c.alis);
            st.record(file);
        } catch (const std::exception& e) {
            st.report.errors.push_back(artifact + ": " + e.what());
        }
    }
}

void run_catastrophe(RunState& st, const std::vector<std::string>& targets) {
    const ToolkitConfig& c = st.manifest.config;
    const bool want_csv = st.manifest.format != ArtifactFormat::svg;
    const bool want_svg = st.manifest.format != ArtifactFormat::csv;
    for (const auto& id : targets) {
        const std::string artifact = "catastrophe " + id;
        if (!st.find(id, artifact))
            continue;
        try {
            const StressSeries* arousal = st.arousal(artifact);
            if (!arousal)
                return; // basket ingest failure already reported once
            CatastrophePath path = build_path(st.plain_mse(id), *arousal, c.smoothing);
            auto segments = slice_crises(path, c.registry, &st.report.warnings);
            if (want_csv) {
                const fs::path file = st.out_dir / ("catastrophe_" + id + ".csv");
                write_path_csv(file, path, segments);
                st.record(file);
            }
            if (want_svg) {
                SvgStyle style;
                style.title = id;
                const fs::path file = st.out_dir / ("catastrophe_" + id + ".svg");
                write_text(file, emit_svg(std::vector<CatastrophePath>{path}, style));
                st.record(file);
                if (c.segments_svg) {
                    style.title = id + " crisis segments";
                    const fs::path seg_file = st.out_dir / ("catastrophe_segments_" + id + ".svg");
                    write_text(seg_file, emit_svg(segments, style));
                    st.record(seg_file);
                }
            }
        } catch (const std::exception& e) {
            st.report.errors.push_back(artifact + ": " + e.what());
        }
    }
}

} // namespace

RunReport run(const RunManifest& manifest) {
    if (auto problems = validate_manifest(manifest); !problems.empty()) {
        std::string msg = "manifest problems:";
        for (const auto& p : problems)
            msg += "\n  " + p;
        throw ConfigError(msg);
    }

    RunReport report;
    RunState st{manifest, report, fs::path(manifest.output_dir), {}, {}, {}};
    std::error_code ec;
    fs::create_directories(st.out_dir, ec);
    if (ec)
        throw ConfigError("output_dir " + manifest.output_dir + ": " + ec.message());

    for (const auto& [id, path] : manifest.inputs) {
        try {
            st.series.emplace(id, ingest_csv(path, manifest.config.calendar, id));
        } catch (const std::exception& e) {
            report.errors.push_back("ingest " + id + ": " + e.what());
        }
    }

    std::vector<std::string> targets = manifest.targets;
    if (targets.empty())
        for (const auto& [id, path] : manifest.inputs)
            targets.push_back(id);

    if (wants(manifest, "mse"))
        run_mse(st, targets);
    if (wants(manifest, "mmse"))
        run_mmse(st);
    if (wants(manifest, "det"))
        run_det(st, targets);
    if (wants(manifest, "alis"))
        run_alis(st, targets);
    if (wants(manifest, "catastrophe"))
        run_catastrophe(st, targets);

    const fs::path meta = st.out_dir / "run_metadata.txt";
    write_text(meta, metadata_text(manifest, targets));
    st.record(meta);
    return report;
}

} // namespace stresskit
