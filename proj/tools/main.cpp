#include "stresskit/csv.hpp"
#include "stresskit/detrend.hpp"
#include "stresskit/errors.hpp"
#include "stresskit/manifest.hpp"
#include "stresskit/rng.hpp"
#include "stresskit/rqa.hpp"
#include "stresskit/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace stresskit;

// Every config key doubles as a long flag of the same spelling; precedence is
// flag > manifest > default because flags are applied after the manifest.
const std::vector<std::string> kConfigKeys = {
    "entropy.m",      "entropy.l",        "entropy.r",
    "entropy.tau",    "entropy.window",   "entropy.increment",
    "entropy.reciprocal",
    "rqa.m",          "rqa.l",            "rqa.selection",
    "rqa.epsilon_fraction",               "rqa.jmin",
    "rqa.tau",        "rqa.window",       "rqa.increment",
    "alis.lf_cut",    "alis.hf_lo",       "alis.hf_hi",
    "alis.trim",      "alis.detrend_tau", "alis.window",
    "alis.increment",
    "catastrophe.smoothing",              "catastrophe.segments_svg",
    "calendar.year_length",               "calendar.month_length",
    "seed",           "threads",          "format",
    "basket",         "targets",          "measures",
};

struct FlagSet {
    std::vector<std::string> inputs;   // ID=PATH, repeatable
    std::vector<std::string> crises;   // LABEL=START:END, repeatable
    std::vector<std::pair<std::string, std::string>> assignments;
};

void register_common(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("-i,--input", flags.inputs, "daily close CSV as ID=PATH (repeatable)")
        ->type_name("ID=PATH");
    cmd->add_option("--crisis", flags.crises,
                    "crisis interval as LABEL=START:END; first use replaces the default registry")
        ->type_name("LABEL=START:END");
    for (const auto& key : kConfigKeys) {
        cmd->add_option_function<std::string>(
            "--" + key,
            [&flags, key](const std::string& value) { flags.assignments.emplace_back(key, value); },
            "set config key " + key);
    }
    cmd->add_option_function<std::string>(
        "--output-dir,--output_dir",
        [&flags](const std::string& value) { flags.assignments.emplace_back("output_dir", value); },
        "directory for artifacts");
}

void apply_flags(RunManifest& manifest, const FlagSet& flags) {
    for (const auto& spec : flags.inputs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--input expects ID=PATH, got '" + spec + "'");
        apply_key(manifest, "input." + spec.substr(0, eq), spec.substr(eq + 1));
    }
    for (const auto& spec : flags.crises) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--crisis expects LABEL=START:END, got '" + spec + "'");
        apply_key(manifest, "crisis." + spec.substr(0, eq), spec.substr(eq + 1));
    }
    for (const auto& [key, value] : flags.assignments)
        apply_key(manifest, key, value);
}

int execute(const RunManifest& manifest) {
    const RunReport report = run(manifest);
    for (const auto& w : report.warnings)
        std::cerr << "warning: " << w << "\n";
    for (const auto& e : report.errors)
        std::cerr << "error: " << e << "\n";
    for (const auto& artifact : report.artifacts)
        std::cout << artifact << "\n";
    return report.ok() ? 0 : 1;
}

int cmd_ingest(const FlagSet& flags) {
    RunManifest scratch;
    apply_flags(scratch, flags);
    if (scratch.inputs.empty())
        throw ConfigError("ingest: no inputs (use -i ID=PATH)");
    bool failed = false;
    for (const auto& [id, path] : scratch.inputs) {
        try {
            const PriceSeries s = ingest_csv(path, scratch.config.calendar, id);
            std::cout << id << " rows=" << s.dates.size() << " first=" << format_date(s.dates.front())
                      << " last=" << format_date(s.dates.back()) << " filled=" << s.fill_count
                      << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << id << ": " << e.what() << "\n";
            failed = true;
        }
    }
    return failed ? 1 : 0;
}

// Recurrence plot of the final analysis window, built exactly as the rolling
// driver builds it (same detrending, same per-window selection seed).
void dump_last_rp(const RunManifest& manifest, const std::string& file) {
    if (manifest.inputs.size() != 1)
        throw ConfigError("--dump-rp needs exactly one input");
    const auto& [id, path] = manifest.inputs.front();
    const PriceSeries series = ingest_csv(path, manifest.config.calendar, id);
    const RqaConfig& rc = manifest.config.rqa;
    const int window = manifest.config.rqa_window;
    const int increment = manifest.config.rqa_increment;
    if (static_cast<int>(series.values.size()) < window)
        throw Error(id + ": series shorter than one window");
    const std::size_t last = (series.values.size() - static_cast<std::size_t>(window)) /
                             static_cast<std::size_t>(increment);
    const std::size_t pos = last * static_cast<std::size_t>(increment);
    const std::vector<double> z =
        standardize({series.values.data() + pos, static_cast<std::size_t>(window)});
    const std::vector<double> d = ma_detrend(z, rc.tau);
    int m = rc.m, l = rc.l;
    if (rc.selection == EmbeddingSelection::automatic) {
        const EmbeddingChoice choice = select_embedding(d, rc, mix_seed(manifest.config.seed, last));
        m = choice.m;
        l = choice.l;
    }
    const RecurrenceMatrix rp = recurrence_matrix(takens_embed(d, m, l), rc.epsilon_fraction);
    write_pgm(rp, file);
    std::cout << file << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch toolkit for rolling complexity measures of daily price series"};
    app.set_version_flag("--version", "stresskit 1.0.0");
    app.require_subcommand(1);

    FlagSet flags;
    std::string manifest_path;
    std::string rp_file;

    CLI::App* ingest = app.add_subcommand("ingest", "validate inputs and report the filled grid");
    register_common(ingest, flags);

    const std::pair<const char*, const char*> measures[] = {
        {"mse", "rolling sample entropy per instrument"},
        {"mmse", "rolling multichannel sample entropy over the basket"},
        {"det", "rolling recurrence determinism per instrument"},
        {"alis", "low-frequency intermittency score per instrument"},
        {"catastrophe", "arousal-performance paths per instrument"},
    };
    std::vector<CLI::App*> measure_cmds;
    for (const auto& [name, help] : measures) {
        CLI::App* cmd = app.add_subcommand(name, help);
        register_common(cmd, flags);
        if (std::string(name) == "det")
            cmd->add_option("--dump-rp", rp_file,
                            "also write the final window's recurrence plot as PGM");
        measure_cmds.push_back(cmd);
    }

    CLI::App* run_cmd = app.add_subcommand("run", "execute a key=value manifest file");
    run_cmd->add_option("manifest", manifest_path, "manifest path")->required();
    register_common(run_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ingest->parsed())
            return cmd_ingest(flags);

        RunManifest manifest;
        if (run_cmd->parsed())
            manifest = parse_manifest(manifest_path);
        for (std::size_t i = 0; i < measure_cmds.size(); ++i)
            if (measure_cmds[i]->parsed())
                manifest.measures = {measures[i].first};
        apply_flags(manifest, flags);

        int status = execute(manifest);
        if (!rp_file.empty()) {
            dump_last_rp(manifest, rp_file);
        }
        return status;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
