#include "stresskit/manifest.hpp"

#include "stresskit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace stresskit {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return std::string(s);
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string item =
            trim(std::string_view(value).substr(start, comma == std::string::npos
                                                           ? std::string::npos
                                                           : comma - start));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

Date parse_date_or_throw(const std::string& key, const std::string& text) {
    const auto d = parse_date(text);
    if (!d)
        throw ConfigError(key + ": expected YYYY-MM-DD, got '" + text + "'");
    return *d;
}

} // namespace

std::string_view to_string(ArtifactFormat f) noexcept {
    switch (f) {
    case ArtifactFormat::csv: return "csv";
    case ArtifactFormat::svg: return "svg";
    case ArtifactFormat::both: return "both";
    }
    return "unknown";
}

void apply_key(RunManifest& m, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    ToolkitConfig& c = m.config;

    if (key.rfind("input.", 0) == 0) {
        const std::string id = key.substr(6);
        if (id.empty())
            throw ConfigError("input key needs an instrument id: input.<ID> = path");
        for (auto& [existing, path] : m.inputs) {
            if (existing == id) {
                path = value; // later assignment wins, id keeps its slot
                return;
            }
        }
        m.inputs.emplace_back(id, value);
        return;
    }
    if (key.rfind("crisis.", 0) == 0) {
        const std::string label = key.substr(7);
        if (label.empty())
            throw ConfigError("crisis key needs a label: crisis.<LABEL> = start:end");
        const std::size_t colon = value.find(':');
        if (colon == std::string::npos)
            throw ConfigError(key + ": expected 'YYYY-MM-DD:YYYY-MM-DD'");
        const Date start = parse_date_or_throw(key, trim(std::string_view(value).substr(0, colon)));
        const Date end = parse_date_or_throw(key, trim(std::string_view(value).substr(colon + 1)));
        // The first override replaces the default registry; later ones accumulate.
        if (!m.registry_overridden) {
            m.config.registry.intervals.clear();
            m.registry_overridden = true;
        }
        m.config.registry.intervals.push_back({label, start, end});
        return;
    }

    if (key == "basket") { m.basket = split_list(value); return; }
    if (key == "targets") { m.targets = split_list(value); return; }
    if (key == "measures") { m.measures = split_list(value); return; }
    if (key == "output_dir") { m.output_dir = value; return; }
    if (key == "format") {
        if (value == "csv") m.format = ArtifactFormat::csv;
        else if (value == "svg") m.format = ArtifactFormat::svg;
        else if (value == "both") m.format = ArtifactFormat::both;
        else throw ConfigError("format: expected csv|svg|both, got '" + value + "'");
        return;
    }
    if (key == "seed") { c.seed = parse_u64(key, value); return; }
    if (key == "threads") { c.threads = parse_int(key, value); return; }

    if (key == "entropy.m") {
        c.entropy.embedding = EmbeddingSpec::uniform(1, parse_int(key, value), c.entropy.embedding.delays[0]);
        return;
    }
    if (key == "entropy.l") {
        c.entropy.embedding = EmbeddingSpec::uniform(1, c.entropy.embedding.dims[0], parse_int(key, value));
        return;
    }
    if (key == "entropy.r") { c.entropy.r = parse_real(key, value); return; }
    if (key == "entropy.tau") { c.entropy.tau = parse_int(key, value); return; }
    if (key == "entropy.window") { c.entropy.window = parse_int(key, value); return; }
    if (key == "entropy.increment") { c.entropy.increment = parse_int(key, value); return; }
    if (key == "entropy.reciprocal") { c.entropy_reciprocal = parse_bool(key, value); return; }

    if (key == "rqa.m") { c.rqa.m = parse_int(key, value); return; }
    if (key == "rqa.l") { c.rqa.l = parse_int(key, value); return; }
    if (key == "rqa.selection") {
        if (value == "fixed") c.rqa.selection = EmbeddingSelection::fixed;
        else if (value == "auto") c.rqa.selection = EmbeddingSelection::automatic;
        else throw ConfigError("rqa.selection: expected fixed|auto, got '" + value + "'");
        return;
    }
    if (key == "rqa.epsilon_fraction") { c.rqa.epsilon_fraction = parse_real(key, value); return; }
    if (key == "rqa.jmin") { c.rqa.j_min = parse_int(key, value); return; }
    if (key == "rqa.tau") { c.rqa.tau = parse_int(key, value); return; }
    if (key == "rqa.window") { c.rqa_window = parse_int(key, value); return; }
    if (key == "rqa.increment") { c.rqa_increment = parse_int(key, value); return; }

    if (key == "alis.lf_cut") { c.alis.bands.lf_cut = parse_real(key, value); return; }
    if (key == "alis.hf_lo") { c.alis.bands.hf_lo = parse_real(key, value); return; }
    if (key == "alis.hf_hi") { c.alis.bands.hf_hi = parse_real(key, value); return; }
    if (key == "alis.trim") { c.alis.trim = parse_real(key, value); return; }
    if (key == "alis.detrend_tau") { c.alis.detrend_tau = parse_int(key, value); return; }
    if (key == "alis.window") { c.alis.window = parse_int(key, value); return; }
    if (key == "alis.increment") { c.alis.increment = parse_int(key, value); return; }

    if (key == "catastrophe.smoothing") { c.smoothing = parse_int(key, value); return; }
    if (key == "catastrophe.segments_svg") { c.segments_svg = parse_bool(key, value); return; }

    if (key == "calendar.year_length") { c.calendar.days_per_year = parse_int(key, value); return; }
    if (key == "calendar.month_length") { c.calendar.days_per_month = parse_int(key, value); return; }

    throw ConfigError("unknown configuration key '" + key + "'");
}

RunManifest parse_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open manifest: " + file.string());

    RunManifest manifest;
    std::vector<std::string> problems;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        try {
            apply_key(manifest, text.substr(0, eq), text.substr(eq + 1));
        } catch (const ConfigError& e) {
            problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!problems.empty()) {
        std::string joined = "manifest problems:";
        for (const std::string& p : problems)
            joined += "\n  " + p;
        throw ConfigError(joined);
    }
    return manifest;
}

std::vector<std::string> validate_manifest(const RunManifest& m) {
    std::vector<std::string> problems;

    if (m.inputs.empty())
        problems.push_back("no inputs declared (input.<ID> = path)");
    std::set<std::string> ids;
    for (const auto& [id, path] : m.inputs) {
        ids.insert(id);
        if (path.empty())
            problems.push_back("input." + id + " has an empty path");
    }

    if (m.measures.empty())
        problems.push_back("measures list is empty");
    static const std::set<std::string> known = {"mse", "mmse", "det", "alis", "catastrophe"};
    bool wants_mmse = false, wants_catastrophe = false;
    for (const std::string& measure : m.measures) {
        if (!known.count(measure))
            problems.push_back("unknown measure '" + measure + "'");
        wants_mmse |= measure == "mmse";
        wants_catastrophe |= measure == "catastrophe";
    }

    for (const std::string& id : m.basket) {
        if (!ids.count(id))
            problems.push_back("basket id '" + id + "' is not among the inputs");
    }
    if ((wants_mmse || wants_catastrophe) && m.basket.size() < 2)
        problems.push_back("mmse/catastrophe need a basket of >= 2 inputs");
    for (const std::string& id : m.targets) {
        if (!ids.count(id))
            problems.push_back("target id '" + id + "' is not among the inputs");
    }

    const ToolkitConfig& c = m.config;
    try { c.entropy.validate(); } catch (const ConfigError& e) { problems.push_back(e.what()); }
    try { c.rqa.validate(); } catch (const ConfigError& e) { problems.push_back(e.what()); }
    try { c.alis.validate(); } catch (const ConfigError& e) { problems.push_back(e.what()); }
    try { c.registry.validate(); } catch (const ConfigError& e) { problems.push_back(e.what()); }
    if (!c.calendar.valid())
        problems.push_back("calendar lengths invalid");
    if (c.rqa_window < 64)
        problems.push_back("rqa.window must be >= 64");
    if (c.rqa_increment < 1)
        problems.push_back("rqa.increment must be >= 1");
    if (c.smoothing < 1)
        problems.push_back("catastrophe.smoothing must be >= 1");
    if (c.threads < 1)
        problems.push_back("threads must be >= 1");
    return problems;
}

} // namespace stresskit
