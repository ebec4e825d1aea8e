#pragma once

#include "stresskit/manifest.hpp"

#include <string>
#include <vector>

namespace stresskit {

struct RunReport {
    std::vector<std::string> artifacts; // files written, run order
    std::vector<std::string> errors;    // one line per artifact that could not be produced
    std::vector<std::string> warnings;  // non-fatal notes (e.g. crisis outside the path)

    bool ok() const noexcept { return errors.empty(); }
};

/// Execute a validated manifest: ingest every input, compute the requested
/// measures, write the artifacts and run_metadata.txt into output_dir.
/// Throws ConfigError (with every problem listed) if validation fails;
/// per-instrument computation failures land in the report instead of
/// aborting the rest.
RunReport run(const RunManifest& manifest);

} // namespace stresskit
