#pragma once

// Determinism reference that scans every diagonal of BOTH triangles for
// maximal runs, independent of the library's doubled upper-triangle scan.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace naive {

inline std::optional<double> det(const std::vector<std::uint8_t>& cells, std::size_t q,
                                 int j_min) {
    std::vector<long long> hist(q + 1, 0);
    const long long qq = static_cast<long long>(q);
    for (long long off = -(qq - 1); off <= qq - 1; ++off) {
        if (off == 0)
            continue; // line of identity stays out of the statistic
        long long run = 0;
        for (long long i = 0; i < qq; ++i) {
            const long long j = i + off;
            if (j < 0 || j >= qq)
                continue;
            if (cells[static_cast<std::size_t>(i * qq + j)]) {
                ++run;
            } else {
                if (run > 0)
                    ++hist[static_cast<std::size_t>(run)];
                run = 0;
            }
        }
        if (run > 0)
            ++hist[static_cast<std::size_t>(run)];
    }
    long long total = 0, deterministic = 0;
    for (std::size_t j = 1; j <= q; ++j) {
        total += static_cast<long long>(j) * hist[j];
        if (static_cast<int>(j) >= j_min)
            deterministic += static_cast<long long>(j) * hist[j];
    }
    if (total == 0)
        return std::nullopt;
    return static_cast<double>(deterministic) / static_cast<double>(total);
}

} // namespace naive
