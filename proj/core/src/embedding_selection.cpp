#include "stresskit/nn_entropy.hpp"
#include "stresskit/rqa.hpp"

#include "stresskit/errors.hpp"
#include "stresskit/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace stresskit {

double digamma(double x) {
    if (!(x > 0.0))
        throw Error("digamma needs x > 0");
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    //  ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6)
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double kl_entropy(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    if (n < 2)
        throw Error("nearest-neighbor entropy needs >= 2 points");
    const std::size_t d = points.front().size();
    if (d == 0)
        throw Error("points must have dimension >= 1");

    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = points[i][k] - points[j][k];
                s += diff * diff;
            }
            if (s < best)
                best = s;
        }
        double rho = std::sqrt(best);
        if (rho < 1e-300)
            rho = 1e-300;
        log_sum += std::log(rho);
    }

    // H = gamma + psi(n) + ln V_d + (d/n) sum ln rho_i, with V_d the
    // Euclidean unit-ball volume pi^(d/2) / Gamma(d/2 + 1).
    const double dd = static_cast<double>(d);
    const double log_vd = 0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd + 1.0);
    const double gamma_euler = -digamma(1.0);
    return gamma_euler + digamma(static_cast<double>(n)) + log_vd +
           dd * log_sum / static_cast<double>(n);
}

namespace {

// Additive dimension penalty.  The ratio criterion alone is scale-free but
// noisy between neighboring dimensions on structure-free data; the penalty
// must dominate that estimator noise while staying far below the ratio drop
// a real attractor produces.  Additive (not multiplicative) so a negative
// data entropy cannot flip the penalty's direction.
double dimension_penalty(int m, std::size_t window_len) {
    const double n = static_cast<double>(window_len);
    return 5.0 * static_cast<double>(m) * std::log(n) / n;
}

} // namespace

EmbeddingChoice select_embedding(std::span<const double> window, const RqaConfig& cfg,
                                 std::uint64_t seed) {
    cfg.validate();
    if (window.size() < 2)
        throw Error("window too short for embedding selection");

    // One surrogate ensemble per call, shared across grid points: common
    // draws cancel ensemble noise out of cross-grid comparisons.
    std::vector<std::vector<double>> surrogates(static_cast<std::size_t>(cfg.surrogates));
    for (std::size_t s = 0; s < surrogates.size(); ++s) {
        SplitMix64 rng(mix_seed(seed, s));
        surrogates[s].resize(window.size());
        for (double& v : surrogates[s])
            v = rng.next_gaussian();
    }

    const std::vector<double> data(window.begin(), window.end());
    EmbeddingChoice best;
    bool found = false;
    for (int m = cfg.grid_m_lo; m <= cfg.grid_m_hi; ++m) {
        for (int l = cfg.grid_l_lo; l <= cfg.grid_l_hi; ++l) {
            const std::size_t reach = static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(l);
            if (window.size() < reach + 2)
                continue; // grid point does not fit this window
            const double h_data = kl_entropy(takens_embed(data, m, l));
            double h_surr = 0.0;
            for (const auto& s : surrogates)
                h_surr += kl_entropy(takens_embed(s, m, l));
            h_surr /= static_cast<double>(surrogates.size());
            const double criterion = h_data / h_surr + dimension_penalty(m, window.size());
            // Strict < plus ascending iteration order = ties break toward
            // smaller m, then smaller l.
            if (!found || criterion < best.criterion) {
                best = {m, l, criterion};
                found = true;
            }
        }
    }
    if (!found)
        throw Error("window too short for every grid point");
    return best;
}

} // namespace stresskit
