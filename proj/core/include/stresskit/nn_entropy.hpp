#pragma once

#include <vector>

namespace stresskit {

/// Digamma via the ascending recurrence into the asymptotic series; x > 0.
double digamma(double x);

/// Kozachenko-Leonenko nearest-neighbor estimate of differential entropy
/// (natural log) for >= 2 points of equal dimension.  Zero nearest-neighbor
/// distances are floored at 1e-300 so degenerate clouds stay finite.
double kl_entropy(const std::vector<std::vector<double>>& points);

} // namespace stresskit
