#pragma once

// Closed-form bounds, evaluated in log2 space.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xcover {

inline constexpr double bound_tolerance = 1e-9;

/// Exponent of the Δ-bounded Set Cover algorithm, 2^{λ_Δ n}:
/// λ_Δ = (2Δ-2) / sqrt((2Δ-1)^2 - 2 ln 2). Throws if λ_Δ ≤ 1 - 1/(2Δ) fails.
inline double koivisto_lambda(double delta)
{
    if (!(delta >= 2.0))
        throw std::invalid_argument("lambda needs delta >= 2");
    const double x = 2.0 * delta - 1.0;
    const double lambda = (2.0 * delta - 2.0) / std::sqrt(x * x - 2.0 * std::log(2.0));
    if (lambda > 1.0 - 1.0 / (2.0 * delta))
        throw std::logic_error("lambda exceeds 1 - 1/(2 delta) at delta = " + std::to_string(delta));
    return lambda;
}

/// log2(2^a + 2^b) without overflow.
inline double log2_sum(double a, double b)
{
    const double hi = std::max(a, b), lo = std::min(a, b);
    if (std::isinf(lo) && lo < 0)
        return hi;
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

/// Exponent f(n, Δ) of a Set Cover algorithm running in 2^{f(n, Δ)}.
using ExponentFn = std::function<double(double n, double delta)>;

/// Elements per produced instance: ñ + 9ñ/Δ.
inline double inflated_elements(double ntilde, double delta)
{
    return ntilde + 9.0 * ntilde / delta;
}

/// log2(ñ^Δ + ñ^{c·ñ/Δ} · 2^{f(n, Δ)}) with n = ñ + 9ñ/Δ: enumerating subtree
/// placements, then running the Set Cover algorithm on each of ñ^{c·ñ/Δ} instances.
/// c = 1 is the plain composition; c = 9 uses the nTree reduction's instance count.
inline double compose_runtime(double ntilde, double delta, const ExponentFn& f_exponent, double count_factor = 1.0)
{
    if (!(ntilde >= 2.0))
        throw std::invalid_argument("compose_runtime needs ntilde >= 2");
    if (!(delta >= 1.0 && delta <= ntilde))
        throw std::invalid_argument("compose_runtime needs 1 <= delta <= ntilde");
    const double lg = std::log2(ntilde);
    const double enumerate = delta * lg;
    const double solve = count_factor * ntilde / delta * lg + f_exponent(inflated_elements(ntilde, delta), delta);
    return log2_sum(enumerate, solve);
}

/// Δ = 81/ε · log2 ñ.
inline double reduction_delta(double epsilon, double ntilde)
{
    return 81.0 / epsilon * std::log2(ntilde);
}

/// Does the nTree pipeline with Δ = 81/ε·log2 ñ and a 2^{(1-ε)n} Set Cover algorithm
/// stay within 2^{ñ - εñ/2}?
inline bool pipeline_beats_target(double epsilon, double ntilde)
{
    const double delta = reduction_delta(epsilon, ntilde);
    if (delta > ntilde)
        return false;
    const auto f = [epsilon](double n, double) { return (1.0 - epsilon) * n; };
    return compose_runtime(ntilde, delta, f, 9.0) <= ntilde - epsilon * ntilde / 2.0 + bound_tolerance;
}

/// Least ñ (searched over powers of two, then bisected) from which the pipeline stays
/// within 2^{ñ - εñ/2}, assuming the crossing happens below 2^max_log2.
inline std::optional<double> pipeline_threshold(double epsilon, int max_log2 = 60)
{
    double hi = -1;
    for (int e = 2; e <= max_log2; ++e)
        if (pipeline_beats_target(epsilon, std::exp2(e))) {
            hi = std::exp2(e);
            break;
        }
    if (hi < 0)
        return std::nullopt;
    double lo = hi / 2;
    while (hi - lo > 1.0) {
        const double mid = std::floor((lo + hi) / 2);
        (pipeline_beats_target(epsilon, mid) ? hi : lo) = mid;
    }
    return hi;
}

/// One declared-versus-realised comparison.
struct BoundCheck {
    std::string name;
    double declared_log2 = 0.0;
    double realised_log2 = 0.0;

    bool within() const { return realised_log2 <= declared_log2 + bound_tolerance; }
};

/// Bound bookkeeping for one reduction run.
struct BoundReport {
    std::string reduction;
    double ntilde = 0, delta = 0, epsilon = 0, g = 0;
    std::vector<BoundCheck> checks;
    std::optional<double> composed_runtime_log2;

    void add(std::string name, double declared_log2, double realised_log2)
    {
        checks.push_back({std::move(name), declared_log2, realised_log2});
    }

    bool all_within() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.within(); });
    }
};

/// log2 of a count, with log2(0) reported as 0 so empty batches compare cleanly.
inline double log2_count(double count)
{
    return count <= 1.0 ? 0.0 : std::log2(count);
}

} // namespace xcover
