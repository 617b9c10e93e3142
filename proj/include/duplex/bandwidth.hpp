// bandwidth.hpp — Frequency-integrated rate regions: per-detuning regions on
// an even frequency grid, scaled Minkowski folding, and the duplex advantage
// window.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "duplex/geometry.hpp"
#include "duplex/optimize.hpp"
#include "duplex/parallel.hpp"
#include "duplex/region.hpp"

namespace duplex {

// Evenly spaced detunings (units of the internal-loss reference).
struct FrequencyGrid {
    double delta_min = -10.0;
    double delta_max = 10.0;
    int points = 41;

    double spacing() const {
        return points > 1 ? (delta_max - delta_min) / (points - 1) : 0.0;
    }

    std::vector<double> values() const {
        std::vector<double> v(points);
        for (int i = 0; i < points; ++i) {
            v[i] = points > 1 ? delta_min + spacing() * i : delta_min;
        }
        return v;
    }

    static FrequencyGrid from_values(const std::vector<double>& deltas) {
        if (deltas.size() < 2) throw std::invalid_argument("FrequencyGrid: need >= 2 deltas");
        const double d = deltas[1] - deltas[0];
        for (std::size_t i = 1; i + 1 < deltas.size(); ++i) {
            if (std::abs((deltas[i + 1] - deltas[i]) - d) > 1e-12) {
                throw std::invalid_argument("FrequencyGrid: spacing not uniform within 1e-12");
            }
        }
        FrequencyGrid g;
        g.delta_min = deltas.front();
        g.delta_max = deltas.back();
        g.points = static_cast<int>(deltas.size());
        return g;
    }
};

// delta * (R(w1) (+) R(w2) (+) ...): Minkowski fold followed by the scalar
// frequency weight.
inline ConvexRegion frequency_integrated_region(const std::vector<ConvexRegion>& regions,
                                                double spacing) {
    if (regions.empty()) throw std::invalid_argument("frequency_integrated_region: empty list");
    ConvexRegion acc = regions.front();
    for (std::size_t i = 1; i < regions.size(); ++i) acc = minkowski_sum(acc, regions[i]);
    return scale(acc, spacing);
}

struct BandPoint {
    double delta = 0.0;
    double max_sum = 0.0;   // max I1 + I2 over the per-delta region
    double i_max = 0.0;     // unidirectional capacity at this delta
    bool advantage = false;
    Vec2 best_point;        // hull vertex attaining max_sum (slope -1 support)
};

struct BandSummary {
    std::vector<BandPoint> profile;
    std::vector<std::pair<double, double>> advantage_intervals;
    std::vector<ConvexRegion> per_delta;  // time-sharing hulls R~(delta)
    ConvexRegion integrated;              // delta-scaled Minkowski fold
    ConvexRegion unidirectional;          // frequency-wise time-shared triangle
};

namespace detail {

// Per-delta thermal region of the symmetric device at Delta1 = Delta2 = delta,
// with a Nelder-Mead pass sharpening the I1 + I2 support vertex.
inline void band_point(const DeviceFamily& fam, double delta, const EncodingGrid& grid,
                       BandPoint& bp, ConvexRegion& hull) {
    const EffectiveChannel ch = device_channel(fam, delta, delta);
    bp.delta = delta;
    bp.i_max = (ch.t() < 1.0) ? pure_loss_capacity(ch.t()) : std::numeric_limits<double>::infinity();

    std::vector<double> ns = grid.values();
    std::vector<RatePair> rates;
    rates.reserve(ns.size() * ns.size());
    for (double n1 : ns) {
        for (double n2 : ns) rates.push_back(thermal_rates(ch, {n1, n2}));
    }

    // Sharpen the sum direction from the best grid seed.
    double best_sum = 0.0;
    double seed1 = 1.0, seed2 = 1.0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const double s = rates[i].i1 + rates[i].i2;
        const double n1 = ns[i / ns.size()], n2 = ns[i % ns.size()];
        if (s > best_sum && !std::isinf(n1) && !std::isinf(n2) && n1 > 0.0 && n2 > 0.0) {
            best_sum = s;
            seed1 = n1;
            seed2 = n2;
        }
    }
    const double ln_lo = std::log(1e-4), ln_hi = std::log(1e4);
    Eigen::VectorXd x0(2);
    x0 << std::log(seed1), std::log(seed2);
    auto [x, val] = nelder_mead_max(
        [&](const Eigen::VectorXd& v) {
            const RatePair r = thermal_rates(ch, {std::exp(std::clamp(v(0), ln_lo, ln_hi)),
                                                  std::exp(std::clamp(v(1), ln_lo, ln_hi))});
            return r.i1 + r.i2;
        },
        x0);
    const RatePair polished = thermal_rates(ch, {std::exp(std::clamp(x(0), ln_lo, ln_hi)),
                                                 std::exp(std::clamp(x(1), ln_lo, ln_hi))});
    rates.push_back(polished);

    hull = convex_hull_of_rates(rates);
    bp.max_sum = hull.max_coordinate_sum();
    bp.advantage = bp.max_sum > bp.i_max + 1e-9;
    bp.best_point = {0.0, 0.0};
    for (const Vec2& v : hull.vertices()) {
        if (v.x + v.y >= bp.max_sum - 1e-12) bp.best_point = v;
    }
}

}  // namespace detail

inline BandSummary band_analysis(const DeviceFamily& fam, const FrequencyGrid& freq,
                                 const EncodingGrid& grid = {}, unsigned threads = 1) {
    const std::vector<double> deltas = freq.values();
    BandSummary out;
    out.profile.resize(deltas.size());
    out.per_delta.resize(deltas.size());
    parallel_for_index(deltas.size(), threads, [&](std::size_t i) {
        detail::band_point(fam, deltas[i], grid, out.profile[i], out.per_delta[i]);
    });

    for (std::size_t i = 0; i < out.profile.size(); ++i) {
        if (!out.profile[i].advantage) continue;
        const double lo = out.profile[i].delta;
        std::size_t j = i;
        while (j + 1 < out.profile.size() && out.profile[j + 1].advantage) ++j;
        out.advantage_intervals.emplace_back(lo, out.profile[j].delta);
        i = j;
    }

    out.integrated = frequency_integrated_region(out.per_delta, freq.spacing());
    double total_imax = 0.0;
    for (const BandPoint& bp : out.profile) total_imax += bp.i_max;
    const double legs = freq.spacing() * total_imax;
    out.unidirectional =
        ConvexRegion(std::vector<Vec2>{{0.0, 0.0}, {legs, 0.0}, {0.0, legs}});
    return out;
}

// Maximal sub-intervals of the frequency grid where simultaneous duplex
// transduction beats the per-frequency unidirectional capacity.
inline std::vector<std::pair<double, double>> advantage_window(const DeviceFamily& fam,
                                                               const FrequencyGrid& freq,
                                                               const EncodingGrid& grid = {},
                                                               unsigned threads = 1) {
    return band_analysis(fam, freq, grid, threads).advantage_intervals;
}

}  // namespace duplex
