// region.hpp — Rate regions: grid sampling, boundary tracing through
// rank-deficient Jacobians, analytic reflectionless branches, time-sharing
// hulls, and protocol labelling of the boundary.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duplex/device.hpp"
#include "duplex/geometry.hpp"
#include "duplex/math.hpp"
#include "duplex/optimize.hpp"
#include "duplex/parallel.hpp"
#include "duplex/rates.hpp"

namespace duplex {

enum class ProtocolLabel { axis_capacity, low_rank_jacobian, reflectionless, time_sharing };

inline const char* label_name(ProtocolLabel l) {
    switch (l) {
        case ProtocolLabel::axis_capacity: return "axis-capacity";
        case ProtocolLabel::low_rank_jacobian: return "low-rank-jacobian";
        case ProtocolLabel::reflectionless: return "reflectionless";
        case ProtocolLabel::time_sharing: return "time-sharing";
    }
    return "time-sharing";
}

inline std::optional<ProtocolLabel> label_from_name(std::string_view s) {
    if (s == "axis-capacity") return ProtocolLabel::axis_capacity;
    if (s == "low-rank-jacobian") return ProtocolLabel::low_rank_jacobian;
    if (s == "reflectionless") return ProtocolLabel::reflectionless;
    if (s == "time-sharing") return ProtocolLabel::time_sharing;
    return std::nullopt;
}

using Params = std::vector<std::pair<std::string, double>>;

struct SamplePoint {
    RatePair rate;
    Params params;
};

struct BoundaryPoint {
    RatePair rate;
    ProtocolLabel label = ProtocolLabel::time_sharing;
    Params params;
};

struct RateRegion {
    std::vector<SamplePoint> points;
    std::vector<BoundaryPoint> boundary;  // counterclockwise, starting at the origin vertex
    ConvexRegion hull;
};

// Logarithmic photon-number grid with optional exact 0 and infinity sentinels.
struct EncodingGrid {
    double n_min = 1e-3;
    double n_max = 1e3;
    int points = 121;
    bool include_zero = true;
    bool include_infinity = true;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(points + 2);
        if (include_zero) v.push_back(0.0);
        if (points == 1) {
            v.push_back(n_min);
        } else {
            const double l0 = std::log(n_min), l1 = std::log(n_max);
            for (int i = 0; i < points; ++i) {
                v.push_back(std::exp(l0 + (l1 - l0) * i / (points - 1)));
            }
        }
        if (include_infinity) v.push_back(kInfinitePhotons);
        return v;
    }
};

using RateFn = std::function<RatePair(double, double)>;

namespace detail {

inline Params encoding_params(double n1, double n2) {
    return {{"N1", n1}, {"N2", n2}};
}

inline double param_value(const Params& p, std::string_view key, double fallback = 0.0) {
    for (const auto& [k, v] : p) {
        if (k == key) return v;
    }
    return fallback;
}

// Orders hull vertices counterclockwise starting from the origin (or the
// vertex closest to it).
inline std::vector<int> rotate_hull_to_origin(const std::vector<Vec2>& pts,
                                              const std::vector<int>& hull_idx) {
    int start = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull_idx.size(); ++i) {
        const double d = norm(pts[hull_idx[i]]);
        if (d < best) {
            best = d;
            start = static_cast<int>(i);
        }
    }
    std::vector<int> out;
    out.reserve(hull_idx.size());
    for (std::size_t i = 0; i < hull_idx.size(); ++i) {
        out.push_back(hull_idx[(start + i) % hull_idx.size()]);
    }
    return out;
}

}  // namespace detail

// Evaluates a two-parameter rate map over the encoding grid and assembles the
// region with its time-sharing hull. Axis endpoints come from the grid's
// infinity sentinels.
inline RateRegion sample_region(const RateFn& fn, const EncodingGrid& grid = {},
                                unsigned threads = 1) {
    const std::vector<double> ns = grid.values();
    const std::size_t m = ns.size();
    RateRegion region;
    region.points.resize(m * m + 1);
    parallel_for_index(m * m, threads, [&](std::size_t i) {
        const double n1 = ns[i / m], n2 = ns[i % m];
        try {
            region.points[i] = SamplePoint{fn(n1, n2), detail::encoding_params(n1, n2)};
        } catch (const numerical_error& e) {
            throw numerical_error(std::string(e.what()) + " at N1=" + std::to_string(n1) +
                                  ", N2=" + std::to_string(n2));
        }
    });
    region.points[m * m] = SamplePoint{RatePair{0.0, 0.0}, detail::encoding_params(0.0, 0.0)};

    std::vector<Vec2> coords(region.points.size());
    for (std::size_t i = 0; i < region.points.size(); ++i) {
        coords[i] = {region.points[i].rate.i1, region.points[i].rate.i2};
    }
    std::vector<int> hull_idx = convex_hull_indices(coords);
    hull_idx = detail::rotate_hull_to_origin(coords, hull_idx);

    std::vector<Vec2> hull_pts;
    hull_pts.reserve(hull_idx.size());
    region.boundary.reserve(hull_idx.size());
    for (int idx : hull_idx) {
        const SamplePoint& sp = region.points[idx];
        const double n1 = detail::param_value(sp.params, "N1");
        const double n2 = detail::param_value(sp.params, "N2");
        BoundaryPoint bp{sp.rate, ProtocolLabel::low_rank_jacobian, sp.params};
        if (sp.rate.i1 <= 1e-12 && sp.rate.i2 <= 1e-12) {
            // Null protocol; report the canonical vacuum encoding.
            bp.label = ProtocolLabel::time_sharing;
            bp.rate = {0.0, 0.0};
            bp.params = detail::encoding_params(0.0, 0.0);
        } else if ((std::isinf(n1) && n2 == 0.0) || (std::isinf(n2) && n1 == 0.0)) {
            bp.label = ProtocolLabel::axis_capacity;
        }
        region.boundary.push_back(std::move(bp));
        hull_pts.push_back(coords[idx]);
    }
    region.hull = ConvexRegion(std::move(hull_pts));
    return region;
}

// Boundary point located by the det(J) = 0 condition on the two-parameter
// encoding map, with the smallest-to-largest singular value ratio recorded.
struct TracedBoundaryPoint {
    double n1 = 0.0;
    double n2 = 0.0;
    RatePair rate;
    double sigma_ratio = 0.0;
};

namespace detail {

inline Eigen::Matrix2d rate_jacobian_log(const RateFn& fn, double u1, double u2,
                                         double step = 1e-4) {
    Eigen::Matrix2d j;
    const RatePair r1p = fn(std::exp(u1 + step), std::exp(u2));
    const RatePair r1m = fn(std::exp(u1 - step), std::exp(u2));
    const RatePair r2p = fn(std::exp(u1), std::exp(u2 + step));
    const RatePair r2m = fn(std::exp(u1), std::exp(u2 - step));
    j(0, 0) = (r1p.i1 - r1m.i1) / (2.0 * step);
    j(0, 1) = (r2p.i1 - r2m.i1) / (2.0 * step);
    j(1, 0) = (r1p.i2 - r1m.i2) / (2.0 * step);
    j(1, 1) = (r2p.i2 - r2m.i2) / (2.0 * step);
    return j;
}

}  // namespace detail

// Traces det(J) = 0 along grid lines in log-N coordinates with bisection and
// keeps the Pareto branch (opposed gradients). Returns points ordered by I1;
// empty when no sign change exists (decoupled channels).
inline std::vector<TracedBoundaryPoint> trace_boundary_jacobian(const RateFn& fn,
                                                                const EncodingGrid& grid = {},
                                                                unsigned threads = 1) {
    EncodingGrid interior = grid;
    interior.include_zero = false;
    interior.include_infinity = false;
    const std::vector<double> ns = interior.values();
    const int m = static_cast<int>(ns.size());
    std::vector<double> us(m);
    for (int i = 0; i < m; ++i) us[i] = std::log(ns[i]);

    std::vector<double> dets(static_cast<std::size_t>(m) * m);
    parallel_for_index(dets.size(), threads, [&](std::size_t i) {
        dets[i] = detail::rate_jacobian_log(fn, us[i / m], us[i % m]).determinant();
    });
    auto det_at = [&](int i, int j) { return dets[static_cast<std::size_t>(i) * m + j]; };

    std::vector<TracedBoundaryPoint> out;
    auto bisect_edge = [&](double ua, double ub, double va, double vb) {
        // Root of det along the segment (ua,va) -> (ub,vb).
        auto det_of = [&](double t) {
            return detail::rate_jacobian_log(fn, ua + t * (ub - ua), va + t * (vb - va))
                .determinant();
        };
        double lo = 0.0, hi = 1.0;
        double flo = det_of(lo);
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = det_of(mid);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double u = ua + 0.5 * (lo + hi) * (ub - ua);
        const double v = va + 0.5 * (lo + hi) * (vb - va);
        const Eigen::Matrix2d j = detail::rate_jacobian_log(fn, u, v);
        const Eigen::Vector2d g1 = j.row(0), g2 = j.row(1);
        if (g1.norm() < 1e-12 || g2.norm() < 1e-12) return;   // clamped plateau
        if (g1.dot(g2) >= 0.0) return;                        // not the Pareto fold
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(j);
        TracedBoundaryPoint p;
        p.n1 = std::exp(u);
        p.n2 = std::exp(v);
        p.rate = fn(p.n1, p.n2);
        p.sigma_ratio = svd.singularValues()(1) / std::max(svd.singularValues()(0), 1e-300);
        out.push_back(p);
    };

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j + 1 < m; ++j) {
            if (det_at(i, j) * det_at(i, j + 1) < 0.0) {
                bisect_edge(us[i], us[i], us[j], us[j + 1]);
            }
            if (det_at(j, i) * det_at(j + 1, i) < 0.0) {
                bisect_edge(us[j], us[j + 1], us[i], us[i]);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const TracedBoundaryPoint& a, const TracedBoundaryPoint& b) {
                  return a.rate.i1 < b.rate.i1;
              });
    return out;
}

// Rank-deficiency filter for maps with more than two encoding/device
// parameters: keeps points whose finite-difference 2 x k Jacobian has
// sigma_min / sigma_max below the rank tolerance with opposed rate gradients.
inline constexpr double kRankTolerance = 1e-6;

struct LowRankPoint {
    Eigen::VectorXd params;
    RatePair rate;
    double sigma_ratio = 0.0;
};

inline std::vector<LowRankPoint> low_rank_boundary_points(
    const std::function<RatePair(const Eigen::VectorXd&)>& fn,
    const std::vector<Eigen::VectorXd>& seeds, double step = 1e-5,
    double tol = kRankTolerance) {
    std::vector<LowRankPoint> out;
    for (const Eigen::VectorXd& x : seeds) {
        const int k = static_cast<int>(x.size());
        Eigen::MatrixXd j(2, k);
        for (int c = 0; c < k; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp(c) += step;
            xm(c) -= step;
            const RatePair rp = fn(xp), rm = fn(xm);
            j(0, c) = (rp.i1 - rm.i1) / (2.0 * step);
            j(1, c) = (rp.i2 - rm.i2) / (2.0 * step);
        }
        if (j.row(0).norm() < 1e-12 || j.row(1).norm() < 1e-12) continue;
        if (j.row(0).dot(j.row(1)) >= 0.0) continue;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
        const double ratio =
            svd.singularValues()(1) / std::max(svd.singularValues()(0), 1e-300);
        if (ratio > tol) continue;
        out.push_back({x, fn(x), ratio});
    }
    return out;
}

inline ConvexRegion convex_hull_of_rates(const std::vector<RatePair>& rates) {
    std::vector<Vec2> pts;
    pts.reserve(rates.size() + 1);
    for (const RatePair& r : rates) pts.push_back({r.i1, r.i2});
    pts.push_back({0.0, 0.0});
    return convex_hull(pts);
}

// ---------------------------------------------------------------------------
// Device-level regions: symmetric two-mode transducer with free detunings and
// free thermal encodings.
// ---------------------------------------------------------------------------

struct DeviceFamily {
    double g = 5.0;
    double kappa_e = 10.0;
    double kappa_i = 1.0;
    double n_th = 0.0;
};

struct DeviceRegionOptions {
    int delta_points = 21;          // detuning grid per axis
    double delta_box_factor = 3.0;  // search box |Delta| <= factor * max(g, kappa_e)
    int n_points = 17;              // inner photon-number grid (plus sentinels)
    int branch_points = 161;        // N2 samples on the analytic reflectionless branch
    int support_directions = 33;    // polished support directions in (0, pi/2)
    unsigned threads = 1;
};

namespace detail {

enum class CandidateSource { scan, axis, branch, polish };

struct DeviceCandidate {
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    RatePair rate;
    CandidateSource source = CandidateSource::scan;
};

inline EffectiveChannel device_channel(const DeviceFamily& fam, double d1, double d2) {
    DeviceParams d = DeviceParams::symmetric_two_mode(fam.g, fam.kappa_e, fam.kappa_i, d1, d2);
    // Work in internal-loss units; the scattering matrix is invariant.
    if (fam.kappa_i > 0.0) d = rescale_device(d);
    return effective_channel(build_scattering(d), fam.n_th);
}

inline Params device_params(const DeviceCandidate& c) {
    return {{"delta1", c.delta_1}, {"delta2", c.delta_2}, {"N1", c.n1}, {"N2", c.n2}};
}

// Axis-capacity candidates at the max-transmission detunings.
inline void add_axis_candidates(const DeviceFamily& fam, std::vector<DeviceCandidate>& pool) {
    const MaxTransmission best = max_transmission(fam.g, fam.kappa_e, fam.kappa_i);
    const EffectiveChannel ch = device_channel(fam, best.delta, best.delta);
    const RatePair r1 = thermal_rates(ch, {kInfinitePhotons, 0.0});
    const RatePair r2 = thermal_rates(ch, {0.0, kInfinitePhotons});
    pool.push_back({best.delta, best.delta, kInfinitePhotons, 0.0, r1, CandidateSource::axis});
    pool.push_back({best.delta, best.delta, 0.0, kInfinitePhotons, r2, CandidateSource::axis});
}

// Analytic one-side reflectionless branch (both orientations). For a thermal
// environment the asymptotic rates come from the thermal-rate limit instead of
// the vacuum branch formula.
inline void add_branch_candidates(const DeviceFamily& fam, const DeviceRegionOptions& opt,
                                  std::vector<DeviceCandidate>& pool) {
    const auto det = reflectionless_detunings(fam.g, fam.kappa_e, fam.kappa_i);
    if (!det) return;
    const auto [d1, d2] = *det;
    EffectiveChannel ch = device_channel(fam, d1, d2);
    ch.r1 = 0.0;  // analytically zero at these detunings; drop the roundoff residue
    auto branch_rate = [&](double n2) {
        return fam.n_th == 0.0 ? reflectionless_asymptotic_rates(ch.t(), ch.r2, n2)
                               : thermal_rates(ch, {kInfinitePhotons, n2});
    };
    auto add = [&](double n2, const RatePair& r) {
        pool.push_back({d1, d2, kInfinitePhotons, n2, r, CandidateSource::branch});
        pool.push_back({d2, d1, n2, kInfinitePhotons, {r.i2, r.i1}, CandidateSource::branch});
    };
    EncodingGrid branch_grid;
    branch_grid.points = opt.branch_points;
    const std::vector<double> ns = branch_grid.values();
    std::size_t best_idx = 0;
    double best_sum = -1.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const RatePair r = branch_rate(ns[i]);
        add(ns[i], r);
        if (std::isfinite(ns[i]) && ns[i] > 0.0 && r.i1 + r.i2 > best_sum) {
            best_sum = r.i1 + r.i2;
            best_idx = i;
        }
    }
    // The rate-sum maximum along the branch decides the duplex advantage;
    // refine it beyond grid resolution around the best grid cell. Indices
    // stay within the finite, positive part of the grid.
    const std::size_t lo_idx = std::max<std::size_t>(best_idx, 3) - 2;
    const std::size_t hi_idx = std::min(best_idx + 2, ns.size() - 2);
    const double lo = std::log(ns[lo_idx]);
    const double hi = std::log(ns[hi_idx]);
    auto [ln_best, sum_best] = golden_section_max(
        [&](double ln_n2) {
            const RatePair r = branch_rate(std::exp(ln_n2));
            return r.i1 + r.i2;
        },
        lo, hi);
    add(std::exp(ln_best), branch_rate(std::exp(ln_best)));
}

// Coarse scan over the detuning box; keeps only the per-channel hull vertices.
inline void add_scan_candidates(const DeviceFamily& fam, const DeviceRegionOptions& opt,
                                std::vector<DeviceCandidate>& pool) {
    const double box = opt.delta_box_factor * std::max(fam.g, fam.kappa_e);
    const int nd = opt.delta_points;
    EncodingGrid inner;
    inner.points = opt.n_points;
    const std::vector<double> ns = inner.values();

    // Conjugation symmetry makes (d1, d2) and (-d1, -d2) equivalent, so scan
    // d1 >= 0 only; port swap covers the mirrored rate pairs.
    std::vector<std::pair<double, double>> cells;
    for (int a = 0; a < nd; ++a) {
        const double d1 = box * a / (nd - 1.0);
        for (int b = 0; b < 2 * nd - 1; ++b) {
            const double d2 = -box + box * b / (nd - 1.0);
            cells.emplace_back(d1, d2);
        }
    }
    std::vector<std::vector<DeviceCandidate>> per_cell(cells.size());
    parallel_for_index(cells.size(), opt.threads, [&](std::size_t ci) {
        const auto [d1, d2] = cells[ci];
        const EffectiveChannel ch = device_channel(fam, d1, d2);
        if (ch.t() <= 0.5 && fam.n_th == 0.0) return;
        std::vector<RatePair> rates;
        std::vector<std::pair<double, double>> encs;
        rates.reserve(ns.size() * ns.size());
        for (double n1 : ns) {
            for (double n2 : ns) {
                rates.push_back(thermal_rates(ch, {n1, n2}));
                encs.emplace_back(n1, n2);
            }
        }
        std::vector<Vec2> pts(rates.size());
        for (std::size_t i = 0; i < rates.size(); ++i) pts[i] = {rates[i].i1, rates[i].i2};
        for (int idx : convex_hull_indices(pts)) {
            const auto [n1, n2] = encs[idx];
            per_cell[ci].push_back({d1, d2, n1, n2, rates[idx], CandidateSource::scan});
            per_cell[ci].push_back(
                {d2, d1, n2, n1, {rates[idx].i2, rates[idx].i1}, CandidateSource::scan});
        }
    });
    for (auto& cell : per_cell) {
        pool.insert(pool.end(), cell.begin(), cell.end());
    }
}

// Symmetric-diagonal candidates: at symmetric detunings the rate-sum optimum
// sits on the N1 = N2 slice, which a scan grid can straddle. A dense scan
// plus golden refinement pins it regardless of grid placement.
inline void add_diagonal_candidates(const DeviceFamily& fam,
                                    std::vector<DeviceCandidate>& pool) {
    const MaxTransmission best = max_transmission(fam.g, fam.kappa_e, fam.kappa_i);
    std::vector<double> detunings = {0.0};
    if (best.delta != 0.0) {
        detunings.push_back(best.delta);
        detunings.push_back(-best.delta);
    }
    for (double d : detunings) {
        const EffectiveChannel ch = device_channel(fam, d, d);
        if (ch.t() <= 0.5 && fam.n_th == 0.0) continue;
        auto sum_at = [&](double ln_n) {
            const double n = std::exp(ln_n);
            const RatePair r = thermal_rates(ch, {n, n});
            return r.i1 + r.i2;
        };
        const double lo = std::log(1e-3), hi = std::log(1e3);
        double best_ln = lo, best_val = -1.0;
        for (int k = 0; k <= 240; ++k) {
            const double ln_n = lo + (hi - lo) * k / 240.0;
            const double v = sum_at(ln_n);
            if (v > best_val) {
                best_val = v;
                best_ln = ln_n;
            }
        }
        const double w = (hi - lo) / 240.0;
        auto [ln_opt, val] = golden_section_max(sum_at, best_ln - w, best_ln + w);
        const double n_opt = std::exp(ln_opt);
        const RatePair r = thermal_rates(ch, {n_opt, n_opt});
        pool.push_back({d, d, n_opt, n_opt, r, CandidateSource::scan});
    }
}

// Sharpened support maxima along directions in the open first quadrant.
inline void add_polished_candidates(const DeviceFamily& fam, const DeviceRegionOptions& opt,
                                    std::vector<DeviceCandidate>& pool) {
    const double box = opt.delta_box_factor * std::max(fam.g, fam.kappa_e);
    const double ln_lo = std::log(1e-4), ln_hi = std::log(1e4);
    auto objective = [&](const Eigen::VectorXd& x, Vec2 u) {
        const double d1 = std::clamp(x(0), -box, box);
        const double d2 = std::clamp(x(1), -box, box);
        const double n1 = std::exp(std::clamp(x(2), ln_lo, ln_hi));
        const double n2 = std::exp(std::clamp(x(3), ln_lo, ln_hi));
        const EffectiveChannel ch = device_channel(fam, d1, d2);
        const RatePair r = thermal_rates(ch, {n1, n2});
        return u.x * r.i1 + u.y * r.i2;
    };
    std::vector<DeviceCandidate> found(opt.support_directions);
    parallel_for_index(opt.support_directions, opt.threads, [&](std::size_t k) {
        const double phi = M_PI_2 * (k + 1.0) / (opt.support_directions + 1.0);
        const Vec2 u{std::cos(phi), std::sin(phi)};
        // Two seeds per direction: the best candidate overall and the best
        // interior candidate (finite moderate encodings). Axis sentinels make
        // poor starting simplices because the landscape there pushes back to
        // the axis even when an interior basin dominates.
        auto seed_vec = [&](const DeviceCandidate& c) {
            Eigen::VectorXd x0(4);
            x0 << c.delta_1, c.delta_2,
                std::isinf(c.n1) ? ln_hi : std::log(std::clamp(c.n1, 1e-4, 1e4)),
                std::isinf(c.n2) ? ln_hi : std::log(std::clamp(c.n2, 1e-4, 1e4));
            return x0;
        };
        const DeviceCandidate* best_any = nullptr;
        const DeviceCandidate* best_interior = nullptr;
        double val_any = -std::numeric_limits<double>::infinity();
        double val_interior = -std::numeric_limits<double>::infinity();
        for (const DeviceCandidate& c : pool) {
            const double val = u.x * c.rate.i1 + u.y * c.rate.i2;
            if (val > val_any) {
                val_any = val;
                best_any = &c;
            }
            const bool interior = !std::isinf(c.n1) && !std::isinf(c.n2) && c.n1 > 1e-3 &&
                                  c.n2 > 1e-3 && c.n1 < 1e3 && c.n2 < 1e3;
            if (interior && val > val_interior) {
                val_interior = val;
                best_interior = &c;
            }
        }
        DeviceCandidate out;
        double out_val = -std::numeric_limits<double>::infinity();
        for (const DeviceCandidate* seed : {best_any, best_interior}) {
            if (seed == nullptr) continue;
            auto [x, val] = nelder_mead_max(
                [&](const Eigen::VectorXd& v) { return objective(v, u); }, seed_vec(*seed));
            if (val <= out_val) continue;
            out_val = val;
            out.delta_1 = std::clamp(x(0), -box, box);
            out.delta_2 = std::clamp(x(1), -box, box);
            out.n1 = std::exp(std::clamp(x(2), ln_lo, ln_hi));
            out.n2 = std::exp(std::clamp(x(3), ln_lo, ln_hi));
            out.rate = thermal_rates(device_channel(fam, out.delta_1, out.delta_2),
                                     {out.n1, out.n2});
            out.source = CandidateSource::polish;
        }
        found[k] = out;
    });
    for (const DeviceCandidate& c : found) {
        pool.push_back(c);
        pool.push_back({c.delta_2, c.delta_1, c.n2, c.n1, {c.rate.i2, c.rate.i1},
                        CandidateSource::polish});
    }
}

inline ProtocolLabel candidate_label(const DeviceCandidate& c) {
    switch (c.source) {
        case CandidateSource::axis: return ProtocolLabel::axis_capacity;
        case CandidateSource::branch: return ProtocolLabel::reflectionless;
        default: return ProtocolLabel::low_rank_jacobian;
    }
}

inline int label_priority(ProtocolLabel l) {
    switch (l) {
        case ProtocolLabel::reflectionless: return 3;  // analytic branch wins ties
        case ProtocolLabel::axis_capacity: return 2;
        case ProtocolLabel::low_rank_jacobian: return 1;
        case ProtocolLabel::time_sharing: return 0;
    }
    return 0;
}

}  // namespace detail

// Region of the symmetric two-mode device family over free detunings and free
// thermal encodings: axis capacities at max-transmission detunings, the
// analytic reflectionless branch, and interior candidates sharpened along
// support directions, hulled together with the origin.
inline RateRegion device_region(const DeviceFamily& fam, const DeviceRegionOptions& opt = {}) {
    std::vector<detail::DeviceCandidate> pool;
    detail::add_axis_candidates(fam, pool);
    detail::add_branch_candidates(fam, opt, pool);
    detail::add_diagonal_candidates(fam, pool);
    detail::add_scan_candidates(fam, opt, pool);
    detail::add_polished_candidates(fam, opt, pool);

    RateRegion region;
    region.points.reserve(pool.size());
    std::vector<Vec2> coords;
    coords.reserve(pool.size() + 1);
    for (const auto& c : pool) {
        region.points.push_back(SamplePoint{c.rate, detail::device_params(c)});
        coords.push_back({c.rate.i1, c.rate.i2});
    }
    coords.push_back({0.0, 0.0});
    const int origin_idx = static_cast<int>(coords.size()) - 1;

    std::vector<int> hull_idx = convex_hull_indices(coords);
    hull_idx = detail::rotate_hull_to_origin(coords, hull_idx);

    std::vector<Vec2> hull_pts;
    for (int idx : hull_idx) {
        hull_pts.push_back(coords[idx]);
        BoundaryPoint bp;
        if (idx == origin_idx) {
            bp.rate = {0.0, 0.0};
            bp.label = ProtocolLabel::time_sharing;
            bp.params = {};
        } else {
            // Resolve coincident candidates with analytic-branch precedence.
            const Vec2 at = coords[idx];
            int best = idx;
            int best_priority = detail::label_priority(detail::candidate_label(pool[idx]));
            for (std::size_t k = 0; k < pool.size(); ++k) {
                const Vec2 p = coords[k];
                if (std::abs(p.x - at.x) > 1e-9 || std::abs(p.y - at.y) > 1e-9) continue;
                const int pr = detail::label_priority(detail::candidate_label(pool[k]));
                if (pr > best_priority) {
                    best_priority = pr;
                    best = static_cast<int>(k);
                }
            }
            bp.rate = pool[best].rate;
            bp.label = detail::candidate_label(pool[best]);
            bp.params = detail::device_params(pool[best]);
        }
        region.boundary.push_back(std::move(bp));
    }
    region.hull = ConvexRegion(std::move(hull_pts));
    return region;
}

struct AdvantageResult {
    double max_sum = 0.0;
    double i_max = 0.0;
    bool advantage = false;
};

// Duplex advantage of a sampled region against the best unidirectional
// capacity: max over hull vertices of I1 + I2 versus pure_loss_capacity.
inline AdvantageResult duplex_advantage(const RateRegion& region, double t_best) {
    AdvantageResult out;
    out.max_sum = region.hull.max_coordinate_sum();
    out.i_max = pure_loss_capacity(t_best);
    out.advantage = out.max_sum > out.i_max + 1e-9;
    return out;
}

inline AdvantageResult device_advantage(const DeviceFamily& fam,
                                        const DeviceRegionOptions& opt = {}) {
    const RateRegion region = device_region(fam, opt);
    return duplex_advantage(region, max_transmission(fam.g, fam.kappa_e, fam.kappa_i).t);
}

}  // namespace duplex
