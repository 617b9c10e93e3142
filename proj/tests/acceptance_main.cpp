// acceptance_main.cpp — End-to-end acceptance suite. Each criterion prints a
// single [PASS]/[FAIL] line; the exit code is the number of failures.
// Run with no arguments for all criteria, or pass criterion numbers.

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "duplex/duplex.hpp"

using namespace duplex;
namespace fs = std::filesystem;

namespace {

constexpr double kLog2Nine = 3.169925001442312;

struct Criterion {
    int number;
    std::string summary;
    std::function<bool(std::string&)> run;
};

std::mt19937_64 fresh_rng(std::uint64_t salt) { return std::mt19937_64(0x5eed2024u + salt); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RateFn thermal_fn(const EffectiveChannel& ch) {
    return [ch](double n1, double n2) { return thermal_rates(ch, {n1, n2}); };
}

// ---------------------------------------------------------------------- 1
bool criterion_capacity_endpoints(std::string& detail) {
    const double pure = pure_loss_capacity(0.9);
    const double locc = locc_rates(make_channel(0.9, 0.0, 0.0), {kInfinitePhotons, 0.0}).i1;
    std::ostringstream os;
    os << "pure-loss " << pure << ", locc " << locc;
    detail = os.str();
    return std::abs(pure - 3.169925) <= 1e-6 && std::abs(locc - 3.321928) <= 1e-6;
}

// ---------------------------------------------------------------------- 2
bool criterion_reflectionless_analytics(std::string& detail) {
    auto rng = fresh_rng(2);
    double worst_one_side = 0.0, worst_two_side = 0.0;
    int tested = 0;
    while (tested < 50) {
        const double g = uniform(rng, 0.5, 8.0);
        const double ki = uniform(rng, 0.05, 2.0);
        const double ke = uniform(rng, ki * 1.05 + 0.01, std::sqrt(4 * g * g + ki * ki) + 2.0);
        const auto det = reflectionless_detunings(g, ke, ki);
        if (!det) continue;
        ++tested;
        const auto s = build_scattering(
            DeviceParams::symmetric_two_mode(g, ke, ki, det->first, det->second));
        worst_one_side = std::max(worst_one_side, std::abs(s(0, 0)));

        const double k1i = uniform(rng, 0.05, 3.0), k2i = uniform(rng, 0.05, 3.0);
        const auto [k1e, k2e] = optimal_couplings(g, k1i, k2i);
        const auto s2 =
            build_scattering(DeviceParams::two_mode(g, k1e, k2e, k1i, k2i, 0.0, 0.0));
        worst_two_side =
            std::max({worst_two_side, std::abs(s2(0, 0)), std::abs(s2(1, 1))});
    }
    std::ostringstream os;
    os << "max |S11| one-side " << worst_one_side << ", two-side " << worst_two_side;
    detail = os.str();
    return worst_one_side <= 1e-10 && worst_two_side <= 1e-10;
}

// ---------------------------------------------------------------------- 3
bool criterion_gradient_identities(std::string& detail) {
    auto rng = fresh_rng(3);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
        const int n = (it % 2 == 0) ? 2 : 3;
        DeviceParams d;
        Eigen::MatrixXcd a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = std::complex<double>(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
            }
        }
        d.g_matrix = 0.5 * (a + a.adjoint()).eval();
        d.kappa_e = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng, 0.3, 9.0); });
        d.kappa_i = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng, 0.0, 4.0); });
        const int m = 0, nn = n - 1;
        const auto an = transmission_gradients(d, m, nn);
        auto t_of = [&](const DeviceParams& dd) { return std::norm(build_scattering(dd)(m, nn)); };
        auto fd = [&](auto&& bump, double scale) {
            const double h = 1e-6 * std::max(1.0, std::abs(scale));
            DeviceParams dp = d, dm = d;
            bump(dp, h);
            bump(dm, -h);
            return (t_of(dp) - t_of(dm)) / (2.0 * h);
        };
        auto rel = [](double x, double y) {
            return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1.0});
        };
        worst = std::max(worst, rel(an.d_delta_m, fd([&](DeviceParams& x, double h) { x.g_matrix(m, m) += h; },
                                                     d.g_matrix(m, m).real())));
        worst = std::max(worst, rel(an.d_delta_n, fd([&](DeviceParams& x, double h) { x.g_matrix(nn, nn) += h; },
                                                     d.g_matrix(nn, nn).real())));
        worst = std::max(worst, rel(an.d_kappa_me, fd([&](DeviceParams& x, double h) { x.kappa_e(m) += h; },
                                                      d.kappa_e(m))));
        worst = std::max(worst, rel(an.d_kappa_ne, fd([&](DeviceParams& x, double h) { x.kappa_e(nn) += h; },
                                                      d.kappa_e(nn))));
    }
    std::ostringstream os;
    os << "max relative error " << worst;
    detail = os.str();
    return worst <= 1e-6;
}

// ---------------------------------------------------------------------- 4
bool criterion_fig2(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    {
        const RateRegion square = sample_region(thermal_fn(make_channel(0.9, 0.0, 0.0)),
                                                EncodingGrid{1e-3, 1e3, 121}, 2);
        bool square_ok = square.hull.contains({kLog2Nine - 1e-3, kLog2Nine - 1e-3}, 1e-3) &&
                         square.hull.contains({kLog2Nine, kLog2Nine}, 1e-9);
        for (const Vec2& v : square.hull.vertices()) {
            square_ok = square_ok && v.x <= kLog2Nine + 1e-9 && v.y <= kLog2Nine + 1e-9;
        }
        os << "square hull " << (square_ok ? "ok" : "BAD");
        ok = ok && square_ok;
    }
    {
        const RateRegion region = sample_region(thermal_fn(make_channel(0.9, 0.03, 0.03)),
                                                EncodingGrid{1e-3, 1e3, 121}, 2);
        bool threshold_ok = true;
        double sup_i1 = 0.0;
        for (const SamplePoint& sp : region.points) {
            if (sp.rate.i2 > 1e-3) {
                if (detail::param_value(sp.params, "N1") >= 13.34) threshold_ok = false;
                sup_i1 = std::max(sup_i1, sp.rate.i1);
            }
        }
        const double gap = kLog2Nine - sup_i1;
        os << ", interference threshold " << (threshold_ok ? "ok" : "BAD") << ", axis gap " << gap;
        ok = ok && threshold_ok && gap > 0.0;
    }
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------- 5
bool criterion_gaussian_vs_thermal(std::string& detail) {
    const double t = 0.9, r1 = 0.03, r2 = 0.03, theta = 1.0;
    const Eigen::Matrix2cd blk = signal_block(t, r1, r2, theta);
    const RateRegion thermal = sample_region(thermal_fn(make_channel(t, r1, r2, theta)),
                                             EncodingGrid{1e-3, 1e3, 161}, 2);
    // Signed excess of a point beyond the thermal hull, in rate units.
    auto excess = [&](Vec2 p) {
        const auto& v = thermal.hull.vertices();
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 a = v[i], b = v[(i + 1) % v.size()];
            const double len = norm(b - a);
            if (len == 0.0) continue;
            worst = std::max(worst, -cross(a, b, p) / len);
        }
        return worst;
    };

    const EncodingGrid ngrid{1e-3, 1e3, 9, false, false};
    double worst_excess = -1.0;
    for (double n1 : ngrid.values()) {
        for (double n2 : ngrid.values()) {
            for (int ia = 0; ia < 5; ++ia) {
                for (int ib = 0; ib < 5; ++ib) {
                    for (int ic = 0; ic < 9; ++ic) {
                        const double ra = 2.0 * ia / 4.0;
                        const double rb = 2.0 * ib / 4.0;
                        const double dth = -M_PI + 2.0 * M_PI * ic / 8.0;
                        const RatePair r =
                            gaussian_rates(blk, {{n1, ra, 0.0}, {n2, rb, -dth}});
                        worst_excess = std::max(worst_excess, excess({r.i1, r.i2}));
                    }
                }
            }
        }
    }

    auto rng = fresh_rng(5);
    double worst_grad = 0.0;
    const double eps = 1e-5;
    for (int it = 0; it < 10; ++it) {
        const double n1 = std::exp(uniform(rng, std::log(1e-2), std::log(1e2)));
        const double n2 = std::exp(uniform(rng, std::log(1e-2), std::log(1e2)));
        auto at = [&](double ra, double rb, double dth) {
            return gaussian_rates(blk, {{n1, ra, 0.0}, {n2, rb, -dth}});
        };
        auto d_of = [&](const RatePair& p, const RatePair& m) {
            return std::max(std::abs(p.i1 - m.i1), std::abs(p.i2 - m.i2)) / (2.0 * eps);
        };
        worst_grad = std::max(worst_grad, d_of(at(eps, 0, 0), at(-eps, 0, 0)));
        worst_grad = std::max(worst_grad, d_of(at(0, eps, 0), at(0, -eps, 0)));
        worst_grad = std::max(worst_grad, d_of(at(0, 0, eps), at(0, 0, -eps)));
    }
    std::ostringstream os;
    os << "max hull excess " << worst_excess << ", max r-gradient " << worst_grad;
    detail = os.str();
    return worst_excess <= 1e-3 && worst_grad <= 1e-6;
}

// ---------------------------------------------------------------------- 6
bool criterion_device_window(std::string& detail) {
    DeviceRegionOptions opt;
    opt.delta_points = 17;
    opt.n_points = 13;
    opt.support_directions = 17;
    opt.threads = 2;
    auto advantage_at = [&](double ke) {
        return device_advantage({5.0, ke, 1.0}, opt).advantage;
    };
    bool ok = true;
    std::ostringstream os;
    for (double ke : {7.0, 9.0, 10.05, 11.0}) {
        const bool adv = advantage_at(ke);
        ok = ok && adv;
        if (!adv) os << "missing advantage at kappa_e=" << ke << "; ";
    }
    for (double ke : {6.0, 11.5}) {
        const bool adv = advantage_at(ke);
        ok = ok && !adv;
        if (adv) os << "spurious advantage at kappa_e=" << ke << "; ";
    }
    auto bisect = [&](double lo, double hi, bool adv_lo) {
        for (int it = 0; it < 7; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (advantage_at(mid) == adv_lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double lower = bisect(6.0, 7.0, false);
    const double upper = bisect(11.0, 11.5, true);
    os << "window endpoints " << lower << " and " << upper;
    ok = ok && std::abs(lower - 6.2) <= 0.1 && std::abs(upper - 11.28) <= 0.1;
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------- 7
bool criterion_containment(std::string& detail) {
    DeviceRegionOptions opt;
    opt.delta_points = 21;
    opt.n_points = 15;
    opt.threads = 2;
    const RateRegion best = device_region({5.0, std::sqrt(101.0), 1.0}, opt);
    bool ok = true;
    std::ostringstream os;
    double worst = -1.0;
    for (double ke : {9.2, 9.66, 9.9, 11.4}) {
        const RateRegion sub = device_region({5.0, ke, 1.0}, opt);
        for (const Vec2& v : sub.hull.vertices()) {
            if (!best.hull.contains(v, 1e-6)) {
                ok = false;
                os << "kappa_e=" << ke << " vertex (" << v.x << "," << v.y << ") outside; ";
            }
            // Track the closest approach to the square boundary.
            worst = std::max({worst, v.x - best.hull.support({1.0, 0.0}),
                              v.y - best.hull.support({0.0, 1.0})});
        }
    }
    std::ostringstream os2;
    os2 << "max vertex overshoot " << worst << (ok ? "" : "; " + os.str());
    detail = os2.str();
    return ok;
}

// ---------------------------------------------------------------------- 8
bool criterion_minkowski(std::string& detail) {
    auto rng = fresh_rng(8);
    auto random_polygon = [&]() {
        std::vector<Vec2> pts;
        const int m = 3 + static_cast<int>(rng() % 10);
        for (int k = 0; k < m; ++k) {
            pts.push_back({uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)});
        }
        return convex_hull(pts);
    };
    double worst_vertex = 0.0, worst_support = 0.0;
    bool ok = true;
    for (int it = 0; it < 200 && ok; ++it) {
        const ConvexRegion a = random_polygon(), b = random_polygon();
        const ConvexRegion fast = minkowski_sum(a, b);
        std::vector<Vec2> sums;
        for (const Vec2& pa : a.vertices()) {
            for (const Vec2& pb : b.vertices()) sums.push_back(pa + pb);
        }
        const ConvexRegion brute = convex_hull(sums);
        if (fast.size() != brute.size()) {
            ok = false;
            break;
        }
        for (std::size_t k = 0; k < fast.size(); ++k) {
            worst_vertex = std::max(worst_vertex, norm(fast.vertices()[k] - brute.vertices()[k]));
        }
        for (int k = 0; k < 64; ++k) {
            const double phi = 2.0 * M_PI * k / 64.0;
            const Vec2 u{std::cos(phi), std::sin(phi)};
            worst_support = std::max(
                worst_support, std::abs(fast.support(u) - a.support(u) - b.support(u)));
        }
    }
    std::ostringstream os;
    os << "max vertex deviation " << worst_vertex << ", max support defect " << worst_support;
    detail = os.str();
    return ok && worst_vertex <= 1e-9 && worst_support <= 1e-9;
}

// ---------------------------------------------------------------------- 9
bool criterion_band(std::string& detail) {
    const DeviceFamily fam{5.0, 9.0, 1.0};
    const BandSummary band =
        band_analysis(fam, FrequencyGrid{-10.0, 10.0, 41}, EncodingGrid{1e-3, 1e3, 31}, 2);
    bool contains = true;
    for (const Vec2& v : band.unidirectional.vertices()) {
        contains = contains && band.integrated.contains(v, 1e-9);
    }
    const double margin = band.integrated.area() - band.unidirectional.area();
    const bool single_window = band.advantage_intervals.size() == 1;
    bool around_zero = false;
    if (single_window) {
        around_zero = band.advantage_intervals.front().first < 0.0 &&
                      band.advantage_intervals.front().second > 0.0;
    }
    std::ostringstream os;
    os << "area margin " << margin << ", windows " << band.advantage_intervals.size();
    if (single_window) {
        os << " [" << band.advantage_intervals.front().first << ", "
           << band.advantage_intervals.front().second << "]";
    }
    detail = os.str();
    return contains && margin > 1e-6 && single_window && around_zero;
}

// ---------------------------------------------------------------------- 10
bool criterion_fock(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    {
        FockRegionOptions opt;
        opt.p_points = 51;
        opt.threads = 2;
        const auto res = fock_rate_region(1.0, opt);
        const bool square = res.region.hull.contains({1.0 - 1e-9, 1.0 - 1e-9}, 1e-6) &&
                            res.max_axis <= 1.0 + 1e-9;
        os << "T=1 square " << (square ? "ok" : "BAD");
        ok = ok && square;
    }
    auto gaps = [&](double t, FockRegionResult& out) {
        FockRegionOptions opt;
        opt.p_points = 101;
        opt.coherence_fractions = {-0.6, 0.6};
        opt.coherence_p_points = 21;
        opt.threads = 2;
        out = fock_rate_region(t, opt);
        double sup1 = 0.0, sup2 = 0.0, ax1 = 0.0, ax2 = 0.0;
        for (const SamplePoint& sp : out.region.points) {
            ax1 = std::max(ax1, sp.rate.i1);
            ax2 = std::max(ax2, sp.rate.i2);
            if (sp.rate.i2 > 1e-3) sup1 = std::max(sup1, sp.rate.i1);
            if (sp.rate.i1 > 1e-3) sup2 = std::max(sup2, sp.rate.i2);
        }
        return std::pair<double, double>(ax1 - sup1, ax2 - sup2);
    };
    {
        FockRegionResult res;
        const auto [g1, g2] = gaps(0.9, res);
        os << ", T=0.9 advantage " << (res.duplex_advantage ? "ok" : "BAD") << " (sum "
           << res.max_sum << " vs axis " << res.max_axis << ")";
        ok = ok && res.duplex_advantage;
        (void)g1;
        (void)g2;
    }
    {
        FockRegionResult res;
        const auto [g1, g2] = gaps(0.7, res);
        os << ", T=0.7 gaps (" << g1 << ", " << g2 << ")";
        ok = ok && g1 > 0.02 && g2 > 0.02;
    }
    {
        const auto u = beam_splitter_unitary(0.5);
        const int d = u.mode_dim();
        const double hom = std::abs(u.matrix(1 * d + 1, 1 * d + 1));
        os << ", HOM " << hom;
        ok = ok && hom <= 1e-12;
    }
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------- 11
bool criterion_thermal_noise(std::string& detail) {
    const double t = 0.9, nth = 2.0;
    const EffectiveChannel ch = make_channel(t, 0.03, 0.0, 0.0, nth);
    const double i1_axis = thermal_rates(ch, {kInfinitePhotons, 0.0}).i1;
    const double i2_axis = thermal_rates(ch, {0.0, kInfinitePhotons}).i2;
    const double i1_expect = kLog2Nine - bosonic_entropy_h((1.0 - t - 0.0) * nth / (1.0 - t));
    const double i2_expect = kLog2Nine - bosonic_entropy_h((1.0 - t - 0.03) * nth / (1.0 - t));
    const bool axes_ok =
        std::abs(i1_axis - i1_expect) <= 1e-9 && std::abs(i2_axis - i2_expect) <= 1e-9;

    const RateRegion region = sample_region(thermal_fn(ch), EncodingGrid{1e-3, 1e3, 81}, 2);
    double sup_i2 = 0.0;
    for (const SamplePoint& sp : region.points) {
        if (sp.rate.i1 > 1e-3) sup_i2 = std::max(sup_i2, sp.rate.i2);
    }
    const double gap = i2_axis - sup_i2;
    std::ostringstream os;
    os << "axis errors (" << std::abs(i1_axis - i1_expect) << ", "
       << std::abs(i2_axis - i2_expect) << "), I2-axis gap " << gap;
    detail = os.str();
    return axes_ok && gap > 0.0;
}

// ---------------------------------------------------------------------- 12
bool criterion_infrastructure(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    {
        auto rng = fresh_rng(12);
        double worst = 0.0;
        for (int it = 0; it < 1000; ++it) {
            const int n = 2 + static_cast<int>(rng() % 3);
            Eigen::MatrixXcd a(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    a(i, j) =
                        std::complex<double>(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
                }
            }
            DeviceParams d;
            d.g_matrix = 0.5 * (a + a.adjoint()).eval();
            d.kappa_e = Eigen::VectorXd::NullaryExpr(
                n, [&](Eigen::Index) { return uniform(rng, 0.2, 10.0); });
            d.kappa_i = Eigen::VectorXd::NullaryExpr(
                n, [&](Eigen::Index) { return uniform(rng, 0.0, 5.0); });
            const auto s = build_scattering(d).matrix();
            worst = std::max(worst, (s.adjoint() * s -
                                     Eigen::MatrixXcd::Identity(2 * n, 2 * n))
                                        .cwiseAbs()
                                        .maxCoeff());
        }
        os << "unitarity " << worst;
        ok = ok && worst <= 1e-10;
    }
    {
        auto rng = fresh_rng(13);
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            DeviceParams d = DeviceParams::two_mode(
                uniform(rng, 0.0, 10.0), uniform(rng, 0.5, 9.0), uniform(rng, 0.5, 9.0),
                uniform(rng, 0.1, 4.0), uniform(rng, 0.1, 4.0), uniform(rng, -4.0, 4.0),
                uniform(rng, -4.0, 4.0));
            const auto s0 = build_scattering(d).matrix();
            const auto s1 = build_scattering(rescale_device(d)).matrix();
            worst = std::max(worst, (s0 - s1).cwiseAbs().maxCoeff());
        }
        os << ", scale invariance " << worst;
        ok = ok && worst <= 1e-12;
    }
    {
        const RateRegion region =
            sample_region(thermal_fn(make_channel(0.87, 0.02, 0.01, 0.3)),
                          EncodingGrid{1e-3, 1e3, 41}, 2);
        const ordered_json j = region_to_json(region);
        const RateRegion back = region_from_json(j);
        const bool exact = region_to_json(back).dump() == j.dump();
        os << ", json round-trip " << (exact ? "exact" : "BAD");
        ok = ok && exact;
    }
    {
        const fs::path dir = fs::temp_directory_path() / "duplex-rate-acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string base = std::string(DUPLEX_RATE_BIN) +
                                 " region --T 0.9 --R1 0.02 --R2 0.01 --n-points 31 --threads 1 "
                                 "--out ";
        const int rc1 = std::system((base + (dir / "a").string() + " > /dev/null 2>&1").c_str());
        const int rc2 = std::system((base + (dir / "b").string() + " > /dev/null 2>&1").c_str());
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        const bool deterministic =
            rc1 == 0 && rc2 == 0 &&
            slurp(dir / "a" / "region.json") == slurp(dir / "b" / "region.json") &&
            slurp(dir / "a" / "region.csv") == slurp(dir / "b" / "region.csv") &&
            slurp(dir / "a" / "region.svg") == slurp(dir / "b" / "region.svg");
        os << ", deterministic output " << (deterministic ? "ok" : "BAD");
        ok = ok && deterministic;
    }
    detail = os.str();
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "capacity endpoints", criterion_capacity_endpoints},
        {2, "reflectionless analytics", criterion_reflectionless_analytics},
        {3, "gradient identities", criterion_gradient_identities},
        {4, "thermal rate regions at T=0.9", criterion_fig2},
        {5, "thermal vs gaussian optimality", criterion_gaussian_vs_thermal},
        {6, "device optimization window", criterion_device_window},
        {7, "containment optimality", criterion_containment},
        {8, "minkowski correctness", criterion_minkowski},
        {9, "band integration", criterion_band},
        {10, "fock encodings", criterion_fock},
        {11, "thermal-noise variant", criterion_thermal_noise},
        {12, "infrastructure", criterion_infrastructure},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.number) == selected.end()) {
            continue;
        }
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.summary
                  << " | " << detail << "\n";
        if (!ok) ++failures;
    }
    return failures;
}
