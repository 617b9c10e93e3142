// serialize.hpp — JSON and CSV forms of devices, regions, and band summaries.
// JSON is the canonical artifact; numbers round-trip exactly. Infinite photon
// numbers serialize as the string "infinity".

#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "duplex/bandwidth.hpp"
#include "duplex/device.hpp"
#include "duplex/region.hpp"

namespace duplex {

using ordered_json = nlohmann::ordered_json;

inline ordered_json number_or_infinity(double v) {
    if (std::isinf(v)) return ordered_json(v > 0 ? "infinity" : "-infinity");
    return ordered_json(v);
}

inline double number_from_json(const ordered_json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "infinity") return std::numeric_limits<double>::infinity();
        if (s == "-infinity") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("expected number, got string '" + s + "'");
    }
    return j.get<double>();
}

// Fixed 12-significant-digit text used by the CSV and SVG views.
inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// DeviceParams: {"g":..,"kappa_e":[..],"kappa_i":[..],"delta":[..]} for the
// two-mode convenience form, {"G_re":[[..]],"G_im":[[..]],...} in general.
// ---------------------------------------------------------------------------

inline ordered_json device_to_json(const DeviceParams& d) {
    const int n = d.modes();
    ordered_json j;
    bool two_mode_form = n == 2 && std::abs(d.g_matrix(0, 1).imag()) < 1e-15;
    if (two_mode_form) {
        j["g"] = d.g_matrix(0, 1).real();
        j["kappa_e"] = {d.kappa_e(0), d.kappa_e(1)};
        j["kappa_i"] = {d.kappa_i(0), d.kappa_i(1)};
        j["delta"] = {d.g_matrix(0, 0).real(), d.g_matrix(1, 1).real()};
        return j;
    }
    std::vector<std::vector<double>> re(n, std::vector<double>(n)), im(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            re[a][b] = d.g_matrix(a, b).real();
            im[a][b] = d.g_matrix(a, b).imag();
        }
    }
    j["G_re"] = re;
    j["G_im"] = im;
    j["kappa_e"] = std::vector<double>(d.kappa_e.data(), d.kappa_e.data() + n);
    j["kappa_i"] = std::vector<double>(d.kappa_i.data(), d.kappa_i.data() + n);
    return j;
}

inline DeviceParams device_from_json(const ordered_json& j) {
    DeviceParams d;
    if (j.contains("g")) {
        const double g = j.at("g").get<double>();
        const auto ke = j.at("kappa_e").get<std::vector<double>>();
        const auto ki = j.at("kappa_i").get<std::vector<double>>();
        std::vector<double> delta = {0.0, 0.0};
        if (j.contains("delta")) delta = j.at("delta").get<std::vector<double>>();
        if (ke.size() != 2 || ki.size() != 2 || delta.size() != 2) {
            throw std::invalid_argument("two-mode device JSON requires 2-element arrays");
        }
        d = DeviceParams::two_mode(g, ke[0], ke[1], ki[0], ki[1], delta[0], delta[1]);
    } else {
        const auto re = j.at("G_re").get<std::vector<std::vector<double>>>();
        const auto im = j.at("G_im").get<std::vector<std::vector<double>>>();
        const auto ke = j.at("kappa_e").get<std::vector<double>>();
        const auto ki = j.at("kappa_i").get<std::vector<double>>();
        const int n = static_cast<int>(re.size());
        d.g_matrix = Eigen::MatrixXcd::Zero(n, n);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                d.g_matrix(a, b) = std::complex<double>(re.at(a).at(b), im.at(a).at(b));
            }
        }
        d.kappa_e = Eigen::Map<const Eigen::VectorXd>(ke.data(), ke.size());
        d.kappa_i = Eigen::Map<const Eigen::VectorXd>(ki.data(), ki.size());
    }
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// RateRegion: {"boundary":[{"I1","I2","label","params"}...],"hull":[[x,y]...]}
// ---------------------------------------------------------------------------

inline ordered_json region_to_json(const RateRegion& region) {
    ordered_json j;
    j["boundary"] = ordered_json::array();
    for (const BoundaryPoint& bp : region.boundary) {
        ordered_json e;
        e["I1"] = bp.rate.i1;
        e["I2"] = bp.rate.i2;
        e["label"] = label_name(bp.label);
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : bp.params) params[k] = number_or_infinity(v);
        e["params"] = params;
        j["boundary"].push_back(e);
    }
    j["hull"] = ordered_json::array();
    for (const Vec2& v : region.hull.vertices()) {
        j["hull"].push_back(ordered_json::array({v.x, v.y}));
    }
    return j;
}

inline RateRegion region_from_json(const ordered_json& j) {
    RateRegion region;
    for (const auto& e : j.at("boundary")) {
        BoundaryPoint bp;
        bp.rate.i1 = e.at("I1").get<double>();
        bp.rate.i2 = e.at("I2").get<double>();
        const auto label = label_from_name(e.at("label").get<std::string>());
        if (!label) throw std::invalid_argument("unknown boundary label");
        bp.label = *label;
        for (const auto& [k, v] : e.at("params").items()) {
            bp.params.emplace_back(k, number_from_json(v));
        }
        region.boundary.push_back(std::move(bp));
    }
    std::vector<Vec2> hull;
    for (const auto& v : j.at("hull")) hull.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    region.hull = ConvexRegion(std::move(hull));
    return region;
}

// CSV view: one boundary vertex per row.
inline std::string region_to_csv(const RateRegion& region) {
    std::string out = "I1,I2,label,params\n";
    for (const BoundaryPoint& bp : region.boundary) {
        out += format_number(bp.rate.i1) + "," + format_number(bp.rate.i2) + "," +
               label_name(bp.label) + ",";
        std::string params;
        for (const auto& [k, v] : bp.params) {
            if (!params.empty()) params += ";";
            params += k + "=" + format_number(v);
        }
        out += "\"" + params + "\"\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Band summary: {"delta":[...],"advantage":[...],"max_sum":[...],"Imax":[...]}
// ---------------------------------------------------------------------------

inline ordered_json band_to_json(const BandSummary& band) {
    ordered_json j;
    j["delta"] = ordered_json::array();
    j["advantage"] = ordered_json::array();
    j["max_sum"] = ordered_json::array();
    j["Imax"] = ordered_json::array();
    for (const BandPoint& bp : band.profile) {
        j["delta"].push_back(bp.delta);
        j["advantage"].push_back(bp.advantage);
        j["max_sum"].push_back(bp.max_sum);
        j["Imax"].push_back(number_or_infinity(bp.i_max));
    }
    j["advantage_intervals"] = ordered_json::array();
    for (const auto& [lo, hi] : band.advantage_intervals) {
        j["advantage_intervals"].push_back(ordered_json::array({lo, hi}));
    }
    j["integrated_hull"] = ordered_json::array();
    for (const Vec2& v : band.integrated.vertices()) {
        j["integrated_hull"].push_back(ordered_json::array({v.x, v.y}));
    }
    j["unidirectional_hull"] = ordered_json::array();
    for (const Vec2& v : band.unidirectional.vertices()) {
        j["unidirectional_hull"].push_back(ordered_json::array({v.x, v.y}));
    }
    return j;
}

}  // namespace duplex
