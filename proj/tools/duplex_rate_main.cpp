// duplex-rate — CLI front end: computes duplex-transduction rate regions,
// device-optimized regions, frequency bands and Fock-encoding regions, and
// writes JSON/CSV/SVG artifacts with a provenance manifest.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "duplex/duplex.hpp"
#include "duplex/parallel.hpp"

namespace fs = std::filesystem;
using duplex::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int line_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

int line_of_key(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return 0;
    return line_of_offset(text, pos);
}

void reject_unknown_keys(const ordered_json& obj, const std::vector<std::string>& allowed,
                         const std::string& raw, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("line " + std::to_string(line_of_key(raw, key)) +
                              ": unknown key \"" + key + "\" in " + where);
        }
    }
}

struct JobConfig {
    std::string command;
    std::string encoding = "thermal";
    double n_th = 0.0;
    // channel parameters (region command)
    double t = 0.9, r1 = 0.0, r2 = 0.0, theta = 0.0;
    // device parameters (device-region, band)
    double g = 5.0, kappa_e = 10.0, kappa_i = 1.0;
    // grids
    int n_points = 121;
    double n_min = 1e-3, n_max = 1e3;
    int delta_points = 21;
    double delta_min = -10.0, delta_max = 10.0;
    double delta_box_factor = 3.0;
    int p_points = 101;
    bool coherence = true;
    int r_points = 5;
    double r_max = 2.0;
    int dtheta_points = 9;
    std::string output;
    unsigned threads = 1;

    ordered_json canonical() const {
        ordered_json j;
        j["command"] = command;
        j["encoding"] = encoding;
        j["n_th"] = n_th;
        j["channel"] = {{"T", t}, {"R1", r1}, {"R2", r2}, {"theta", theta}};
        j["device"] = {{"g", g}, {"kappa_e", kappa_e}, {"kappa_i", kappa_i}};
        j["grids"] = {{"n_points", n_points},   {"n_min", n_min},
                      {"n_max", n_max},         {"delta_points", delta_points},
                      {"delta_min", delta_min}, {"delta_max", delta_max},
                      {"delta_box_factor", delta_box_factor},
                      {"p_points", p_points},   {"coherence", coherence},
                      {"r_points", r_points},   {"r_max", r_max},
                      {"dtheta_points", dtheta_points}};
        j["output"] = output;
        return j;
    }
};

void apply_config_file(JobConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string raw = ss.str();
    ordered_json j;
    try {
        j = ordered_json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("line " + std::to_string(line_of_offset(raw, e.byte)) +
                          ": JSON parse error: " + e.what());
    }
    reject_unknown_keys(j, {"command", "encoding", "n_th", "channel", "device", "grids", "output",
                            "threads"},
                        raw, "config");
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("encoding")) cfg.encoding = j["encoding"].get<std::string>();
    if (j.contains("n_th")) cfg.n_th = j["n_th"].get<double>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("channel")) {
        const auto& c = j["channel"];
        reject_unknown_keys(c, {"T", "R1", "R2", "theta"}, raw, "channel");
        if (c.contains("T")) cfg.t = c["T"].get<double>();
        if (c.contains("R1")) cfg.r1 = c["R1"].get<double>();
        if (c.contains("R2")) cfg.r2 = c["R2"].get<double>();
        if (c.contains("theta")) cfg.theta = c["theta"].get<double>();
    }
    if (j.contains("device")) {
        const auto& d = j["device"];
        reject_unknown_keys(d, {"g", "kappa_e", "kappa_i", "delta", "G_re", "G_im"}, raw, "device");
        const duplex::DeviceParams dev = duplex::device_from_json(d);
        if (dev.modes() != 2 ||
            std::abs(dev.kappa_e(0) - dev.kappa_e(1)) > 1e-12 ||
            std::abs(dev.kappa_i(0) - dev.kappa_i(1)) > 1e-12) {
            throw ConfigError("line " + std::to_string(line_of_key(raw, "device")) +
                              ": device commands require a symmetric two-mode device");
        }
        cfg.g = dev.g_matrix(0, 1).real();
        cfg.kappa_e = dev.kappa_e(0);
        cfg.kappa_i = dev.kappa_i(0);
    }
    if (j.contains("grids")) {
        const auto& gr = j["grids"];
        reject_unknown_keys(gr,
                            {"n_points", "n_min", "n_max", "delta_points", "delta_min",
                             "delta_max", "delta_box_factor", "p_points", "coherence", "r_points",
                             "r_max", "dtheta_points"},
                            raw, "grids");
        if (gr.contains("n_points")) cfg.n_points = gr["n_points"].get<int>();
        if (gr.contains("n_min")) cfg.n_min = gr["n_min"].get<double>();
        if (gr.contains("n_max")) cfg.n_max = gr["n_max"].get<double>();
        if (gr.contains("delta_points")) cfg.delta_points = gr["delta_points"].get<int>();
        if (gr.contains("delta_min")) cfg.delta_min = gr["delta_min"].get<double>();
        if (gr.contains("delta_max")) cfg.delta_max = gr["delta_max"].get<double>();
        if (gr.contains("delta_box_factor"))
            cfg.delta_box_factor = gr["delta_box_factor"].get<double>();
        if (gr.contains("p_points")) cfg.p_points = gr["p_points"].get<int>();
        if (gr.contains("coherence")) cfg.coherence = gr["coherence"].get<bool>();
        if (gr.contains("r_points")) cfg.r_points = gr["r_points"].get<int>();
        if (gr.contains("r_max")) cfg.r_max = gr["r_max"].get<double>();
        if (gr.contains("dtheta_points")) cfg.dtheta_points = gr["dtheta_points"].get<int>();
    }
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path.string());
    out << content;
}

ordered_json manifest_base(const JobConfig& cfg) {
    ordered_json m;
    m["tool"] = "duplex-rate";
    m["version"] = kVersion;
    m["command"] = cfg.command;
    m["config"] = cfg.canonical();
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.canonical().dump())));
    m["config_hash"] = hash;
    m["threads"] = cfg.threads;
    return m;
}

void write_region_artifacts(const JobConfig& cfg, const duplex::RateRegion& region,
                            ordered_json manifest,
                            const std::chrono::steady_clock::time_point& started) {
    const fs::path out(cfg.output);
    fs::create_directories(out);
    write_file(out / "region.json", duplex::region_to_json(region).dump(2) + "\n");
    write_file(out / "region.csv", duplex::region_to_csv(region));
    write_file(out / "region.svg", duplex::render_region_svg(region));
    ordered_json protocols = ordered_json::object();
    for (const duplex::BoundaryPoint& bp : region.boundary) {
        const std::string name = duplex::label_name(bp.label);
        protocols[name] = protocols.value(name, 0) + 1;
    }
    manifest["protocols"] = protocols;
    manifest["boundary_vertices"] = region.boundary.size();
    manifest["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started)
            .count();
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
}

int run_region(const JobConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const duplex::EffectiveChannel ch =
        duplex::make_channel(cfg.t, cfg.r1, cfg.r2, cfg.theta, cfg.n_th);
    duplex::EncodingGrid grid{cfg.n_min, cfg.n_max, cfg.n_points, true, true};
    duplex::RateRegion region;
    if (cfg.encoding == "thermal") {
        region = duplex::sample_region(
            [&](double n1, double n2) { return duplex::thermal_rates(ch, {n1, n2}); }, grid,
            cfg.threads);
    } else if (cfg.encoding == "locc") {
        region = duplex::sample_region(
            [&](double n1, double n2) { return duplex::locc_rates(ch, {n1, n2}); }, grid,
            cfg.threads);
    } else if (cfg.encoding == "gaussian") {
        // Five-parameter Gaussian sweep (N1, N2, r1, r2, dtheta) on the signal
        // block of the channel; hulled like the thermal region.
        const Eigen::Matrix2cd blk = duplex::signal_block(cfg.t, cfg.r1, cfg.r2, cfg.theta);
        duplex::EncodingGrid ngrid{cfg.n_min, cfg.n_max, cfg.n_points, false, false};
        const std::vector<double> ns = ngrid.values();
        std::vector<duplex::SamplePoint> pts;
        std::vector<std::array<double, 5>> jobs;
        for (double n1 : ns)
            for (double n2 : ns)
                for (int a = 0; a < cfg.r_points; ++a)
                    for (int b = 0; b < cfg.r_points; ++b)
                        for (int c = 0; c < cfg.dtheta_points; ++c) {
                            jobs.push_back({n1, n2, cfg.r_max * a / (cfg.r_points - 1.0),
                                            cfg.r_max * b / (cfg.r_points - 1.0),
                                            -M_PI + 2.0 * M_PI * c / (cfg.dtheta_points - 1.0)});
                        }
        pts.resize(jobs.size());
        duplex::parallel_for_index(jobs.size(), cfg.threads, [&](std::size_t i) {
            const auto& [n1, n2, ra, rb, dth] = jobs[i];
            duplex::GaussianEncoding enc{{n1, ra, 0.0}, {n2, rb, -dth}};
            const duplex::RatePair rate = duplex::gaussian_rates(blk, enc, cfg.n_th);
            pts[i] = duplex::SamplePoint{
                rate, {{"N1", n1}, {"N2", n2}, {"r1", ra}, {"r2", rb}, {"dtheta", dth}}};
        });
        region.points = std::move(pts);
        region.points.push_back({duplex::RatePair{0.0, 0.0}, {}});
        std::vector<duplex::Vec2> coords(region.points.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = {region.points[i].rate.i1, region.points[i].rate.i2};
        }
        auto hull_idx = duplex::convex_hull_indices(coords);
        hull_idx = duplex::detail::rotate_hull_to_origin(coords, hull_idx);
        std::vector<duplex::Vec2> hull_pts;
        for (int idx : hull_idx) {
            const auto& sp = region.points[idx];
            duplex::BoundaryPoint bp{sp.rate, duplex::ProtocolLabel::low_rank_jacobian,
                                     sp.params};
            if (sp.rate.i1 <= 1e-12 && sp.rate.i2 <= 1e-12) {
                bp.label = duplex::ProtocolLabel::time_sharing;
                bp.rate = {0.0, 0.0};
                bp.params = {};
            }
            region.boundary.push_back(std::move(bp));
            hull_pts.push_back(coords[idx]);
        }
        region.hull = duplex::ConvexRegion(std::move(hull_pts));
    } else {
        throw ConfigError("unknown encoding \"" + cfg.encoding + "\"");
    }

    ordered_json manifest = manifest_base(cfg);
    const duplex::AdvantageResult adv = duplex::duplex_advantage(region, cfg.t);
    manifest["max_sum"] = adv.max_sum;
    manifest["i_max"] = std::isinf(adv.i_max) ? ordered_json("infinity") : ordered_json(adv.i_max);
    manifest["advantage"] = adv.advantage;
    write_region_artifacts(cfg, region, std::move(manifest), started);
    return 0;
}

int run_device_region(const JobConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    duplex::DeviceFamily fam{cfg.g, cfg.kappa_e, cfg.kappa_i, cfg.n_th};
    duplex::DeviceRegionOptions opt;
    opt.delta_points = cfg.delta_points;
    opt.delta_box_factor = cfg.delta_box_factor;
    opt.threads = cfg.threads;
    const duplex::RateRegion region = duplex::device_region(fam, opt);
    const double t_best = duplex::max_transmission(cfg.g, cfg.kappa_e, cfg.kappa_i).t;
    ordered_json manifest = manifest_base(cfg);
    const duplex::AdvantageResult adv = duplex::duplex_advantage(region, t_best);
    manifest["t_best"] = t_best;
    manifest["max_sum"] = adv.max_sum;
    manifest["i_max"] = adv.i_max;
    manifest["advantage"] = adv.advantage;
    write_region_artifacts(cfg, region, std::move(manifest), started);
    return 0;
}

int run_band(const JobConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    duplex::DeviceFamily fam{cfg.g, cfg.kappa_e, cfg.kappa_i, cfg.n_th};
    duplex::FrequencyGrid freq{cfg.delta_min, cfg.delta_max, cfg.delta_points};
    duplex::EncodingGrid grid{cfg.n_min, cfg.n_max, cfg.n_points, true, true};
    const duplex::BandSummary band = duplex::band_analysis(fam, freq, grid, cfg.threads);

    duplex::RateRegion region;
    for (const duplex::Vec2& v : band.integrated.vertices()) {
        region.boundary.push_back({{v.x, v.y},
                                   duplex::ProtocolLabel::time_sharing,
                                   {{"delta_min", cfg.delta_min}, {"delta_max", cfg.delta_max}}});
    }
    region.hull = band.integrated;

    const fs::path out(cfg.output);
    fs::create_directories(out);
    write_file(out / "band.json", duplex::band_to_json(band).dump(2) + "\n");
    write_file(out / "band.svg", duplex::render_band_svg(band));
    ordered_json manifest = manifest_base(cfg);
    manifest["advantage_intervals"] = band.advantage_intervals.size();
    write_region_artifacts(cfg, region, std::move(manifest), started);
    return 0;
}

int run_fock(const JobConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    duplex::FockRegionOptions opt;
    opt.p_points = cfg.p_points;
    if (cfg.coherence) opt.coherence_fractions = {-0.8, -0.4, 0.0, 0.4, 0.8};
    opt.threads = cfg.threads;
    const duplex::FockRegionResult res = duplex::fock_rate_region(cfg.t, opt);
    ordered_json manifest = manifest_base(cfg);
    manifest["max_sum"] = res.max_sum;
    manifest["max_axis"] = res.max_axis;
    manifest["advantage"] = res.duplex_advantage;
    write_region_artifacts(cfg, res.region, std::move(manifest), started);
    return 0;
}

int run_check(const JobConfig& cfg);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duplex-rate: achievable rate regions for duplex bosonic transducers"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string config_path;
    if (const char* env = std::getenv("DUPLEX_RATE_THREADS")) {
        cfg.threads = static_cast<unsigned>(std::max(1, std::atoi(env)));
    }

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON job config (flags override)");
        sub->add_option("--out", cfg.output, "output directory");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--nth", cfg.n_th, "environment thermal occupation");
    };

    CLI::App* region = app.add_subcommand("region", "fixed-channel rate region");
    add_common(region);
    region->add_option("--T", cfg.t, "transmission");
    region->add_option("--R1", cfg.r1, "port-1 reflection");
    region->add_option("--R2", cfg.r2, "port-2 reflection");
    region->add_option("--theta", cfg.theta, "channel phase");
    region->add_option("--encoding", cfg.encoding, "thermal | gaussian | locc");
    region->add_option("--n-points", cfg.n_points, "photon grid points");
    region->add_option("--n-min", cfg.n_min, "photon grid minimum");
    region->add_option("--n-max", cfg.n_max, "photon grid maximum");

    CLI::App* device = app.add_subcommand("device-region", "device-optimized region");
    add_common(device);
    device->add_option("--g", cfg.g, "coupling");
    device->add_option("--kappa-e", cfg.kappa_e, "external loss rate");
    device->add_option("--kappa-i", cfg.kappa_i, "internal loss rate");
    device->add_option("--delta-points", cfg.delta_points, "detuning scan points");
    device->add_option("--delta-box", cfg.delta_box_factor, "detuning box factor");

    CLI::App* band = app.add_subcommand("band", "frequency-integrated region");
    add_common(band);
    band->add_option("--g", cfg.g, "coupling");
    band->add_option("--kappa-e", cfg.kappa_e, "external loss rate");
    band->add_option("--kappa-i", cfg.kappa_i, "internal loss rate");
    band->add_option("--delta-min", cfg.delta_min, "band lower edge");
    band->add_option("--delta-max", cfg.delta_max, "band upper edge");
    band->add_option("--delta-points", cfg.delta_points, "frequency grid points");
    band->add_option("--n-points", cfg.n_points, "photon grid points");

    CLI::App* fock = app.add_subcommand("fock", "single-photon encoding region");
    add_common(fock);
    fock->add_option("--T", cfg.t, "beam-splitter efficiency");
    fock->add_option("--p-points", cfg.p_points, "diagonal mixture grid");
    fock->add_flag("--coherence,!--no-coherence", cfg.coherence, "sweep coherences");

    CLI::App* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--threads", cfg.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path);
            // Re-parse so explicit flags override file values.
            app.clear();
            app.parse(argc, argv);
        }
        if (region->parsed()) cfg.command = "region";
        if (device->parsed()) cfg.command = "device-region";
        if (band->parsed()) cfg.command = "band";
        if (fock->parsed()) cfg.command = "fock";
        if (check->parsed()) cfg.command = "check";

        if (cfg.command != "check" && cfg.output.empty()) {
            throw ConfigError("--out is required");
        }
        if (cfg.n_points < 2 || cfg.delta_points < 2 || cfg.p_points < 2 ||
            cfg.r_points < 2 || cfg.dtheta_points < 2) {
            throw ConfigError("grids must have at least two points");
        }
        if (!(cfg.n_min > 0.0) || !(cfg.n_max > cfg.n_min)) {
            throw ConfigError("photon grid requires 0 < n_min < n_max");
        }
        if (cfg.command == "region") {
            if (cfg.t < 0.0 || cfg.t > 1.0 || cfg.r1 < 0.0 || cfg.r2 < 0.0 ||
                cfg.t + cfg.r1 > 1.0 + 1e-12 || cfg.t + cfg.r2 > 1.0 + 1e-12) {
                throw ConfigError("channel coefficients must satisfy T + R_k <= 1");
            }
        }
        if (cfg.command == "region") return run_region(cfg);
        if (cfg.command == "device-region") return run_device_region(cfg);
        if (cfg.command == "band") return run_band(cfg);
        if (cfg.command == "fock") return run_fock(cfg);
        if (cfg.command == "check") return run_check(cfg);
        throw ConfigError("unknown command \"" + cfg.command + "\"");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const duplex::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const duplex::invalid_state_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

namespace {

// Fast invariant suite behind `duplex-rate check`.
int run_check(const JobConfig& cfg) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    {  // unitarity of random scattering matrices
        double worst = 0.0;
        for (int it = 0; it < 1000; ++it) {
            const int n = 2 + static_cast<int>(rng() % 3);
            Eigen::MatrixXcd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j2 = 0; j2 < n; ++j2)
                    a(i, j2) = std::complex<double>(2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0);
            duplex::DeviceParams d;
            d.g_matrix = 0.5 * (a + a.adjoint()).eval();
            d.kappa_e = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return 0.2 + 9.8 * unif(rng); });
            d.kappa_i = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return 5.0 * unif(rng); });
            const auto s = duplex::build_scattering(d).matrix();
            worst = std::max(worst,
                             (s.adjoint() * s - Eigen::MatrixXcd::Identity(2 * n, 2 * n))
                                 .cwiseAbs()
                                 .maxCoeff());
        }
        check("scattering unitarity <= 1e-10 (1000 random devices)", worst <= 1e-10);
    }
    {  // scale invariance
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            duplex::DeviceParams d = duplex::DeviceParams::two_mode(
                10.0 * unif(rng), 0.5 + 8.0 * unif(rng), 0.5 + 8.0 * unif(rng),
                0.1 + 4.0 * unif(rng), 0.1 + 4.0 * unif(rng), 8.0 * unif(rng) - 4.0,
                8.0 * unif(rng) - 4.0);
            const auto s0 = duplex::build_scattering(d).matrix();
            const auto s1 = duplex::build_scattering(duplex::rescale_device(d)).matrix();
            worst = std::max(worst, (s0 - s1).cwiseAbs().maxCoeff());
        }
        check("scale invariance <= 1e-12 (100 random devices)", worst <= 1e-12);
    }
    {  // gradient identities vs finite differences
        double worst = 0.0;
        for (int it = 0; it < 20; ++it) {
            duplex::DeviceParams d = duplex::DeviceParams::two_mode(
                0.5 + 8.0 * unif(rng), 0.5 + 8.0 * unif(rng), 0.5 + 8.0 * unif(rng),
                0.1 + 3.0 * unif(rng), 0.1 + 3.0 * unif(rng), 6.0 * unif(rng) - 3.0,
                6.0 * unif(rng) - 3.0);
            const auto an = duplex::transmission_gradients(d, 0, 1);
            auto t_of = [&](duplex::DeviceParams dd) {
                return std::norm(duplex::build_scattering(dd)(0, 1));
            };
            auto fd = [&](auto&& set, double scale) {
                const double h = 1e-6 * std::max(1.0, std::abs(scale));
                duplex::DeviceParams dp = d, dm = d;
                set(dp, h);
                set(dm, -h);
                return (t_of(dp) - t_of(dm)) / (2.0 * h);
            };
            const double fd_dm = fd([&](duplex::DeviceParams& dd, double h) { dd.g_matrix(0, 0) += h; },
                                    d.g_matrix(0, 0).real());
            const double fd_dn = fd([&](duplex::DeviceParams& dd, double h) { dd.g_matrix(1, 1) += h; },
                                    d.g_matrix(1, 1).real());
            const double fd_km = fd([&](duplex::DeviceParams& dd, double h) { dd.kappa_e(0) += h; },
                                    d.kappa_e(0));
            const double fd_kn = fd([&](duplex::DeviceParams& dd, double h) { dd.kappa_e(1) += h; },
                                    d.kappa_e(1));
            auto rel = [](double a, double b) {
                return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
            };
            worst = std::max({worst, rel(an.d_delta_m, fd_dm), rel(an.d_delta_n, fd_dn),
                              rel(an.d_kappa_me, fd_km), rel(an.d_kappa_ne, fd_kn)});
        }
        check("transmission gradients match finite differences (rel 1e-6)", worst <= 1e-6);
    }
    {  // purification purity
        double worst = 0.0;
        for (int it = 0; it < 100; ++it) {
            duplex::OneModeDecomposition dec{3.0 * unif(rng), 1.5 * unif(rng),
                                             M_PI * unif(rng)};
            const auto pur = duplex::purification_blocks(dec);
            Eigen::Matrix4d joint;
            joint.topLeftCorner<2, 2>() = pur.v_ref;
            joint.topRightCorner<2, 2>() = pur.c.transpose();
            joint.bottomLeftCorner<2, 2>() = pur.c;
            joint.bottomRightCorner<2, 2>() = duplex::reconstruct_one_mode(dec).matrix();
            for (double nu : duplex::symplectic_eigenvalues(duplex::CovarianceMatrix(joint))) {
                worst = std::max(worst, std::abs(nu - 0.5));
            }
        }
        check("purification purity |nu - 1/2| <= 1e-9 (100 random states)", worst <= 1e-9);
    }
    {  // minkowski oracle on random polygon pairs
        bool ok = true;
        for (int it = 0; it < 50 && ok; ++it) {
            auto poly = [&]() {
                std::vector<duplex::Vec2> pts;
                const int m = 3 + static_cast<int>(rng() % 10);
                for (int k = 0; k < m; ++k) pts.push_back({10 * unif(rng) - 5, 10 * unif(rng) - 5});
                return duplex::convex_hull(pts);
            };
            const auto a = poly(), b = poly();
            const auto fast = duplex::minkowski_sum(a, b);
            std::vector<duplex::Vec2> sums;
            for (const auto& pa : a.vertices())
                for (const auto& pb : b.vertices()) sums.push_back(pa + pb);
            const auto brute = duplex::convex_hull(sums);
            if (fast.size() != brute.size()) {
                ok = false;
                break;
            }
            for (std::size_t k = 0; k < fast.size(); ++k) {
                if (duplex::norm(fast.vertices()[k] - brute.vertices()[k]) > 1e-9) ok = false;
            }
        }
        check("minkowski edge-merge matches brute force (50 random pairs)", ok);
    }
    {  // Hong-Ou-Mandel
        const auto u = duplex::beam_splitter_unitary(0.5);
        const int d = u.mode_dim();
        const double amp = std::abs(u.matrix(1 * d + 1, 1 * d + 1));
        check("Hong-Ou-Mandel |1,1> amplitude <= 1e-12 at T = 1/2", amp <= 1e-12);
    }
    {  // thermal reduction of the gaussian pipeline
        double worst = 0.0;
        for (int it = 0; it < 50; ++it) {
            const double t = 0.55 + 0.4 * unif(rng);
            const double r1v = 0.05 * unif(rng), r2v = 0.05 * unif(rng);
            const double th = 2 * M_PI * unif(rng) - M_PI;
            const auto blk = duplex::signal_block(t, r1v, r2v, th);
            const double n1 = 5.0 * unif(rng), n2 = 5.0 * unif(rng);
            const auto gr = duplex::gaussian_rates(blk, {{n1, 0.0, 0.0}, {n2, 0.0, 0.0}});
            const auto tr = duplex::thermal_rates(duplex::make_channel(t, r1v, r2v, th), {n1, n2});
            worst = std::max({worst, std::abs(gr.i1 - tr.i1), std::abs(gr.i2 - tr.i2)});
        }
        check("gaussian pipeline reduces to thermal rates (<= 1e-9)", worst <= 1e-9);
    }
    (void)cfg;
    if (failures > 0) {
        std::cout << failures << " invariant check(s) failed\n";
        return kExitNumerical;
    }
    std::cout << "all invariant checks passed\n";
    return 0;
}

}  // namespace
