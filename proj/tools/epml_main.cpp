#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epml/analysis/emitters.hpp"
#include "epml/io/outputs.hpp"
#include "epml/mode/interface_system.hpp"
#include "epml/solver/raster.hpp"
#include "epml/solver/runner.hpp"

namespace fs = std::filesystem;
using namespace epml;

namespace {

#ifndef EPML_DEFAULT_PRESET_DIR
#define EPML_DEFAULT_PRESET_DIR ""
#endif

// "iso:rho,mu,lambda" or "ortho:rho,c11,c22,c33,c12"
MaterialParams parse_material(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("material spec needs 'iso:...' or 'ortho:...'");
    }
    const std::string kind = spec.substr(0, colon);
    std::vector<double> vals;
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (kind == "iso" && vals.size() == 3) {
        return MaterialParams::isotropic(vals[0], vals[1], vals[2]);
    }
    if (kind == "ortho" && vals.size() == 5) {
        return MaterialParams::orthotropic(vals[0], vals[1], vals[2], vals[3],
                                           vals[4]);
    }
    throw ConfigError("bad material spec '" + spec + "'");
}

std::string resolve_preset(const std::string& name,
                           const std::string& preset_dir) {
    std::vector<std::string> dirs;
    if (!preset_dir.empty()) dirs.push_back(preset_dir);
    if (const char* env = std::getenv("EPML_PRESET_DIR")) dirs.push_back(env);
    dirs.push_back(EPML_DEFAULT_PRESET_DIR);
    for (const auto& dir : dirs) {
        if (dir.empty()) continue;
        const fs::path p = fs::path(dir) / (name + ".json");
        if (fs::exists(p)) return p.string();
    }
    throw ConfigError("preset '" + name + "' not found (use --preset-dir)");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void emit_analysis_manifest(const std::string& out_dir,
                            const std::vector<std::string>& outputs) {
    RunManifest m;
    m.outputs = outputs;
    write_manifest(join(out_dir, "run_manifest.json"), m);
}

void write_two_band_raster(const std::string& path, int nx, int ny) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::vector<double> rho(n), cp(n), cs(n);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * nx + ix;
            const bool deep = iy < ny / 2;
            rho[k] = deep ? 2.2 : 1.6;
            cp[k] = deep ? 3.4 : 2.2;
            cs[k] = deep ? 1.9 : 1.2;
        }
    }
    write_raster_model(path, nx, ny, 0.1, 0.1, 0.0, -0.1 * (ny - 1), rho, cp, cs);
}

int run_simulate(const ScenarioConfig& cfg, const std::string& out_dir,
                 int threads) {
    RunOptions opts;
    opts.out_dir = out_dir;
    opts.threads = threads;
    opts.write_grids = true;
    const auto result = run_scenario(cfg, opts);
    std::cout << "wrote " << result.manifest.outputs.size() << " outputs to "
              << out_dir << "; final |u|_H = " << result.norm_h.back() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D layered-media elastic wave simulator with CFS-PML"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string out_dir = "out";
    std::string preset_dir;
    int threads = 1;
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--preset-dir", preset_dir, "preset search directory");
    app.add_option("--threads", threads, "worker threads (reserved)");

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "mode-analysis diagnostics");
    std::string kind;
    analyze->add_option("kind", kind,
                        "slowness | dispersion-roots | interface-det-scan | "
                        "pml-root-map | geometric-check")
        ->required();
    std::string mat_spec = "iso:1.5,4.86,4.8629";
    std::string top_spec = "iso:1.5,4.86,4.8629";
    std::string bottom_spec = "iso:3.0,27.0,26.9952";
    int n_angles = 720;
    double kx = 1.0, xi_lo = -10.0, xi_hi = 10.0;
    int n_scan = 2001;
    double sigma = 0.0, alpha = 0.0, xi = 0.0;
    analyze->add_option("--material", mat_spec, "iso:r,mu,la | ortho:r,c11,c22,c33,c12");
    analyze->add_option("--top", top_spec, "top medium (interface scans)");
    analyze->add_option("--bottom", bottom_spec, "bottom medium");
    analyze->add_option("--angles", n_angles, "directions to sweep");
    analyze->add_option("--kx", kx, "wavenumber along the interface");
    analyze->add_option("--xi-lo", xi_lo);
    analyze->add_option("--xi-hi", xi_hi);
    analyze->add_option("--n", n_scan, "scan points");
    analyze->add_option("--sigma", sigma, "PML damping value");
    analyze->add_option("--alpha", alpha, "complex frequency shift");
    analyze->add_option("--xi", xi, "interface-mode frequency (root map)");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "run a scenario");
    std::string config_path, preset;
    std::string raster_path;
    simulate->add_option("--config", config_path, "scenario JSON");
    simulate->add_option("--preset", preset,
                         "two-layer-iso | two-layer-ortho | four-layer | "
                         "curved-interface | raster");
    simulate->add_option("--raster-path", raster_path,
                         "raster file (overrides the preset's path)");

    // ---- compare-abc ----
    auto* cabc = app.add_subcommand("compare-abc",
                                    "reference vs PML vs ABC error series");
    std::string cabc_config, cabc_preset;
    cabc->add_option("--config", cabc_config, "scenario JSON");
    cabc->add_option("--preset", cabc_preset, "preset name");

    // ---- make-synthetic-raster ----
    auto* mkraster = app.add_subcommand(
        "make-synthetic-raster", "write a small two-band raster model");
    std::string raster_out = "model.raster";
    int rnx = 120, rny = 24;
    mkraster->add_option("--out", raster_out, "output path");
    mkraster->add_option("--nx", rnx);
    mkraster->add_option("--ny", rny);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mkraster) {
            write_two_band_raster(raster_out, rnx, rny);
            std::cout << "wrote " << raster_out << "\n";
            return 0;
        }

        if (*analyze) {
            fs::create_directories(out_dir);
            std::vector<std::string> outputs;
            if (kind == "slowness") {
                const auto m = parse_material(mat_spec);
                emit_slowness_csv(join(out_dir, "slowness.csv"), m, n_angles);
                outputs.push_back("slowness.csv");
            } else if (kind == "dispersion-roots") {
                const auto m = parse_material(mat_spec);
                emit_dispersion_roots_csv(join(out_dir, "dispersion_roots.csv"),
                                          m, n_angles);
                outputs.push_back("dispersion_roots.csv");
            } else if (kind == "interface-det-scan") {
                const InterfaceSystem sys{parse_material(top_spec),
                                          parse_material(bottom_spec)};
                emit_interface_det_scan_csv(join(out_dir, "det_scan.csv"), sys,
                                            kx, xi_lo, xi_hi, n_scan, sigma,
                                            alpha);
                outputs.push_back("det_scan.csv");
            } else if (kind == "pml-root-map") {
                const bool single = (xi != 0.0) || (xi_lo == xi_hi);
                if (single) {
                    emit_pml_root_map_csv(join(out_dir, "root_map.csv"), xi, xi,
                                          1, sigma, alpha);
                } else {
                    emit_pml_root_map_csv(join(out_dir, "root_map.csv"), xi_lo,
                                          xi_hi, n_scan, sigma, alpha);
                }
                outputs.push_back("root_map.csv");
            } else if (kind == "geometric-check") {
                const auto m = parse_material(mat_spec);
                const bool ok = emit_geometric_csv(
                    join(out_dir, "geometric_check.csv"), m, n_angles);
                outputs.push_back("geometric_check.csv");
                emit_analysis_manifest(out_dir, outputs);
                if (!ok) {
                    std::cerr << "geometric stability condition FLAGGED "
                                 "(Vpx*Vgx < 0 at some angle)\n";
                    return 2;
                }
                std::cout << "PML-admissible in x\n";
                return 0;
            } else {
                std::cerr << "unknown analyze kind '" << kind << "'\n";
                return 1;
            }
            emit_analysis_manifest(out_dir, outputs);
            std::cout << "wrote " << outputs.front() << " to " << out_dir << "\n";
            return 0;
        }

        if (*simulate || *cabc) {
            const bool is_cabc = static_cast<bool>(*cabc);
            std::string cpath = is_cabc ? cabc_config : config_path;
            std::string pname = is_cabc ? cabc_preset : preset;
            if (cpath.empty() && pname.empty()) {
                std::cerr << "need --config or --preset\n";
                return 1;
            }
            if (cpath.empty()) cpath = resolve_preset(pname, preset_dir);
            ScenarioConfig cfg = load_config_file(cpath);
            if (!raster_path.empty()) {
                if (!cfg.raster) cfg.raster = RasterSpec{};
                cfg.raster->path = raster_path;
            }
            if (is_cabc) {
                RunOptions opts;
                opts.out_dir = out_dir;
                opts.threads = threads;
                const auto res = compare_abc(cfg, opts);
                const double ratio =
                    res.max_err_abc > 0.0 ? res.max_err_pml / res.max_err_abc
                                          : 0.0;
                std::cout << "max PML err " << res.max_err_pml << ", max ABC err "
                          << res.max_err_abc << ", ratio " << ratio << "\n";
                RunManifest m;
                m.config_hash = config_hash(cfg);
                m.outputs = {"compare_abc.csv"};
                write_manifest(join(out_dir, "run_manifest.json"), m);
                return 0;
            }
            return run_simulate(cfg, out_dir, threads);
        }
    } catch (const InstabilityDetected& e) {
        std::cerr << "tripwire: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
