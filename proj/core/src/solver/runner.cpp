#include "epml/solver/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include "epml/mode/dispersion.hpp"
#include "epml/solver/energy.hpp"
#include "epml/solver/sources.hpp"

namespace epml {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void geometric_gate(const Discretization& d, RunManifest& manifest) {
    const bool check_y = d.py_low || d.py_high;
    for (std::size_t li = 0; li < d.layers.size(); ++li) {
        const LayerDisc& L = d.layers[li];
        if (L.heterogeneous) {
            manifest.geometric_verdicts.push_back("layer " + std::to_string(li) +
                                                  ": empirical (heterogeneous)");
            manifest.empirical_heterogeneous = true;
            continue;
        }
        const MaterialParams& m = L.materials[0];
        const auto rx = geometric_stability_check(m, 720);
        bool ok = rx.admissible;
        std::string verdict = "layer " + std::to_string(li) + ": x " +
                              (rx.admissible ? "admissible" : "FLAGGED");
        if (check_y) {
            const auto ry = geometric_stability_check(m.with_axes_swapped(), 720);
            ok = ok && ry.admissible;
            verdict += ", y ";
            verdict += ry.admissible ? "admissible" : "FLAGGED";
        }
        manifest.geometric_verdicts.push_back(verdict);
        if (!ok && d.cfg.strict_geometric_check) {
            throw ConfigError(
                "geometric stability check flagged layer " + std::to_string(li) +
                " (Vpx*Vgx < 0); set strict_geometric_check=false to override");
        }
    }
}

void initialize(const Discretization& d, std::vector<double>& y) {
    if (d.cfg.gaussian_init) gaussian_initial_data(d, *d.cfg.gaussian_init, y);
}

struct WindowRef {
    // per layer: q-index limit (inclusive) and stored samples of (u1, u2)
    int iq_max = 0;
    std::vector<std::vector<double>> samples;  // [sample][layer-concatenated]
};

}  // namespace

std::vector<double> sample_times(const ScenarioConfig& cfg, double dt,
                                 int& steps_per_sample, double& dt_actual) {
    steps_per_sample =
        std::max(1, static_cast<int>(std::ceil(cfg.time.output_dt / dt - 1e-12)));
    dt_actual = cfg.time.output_dt / steps_per_sample;
    const int n_samples =
        static_cast<int>(std::ceil(cfg.time.t_final / cfg.time.output_dt - 1e-9));
    std::vector<double> ts(n_samples + 1);
    for (int k = 0; k <= n_samples; ++k) ts[k] = k * cfg.time.output_dt;
    return ts;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    Discretization d = build_discretization(cfg);

    RunResult result;
    result.manifest.config_hash = config_hash(cfg);
    result.manifest.dt = d.dt;
    result.manifest.threads = opts.threads;
    for (const auto& L : d.layers) {
        result.manifest.grid_sizes.push_back({L.nq(), L.nr()});
    }
    geometric_gate(d, result.manifest);

    std::vector<double> y = zero_state(d);
    initialize(d, y);

    Rk4Stepper stepper(d);
    int steps_per_sample = 0;
    double dt = 0.0;
    const std::vector<double> ts = sample_times(cfg, d.dt, steps_per_sample, dt);
    result.manifest.dt = dt;

    std::vector<double> snap_times = cfg.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    std::size_t next_snap = 0;

    const bool writing = !opts.out_dir.empty();
    if (writing) std::filesystem::create_directories(opts.out_dir);

    if (writing && opts.write_grids) {
        for (std::size_t li = 0; li < d.layers.size(); ++li) {
            const LayerDisc& L = d.layers[li];
            const std::array<double, 4> ext{d.ext_x_min, d.ext_x_max, 0.0, 0.0};
            const std::string base = "grid_layer" + std::to_string(li);
            write_snapshot(join(opts.out_dir, base + "_x.f64"), L.grid.x, 0.0,
                           ext, "x");
            write_snapshot(join(opts.out_dir, base + "_y.f64"), L.grid.y, 0.0,
                           ext, "y");
            result.manifest.outputs.push_back(base + "_x.f64");
            result.manifest.outputs.push_back(base + "_y.f64");
        }
    }

    auto emit_snapshot = [&](double t) {
        if (!writing) return;
        for (std::size_t li = 0; li < d.layers.size(); ++li) {
            const Field2D mag = displacement_magnitude(d, y, static_cast<int>(li));
            const LayerDisc& L = d.layers[li];
            const std::array<double, 4> ext{
                d.ext_x_min, d.ext_x_max, L.grid.y(0, 0),
                L.grid.y(0, L.nr() - 1)};
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_layer%zu_t%08.3f.f64",
                          li, t);
            write_snapshot(join(opts.out_dir, name), mag, t, ext, "abs_u");
            result.manifest.outputs.push_back(name);
        }
    };

    double t = 0.0;
    result.times.push_back(0.0);
    result.norm_h.push_back(energy_norm(d, y));
    if (next_snap < snap_times.size() && snap_times[next_snap] <= 0.0) {
        emit_snapshot(0.0);
        ++next_snap;
    }
    for (std::size_t k = 1; k < ts.size(); ++k) {
        for (int s = 0; s < steps_per_sample; ++s) {
            stepper.step(d, t, dt, y);
            t += dt;
        }
        t = ts[k];  // suppress accumulation drift in reported time
        check_finite(y, t);
        result.times.push_back(t);
        result.norm_h.push_back(energy_norm(d, y));
        while (next_snap < snap_times.size() &&
               snap_times[next_snap] <= t + 1e-12) {
            emit_snapshot(t);
            ++next_snap;
        }
    }

    if (writing) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < result.times.size(); ++k) {
            rows.push_back({result.times[k], result.norm_h[k]});
        }
        write_csv(join(opts.out_dir, "series.csv"), "t,norm_H", rows);
        result.manifest.outputs.push_back("series.csv");
        const auto t_end = std::chrono::steady_clock::now();
        result.manifest.wall_clock_seconds =
            std::chrono::duration<double>(t_end - t_start).count();
        write_manifest(join(opts.out_dir, "run_manifest.json"), result.manifest);
    }
    result.state = std::move(y);
    return result;
}

CompareAbcResult compare_abc(const ScenarioConfig& cfg, const RunOptions& opts) {
    if (!cfg.pml_x || !cfg.pml_x->high_side || cfg.pml_x->low_side) {
        throw ConfigError("compare-abc expects a right-side x-PML");
    }
    if (cfg.raster) throw ConfigError("compare-abc does not support raster mode");

    // reference: domain extended three-fold in +x, identical spacing, no PML
    ScenarioConfig ref = cfg;
    ref.pml_x.reset();
    ref.x_max = cfg.x_min + 3.0 * cfg.Lx();
    ref.nx = 3 * (cfg.nx - 1) + 1;
    ref.right = BoundaryKind::Characteristic;

    ScenarioConfig abc = cfg;
    abc.pml_x.reset();
    abc.right = BoundaryKind::Characteristic;

    const double x_win = cfg.x_min + 0.9 * cfg.Lx();

    // lockstep time sampling: all three share h and material speeds
    Discretization dref = build_discretization(ref);
    Discretization dpml = build_discretization(cfg);
    Discretization dabc = build_discretization(abc);
    const double dt0 = std::min({dref.dt, dpml.dt, dabc.dt});
    int sps = 0;
    double dt = 0.0;
    const std::vector<double> ts = sample_times(cfg, dt0, sps, dt);

    auto window_iq_max = [&](const Discretization& d) {
        const LayerDisc& L = d.layers[0];
        int iqm = 0;
        for (int iq = 0; iq < L.nq(); ++iq) {
            if (L.grid.x(iq, 0) <= x_win + 1e-12) iqm = iq;
        }
        return iqm;
    };
    const int iq_max = window_iq_max(dpml);
    if (window_iq_max(dref) < iq_max || window_iq_max(dabc) < iq_max) {
        throw ConfigError("compare-abc: window misalignment");
    }

    auto extract = [&](const Discretization& d, const std::vector<double>& y) {
        std::vector<double> out;
        for (std::size_t li = 0; li < d.layers.size(); ++li) {
            const LayerDisc& L = d.layers[li];
            const auto v = d.view<const double>(static_cast<int>(li), y.data());
            for (int ir = 0; ir < L.nr(); ++ir) {
                for (int iq = 0; iq <= iq_max; ++iq) {
                    const std::size_t i = static_cast<std::size_t>(ir) * L.nq() + iq;
                    out.push_back(v.u1[i]);
                    out.push_back(v.u2[i]);
                }
            }
        }
        return out;
    };

    // run the reference, storing window samples
    std::vector<std::vector<double>> ref_samples;
    {
        std::vector<double> y = zero_state(dref);
        if (ref.gaussian_init) gaussian_initial_data(dref, *ref.gaussian_init, y);
        Rk4Stepper st(dref);
        double t = 0.0;
        ref_samples.push_back(extract(dref, y));
        for (std::size_t k = 1; k < ts.size(); ++k) {
            for (int s = 0; s < sps; ++s) {
                st.step(dref, t, dt, y);
                t += dt;
            }
            check_finite(y, t);
            ref_samples.push_back(extract(dref, y));
        }
    }

    auto run_against = [&](const Discretization& d, const ScenarioConfig& c) {
        std::vector<double> errs;
        std::vector<double> y = zero_state(d);
        if (c.gaussian_init) gaussian_initial_data(d, *c.gaussian_init, y);
        Rk4Stepper st(d);
        double t = 0.0;
        auto err_at = [&](std::size_t k) {
            const auto cur = extract(d, y);
            double e = 0.0;
            for (std::size_t i = 0; i < cur.size(); ++i) {
                e = std::max(e, std::abs(cur[i] - ref_samples[k][i]));
            }
            return e;
        };
        errs.push_back(err_at(0));
        for (std::size_t k = 1; k < ts.size(); ++k) {
            for (int s = 0; s < sps; ++s) {
                st.step(d, t, dt, y);
                t += dt;
            }
            check_finite(y, t);
            errs.push_back(err_at(k));
        }
        return errs;
    };

    CompareAbcResult out;
    out.times = ts;
    out.err_pml = run_against(dpml, cfg);
    out.err_abc = run_against(dabc, abc);
    out.max_err_pml = *std::max_element(out.err_pml.begin(), out.err_pml.end());
    out.max_err_abc = *std::max_element(out.err_abc.begin(), out.err_abc.end());

    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double ratio = out.err_abc[k] > 0.0
                                     ? out.err_pml[k] / out.err_abc[k]
                                     : 0.0;
            rows.push_back({ts[k], out.err_pml[k], out.err_abc[k], ratio});
        }
        write_csv(join(opts.out_dir, "compare_abc.csv"),
                  "t,max_err_pml,max_err_abc,ratio", rows);
    }
    return out;
}

}  // namespace epml
