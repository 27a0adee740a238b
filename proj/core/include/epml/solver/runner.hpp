#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epml/io/outputs.hpp"
#include "epml/solver/discretization.hpp"
#include "epml/solver/time_integrator.hpp"

namespace epml {

struct RunOptions {
    std::string out_dir;       // empty: no files written
    int threads = 1;           // recorded in the manifest
    bool write_grids = false;  // export nodal coordinates per layer
};

struct RunResult {
    std::vector<double> times;
    std::vector<double> norm_h;
    std::vector<double> max_err;  // aligned with times when a reference is set
    std::vector<double> state;    // final state
    RunManifest manifest;
};

/// Runs a configured scenario: geometric-stability gating, initial data,
/// RK4 loop with the NaN tripwire, ||u||_H sampling, snapshots, manifest.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

struct CompareAbcResult {
    std::vector<double> times;
    std::vector<double> err_pml;
    std::vector<double> err_abc;
    double max_err_pml = 0.0;
    double max_err_abc = 0.0;
};

/**
 * Reference / PML / ABC comparison: the reference domain extends the PML
 * direction three-fold with identical spacing; errors are max-norm
 * differences of the displacement over the window x <= x_min + 0.9 Lx at
 * shared sample times.
 */
CompareAbcResult compare_abc(const ScenarioConfig& cfg,
                             const RunOptions& opts = {});

/// Sample times with an integer number of equal RK4 steps per interval.
std::vector<double> sample_times(const ScenarioConfig& cfg, double dt,
                                 int& steps_per_sample, double& dt_actual);

}  // namespace epml
