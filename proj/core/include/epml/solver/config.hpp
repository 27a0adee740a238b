#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epml/material.hpp"

namespace epml {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BoundaryKind { Characteristic, TractionFree, Periodic };

struct LayerSpec {
    double y_min = 0.0;
    double y_max = 0.0;
    int n = 0;  // nodes across the layer in y (reference r-direction)
    std::optional<MaterialParams> material;  // absent in raster mode
};

struct PmlDirectionSpec {
    bool low_side = false;   // left (x) or bottom (y)
    bool high_side = false;  // right (x) or top (y)
    double width_fraction = 0.0;  // of the physical extent in this direction
    double width = 0.0;           // absolute, used when width_fraction == 0
    double ref = 1e-4;            // relative modeling error -> sigma0
    double sigma0_override = -1.0;  // >= 0 replaces the Ref formula
};

struct GaussianInitSpec {
    std::array<double, 2> center{};
    double width_coefficient = 20.0;
    double amplitude = 1.0;
};

struct MomentSourceSpec {
    double m0 = 1000.0;
    double t0 = 0.215;
    double tau = 0.15;        // g = exp(-(t-t0)^2 / tau)
    double s_factor = 0.5;    // s1 = s2 = s_factor * h
    std::vector<std::array<double, 2>> locations;
};

struct InterfaceCurveSpec {
    double amplitude = 0.0;  // y = amplitude * exp(-width*(x-center)^2)
    double center = 0.0;
    double width = 0.0;
};

struct RasterSpec {
    std::string path;
    int stride = 1;
    std::optional<int> split_row;  // optional two-layer split (row index)
};

struct SatCoefficients {
    double tau0 = 1.0;    // displacement-jump penalty, units of ||B|| / (w0 h)
    double gamma0 = 0.5;  // velocity-jump penalty, units of face impedance
};

/**
 * Fourth-difference velocity dissipation applied inside the damping strips,
 * scaled by the local sigma. Plain central differences leave a weakly
 * growing discrete mode at the strip's outer closure when an interface with
 * material contrast runs into the layer; this term removes it while staying
 * energy-dissipative and O(h^4) on smooth fields. Zero outside the strips.
 */
struct StripDissipation {
    double epsilon = 0.05;
};

/**
 * Global sixth-difference velocity dissipation, enabled whenever a PML with
 * nonzero strength is configured. Central difference operators have no
 * intrinsic damping, so grid-frequency content generated at closures and at
 * the damping ramp lingers forever and floors the decay of ||u||_H; this
 * term drains it at a rate eps * 64 * cp / h while perturbing smooth fields
 * only at fifth order.
 */
struct GridDissipation {
    double epsilon = 0.004;
};

struct TimeSpec {
    double t_final = 0.0;
    double cfl = 0.25;
    double dt_override = -1.0;  // > 0 replaces the CFL formula
    double output_dt = 0.1;
};

struct ScenarioConfig {
    std::string name = "run";
    double x_min = 0.0;
    double x_max = 0.0;
    int nx = 0;  // nodes over the physical (pre-PML) x-extent
    std::vector<LayerSpec> layers;  // ordered top to bottom
    BoundaryKind left = BoundaryKind::Characteristic;
    BoundaryKind right = BoundaryKind::Characteristic;
    BoundaryKind top = BoundaryKind::Characteristic;
    BoundaryKind bottom = BoundaryKind::Characteristic;
    std::optional<PmlDirectionSpec> pml_x;
    std::optional<PmlDirectionSpec> pml_y;
    double alpha_ratio = 0.05;      // alpha = ratio * sigma0
    double alpha_override = -1.0;   // >= 0 replaces the ratio
    std::optional<GaussianInitSpec> gaussian_init;
    std::optional<MomentSourceSpec> moment_source;
    std::optional<InterfaceCurveSpec> interface_curve;  // first interface
    std::optional<RasterSpec> raster;
    SatCoefficients sat;
    StripDissipation dissipation;
    GridDissipation grid_dissipation;
    TimeSpec time;
    std::vector<double> snapshot_times;
    bool strict_geometric_check = true;

    /// Physical x-extent before any PML extension.
    double Lx() const { return x_max - x_min; }

    void validate() const;
};

/// JSON (de)serialization of the documented schema.
ScenarioConfig load_config_json(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);
std::string config_to_json(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical JSON dump, for the run manifest.
std::uint64_t config_hash(const ScenarioConfig& cfg);

}  // namespace epml
