#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "epml/mapping/mapped_grid.hpp"
#include "epml/mapping/transformed.hpp"
#include "epml/material.hpp"
#include "epml/sbp/operator.hpp"
#include "epml/solver/config.hpp"
#include "epml/solver/pml_profile.hpp"

namespace epml {

enum class Face { Left, Right, Top, Bottom };

struct FaceData {
    BoundaryKind kind = BoundaryKind::Characteristic;
    bool is_interface = false;
    std::vector<double> z1, z2;         // impedance diagonal at face nodes
    std::vector<double> scale;          // |J| |grad(normal coordinate)|
    std::vector<double> sigma_trans;    // transverse damping at face nodes
};

struct InterfaceData {
    std::vector<double> tau;            // displacement-jump penalty
    std::vector<double> zb1, zb2;       // velocity-jump penalty (scaled)
};

/// Assembled per-layer data: grid, reference-coefficient blocks, operators,
/// damping fields and face bookkeeping.
struct LayerDisc {
    MappedGrid grid;
    TransformedCoefficients coeff;
    SbpOperator1D opq, opr;

    std::vector<MaterialParams> materials;  // one entry, or nq*nr (raster)
    bool heterogeneous = false;

    Field2D sx, sy;        // damping sampled at physical node coordinates
    Field2D aux_mask;      // 1 where sx > 0 or sy > 0, else 0
    bool has_r = false;    // r auxiliary allocated (y-damping present)
    bool periodic_q = false;
    bool periodic_r = false;

    Field2D msrc1, msrc2;  // moment-source spatial factor M0 * grad(f_delta)
    bool has_moment = false;

    // strip-dissipation coefficients eps * sigma * rho|J| * H per direction;
    // zero wherever the corresponding sigma vanishes
    Field2D disq_c, disr_c;
    bool has_dissipation = false;

    // global sixth-difference dissipation coefficients (per direction),
    // active only when some PML has nonzero strength
    Field2D gdisq_c, gdisr_c;
    bool has_grid_dissipation = false;

    FaceData faces[4];     // indexed by Face

    std::size_t offset = 0;   // this layer's block start in the flat state
    int n_fields = 10;        // 12 when has_r

    int nq() const { return grid.nq; }
    int nr() const { return grid.nr; }
    std::size_t nodes() const {
        return static_cast<std::size_t>(grid.nq) * grid.nr;
    }
    const MaterialParams& material_at(int iq, int ir) const {
        return heterogeneous ? materials[static_cast<std::size_t>(ir) * grid.nq + iq]
                             : materials[0];
    }
};

/// Pointers into one layer's slice of the flat state vector.
template <typename T>
struct LayerView {
    T* u1;
    T* u2;
    T* p1;
    T* p2;
    T* v1;
    T* v2;
    T* w1;
    T* w2;
    T* q1;
    T* q2;
    T* r1;  // null when the layer carries no r field
    T* r2;
};

/// Boundary data hook for manufactured-solution tests: returns the
/// inhomogeneous right-hand side of the face condition at a face node.
using BoundaryDataFn = std::function<std::array<double, 2>(
    int layer, Face face, double x, double y, double t)>;

/// Extra body force (physical force density) hook.
using BodyForceFn = std::function<std::array<double, 2>(int layer, double x,
                                                        double y, double t)>;

struct Discretization {
    ScenarioConfig cfg;
    std::vector<LayerDisc> layers;           // top to bottom
    std::vector<InterfaceData> interfaces;   // between consecutive layers

    double dt = 0.0;
    double alpha = 0.0;
    double sigma0_x = 0.0, sigma0_y = 0.0;
    double cp_max = 0.0;
    double ext_x_min = 0.0, ext_x_max = 0.0;  // extent including PML
    std::size_t state_size = 0;

    std::optional<PmlProfile> px_low, px_high, py_low, py_high;

    BoundaryDataFn boundary_data;   // optional
    BodyForceFn extra_force;        // optional

    template <typename T>
    LayerView<T> view(int l, T* y) const {
        const LayerDisc& ld = layers[l];
        const std::size_t n = ld.nodes();
        T* base = y + ld.offset;
        LayerView<T> v{};
        v.u1 = base;
        v.u2 = base + n;
        v.p1 = base + 2 * n;
        v.p2 = base + 3 * n;
        v.v1 = base + 4 * n;
        v.v2 = base + 5 * n;
        v.w1 = base + 6 * n;
        v.w2 = base + 7 * n;
        v.q1 = base + 8 * n;
        v.q2 = base + 9 * n;
        v.r1 = ld.has_r ? base + 10 * n : nullptr;
        v.r2 = ld.has_r ? base + 11 * n : nullptr;
        return v;
    }

    double sigma_x_at(double x) const;
    double sigma_y_at(double y) const;
};

/// Builds grids, transformed coefficients, damping fields, face data and the
/// time step from a validated config.
Discretization build_discretization(const ScenarioConfig& cfg);

struct RhsWorkspace {
    struct LayerScratch {
        Field2D gq1, gq2, gr1, gr2;  // reference gradients per component
        Field2D fq1, fq2, fr1, fr2;  // reference fluxes
        std::vector<double> row_a, row_b;  // interface jump rows
        std::vector<double> psi1, psi2, phi1, phi2, col_scratch;
    };
    std::vector<LayerScratch> layers;
};

RhsWorkspace make_workspace(const Discretization& d);

/// Full semi-discrete right-hand side: momentum with SAT boundary and
/// interface terms plus the masked auxiliary blocks.
void eval_rhs(const Discretization& d, double t, const double* y, double* dy,
              RhsWorkspace& ws);

}  // namespace epml
