#pragma once

#include <string>
#include <vector>

#include "epml/material.hpp"

namespace epml {

class RasterFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Gridded isotropic model read from a raster file: a one-line JSON header
 * {"nx":..,"ny":..,"dx":..,"dy":..,"origin":[x,y],"fields":["rho","cp","cs"]}
 * terminated by a newline, followed by three row-major little-endian float64
 * arrays (rho, cp, cs), rows ordered bottom to top. Derived parameters per
 * node: mu = rho cs^2, lambda = rho cp^2 - 2 mu; nodes with lambda <= -mu are
 * rejected.
 */
struct RasterModel {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    std::vector<MaterialParams> cells;  // row-major, size nx*ny

    const MaterialParams& at(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * nx + ix];
    }
};

/// Reads and converts a raster file; `stride` keeps every stride-th sample in
/// each direction and always keeps the last row/column.
RasterModel ingest_raster_model(const std::string& path, int stride = 1);

/// Writes the raster format (used by tools and tests to make synthetic models).
void write_raster_model(const std::string& path, int nx, int ny, double dx,
                        double dy, double x0, double y0,
                        const std::vector<double>& rho,
                        const std::vector<double>& cp,
                        const std::vector<double>& cs);

}  // namespace epml
