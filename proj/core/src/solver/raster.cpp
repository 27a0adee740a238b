#include "epml/solver/raster.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace epml {

using nlohmann::json;

namespace {

std::vector<int> stride_indices(int n, int stride) {
    std::vector<int> idx;
    for (int i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

}  // namespace

RasterModel ingest_raster_model(const std::string& path, int stride) {
    if (stride < 1) throw RasterFormatError("raster: stride must be >= 1");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RasterFormatError("raster: cannot open '" + path + "'");

    std::string header;
    std::getline(in, header);
    json j;
    try {
        j = json::parse(header);
    } catch (const json::exception& e) {
        throw RasterFormatError(std::string("raster: bad header: ") + e.what());
    }
    RasterModel full;
    try {
        full.nx = j.at("nx").get<int>();
        full.ny = j.at("ny").get<int>();
        full.dx = j.at("dx").get<double>();
        full.dy = j.at("dy").get<double>();
        full.x0 = j.at("origin")[0].get<double>();
        full.y0 = j.at("origin")[1].get<double>();
        const auto fields = j.at("fields");
        if (fields != json::array({"rho", "cp", "cs"})) {
            throw RasterFormatError("raster: field order must be rho, cp, cs");
        }
    } catch (const json::exception& e) {
        throw RasterFormatError(std::string("raster: bad header: ") + e.what());
    }
    if (full.nx < 2 || full.ny < 2 || !(full.dx > 0.0) || !(full.dy > 0.0)) {
        throw RasterFormatError("raster: invalid dimensions");
    }

    const std::size_t n = static_cast<std::size_t>(full.nx) * full.ny;
    std::vector<double> rho(n), cp(n), cs(n);
    for (std::vector<double>* arr : {&rho, &cp, &cs}) {
        in.read(reinterpret_cast<char*>(arr->data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        if (static_cast<std::size_t>(in.gcount()) != n * sizeof(double)) {
            throw RasterFormatError("raster: truncated data section");
        }
    }

    const auto xi = stride_indices(full.nx, stride);
    const auto yi = stride_indices(full.ny, stride);
    RasterModel out;
    out.nx = static_cast<int>(xi.size());
    out.ny = static_cast<int>(yi.size());
    out.dx = full.dx * stride;
    out.dy = full.dy * stride;
    out.x0 = full.x0;
    out.y0 = full.y0;
    out.cells.reserve(static_cast<std::size_t>(out.nx) * out.ny);
    for (int iy : yi) {
        for (int ix : xi) {
            const std::size_t k = static_cast<std::size_t>(iy) * full.nx + ix;
            const double mu = rho[k] * cs[k] * cs[k];
            const double lambda = rho[k] * cp[k] * cp[k] - 2.0 * mu;
            try {
                out.cells.push_back(MaterialParams::isotropic(rho[k], mu, lambda));
            } catch (const std::invalid_argument& e) {
                throw RasterFormatError(
                    "raster: inadmissible node (" + std::to_string(ix) + "," +
                    std::to_string(iy) + "): " + e.what());
            }
        }
    }
    return out;
}

void write_raster_model(const std::string& path, int nx, int ny, double dx,
                        double dy, double x0, double y0,
                        const std::vector<double>& rho,
                        const std::vector<double>& cp,
                        const std::vector<double>& cs) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    if (rho.size() != n || cp.size() != n || cs.size() != n) {
        throw RasterFormatError("raster: array size mismatch");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw RasterFormatError("raster: cannot write '" + path + "'");
    json j{{"nx", nx},           {"ny", ny}, {"dx", dx}, {"dy", dy},
           {"origin", {x0, y0}}, {"fields", {"rho", "cp", "cs"}}};
    out << j.dump() << "\n";
    for (const std::vector<double>* arr : {&rho, &cp, &cs}) {
        out.write(reinterpret_cast<const char*>(arr->data()),
                  static_cast<std::streamsize>(n * sizeof(double)));
    }
}

}  // namespace epml
