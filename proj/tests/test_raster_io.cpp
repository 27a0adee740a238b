#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "epml/io/outputs.hpp"
#include "epml/solver/raster.hpp"
#include "epml/solver/runner.hpp"

using namespace epml;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_uniform(const std::string& path, int nx, int ny, double rho,
                   double cp, double cs) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    write_raster_model(path, nx, ny, 0.05, 0.05, 0.0, -1.0,
                       std::vector<double>(n, rho), std::vector<double>(n, cp),
                       std::vector<double>(n, cs));
}

}  // namespace

TEST_CASE("uniform raster round-trips the Table 1 row 1 material") {
    const std::string path = temp_path("epml_uniform.raster");
    write_uniform(path, 24, 16, 1.5, 3.118, 1.8);
    const auto model = ingest_raster_model(path);
    CHECK(model.nx == 24);
    CHECK(model.ny == 16);
    const auto& m = model.at(5, 7);
    CHECK(m.mu() == doctest::Approx(4.86).epsilon(1e-3));
    CHECK(m.lambda() == doctest::Approx(4.8629).epsilon(1e-3));
    const auto ws = m.wave_speeds();
    CHECK(std::abs(ws.cpx - 3.118) < 1e-3);
    CHECK(std::abs(ws.csx - 1.8) < 1e-3);
}

TEST_CASE("stride-2 downsampling keeps the first and last samples") {
    const std::string path = temp_path("epml_stride.raster");
    // odd x-count, even y-count
    write_uniform(path, 25, 16, 1.0, 2.0, 1.0);
    const auto model = ingest_raster_model(path, 2);
    CHECK(model.nx == 13);  // 0,2,...,24
    CHECK(model.ny == 9);   // 0,2,...,14 plus the kept last row 15
    CHECK(model.dx == doctest::Approx(0.1));
}

TEST_CASE("inadmissible nodes are rejected, near-boundary ones accepted") {
    const std::string path = temp_path("epml_bad.raster");
    const int nx = 12, ny = 12;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::vector<double> rho(n, 1.0), cp(n, 2.0), cs(n, 1.0);
    // lambda < 0 but above -mu: cs < cp < sqrt(2) cs is fine
    cp[5] = 1.3;
    CHECK_NOTHROW([&] {
        write_raster_model(path, nx, ny, 0.1, 0.1, 0.0, 0.0, rho, cp, cs);
        ingest_raster_model(path);
    }());
    // cp <= cs makes lambda <= -mu: rejected
    cp[5] = 0.9;
    write_raster_model(path, nx, ny, 0.1, 0.1, 0.0, 0.0, rho, cp, cs);
    CHECK_THROWS_AS(ingest_raster_model(path), RasterFormatError);
}

TEST_CASE("malformed headers are rejected") {
    const std::string path = temp_path("epml_hdr.raster");
    {
        std::ofstream out(path, std::ios::binary);
        out << "{\"nx\": 4}\n";
    }
    CHECK_THROWS_AS(ingest_raster_model(path), RasterFormatError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "not json\n";
    }
    CHECK_THROWS_AS(ingest_raster_model(path), RasterFormatError);
}

TEST_CASE("truncated data section is rejected") {
    const std::string path = temp_path("epml_trunc.raster");
    write_uniform(path, 16, 16, 1.0, 2.0, 1.0);
    // chop the file
    const auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 64);
    CHECK_THROWS_AS(ingest_raster_model(path), RasterFormatError);
}

TEST_CASE("raster-backed scenario runs and carries the empirical flag") {
    const std::string path = temp_path("epml_run.raster");
    const int nx = 30, ny = 30;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    std::vector<double> rho(n), cp(n), cs(n);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * nx + ix;
            const bool deep = iy < ny / 2;
            rho[k] = deep ? 2.0 : 1.0;
            cp[k] = deep ? 3.0 : 2.0;
            cs[k] = deep ? 1.6 : 1.0;
        }
    }
    write_raster_model(path, nx, ny, 0.1, 0.1, 0.0, -1.5, rho, cp, cs);

    ScenarioConfig cfg;
    cfg.name = "raster-test";
    cfg.raster = RasterSpec{path, 1, std::nullopt};
    cfg.top = BoundaryKind::TractionFree;
    cfg.pml_x = PmlDirectionSpec{false, true, 0.2, 0.0, 1e-4, -1.0};
    cfg.gaussian_init = GaussianInitSpec{{1.5, -0.7}, 30.0, 1.0};
    cfg.time.t_final = 0.5;
    cfg.time.output_dt = 0.1;

    const auto res = run_scenario(cfg);
    CHECK(res.manifest.empirical_heterogeneous);
    CHECK(res.norm_h.size() == 6);
    for (double v : res.norm_h) CHECK(std::isfinite(v));

    SUBCASE("split_row yields a two-layer stack") {
        cfg.raster->split_row = 15;
        const auto res2 = run_scenario(cfg);
        CHECK(res2.manifest.grid_sizes.size() == 2);
        for (double v : res2.norm_h) CHECK(std::isfinite(v));
    }
}

TEST_CASE("csv and snapshot writers round-trip") {
    const std::string csv = temp_path("epml_test.csv");
    write_csv(csv, "a,b", {{1.0, 2.5}, {3.0, -4.25}});
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1,2.5");

    Field2D f(3, 2);
    for (std::size_t i = 0; i < f.size(); ++i) f.data[i] = 0.5 * i;
    const std::string snap = temp_path("epml_test.f64");
    write_snapshot(snap, f, 1.25, {0, 1, 0, 1}, "abs_u");
    const auto back = read_raw_f64(snap, f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f.data[i]);
    CHECK(std::filesystem::exists(snap + ".json"));
}
