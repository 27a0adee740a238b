#include "epml/io/outputs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace epml {

using nlohmann::json;

namespace {

void atomic_write(const std::string& path, const std::string& content,
                  bool binary = false) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, binary ? std::ios::binary | std::ios::trunc
                                      : std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::string body = header + "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            body += buf;
            body += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    atomic_write(path, body);
}

void write_snapshot(const std::string& path, const Field2D& field, double time,
                    const std::array<double, 4>& extent,
                    const std::string& field_name) {
    {
        const std::string tmp = path + ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out.write(reinterpret_cast<const char*>(field.data.data()),
                  static_cast<std::streamsize>(field.size() * sizeof(double)));
        out.close();
        std::filesystem::rename(tmp, path);
    }
    json side{{"shape", {field.nx, field.ny}},
              {"time", time},
              {"extent", extent},
              {"field", field_name},
              {"dtype", "float64-le"},
              {"order", "row-major"}};
    atomic_write(path + ".json", side.dump(2));
}

std::vector<double> read_raw_f64(const std::string& path, std::size_t count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<double> data(count);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
        throw std::runtime_error("short read from '" + path + "'");
    }
    return data;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    json j;
    j["config_hash"] = m.config_hash;
    j["operator_order"] = m.operator_order;
    j["grid_sizes"] = m.grid_sizes;
    j["dt"] = m.dt;
    j["wall_clock_seconds"] = m.wall_clock_seconds;
    j["threads"] = m.threads;
    j["outputs"] = m.outputs;
    j["empirical_heterogeneous"] = m.empirical_heterogeneous;
    j["geometric_verdicts"] = m.geometric_verdicts;
    j["tripwire_fired"] = m.tripwire_fired;
    atomic_write(path, j.dump(2));
}

}  // namespace epml
