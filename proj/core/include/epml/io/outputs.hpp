#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "epml/sbp/field2d.hpp"

namespace epml {

/// CSV writer: header row then data rows, written atomically (tmp + rename).
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

/**
 * Snapshot: raw little-endian float64 array plus a JSON sidecar
 * <path>.json carrying shape [nx, ny], time, extent and the field name.
 */
void write_snapshot(const std::string& path, const Field2D& field, double time,
                    const std::array<double, 4>& extent,
                    const std::string& field_name);

/// Reads the raw array back (for tests and comparisons).
std::vector<double> read_raw_f64(const std::string& path, std::size_t count);

struct RunManifest {
    std::uint64_t config_hash = 0;
    int operator_order = 4;
    std::vector<std::array<int, 2>> grid_sizes;  // per layer (nq, nr)
    double dt = 0.0;
    double wall_clock_seconds = 0.0;
    int threads = 1;
    std::vector<std::string> outputs;
    bool empirical_heterogeneous = false;
    std::vector<std::string> geometric_verdicts;  // per layer
    bool tripwire_fired = false;
};

/// Atomic JSON manifest write.
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace epml
