#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "feedcanon/json_io.hpp"

namespace feedcanon {

/// One grid cell of the rigidity sweep. When predicted_rigid is false,
/// no sample may reach full orbit dimension; when true, generic samples
/// are expected to.
struct SweepCell {
    int m = 0;
    int n = 0;
    bool predicted_rigid = false;
    int samples = 0;
    int full_rank_count = 0;
    int max_orbit_dim = 0;
    int ambient_dim = 0;
};

struct SweepConfig {
    int max_m = 0;
    int max_n = 0;
    int samples = 0;
    uint64_t seed = 0;
    Field field = Field::exact;
    double tol = 1e-9;  // float-field rank tolerance
    int threads = 0;    // 0 = OpenMP default
};

/// Desk-scale caps on the grid: m <= 10 in exact mode, m <= 20 in float.
int sweep_cap(Field field);

/// Runs the grid. Cells execute in parallel under OpenMP; per-sample
/// streams are seeded by (seed, m, n, sample_index), so the result is
/// independent of scheduling and thread count.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

/// Serial reference implementation, kept for testing and benchmarks.
std::vector<SweepCell> run_sweep_serial(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);
std::string sweep_csv(const SweepConfig& cfg);

}  // namespace feedcanon
