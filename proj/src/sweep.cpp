#include "feedcanon/sweep.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "feedcanon/orbit.hpp"
#include "feedcanon/rng.hpp"

namespace feedcanon {

int sweep_cap(Field field) { return field == Field::exact ? 10 : 20; }

namespace {

SweepCell run_cell(const SweepConfig& cfg, int m, int n) {
    SweepCell cell;
    cell.m = m;
    cell.n = n;
    cell.predicted_rigid = rigid_exists(m, n);
    cell.samples = cfg.samples;
    cell.ambient_dim = m * (n + 2 * m);
    for (int s = 0; s < cfg.samples; ++s) {
        const uint64_t sample_seed = Rng::mix(cfg.seed, static_cast<uint64_t>(s));
        OrbitReport rep;
        if (cfg.field == Field::exact) {
            rep = orbit_dimension(random_triple_exact(m, n, sample_seed));
        } else {
            rep = orbit_dimension(random_triple_float(m, n, sample_seed), cfg.tol);
        }
        cell.max_orbit_dim = std::max(cell.max_orbit_dim, rep.orbit_dim);
        if (rep.rigid) ++cell.full_rank_count;
    }
    return cell;
}

void validate(const SweepConfig& cfg) {
    if (cfg.max_m < 1 || cfg.max_n < 1)
        throw std::invalid_argument("sweep: grid bounds must be positive");
    if (cfg.samples < 0) throw std::invalid_argument("sweep: negative sample count");
    const int cap = sweep_cap(cfg.field);
    if (cfg.max_m > cap || cfg.max_n > cap)
        throw std::invalid_argument("sweep: grid bound exceeds the desk-scale cap (" +
                                    std::to_string(cap) + ")");
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const int cells = cfg.max_m * cfg.max_n;
    std::vector<SweepCell> out(cells);
#ifdef _OPENMP
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int idx = 0; idx < cells; ++idx) {
        const int m = idx / cfg.max_n + 1;
        const int n = idx % cfg.max_n + 1;
        out[idx] = run_cell(cfg, m, n);
    }
    return out;
}

std::vector<SweepCell> run_sweep_serial(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<SweepCell> out;
    out.reserve(cfg.max_m * cfg.max_n);
    for (int m = 1; m <= cfg.max_m; ++m)
        for (int n = 1; n <= cfg.max_n; ++n) out.push_back(run_cell(cfg, m, n));
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
    os << "m,n,predicted_rigid,samples,full_rank_count,max_orbit_dim,ambient_dim\n";
    for (const SweepCell& c : cells)
        os << c.m << ',' << c.n << ',' << (c.predicted_rigid ? "true" : "false") << ','
           << c.samples << ',' << c.full_rank_count << ',' << c.max_orbit_dim << ','
           << c.ambient_dim << '\n';
}

std::string sweep_csv(const SweepConfig& cfg) {
    std::ostringstream os;
    write_sweep_csv(os, run_sweep(cfg));
    return os.str();
}

}  // namespace feedcanon
