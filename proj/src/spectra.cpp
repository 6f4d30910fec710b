#include "braggsim/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace braggsim {

void SweepPlan::validate() const {
    if (detuning_grid.empty()) {
        throw DomainError("SweepPlan: detuning grid is empty");
    }
    for (std::size_t i = 1; i < detuning_grid.size(); ++i) {
        if (!(detuning_grid[i].delta > detuning_grid[i - 1].delta)) {
            throw DomainError("SweepPlan: detuning grid must be strictly increasing");
        }
    }
    if (n_realizations < 1) {
        throw DomainError("SweepPlan: n_realizations must be at least 1");
    }
    lattice.validate();
}

ChainObservables evaluate_chain(const ChainRealization& realization, const CouplingModel& coupling,
                                Chirality chirality, ProbeDetuning delta,
                                double k_dispersion_per_gamma0) {
    if (realization.atoms.empty()) {
        return {0.0, 1.0};
    }
    const double phase_scale = 1.0 + k_dispersion_per_gamma0 * delta.delta;

    const auto single = [&](const LatticeAtom& atom) {
        return amplitudes(coupling, chirality, ProbeDetuning{delta.delta + atom.detuning_offset});
    };

    TransferMatrix m = atom_matrix(single(realization.atoms.front()));
    for (std::size_t j = 1; j < realization.atoms.size(); ++j) {
        const double dphi =
            realization.atoms[j].phase_position - realization.atoms[j - 1].phase_position;
        if (dphi != 0.0) {
            m *= propagation_matrix(dphi * phase_scale);
        }
        m *= atom_matrix(single(realization.atoms[j]));
    }
    return chain_observables(m);
}

namespace {

// Per-realization evaluation of the whole grid, written into a dense
// (realization x grid) table so reduction can run in index order afterwards.
struct SweepTable {
    std::vector<double> r;
    std::vector<double> t;
    std::size_t grid_size = 0;
};

SweepTable evaluate_all(const SweepPlan& plan, int workers) {
    const std::size_t n_real = static_cast<std::size_t>(plan.n_realizations);
    const std::size_t n_grid = plan.detuning_grid.size();

    SweepTable table;
    table.grid_size = n_grid;
    table.r.assign(n_real * n_grid, 0.0);
    table.t.assign(n_real * n_grid, 0.0);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = std::numeric_limits<std::size_t>::max();

    const auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_real) {
                return;
            }
            try {
                const auto chain =
                    realize_chain(plan.lattice, derive_stream_seed(plan.master_seed, i));
                for (std::size_t g = 0; g < n_grid; ++g) {
                    const auto obs =
                        evaluate_chain(chain, plan.coupling, plan.chirality,
                                       plan.detuning_grid[g], plan.k_dispersion_per_gamma0);
                    table.r[i * n_grid + g] = obs.reflectance;
                    table.t[i * n_grid + g] = obs.transmittance;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    const std::size_t n_workers =
        std::min<std::size_t>(std::max(workers, 1), n_real);
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw Error("sweep aborted: realization " + std::to_string(first_error_index) +
                        " failed: " + e.what());
        }
    }
    return table;
}

} // namespace

SpectrumResult run_sweep(const SweepPlan& plan, int workers) {
    plan.validate();
    const auto table = evaluate_all(plan, workers);

    const std::size_t n_real = static_cast<std::size_t>(plan.n_realizations);
    const std::size_t n_grid = plan.detuning_grid.size();

    SpectrumResult result;
    result.plan = plan;
    result.points.resize(n_grid);

    // Fixed-order reduction: sums run over realization index, so the output
    // is identical for any worker count.
    for (std::size_t g = 0; g < n_grid; ++g) {
        double r_sum = 0.0, r_sq = 0.0, t_sum = 0.0, t_sq = 0.0;
        for (std::size_t i = 0; i < n_real; ++i) {
            const double r = table.r[i * n_grid + g];
            const double t = table.t[i * n_grid + g];
            r_sum += r;
            r_sq += r * r;
            t_sum += t;
            t_sq += t * t;
        }
        const double inv_n = 1.0 / static_cast<double>(n_real);
        const double r_mean = r_sum * inv_n;
        const double t_mean = t_sum * inv_n;
        auto& p = result.points[g];
        p.delta = plan.detuning_grid[g].delta;
        p.r_mean = r_mean;
        p.t_mean = t_mean;
        p.r_std = std::sqrt(std::max(0.0, r_sq * inv_n - r_mean * r_mean));
        p.t_std = std::sqrt(std::max(0.0, t_sq * inv_n - t_mean * t_mean));
    }
    return result;
}

std::vector<LossScanPoint> reflectance_vs_atom_number(const SweepPlan& base_plan,
                                                      std::span<const double> survival_grid,
                                                      int workers) {
    base_plan.validate();
    for (const double eta : survival_grid) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw DomainError("reflectance_vs_atom_number: survival must be in [0, 1]");
        }
    }

    // Atoms are lost from the initially loaded arrays, so the site count is
    // pinned to the base lattice and only the occupancy statistics change.
    const long base_sites = base_plan.lattice.site_count();

    std::vector<LossScanPoint> out;
    out.reserve(survival_grid.size());
    for (const double eta : survival_grid) {
        SweepPlan plan = base_plan;
        plan.lattice.survival = eta;
        plan.lattice.site_count_override = base_sites;
        // Same master seed for every scan point: eta = 1 reproduces the base
        // plan exactly, and common random numbers couple the curve smoothly.

        const double expected_atoms = static_cast<double>(base_sites) * plan.lattice.n_chains *
                                      plan.lattice.fill_factor * eta;
        if (eta == 0.0) {
            out.push_back({eta, 0.0, 0.0, 0.0});
            continue;
        }
        const auto spectrum = run_sweep(plan, workers);
        double peak = 0.0;
        double peak_std = 0.0;
        for (const auto& p : spectrum.points) {
            if (p.r_mean > peak) {
                peak = p.r_mean;
                peak_std = p.r_std;
            }
        }
        out.push_back({eta, expected_atoms, peak,
                       peak_std / std::sqrt(static_cast<double>(plan.n_realizations))});
    }
    return out;
}

PeakInfo find_reflection_peak(const SpectrumResult& result) {
    const auto& pts = result.points;
    if (pts.empty()) {
        throw DomainError("find_reflection_peak: empty spectrum");
    }
    std::size_t imax = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].r_mean > pts[imax].r_mean) {
            imax = i;
        }
    }

    PeakInfo peak;
    peak.delta = pts[imax].delta;
    peak.height = pts[imax].r_mean;

    // Three-point parabolic refinement around the grid maximum.
    if (imax > 0 && imax + 1 < pts.size()) {
        const double x0 = pts[imax - 1].delta, y0 = pts[imax - 1].r_mean;
        const double x1 = pts[imax].delta, y1 = pts[imax].r_mean;
        const double x2 = pts[imax + 1].delta, y2 = pts[imax + 1].r_mean;
        // Newton form y(x) = y0 + s01 (x-x0) + c (x-x0)(x-x1).
        const double s01 = (y1 - y0) / (x1 - x0);
        const double s12 = (y2 - y1) / (x2 - x1);
        const double c = (s12 - s01) / (x2 - x0);
        if (c < 0.0) {
            const double xv = 0.5 * (x0 + x1) - s01 / (2.0 * c);
            const double yv = y0 + s01 * (xv - x0) + c * (xv - x0) * (xv - x1);
            if (yv >= y1 && xv >= x0 && xv <= x2) {
                peak.delta = xv;
                peak.height = yv;
            }
        }
    }

    // FWHM from linear interpolation of the half-maximum crossings on each
    // side of the grid maximum.
    const double half = 0.5 * peak.height;
    double left = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = imax; i-- > 0;) {
        if (pts[i].r_mean <= half) {
            const double frac = (half - pts[i].r_mean) / (pts[i + 1].r_mean - pts[i].r_mean);
            left = pts[i].delta + frac * (pts[i + 1].delta - pts[i].delta);
            break;
        }
    }
    double right = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = imax + 1; i < pts.size(); ++i) {
        if (pts[i].r_mean <= half) {
            const double frac = (pts[i - 1].r_mean - half) / (pts[i - 1].r_mean - pts[i].r_mean);
            right = pts[i - 1].delta + frac * (pts[i].delta - pts[i - 1].delta);
            break;
        }
    }
    if (std::isfinite(left) && std::isfinite(right)) {
        peak.fwhm = right - left;
        peak.fwhm_defined = true;
    } else {
        peak.fwhm = std::numeric_limits<double>::quiet_NaN();
        peak.fwhm_defined = false;
    }
    return peak;
}

} // namespace braggsim
