#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "rmtdeco/dynamics.hpp"
#include "rmtdeco/model.hpp"

namespace rmtdeco {

enum class InitialStatePolicy { BasisProduct, RandomProduct };

using ModelSpec = std::variant<StrongCouplingSpec, WeakCouplingSpec>;

const Dimensions& dims_of(const ModelSpec& model) noexcept;

/// Closed interval of the time grid; statistics are taken over the
/// per-realization average of all grid points inside it.
struct TimeWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct ExperimentConfig {
    ModelSpec model = StrongCouplingSpec{};
    std::vector<double> time_grid;  ///< strictly increasing, >= 0
    std::size_t ensemble_size = 1;
    std::uint64_t master_seed = 0;
    InitialStatePolicy policy = InitialStatePolicy::BasisProduct;
    std::size_t record_realizations = 1;  ///< trajectories 0..k-1 are kept
    std::vector<TimeWindow> windows;

    /// Throws std::invalid_argument (DimensionError for bad dimensions).
    void validate() const;
};

struct WindowStats {
    TimeWindow window;
    std::size_t points = 0;
    double mean = 0.0;
    double std = 0.0;
    std::size_t count = 0;
};

struct CurveStats {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> std;  ///< sample standard deviation (M - 1); 0 when M = 1
    std::vector<std::size_t> count;
    std::vector<std::vector<double>> trajectories;
    std::vector<WindowStats> windows;
};

/// Estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Ensemble average of purity curves.
///
/// Realization r draws its Hamiltonian from RngStream(seed, r).substream(0)
/// and its initial state from RngStream(seed, r).substream(1). Realizations
/// are grouped in fixed-size chunks; each chunk is reduced in index order and
/// chunks are combined in index order, so the result is bit-identical for any
/// `workers` (0 = hardware concurrency).
CurveStats run_experiment(const ExperimentConfig& config, unsigned workers = 0);

/// Average purity of S|0,0> for COE matrices S.
McEstimate coe_min_purity_mc(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t master_seed,
                             unsigned workers = 0);

/// Average purity of O Delta O^T |0,0> with Haar O and i.i.d. uniform phases.
McEstimate stationary_purity_mc(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t master_seed,
                                unsigned workers = 0);

/// Number of realizations reduced together before the ordered merge.
inline constexpr std::size_t kChunkSize = 64;

}  // namespace rmtdeco
