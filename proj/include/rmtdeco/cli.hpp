#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtdeco/montecarlo.hpp"

namespace rmtdeco::cli {

inline constexpr std::string_view kVersion = "rmtdeco 0.1.0";

enum class ModelKind { Strong, Weak };

/// Contents of a key-value run file.
///
///   # comment
///   model    = strong | weak
///   kind     = goe | poisson | picket        (strong)
///   kind1    = ...,  kind2 = ...             (weak)
///   n, m     = positive integers
///   lambda   = coupling (weak)
///   tmax     = end of the uniform grid
///   points   = uniform grid size, default 400
///   dense_tmax, dense_points = optional fine grid on [0, dense_tmax]
///   markers  = optional comma-separated extra times
///   ensemble = realization count
///   seed     = master seed, default 0
///   policy   = basis | random, default basis
///   record   = trajectories to keep, default 1
struct RunConfig {
    ModelKind model = ModelKind::Strong;
    SpectrumKind kind = SpectrumKind::GOE;
    SpectrumKind kind1 = SpectrumKind::GOE;
    SpectrumKind kind2 = SpectrumKind::GOE;
    std::size_t n = 1;
    std::size_t m = 1;
    double lambda = 0.0;
    double tmax = 1.0;
    std::size_t points = 400;
    double dense_tmax = 0.0;
    std::size_t dense_points = 0;
    std::vector<double> markers;
    std::size_t ensemble = 1;
    std::uint64_t seed = 0;
    InitialStatePolicy policy = InitialStatePolicy::BasisProduct;
    std::size_t record = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError with line and field on malformed input. Dimension
/// values are not range-checked here; see to_experiment.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);
/// Canonical text form; parse_run_config(serialize(c)) == c.
std::string serialize(const RunConfig& config);

/// Uniform grid on [0, tmax], the dense prefix and markers, merged and
/// de-duplicated.
std::vector<double> make_time_grid(const RunConfig& config);
/// Throws DimensionError for zero dimensions.
ExperimentConfig to_experiment(const RunConfig& config);

struct PresetRun {
    std::string label;
    RunConfig config;
};

struct PresetOverrides {
    std::optional<std::size_t> ensemble;
    std::optional<std::uint64_t> seed;
    std::optional<double> tmax;
    std::optional<std::size_t> points;
};

const std::vector<std::string>& preset_names();
/// Returns std::nullopt for an unknown name.
std::optional<std::vector<PresetRun>> make_preset(std::string_view name, const PresetOverrides& overrides = {});

std::string format_double(double x);

/// `t,mean,std,count[,traj_k...]`
std::string purity_csv(const CurveStats& stats);
/// `t,f,s1,s2,s3,s4,s5,short_time,i_min_coe,i_infinity`
std::string analytics_csv(const std::vector<double>& times, std::size_t n, std::size_t m);
/// `n,m,N,short_coeff,i_min_coe,i_infinity` over all (n, m) pairs.
std::string closed_forms_csv(const std::vector<std::size_t>& n_list, const std::vector<std::size_t>& m_list);

struct Manifest {
    std::string command;
    std::uint64_t master_seed = 0;
    double duration_seconds = 0.0;
    std::vector<std::pair<std::string, RunConfig>> configs;
    std::vector<std::string> files;
};

std::string format_manifest(const Manifest& manifest);
/// Parses the `[config <label>]` sections of a manifest back into configs.
std::map<std::string, RunConfig> manifest_configs(std::string_view text);

/// Runs every config, writes `<label>/purity.csv` and `<label>/analytics.csv`
/// (directly into `out` when the label is empty) and `manifest.txt`.
Manifest execute_runs(const std::vector<PresetRun>& runs, const std::filesystem::path& out, const std::string& command,
                      unsigned workers);

}  // namespace rmtdeco::cli
