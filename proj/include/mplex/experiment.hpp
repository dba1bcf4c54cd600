#pragma once

// Config-driven sweeps: per-grid-point analysis, simulation and checks,
// written out as CSV and JSON.

#include "mplex/config.hpp"
#include "mplex/netcore.hpp"
#include "mplex/simlab.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mplex {

struct Assertion {
    std::string name;
    double grid_value = 0.0;
    bool armed = false;
    bool passed = true;
    std::string detail;
};

struct GridPoint {
    double grid_value = 0.0;
    std::string status;
    double slem = 0.0;
    std::optional<double> bound_lower;
    std::optional<double> bound_upper;
    std::optional<double> rate_bound;
    std::optional<double> consensus;
    std::optional<double> interval_lo;
    std::optional<double> interval_hi;
    std::optional<double> empirical_rate;
    bool converged = false;
    std::uint64_t steps = 0;
    OpinionTrajectory trajectory;
};

struct ExperimentResult {
    std::string name;
    std::string config_hash;
    ModelKind model = ModelKind::merged;
    std::vector<std::optional<std::uint64_t>> layer_seeds;
    std::optional<std::uint64_t> x0_seed;
    Vector x0;
    std::vector<GridPoint> points;
    std::vector<Assertion> assertions;

    std::size_t armed_count() const;
    std::size_t failed_count() const;
    bool all_passed() const { return failed_count() == 0; }
};

std::vector<LayerGraph> build_layers(const ExperimentConfig& config);

/// Initial opinions; top-degree overrides rank by degree, ties by lower index.
Vector realize_x0(const X0Spec& spec, const std::vector<LayerGraph>& layers);

ExperimentResult run_experiment(const ExperimentConfig& config);

/// grid.csv column order.
inline constexpr const char* grid_csv_header =
    "model,grid_value,status,slem,bound_lower,bound_upper,rate_bound,consensus,interval_lo,interval_hi,"
    "empirical_rate,converged,steps";

std::string format_grid_csv(const ExperimentResult& result);
std::string format_trajectory_csv(const OpinionTrajectory& trajectory, bool with_opinions);
std::string format_summary_json(const ExperimentResult& result);

/// Writes the requested outputs under `out_dir` (created if needed).
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                   const std::filesystem::path& out_dir);

/// "%.17g", with "nan"/"inf" spelled out.
std::string format_double(double v);

}  // namespace mplex
