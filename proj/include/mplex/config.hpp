#pragma once

// Experiment configuration (JSON) and its validation.

#include "mplex/error.hpp"
#include "mplex/matrix.hpp"
#include "mplex/netcore.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace mplex {

enum class ModelKind { single, merged, switching };

struct EdgeFileSpec {
    std::filesystem::path path;  // resolved against the config's directory
    std::size_t n = 0;
    Indexing indexing = Indexing::zero_based;
    std::optional<std::set<double>> allowed_weights;
};

using LayerSource = std::variant<GeneratorSpec, EdgeFileSpec>;

struct TopDegree {
    std::size_t layer = 1;  // 1-based layer number
    std::size_t count = 0;
};

enum class X0Kind { uniform, explicit_values, uniform_with_overrides };

struct X0Spec {
    X0Kind kind = X0Kind::uniform;
    std::uint64_t seed = 0;
    Vector values;
    std::vector<std::size_t> nodes;
    std::optional<TopDegree> top_degree;
    double value = 0.0;
};

enum class OutputKind { grid, trajectories, summary };

struct ExperimentConfig {
    std::string name;
    ModelKind model = ModelKind::merged;
    std::size_t single_layer = 1;
    std::vector<double> alphas;
    std::vector<std::uint64_t> ks;
    std::vector<LayerSource> layers;
    X0Spec x0;
    std::uint64_t t_max = 1'000'000;
    double tol = 1e-12;
    std::set<OutputKind> outputs{OutputKind::grid, OutputKind::trajectories, OutputKind::summary};
    bool trajectory_opinions = false;
    /// Canonical (sorted-key, compact) serialisation of the source JSON.
    std::string canonical_json;
};

/// Schema violation; `path()` is a JSON path such as "$.model.alphas[2]".
class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string path, const std::string& what)
        : InvalidArgument(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

std::string model_name(ModelKind kind);

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace mplex
