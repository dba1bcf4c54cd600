#include "mplex/experiment.hpp"

#include "mplex/merged.hpp"
#include "mplex/random.hpp"
#include "mplex/spectral.hpp"
#include "mplex/switching.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace mplex {
namespace {

struct Recorder {
    ExperimentResult& result;
    double grid_value;

    void check(std::string name, bool armed, bool passed, std::string detail = {})
    {
        result.assertions.push_back({std::move(name), grid_value, armed, passed, std::move(detail)});
    }
};

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

SimulationOptions base_options(const ExperimentConfig& cfg)
{
    SimulationOptions opt;
    opt.t_max = cfg.t_max;
    opt.tol = cfg.tol;
    opt.keep_states = cfg.trajectory_opinions;
    return opt;
}

bool settled_apart(const OpinionTrajectory& tr)
{
    if (!tr.converged || tr.final_state.empty()) return false;
    const auto [lo, hi] = std::minmax_element(tr.final_state.begin(), tr.final_state.end());
    return *hi - *lo > 1e-9;
}

double terminal_deviation(const OpinionTrajectory& tr, double target)
{
    double worst = 0.0;
    for (double v : tr.final_state) worst = std::max(worst, std::fabs(v - target));
    return worst;
}

void common_checks(Recorder& rec, const GridPoint& gp, std::optional<double> target, double rate_bound)
{
    const auto& tr = gp.trajectory;
    rec.check("convex_closure", true, tr.convex_closure);
    if (target) {
        const double dev = terminal_deviation(tr, *target);
        rec.check("agreement", gp.converged, dev <= 1e-7, "terminal deviation " + format_double(dev));
    }
    if (gp.empirical_rate)
        rec.check("rate", true, *gp.empirical_rate <= rate_bound + 1e-6,
                  "rate " + format_double(*gp.empirical_rate) + " bound " + format_double(rate_bound));
}

void merged_point(const ExperimentConfig& cfg, const std::vector<LayerGraph>& layers, const Vector& x0, double alpha,
                  GridPoint& gp, Recorder& rec)
{
    const MergedModel model(layers[0], layers[1], alpha);
    const MergedBoundsReport bounds = slem_bounds(model);
    gp.slem = bounds.slem_c;
    gp.bound_lower = bounds.lower_bound;
    if (!std::isnan(bounds.upper_bound)) gp.bound_upper = bounds.upper_bound;
    gp.rate_bound = bounds.slem_c;
    rec.check("slem_lower", true, bounds.lower_holds,
              "slem " + format_double(bounds.slem_c) + " lower " + format_double(bounds.lower_bound));
    rec.check("slem_upper", bounds.degrees_matched, bounds.slem_c <= bounds.upper_bound + 1e-9,
              "slem " + format_double(bounds.slem_c) + " upper " + format_double(bounds.upper_bound));

    std::optional<ConsensusInterval> interval;
    try {
        interval = consensus_interval(model, x0);
        gp.interval_lo = interval->lo;
        gp.interval_hi = interval->hi;
    } catch (const NotPrimitive&) {
    } catch (const IsolatedNode&) {
    }

    SimulationOptions opt = base_options(cfg);
    const bool primitive = is_primitive(model.transition()).primitive;
    std::optional<double> target;
    if (primitive) {
        target = merged_consensus(model, x0);
        gp.consensus = target;
        opt.consensus_target = target;
        opt.norm_weights = merged_stationary(model);
    }
    gp.trajectory = simulate(model.transition(), x0, opt);
    gp.converged = gp.trajectory.converged;
    gp.steps = gp.trajectory.steps;
    if (primitive) {
        gp.empirical_rate = empirical_rate(gp.trajectory.errors_pi);
        gp.status = gp.converged ? "consensus" : "not_converged";
    } else {
        gp.status = settled_apart(gp.trajectory) ? "no_consensus" : "not_primitive";
    }
    if (interval && target)
        rec.check("interval", true, interval->contains(*target, 1e-12),
                  format_double(*target) + " in [" + format_double(interval->lo) + ", " +
                      format_double(interval->hi) + "]");
    common_checks(rec, gp, target, bounds.slem_c);
}

void switching_point(const ExperimentConfig& cfg, const std::vector<LayerGraph>& layers, const Vector& x0,
                     std::uint64_t k, GridPoint& gp, Recorder& rec)
{
    const SwitchingModel model(layers[0], layers[1], k);
    const SwitchingOutcome outcome = analyze(model, x0);
    gp.slem = outcome.slem_cycle;
    gp.bound_upper = outcome.rho_star;
    gp.rate_bound = outcome.rho_star;
    rec.check("rho_star", true, outcome.slem_cycle <= outcome.rho_star + 1e-9,
              "slem " + format_double(outcome.slem_cycle) + " rho* " + format_double(outcome.rho_star));

    std::optional<ConsensusInterval> interval;
    try {
        interval = consensus_interval(MergedModel(layers[0], layers[1], 0.5), x0);
        gp.interval_lo = interval->lo;
        gp.interval_hi = interval->hi;
    } catch (const NotPrimitive&) {
    }

    SimulationOptions opt = base_options(cfg);
    opt.period = model.period();
    std::optional<double> target;
    if (outcome.status == SwitchingStatus::consensus) {
        target = outcome.value;
        gp.consensus = target;
        opt.consensus_target = target;
        opt.norm_weights = outcome.pi;
    }
    gp.trajectory = simulate([&model](std::uint64_t t) -> const TransitionMatrix& { return step_matrix(model, t); },
                             x0, opt);
    gp.converged = gp.trajectory.converged;
    gp.steps = gp.trajectory.steps;
    switch (outcome.status) {
    case SwitchingStatus::consensus:
        gp.status = gp.converged ? "consensus" : "not_converged";
        gp.empirical_rate = empirical_rate(gp.trajectory.errors_pi, model.period());
        break;
    case SwitchingStatus::oscillation: gp.status = "oscillation"; break;
    case SwitchingStatus::undetermined:
        gp.status = settled_apart(gp.trajectory) ? "no_consensus" : "undetermined";
        break;
    }
    if (interval && target)
        rec.check("interval", false, interval->contains(*target, 1e-12),
                  format_double(*target) + " in [" + format_double(interval->lo) + ", " +
                      format_double(interval->hi) + "] (informational for switching)");
    common_checks(rec, gp, target, outcome.rho_star);
}

void single_point(const ExperimentConfig& cfg, const LayerGraph& layer, const Vector& x0, GridPoint& gp,
                  Recorder& rec)
{
    const TransitionMatrix a = transition_matrix(layer);
    const bool primitive = is_primitive(a).primitive;
    const double rho = slem_reversible(layer).slem;
    gp.slem = rho;
    gp.bound_upper = rho;
    gp.rate_bound = rho;

    SimulationOptions opt = base_options(cfg);
    std::optional<double> target;
    const StationaryDistribution pi = stationary_from_degrees(layer);
    if (primitive) {
        target = consensus_value(pi, x0);
        gp.consensus = target;
        gp.interval_lo = gp.interval_hi = target;
        opt.consensus_target = target;
        opt.norm_weights = pi;
    }
    gp.trajectory = simulate(a, x0, opt);
    gp.converged = gp.trajectory.converged;
    gp.steps = gp.trajectory.steps;
    if (primitive) {
        gp.status = gp.converged ? "consensus" : "not_converged";
        gp.empirical_rate = empirical_rate(gp.trajectory.errors_pi);
        if (rho > 0.0 && rho < 1.0) {
            const DecayCheck d = decay_check(gp.trajectory, rho);
            rec.check("decay_pi", true, d.passed, "margin " + format_double(d.margin));
            rec.check("decay_max", true, d.max_passed, "margin " + format_double(d.max_margin));
        }
    } else {
        gp.status = "not_primitive";
    }
    common_checks(rec, gp, target, rho);
}

}  // namespace

std::size_t ExperimentResult::armed_count() const
{
    return static_cast<std::size_t>(
        std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.armed; }));
}

std::size_t ExperimentResult::failed_count() const
{
    return static_cast<std::size_t>(std::count_if(assertions.begin(), assertions.end(),
                                                  [](const Assertion& a) { return a.armed && !a.passed; }));
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<LayerGraph> build_layers(const ExperimentConfig& cfg)
{
    std::vector<LayerGraph> layers;
    for (const auto& src : cfg.layers) {
        if (const auto* g = std::get_if<GeneratorSpec>(&src)) {
            layers.push_back(generate(*g));
        } else {
            const auto& f = std::get<EdgeFileSpec>(src);
            layers.push_back(load_edge_list(f.path, EdgeListOptions{f.indexing, f.allowed_weights, f.n}));
        }
    }
    for (std::size_t i = 1; i < layers.size(); ++i)
        if (layers[i].size() != layers[0].size())
            throw ConfigError("$.layers[" + std::to_string(i) + "]", "node count differs from layer 1");
    return layers;
}

Vector realize_x0(const X0Spec& spec, const std::vector<LayerGraph>& layers)
{
    const std::size_t n = layers.at(0).size();
    if (spec.kind == X0Kind::explicit_values) {
        if (spec.values.size() != n)
            throw ConfigError("$.x0.values", "expected " + std::to_string(n) + " opinions, got " +
                                                 std::to_string(spec.values.size()));
        return spec.values;
    }
    Rng rng(spec.seed);
    Vector x(n);
    for (double& v : x) v = rng.uniform();
    if (spec.kind == X0Kind::uniform_with_overrides) {
        std::vector<std::size_t> nodes = spec.nodes;
        if (spec.top_degree) {
            const LayerGraph& layer = layers.at(spec.top_degree->layer - 1);
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return layer.degree(a) > layer.degree(b); });
            nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(n, spec.top_degree->count)));
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i] >= n) throw ConfigError("$.x0.nodes[" + std::to_string(i) + "]", "node out of range");
            x[nodes[i]] = spec.value;
        }
    }
    return x;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    ExperimentResult result;
    result.name = cfg.name;
    result.config_hash = config_hash(cfg);
    result.model = cfg.model;
    for (const auto& src : cfg.layers) {
        if (const auto* g = std::get_if<GeneratorSpec>(&src)) result.layer_seeds.push_back(g->seed);
        else result.layer_seeds.push_back(std::nullopt);
    }
    if (cfg.x0.kind != X0Kind::explicit_values) result.x0_seed = cfg.x0.seed;

    const std::vector<LayerGraph> layers = build_layers(cfg);
    result.x0 = realize_x0(cfg.x0, layers);

    std::vector<double> grid;
    if (cfg.model == ModelKind::merged) grid = cfg.alphas;
    else if (cfg.model == ModelKind::switching)
        for (auto k : cfg.ks) grid.push_back(static_cast<double>(k));
    else grid.push_back(static_cast<double>(cfg.single_layer));

    for (std::size_t g = 0; g < grid.size(); ++g) {
        GridPoint gp;
        gp.grid_value = grid[g];
        Recorder rec{result, grid[g]};
        try {
            switch (cfg.model) {
            case ModelKind::merged: merged_point(cfg, layers, result.x0, cfg.alphas[g], gp, rec); break;
            case ModelKind::switching: switching_point(cfg, layers, result.x0, cfg.ks[g], gp, rec); break;
            case ModelKind::single: single_point(cfg, layers.at(cfg.single_layer - 1), result.x0, gp, rec); break;
            }
        } catch (const IsolatedNode& e) {
            gp.status = "isolated_node";
            rec.check("runtime", false, false, e.what());
        } catch (const Error& e) {
            gp.status = "error";
            rec.check("runtime", false, false, e.what());
        }
        result.points.push_back(std::move(gp));
    }
    return result;
}

std::string format_grid_csv(const ExperimentResult& result)
{
    std::string out = std::string(grid_csv_header) + "\n";
    const std::string model = model_name(result.model);
    for (const auto& p : result.points) {
        out += model + "," + format_double(p.grid_value) + "," + p.status + "," + format_double(p.slem) + "," +
               fmt_opt(p.bound_lower) + "," + fmt_opt(p.bound_upper) + "," + fmt_opt(p.rate_bound) + "," +
               fmt_opt(p.consensus) + "," + fmt_opt(p.interval_lo) + "," + fmt_opt(p.interval_hi) + "," +
               fmt_opt(p.empirical_rate) + "," + (p.converged ? "1" : "0") + "," + std::to_string(p.steps) + "\n";
    }
    return out;
}

std::string format_trajectory_csv(const OpinionTrajectory& tr, bool with_opinions)
{
    const bool opinions = with_opinions && !tr.states.empty();
    std::string out = "t,error_pi,error_max";
    if (opinions)
        for (std::size_t i = 0; i < tr.initial.size(); ++i) out += ",x_" + std::to_string(i);
    out += "\n";
    for (std::uint64_t t = 0; t <= tr.steps; ++t) {
        out += std::to_string(t) + ",";
        if (t < tr.errors_pi.size()) out += format_double(tr.errors_pi[t]) + "," + format_double(tr.errors_max[t]);
        else out += ",";
        if (opinions)
            for (double v : tr.states[t]) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string format_summary_json(const ExperimentResult& result)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["name"] = result.name;
    j["config_hash"] = result.config_hash;
    j["model"] = model_name(result.model);
    ordered_json seeds;
    seeds["layers"] = ordered_json::array();
    for (const auto& s : result.layer_seeds) seeds["layers"].push_back(s ? ordered_json(*s) : ordered_json(nullptr));
    seeds["x0"] = result.x0_seed ? ordered_json(*result.x0_seed) : ordered_json(nullptr);
    j["seeds"] = seeds;
    ordered_json points = ordered_json::array();
    for (const auto& p : result.points)
        points.push_back({{"grid_value", p.grid_value}, {"status", p.status}, {"converged", p.converged}, {"steps", p.steps}});
    j["grid"] = points;
    ordered_json asserts = ordered_json::array();
    for (const auto& a : result.assertions)
        asserts.push_back({{"name", a.name},
                           {"grid_value", a.grid_value},
                           {"armed", a.armed},
                           {"passed", a.passed},
                           {"detail", a.detail}});
    j["assertions"] = asserts;
    j["armed"] = result.armed_count();
    j["failed"] = result.failed_count();
    j["all_passed"] = result.all_passed();
    return j.dump(2) + "\n";
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    if (cfg.outputs.count(OutputKind::grid)) write_file(out_dir / "grid.csv", format_grid_csv(result));
    if (cfg.outputs.count(OutputKind::trajectories)) {
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            char name[40];
            std::snprintf(name, sizeof name, "trajectory_%03zu.csv", i);
            write_file(out_dir / name, format_trajectory_csv(result.points[i].trajectory, cfg.trajectory_opinions));
        }
    }
    if (cfg.outputs.count(OutputKind::summary)) write_file(out_dir / "summary.json", format_summary_json(result));
}

}  // namespace mplex
