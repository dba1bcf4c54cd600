#include "mplex/config.hpp"
#include "mplex/experiment.hpp"
#include "mplex/kernels.hpp"
#include "mplex/merged.hpp"
#include "mplex/random.hpp"
#include "mplex/select.hpp"
#include "mplex/switching.hpp"
#include "mplex/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_assertion = 1;
constexpr int exit_input = 2;

ordered_json to_json(const mplex::Matrix& m)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

ordered_json check(const std::string& name, bool armed, bool passed, const std::string& detail = {})
{
    return {{"name", name}, {"armed", armed}, {"passed", passed}, {"detail", detail}};
}

mplex::Vector read_x0(const std::string& arg, std::size_t n)
{
    if (fs::exists(arg)) {
        std::ifstream in(arg);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        for (char& c : text)
            if (c == ',') c = ' ';
        std::istringstream ss(text);
        mplex::Vector x;
        double v;
        while (ss >> v) x.push_back(v);
        if (!ss.eof()) throw mplex::InvalidArgument("x0 file " + arg + ": malformed number");
        if (x.size() != n)
            throw mplex::InvalidArgument("x0 file " + arg + ": expected " + std::to_string(n) + " values, got " +
                                         std::to_string(x.size()));
        mplex::require_opinions(x, "x0");
        return x;
    }
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
        throw mplex::InvalidArgument("--x0 must name an existing file or be an unsigned seed, got \"" + arg + "\"");
    mplex::Rng rng(seed);
    mplex::Vector x(n);
    for (double& v : x) v = rng.uniform();
    return x;
}

std::pair<mplex::LayerGraph, mplex::LayerGraph> load_pair(const std::string& p1, const std::string& p2,
                                                          bool one_based)
{
    mplex::EdgeListOptions opt;
    opt.indexing = one_based ? mplex::Indexing::one_based : mplex::Indexing::zero_based;
    mplex::LayerGraph a = mplex::load_edge_list(p1, opt);
    mplex::LayerGraph b = mplex::load_edge_list(p2, opt);
    if (a.size() != b.size()) {
        opt.n = std::max(a.size(), b.size());
        a = mplex::load_edge_list(p1, opt);
        b = mplex::load_edge_list(p2, opt);
    }
    return {std::move(a), std::move(b)};
}

int run_analyze(const std::string& l1, const std::string& l2, const std::string& mode, double alpha,
                std::uint64_t k, const std::string& x0_arg, bool dump, bool one_based)
{
    const auto [a, b] = load_pair(l1, l2, one_based);
    const mplex::Vector x0 = read_x0(x0_arg, a.size());
    ordered_json out;
    out["mode"] = mode;
    out["nodes"] = a.size();
    ordered_json checks = ordered_json::array();

    if (mode == "merged") {
        const mplex::MergedModel model(a, b, alpha);
        out["alpha"] = alpha;
        const auto prim = mplex::primitivity_guarantee(model);
        out["primitivity_guaranteed"] = prim.guaranteed;
        out["merged_primitive"] = prim.merged.primitive;
        out["status"] = prim.merged.primitive ? "consensus" : "not_primitive";
        const auto r = mplex::slem_bounds(model);
        out["slem_c"] = r.slem_c;
        out["slem_a"] = r.slem_a;
        out["slem_b"] = r.slem_b;
        out["lower_bound"] = r.lower_bound;
        out["upper_bound"] = r.upper_bound;
        out["degrees_matched"] = r.degrees_matched;
        checks.push_back(check("slem_lower", true, r.lower_holds));
        checks.push_back(check("slem_upper", r.degrees_matched, r.upper_holds));
        if (prim.merged.primitive) {
            const double xm = mplex::merged_consensus(model, x0);
            out["consensus"] = xm;
            try {
                const auto iv = mplex::consensus_interval(model, x0);
                out["interval"] = {iv.lo, iv.hi};
                checks.push_back(check("interval", true, iv.contains(xm, 1e-12)));
            } catch (const mplex::NotPrimitive& e) {
                checks.push_back(check("interval", false, false, e.what()));
            }
        }
        if (dump) {
            out["matrix"] = to_json(model.transition().matrix());
            out["stationary"] = mplex::merged_stationary(model).values();
        }
    } else {
        const mplex::SwitchingModel model(a, b, k);
        out["k"] = k;
        const auto o = mplex::analyze(model, x0);
        const char* status = o.status == mplex::SwitchingStatus::consensus     ? "consensus"
                             : o.status == mplex::SwitchingStatus::oscillation ? "oscillation"
                                                                               : "undetermined";
        out["status"] = status;
        out["slem_cycle"] = o.slem_cycle;
        out["rho_star"] = o.rho_star;
        if (o.pi) out["consensus"] = o.value;
        checks.push_back(check("rho_star", true, o.slem_cycle <= o.rho_star + 1e-9));
        if (dump) {
            out["matrix"] = to_json(model.cycle().matrix());
            if (o.pi) out["stationary"] = o.pi->values();
            if (o.evidence) {
                out["even_limit"] = to_json(o.evidence->even_limit);
                out["odd_limit"] = to_json(o.evidence->odd_limit);
            }
        }
    }
    out["assertions"] = checks;
    bool ok = true;
    for (const auto& c : checks) ok = ok && (!c["armed"].get<bool>() || c["passed"].get<bool>());
    out["all_passed"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? exit_ok : exit_assertion;
}

int run_simulate(const std::string& config_path, const std::string& out_dir)
{
    const mplex::ExperimentConfig cfg = mplex::load_config(config_path);
    const mplex::ExperimentResult result = mplex::run_experiment(cfg);
    mplex::write_outputs(cfg, result, out_dir);
    std::cout << (result.name.empty() ? config_path : result.name) << ": " << result.points.size()
              << " grid points, " << result.armed_count() << " armed assertions, " << result.failed_count()
              << " failed\n";
    for (const auto& a : result.assertions)
        if (a.armed && !a.passed)
            std::cout << "  FAIL " << a.name << " at " << mplex::format_double(a.grid_value) << ": " << a.detail << "\n";
    return result.all_passed() ? exit_ok : exit_assertion;
}

int run_verify(const std::string& suite)
{
    const mplex::SuiteReport rep = mplex::run_suite(suite);
    for (const auto& c : rep.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                  << "\n";
    std::cout << suite << ": " << (rep.passed() ? "all checks passed" : "FAILED") << "\n";
    return rep.passed() ? exit_ok : exit_assertion;
}

void write_selected(const fs::path& path, const mplex::LayerGraph& layer, bool one_based)
{
    std::ofstream out(path);
    if (!out) throw mplex::Error("cannot write " + path.string());
    const std::size_t off = one_based ? 1 : 0;
    out << "# " << layer.size() << " nodes\n";
    for (const auto& e : layer.edges()) out << e.i + off << " " << e.j + off << " " << mplex::format_double(e.weight) << "\n";
}

int run_select(const std::string& l1, const std::string& l2, bool one_based, const std::vector<std::uint64_t>& ks,
               const std::string& prefix)
{
    const auto [a, b] = load_pair(l1, l2, one_based);
    mplex::SelectionOptions opt;
    if (!ks.empty()) opt.ks = ks;
    const auto r = mplex::select_nonconsensus_subset(a, b, opt);
    const std::size_t off = one_based ? 1 : 0;
    ordered_json out;
    out["success"] = r.success;
    out["kept"] = r.nodes.size();
    ordered_json removed = ordered_json::array();
    for (auto v : r.removed) removed.push_back(v + off);
    out["removed"] = removed;
    if (!r.success) out["reason"] = r.reason;
    if (r.success && !prefix.empty()) {
        write_selected(prefix + "_layer1.txt", mplex::induced_subgraph(a, r.nodes), one_based);
        write_selected(prefix + "_layer2.txt", mplex::induced_subgraph(b, r.nodes), one_based);
        std::ofstream ids(prefix + "_nodes.txt");
        ids << "# original id of each kept node, in new index order\n";
        for (auto v : r.nodes) ids << v + off << "\n";
    }
    std::cout << out.dump(2) << "\n";
    return r.success ? exit_ok : exit_assertion;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Opinion dynamics on two-layer multiplex networks"};
    app.require_subcommand(1);
    std::string isa;
    app.add_option("--isa", isa, "Force the kernel set (scalar, avx2, neon)");

    auto* sim = app.add_subcommand("simulate", "Run a JSON-configured sweep and write CSV/JSON reports");
    std::string config_path, out_dir;
    sim->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "Output directory")->required();

    auto* an = app.add_subcommand("analyze", "Analyse one merged or switching configuration");
    std::string l1, l2, mode, x0_arg = "1";
    double alpha = 0.5;
    std::uint64_t k = 1;
    bool dump = false, one_based = false;
    an->add_option("--layer1", l1, "Edge list of layer 1")->required()->check(CLI::ExistingFile);
    an->add_option("--layer2", l2, "Edge list of layer 2")->required()->check(CLI::ExistingFile);
    an->add_option("--mode", mode, "merged or switching")->required()->check(CLI::IsMember({"merged", "switching"}));
    auto* alpha_opt = an->add_option("--alpha", alpha, "Merge weight of layer 1")->check(CLI::Range(0.0, 1.0));
    auto* k_opt = an->add_option("--k", k, "Steps on layer 1 per cycle");
    alpha_opt->excludes(k_opt);
    an->add_option("--x0", x0_arg, "Opinion file or unsigned seed for uniform opinions");
    an->add_flag("--dump", dump, "Include matrices and stationary laws in the output");
    an->add_flag("--one-based", one_based, "Edge lists use 1-based node ids");

    auto* ver = app.add_subcommand("verify", "Run a built-in regression suite");
    std::string suite;
    ver->add_option("--suite", suite, "examples, bounds or perturbation")
        ->required()
        ->check(CLI::IsMember({"examples", "bounds", "perturbation"}));

    auto* sel = app.add_subcommand("select", "Greedy sub-population on which layer 2 alone has no consensus");
    std::string s1, s2, prefix;
    bool s_one_based = false;
    std::vector<std::uint64_t> ks;
    sel->add_option("--layer1", s1, "Edge list of layer 1")->required()->check(CLI::ExistingFile);
    sel->add_option("--layer2", s2, "Edge list of layer 2")->required()->check(CLI::ExistingFile);
    sel->add_option("--k", ks, "Cycle lengths that must stay primitive (repeatable; default 3 5)");
    sel->add_option("--out-prefix", prefix, "Write <prefix>_layer1.txt, <prefix>_layer2.txt, <prefix>_nodes.txt");
    sel->add_flag("--one-based", s_one_based, "Edge lists use 1-based node ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (!isa.empty()) {
            mplex::kernels::Isa want;
            if (isa == "scalar") want = mplex::kernels::Isa::scalar;
            else if (isa == "avx2") want = mplex::kernels::Isa::avx2;
            else if (isa == "neon") want = mplex::kernels::Isa::neon;
            else throw mplex::InvalidArgument("unknown --isa " + isa);
            if (!mplex::kernels::force_isa(want)) throw mplex::InvalidArgument("kernel set " + isa + " is not available here");
        }
        if (*sim) return run_simulate(config_path, out_dir);
        if (*an) {
            if (mode == "merged" && k_opt->count()) throw mplex::InvalidArgument("--k applies to switching mode");
            if (mode == "switching" && alpha_opt->count()) throw mplex::InvalidArgument("--alpha applies to merged mode");
            return run_analyze(l1, l2, mode, alpha, k, x0_arg, dump, one_based);
        }
        if (*ver) return run_verify(suite);
        if (*sel) return run_select(s1, s2, s_one_based, ks, prefix);
    } catch (const mplex::ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return exit_input;
    } catch (const mplex::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const mplex::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_assertion;
    }
    return exit_input;
}
