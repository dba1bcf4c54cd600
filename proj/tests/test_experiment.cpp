#include <doctest.h>

#include "mplex/config.hpp"
#include "mplex/experiment.hpp"
#include "mplex/select.hpp"
#include "mplex/stochastic.hpp"
#include "mplex/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

using namespace mplex;

namespace {

const char* merged_cfg = R"({
  "name": "tiny merged",
  "model": {"type": "merged", "alphas": [0, 0.25, 0.75, 1]},
  "layers": [
    {"generator": "circulant", "n": 7, "offsets": [1, 6], "weight": 1, "seed": 0},
    {"generator": "erdos_renyi", "n": 7, "p": 0.6, "seed": 5}
  ],
  "x0": {"kind": "uniform", "seed": 9},
  "t_max": 100000
})";

std::string config_error_path(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("config errors carry a JSON path")
{
    CHECK(config_error_path("{") == "$");
    CHECK(config_error_path(R"({"model": {"type": "merged", "alphas": [0.5]}, "layers": [], "x0": {}, "bogus": 1})") ==
          "$.bogus");
    CHECK(config_error_path(R"({"model": {"type": "merged", "alphas": [0.5, 1.5]}, "layers": [], "x0": {}})") ==
          "$.model.alphas[1]");
    CHECK(config_error_path(R"({"model": {"type": "merged", "alphas": [0.5]}, "layers": [1], "x0": {}})") ==
          "$.layers");
    CHECK(config_error_path(R"({"model": {"type": "tensor"}, "layers": [], "x0": {}})") == "$.model.type");
    CHECK(config_error_path(R"({"layers": [], "x0": {}})") == "$.model");
    std::string bad_gen = merged_cfg;
    bad_gen.replace(bad_gen.find("\"p\": 0.6"), 8, "\"p\": 1.6");
    CHECK(config_error_path(bad_gen).rfind("$.layers[1]", 0) == 0);
}

TEST_CASE("config hash is 64-bit FNV-1a over the canonical text")
{
    ExperimentConfig c;
    c.canonical_json = "";
    CHECK(config_hash(c) == "cbf29ce484222325");
    c.canonical_json = "a";
    CHECK(config_hash(c) == "af63dc4c8601ec8c");
    c.canonical_json = "foobar";
    CHECK(config_hash(c) == "85944171f73967e8");
    // whitespace in the source does not change the canonical form
    const std::string spaced = std::string(merged_cfg) + "\n\n";
    CHECK(config_hash(parse_config(merged_cfg)) == config_hash(parse_config(spaced)));
}

TEST_CASE("initial opinions with top-degree overrides")
{
    const LayerGraph star = build_layer(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {3, 4, 1}, {1, 2, 1}});
    X0Spec spec;
    spec.kind = X0Kind::uniform_with_overrides;
    spec.seed = 4;
    spec.top_degree = TopDegree{1, 2};
    spec.value = -1.0;
    const Vector x = realize_x0(spec, {star});
    // degrees 3, 2, 2, 2, 1: node 0 then the lowest-index tie
    CHECK(x[0] == -1.0);
    CHECK(x[1] == -1.0);
    for (std::size_t i = 2; i < 5; ++i) CHECK((x[i] >= 0.0 && x[i] < 1.0));
    X0Spec plain = spec;
    plain.kind = X0Kind::uniform;
    plain.top_degree.reset();
    const Vector u = realize_x0(plain, {star});
    for (std::size_t i = 2; i < 5; ++i) CHECK(u[i] == x[i]);
    X0Spec expl;
    expl.kind = X0Kind::explicit_values;
    expl.values = {1, 2, 3};
    CHECK_THROWS_AS(realize_x0(expl, {star}), InvalidArgument);
}

TEST_CASE("small merged experiment")
{
    const ExperimentConfig cfg = parse_config(merged_cfg);
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.points.size() == 4);
    CHECK(r.all_passed());
    CHECK(r.armed_count() > 0);
    CHECK(r.x0_seed == std::optional<std::uint64_t>(9));
    CHECK(r.layer_seeds.size() == 2);
    for (const auto& p : r.points) {
        CHECK(p.status == "consensus");
        REQUIRE(p.consensus.has_value());
        CHECK(*p.consensus >= *p.interval_lo - 1e-12);
        CHECK(*p.consensus <= *p.interval_hi + 1e-12);
    }
    // alpha = 1 reproduces layer 1 and alpha = 0 layer 2
    const double c0 = *r.points[0].consensus, c1 = *r.points[3].consensus;
    CHECK(std::min(c0, c1) == doctest::Approx(*r.points[1].interval_lo).epsilon(1e-12));
    CHECK(std::max(c0, c1) == doctest::Approx(*r.points[1].interval_hi).epsilon(1e-12));

    const std::string csv = format_grid_csv(r);
    CHECK(csv.substr(0, csv.find('\n')) == grid_csv_header);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(format_grid_csv(run_experiment(cfg)) == csv);
    CHECK(format_summary_json(run_experiment(cfg)) == format_summary_json(r));

    const auto j = nlohmann::json::parse(format_summary_json(r));
    CHECK(j["config_hash"] == config_hash(cfg));
    CHECK(j["model"] == "merged");
    CHECK(j["seeds"]["x0"] == 9);
    CHECK(j["seeds"]["layers"][1] == 5);
    CHECK(j["failed"] == 0);
    CHECK(j["grid"].size() == 4);
}

TEST_CASE("output files")
{
    const ExperimentConfig cfg = parse_config(merged_cfg);
    const ExperimentResult r = run_experiment(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "mplex_test_outputs";
    std::filesystem::remove_all(dir);
    write_outputs(cfg, r, dir);
    CHECK(std::filesystem::exists(dir / "grid.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "trajectory_000.csv"));
    std::ifstream in(dir / "trajectory_000.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,error_pi,error_max");
    std::filesystem::remove_all(dir);
}

TEST_CASE("float formatting")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("switching experiment flags the oscillating configuration")
{
    const char* text = R"({
      "model": {"type": "switching", "ks": [1]},
      "layers": [
        {"edges": "osc_layer1.txt", "n": 5, "indexing": "zero_based"},
        {"edges": "osc_layer2.txt", "n": 5, "indexing": "zero_based"}
      ],
      "x0": {"kind": "explicit", "values": [0.2, 0.5, 0.5, 0.9, 0.1]},
      "t_max": 5000
    })";
    const ExperimentConfig cfg = parse_config(text, std::filesystem::path(MPLEX_SOURCE_DIR) / "tests" / "data");
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].status == "oscillation");
    CHECK(r.all_passed());
}

TEST_CASE("non-consensus subset selection")
{
    std::vector<Edge> full;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) full.push_back({i, j, 1.0});
    const LayerGraph a = build_layer(5, full);
    const LayerGraph b = build_layer(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {4, 0, 1}, {4, 1, 1}});
    const SelectionResult s = select_nonconsensus_subset(a, b);
    REQUIRE(s.success);
    CHECK(s.removed.size() == 1);
    CHECK(s.nodes.size() == 4);
    const LayerGraph sb = induced_subgraph(b, s.nodes);
    CHECK_FALSE(is_primitive(transition_matrix(sb)).primitive);
    CHECK_FALSE(sb.has_isolated_node());
    CHECK(is_primitive(transition_matrix(induced_subgraph(a, s.nodes))).primitive);

    const LayerGraph path = build_layer(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
    CHECK_FALSE(select_nonconsensus_subset(path, b).success);
}

TEST_CASE("suite names")
{
    CHECK_THROWS_AS(run_suite("nonsense"), InvalidArgument);
    CHECK(run_suite("examples").passed());
}
