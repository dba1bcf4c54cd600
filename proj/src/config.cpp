#include "mplex/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mplex {
namespace {

using nlohmann::json;

class Field {
public:
    Field(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const json& raw() const { return j_; }

    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_, what); }

    void expect_object(std::initializer_list<const char*> allowed) const
    {
        if (!j_.is_object()) fail("expected an object");
        for (const auto& [key, _] : j_.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) Field(j_.at(key), path_ + "." + key).fail("unknown field");
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    Field at(const char* key) const
    {
        if (!j_.contains(key)) Field(j_, path_ + "." + key).fail("missing required field");
        return Field(j_.at(key), path_ + "." + key);
    }

    Field at(std::size_t i) const { return Field(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

    std::size_t array_size() const
    {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    double number() const
    {
        if (!j_.is_number()) fail("expected a number");
        const double v = j_.get<double>();
        if (!std::isfinite(v)) fail("expected a finite number");
        return v;
    }

    std::uint64_t unsigned_integer() const
    {
        if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
            fail("expected a nonnegative integer");
        return j_.get<std::uint64_t>();
    }

    std::string string() const
    {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    bool boolean() const
    {
        if (!j_.is_boolean()) fail("expected a boolean");
        return j_.get<bool>();
    }

private:
    const json& j_;
    std::string path_;
};

LayerSource parse_layer(const Field& f, const std::filesystem::path& base_dir)
{
    if (f.raw().is_object() && f.has("edges")) {
        f.expect_object({"edges", "n", "indexing", "weights"});
        EdgeFileSpec spec;
        spec.path = f.at("edges").string();
        if (spec.path.is_relative()) spec.path = base_dir / spec.path;
        spec.n = f.at("n").unsigned_integer();
        if (spec.n == 0) f.at("n").fail("must be positive");
        if (f.has("indexing")) {
            const std::string ix = f.at("indexing").string();
            if (ix == "zero_based") spec.indexing = Indexing::zero_based;
            else if (ix == "one_based") spec.indexing = Indexing::one_based;
            else f.at("indexing").fail("expected \"zero_based\" or \"one_based\"");
        }
        if (f.has("weights")) {
            const Field w = f.at("weights");
            std::set<double> allowed;
            for (std::size_t i = 0; i < w.array_size(); ++i) allowed.insert(w.at(i).number());
            if (allowed.empty()) w.fail("must not be empty");
            spec.allowed_weights = std::move(allowed);
        }
        return spec;
    }

    if (!f.raw().is_object()) f.fail("expected an object");
    const std::string gen = f.at("generator").string();
    GeneratorSpec spec;
    if (gen == "erdos_renyi") {
        f.expect_object({"generator", "n", "p", "seed"});
        spec.kind = ErdosRenyi{f.at("p").number()};
    } else if (gen == "barabasi_albert") {
        f.expect_object({"generator", "n", "m", "seed"});
        spec.kind = BarabasiAlbert{static_cast<std::size_t>(f.at("m").unsigned_integer())};
    } else if (gen == "k_regular") {
        f.expect_object({"generator", "n", "k", "seed"});
        spec.kind = KRegular{static_cast<std::size_t>(f.at("k").unsigned_integer())};
    } else if (gen == "circulant") {
        f.expect_object({"generator", "n", "offsets", "weight", "seed"});
        Circulant c;
        const Field offs = f.at("offsets");
        for (std::size_t i = 0; i < offs.array_size(); ++i)
            c.offsets.push_back(static_cast<std::size_t>(offs.at(i).unsigned_integer()));
        if (f.has("weight")) c.weight = f.at("weight").number();
        spec.kind = std::move(c);
    } else {
        f.at("generator").fail("unknown generator \"" + gen + "\"");
    }
    spec.n = static_cast<std::size_t>(f.at("n").unsigned_integer());
    if (f.has("seed")) spec.seed = f.at("seed").unsigned_integer();
    try {
        validate(spec);
    } catch (const InvalidArgument& e) {
        f.fail(e.what());
    }
    return spec;
}

X0Spec parse_x0(const Field& f)
{
    if (!f.raw().is_object()) f.fail("expected an object");
    const std::string kind = f.at("kind").string();
    X0Spec x;
    if (kind == "uniform") {
        f.expect_object({"kind", "seed"});
        x.kind = X0Kind::uniform;
        x.seed = f.at("seed").unsigned_integer();
    } else if (kind == "explicit") {
        f.expect_object({"kind", "values"});
        x.kind = X0Kind::explicit_values;
        const Field v = f.at("values");
        for (std::size_t i = 0; i < v.array_size(); ++i) {
            const double value = v.at(i).number();
            if (value < 0.0 || value > 1.0) v.at(i).fail("opinion outside [0, 1]");
            x.values.push_back(value);
        }
        if (x.values.empty()) v.fail("must not be empty");
    } else if (kind == "uniform_with_overrides") {
        f.expect_object({"kind", "seed", "nodes", "top_degree", "value"});
        x.kind = X0Kind::uniform_with_overrides;
        x.seed = f.at("seed").unsigned_integer();
        x.value = f.at("value").number();
        if (x.value < 0.0 || x.value > 1.0) f.at("value").fail("opinion outside [0, 1]");
        if (f.has("nodes") == f.has("top_degree")) f.fail("exactly one of \"nodes\" and \"top_degree\" is required");
        if (f.has("nodes")) {
            const Field nodes = f.at("nodes");
            for (std::size_t i = 0; i < nodes.array_size(); ++i)
                x.nodes.push_back(static_cast<std::size_t>(nodes.at(i).unsigned_integer()));
        } else {
            const Field td = f.at("top_degree");
            td.expect_object({"layer", "count"});
            TopDegree t{static_cast<std::size_t>(td.at("layer").unsigned_integer()),
                        static_cast<std::size_t>(td.at("count").unsigned_integer())};
            if (t.layer != 1 && t.layer != 2) td.at("layer").fail("expected 1 or 2");
            x.top_degree = t;
        }
    } else {
        f.at("kind").fail("unknown x0 kind \"" + kind + "\"");
    }
    return x;
}

}  // namespace

std::string model_name(ModelKind kind)
{
    switch (kind) {
    case ModelKind::single: return "single";
    case ModelKind::merged: return "merged";
    case ModelKind::switching: return "switching";
    }
    return "?";
}

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    const Field root(doc, "$");
    root.expect_object({"name", "model", "layers", "x0", "t_max", "tol", "outputs", "trajectory_opinions"});

    ExperimentConfig cfg;
    cfg.canonical_json = doc.dump();
    if (root.has("name")) cfg.name = root.at("name").string();

    const Field model = root.at("model");
    if (!model.raw().is_object()) model.fail("expected an object");
    const std::string type = model.at("type").string();
    if (type == "single") {
        model.expect_object({"type", "layer"});
        cfg.model = ModelKind::single;
        if (model.has("layer")) {
            cfg.single_layer = static_cast<std::size_t>(model.at("layer").unsigned_integer());
            if (cfg.single_layer != 1 && cfg.single_layer != 2) model.at("layer").fail("expected 1 or 2");
        }
    } else if (type == "merged") {
        model.expect_object({"type", "alphas"});
        cfg.model = ModelKind::merged;
        const Field a = model.at("alphas");
        for (std::size_t i = 0; i < a.array_size(); ++i) {
            const double alpha = a.at(i).number();
            if (alpha < 0.0 || alpha > 1.0) a.at(i).fail("alpha outside [0, 1]");
            cfg.alphas.push_back(alpha);
        }
        if (cfg.alphas.empty()) a.fail("grid must not be empty");
    } else if (type == "switching") {
        model.expect_object({"type", "ks"});
        cfg.model = ModelKind::switching;
        const Field ks = model.at("ks");
        for (std::size_t i = 0; i < ks.array_size(); ++i) cfg.ks.push_back(ks.at(i).unsigned_integer());
        if (cfg.ks.empty()) ks.fail("grid must not be empty");
    } else {
        model.at("type").fail("expected \"single\", \"merged\" or \"switching\"");
    }

    const Field layers = root.at("layers");
    const std::size_t nl = layers.array_size();
    const std::size_t needed = cfg.model == ModelKind::single ? cfg.single_layer : 2;
    if (cfg.model == ModelKind::single ? nl < needed || nl > 2 : nl != 2)
        layers.fail(cfg.model == ModelKind::single ? "expected one or two layers covering the selected layer"
                                                   : "expected exactly two layers");
    for (std::size_t i = 0; i < nl; ++i) cfg.layers.push_back(parse_layer(layers.at(i), base_dir));

    cfg.x0 = parse_x0(root.at("x0"));
    if (cfg.x0.top_degree && cfg.x0.top_degree->layer > nl) root.at("x0").at("top_degree").fail("layer not configured");

    if (root.has("t_max")) {
        cfg.t_max = root.at("t_max").unsigned_integer();
        if (cfg.t_max < 1) root.at("t_max").fail("must be at least 1");
    }
    if (root.has("tol")) {
        cfg.tol = root.at("tol").number();
        if (!(cfg.tol > 0.0)) root.at("tol").fail("must be positive");
    }
    if (root.has("outputs")) {
        const Field out = root.at("outputs");
        cfg.outputs.clear();
        for (std::size_t i = 0; i < out.array_size(); ++i) {
            const std::string kind = out.at(i).string();
            if (kind == "grid") cfg.outputs.insert(OutputKind::grid);
            else if (kind == "trajectories") cfg.outputs.insert(OutputKind::trajectories);
            else if (kind == "summary") cfg.outputs.insert(OutputKind::summary);
            else out.at(i).fail("unknown output kind \"" + kind + "\"");
        }
    }
    if (root.has("trajectory_opinions")) cfg.trajectory_opinions = root.at("trajectory_opinions").boolean();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::string config_hash(const ExperimentConfig& config)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : config.canonical_json) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace mplex
