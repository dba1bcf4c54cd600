#include "mplex/error.hpp"
#include "mplex/netcore.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

namespace mplex {
namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
        std::size_t j = i;
        while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == '\r' || line[j] == ',')) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view s, T& out)
{
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

LayerGraph parse_edge_list(const std::string& text, const EdgeListOptions& options, const std::string& source)
{
    struct Parsed {
        Edge edge;
        std::size_t line;
    };
    std::vector<Parsed> parsed;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    std::size_t max_index = 0;
    bool any = false;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 3) throw ParseError(source, line_no, "expected \"i j w\"");

        long long i = 0, j = 0;
        double w = 0.0;
        if (!parse_number(fields[0], i) || !parse_number(fields[1], j))
            throw ParseError(source, line_no, "malformed node index");
        if (!parse_number(fields[2], w)) throw ParseError(source, line_no, "malformed weight");
        if (options.indexing == Indexing::one_based) {
            --i;
            --j;
        }
        if (i < 0 || j < 0) throw ParseError(source, line_no, "node index out of range");
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        if (options.n && (ui >= *options.n || uj >= *options.n))
            throw ParseError(source, line_no, "node index out of range for n = " + std::to_string(*options.n));
        if (ui == uj) throw ParseError(source, line_no, "self-loop");
        if (!(w > 0.0)) throw ParseError(source, line_no, "weight must be positive");
        if (options.allowed_weights && options.allowed_weights->count(w) == 0)
            throw ParseError(source, line_no, "weight outside the declared set");
        const auto key = std::minmax(ui, uj);
        if (const auto it = seen.find(key); it != seen.end())
            throw ParseError(source, line_no, "duplicate edge (first seen on line " + std::to_string(it->second) + ")");
        seen.emplace(key, line_no);
        parsed.push_back({{ui, uj, w}, line_no});
        max_index = std::max({max_index, ui, uj});
        any = true;
    }

    const std::size_t n = options.n ? *options.n : (any ? max_index + 1 : 0);
    std::vector<Edge> edges;
    edges.reserve(parsed.size());
    for (const auto& p : parsed) edges.push_back(p.edge);
    return build_layer(n, edges);
}

LayerGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str(), options, path.string());
}

std::pair<LayerGraph, LayerGraph> load_two_layer_dataset(const std::filesystem::path& path_a,
                                                         const std::filesystem::path& path_b, std::size_t n,
                                                         Indexing indexing)
{
    EdgeListOptions a{indexing, std::set<double>{1.0}, n};
    EdgeListOptions b{indexing, std::set<double>{1.0, 2.0, 3.0, 4.0}, n};
    return {load_edge_list(path_a, a), load_edge_list(path_b, b)};
}

std::string format_edge_list(const LayerGraph& layer)
{
    std::string out;
    char buf[64];
    for (const Edge& e : layer.edges()) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", e.i, e.j, e.weight);
        out += buf;
    }
    return out;
}

}  // namespace mplex
