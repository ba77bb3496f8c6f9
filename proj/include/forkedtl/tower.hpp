/** Path bases of the string algebra over a pointed bipartite graph. */

#pragma once

#include "forkedtl/graph_catalog.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace forkedtl {

inline constexpr std::size_t default_max_algebra_dim = 4'000'000;

/// A level-m path ξ_0 = star, ξ_1, ..., ξ_m stepping along edges.
using Path = std::vector<int>;

/// Where a level-(m+1) path came from: its length-m prefix.
struct PathParent {
    int vertex; // end vertex of the prefix
    int index;  // position of the prefix among level-m paths ending there
};

struct TowerLevel {
    std::vector<std::vector<Path>> paths;         // per end vertex, lexicographic
    std::vector<std::vector<PathParent>> parents; // parallel to paths (empty at level 0)

    std::size_t block_size(int v) const { return paths[v].size(); }

    std::size_t algebra_dimension() const {
        std::size_t d = 0;
        for (const auto& ps : paths) d += ps.size() * ps.size();
        return d;
    }
};

/// Immutable handle to the path tower rA_0r ⊂ rA_1r ⊂ ... ⊂ rA_depth r.
/// Copies share the underlying data; two handles denote the same tower iff
/// they share it.
class Tower {
public:
    Tower() = default;

    Tower(BipartiteGraph graph, SpectralData spectral, int depth,
          std::size_t max_algebra_dim = default_max_algebra_dim) {
        if (depth < 1) throw std::invalid_argument("tower depth must be >= 1");
        if (spectral.weights.size() != graph.size())
            throw std::invalid_argument("spectral data does not match graph");
        auto data = std::make_shared<Data>();
        data->graph = std::move(graph);
        data->spectral = std::move(spectral);
        data->depth = depth;
        build_levels(*data, max_algebra_dim);
        data_ = std::move(data);
    }

    const BipartiteGraph& graph() const { return data_->graph; }
    const SpectralData& spectral() const { return data_->spectral; }
    int depth() const { return data_->depth; }
    double beta() const { return data_->spectral.norm; }
    double tau() const { return data_->spectral.tau; }
    double weight(int v) const { return data_->spectral.weights[v]; }
    int vertex_count() const { return static_cast<int>(data_->graph.size()); }

    const TowerLevel& level(int m) const {
        if (m < 0 || m > depth()) throw std::out_of_range("tower level " + std::to_string(m) + " beyond depth");
        return data_->levels[m];
    }

    /// Markov trace weight of a minimal projection in block v at level m:
    /// μ(v) / (β^m μ(star)).
    double trace_weight(int m, int v) const {
        return weight(v) / (level_power(m) * weight(graph().star));
    }

    bool same_as(const Tower& o) const { return data_ == o.data_; }
    bool valid() const { return static_cast<bool>(data_); }

private:
    struct Data {
        BipartiteGraph graph;
        SpectralData spectral;
        int depth = 0;
        std::vector<TowerLevel> levels;
        std::vector<double> beta_powers;
    };

    double level_power(int m) const { return data_->beta_powers.at(m); }

    static void build_levels(Data& d, std::size_t max_dim) {
        const auto& g = d.graph;
        const int nv = static_cast<int>(g.size());
        d.levels.resize(d.depth + 1);
        d.levels[0].paths.assign(nv, {});
        d.levels[0].parents.assign(nv, {});
        d.levels[0].paths[g.star].push_back(Path{g.star});
        d.levels[0].parents[g.star].push_back(PathParent{-1, -1});
        for (int m = 0; m < d.depth; ++m) {
            const auto& cur = d.levels[m];
            auto& next = d.levels[m + 1];
            next.paths.assign(nv, {});
            next.parents.assign(nv, {});
            for (int c = 0; c < nv; ++c) {
                std::vector<std::pair<PathParent, const Path*>> ext;
                for (int v : g.adjacency[c])
                    for (std::size_t i = 0; i < cur.paths[v].size(); ++i)
                        ext.push_back({PathParent{v, static_cast<int>(i)}, &cur.paths[v][i]});
                std::sort(ext.begin(), ext.end(), [](const auto& a, const auto& b) { return *a.second < *b.second; });
                for (const auto& [parent, prefix] : ext) {
                    Path p = *prefix;
                    p.push_back(c);
                    next.paths[c].push_back(std::move(p));
                    next.parents[c].push_back(parent);
                }
            }
            if (next.algebra_dimension() > max_dim)
                throw std::length_error("tower level " + std::to_string(m + 1) + " exceeds the memory bound");
        }
        d.beta_powers.assign(d.depth + 1, 1.0);
        for (int m = 1; m <= d.depth; ++m) d.beta_powers[m] = d.beta_powers[m - 1] * d.spectral.norm;
    }

    std::shared_ptr<const Data> data_;
};

inline Tower build_tower(const BipartiteGraph& g, int depth, std::size_t max_algebra_dim = default_max_algebra_dim) {
    return Tower(g, spectral_data(g), depth, max_algebra_dim);
}

inline std::string path_to_string(const BipartiteGraph& g, const Path& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '-';
        s += g.vertices[p[i]];
    }
    return s;
}

/// {graph, star, levels:[{m, blocks:[{vertex, size}], dim}]}; empty blocks omitted.
inline nlohmann::ordered_json tower_dimensions_json(const Tower& t) {
    nlohmann::ordered_json j;
    j["graph"] = t.graph().name;
    j["star"] = t.graph().star_id();
    j["levels"] = nlohmann::ordered_json::array();
    for (int m = 0; m <= t.depth(); ++m) {
        const auto& lv = t.level(m);
        nlohmann::ordered_json l;
        l["m"] = m;
        l["blocks"] = nlohmann::ordered_json::array();
        for (int v = 0; v < t.vertex_count(); ++v)
            if (lv.block_size(v) > 0)
                l["blocks"].push_back({{"vertex", t.graph().vertices[v]}, {"size", lv.block_size(v)}});
        l["dim"] = lv.algebra_dimension();
        j["levels"].push_back(std::move(l));
    }
    return j;
}

/// Bratteli diagram: one rank per level, node label = block size, one edge
/// per graph edge between consecutive levels.
inline std::string bratteli_to_dot(const Tower& t) {
    const auto& g = t.graph();
    std::ostringstream os;
    os << "digraph \"bratteli_" << g.name << "_" << g.star_id() << "\" {\n  rankdir=TB;\n";
    auto node = [&](int m, int v) { return "\"" + std::to_string(m) + ":" + g.vertices[v] + "\""; };
    for (int m = 0; m <= t.depth(); ++m) {
        os << "  { rank=same;";
        for (int v = 0; v < t.vertex_count(); ++v)
            if (t.level(m).block_size(v) > 0) os << ' ' << node(m, v) << ";";
        os << " }\n";
        for (int v = 0; v < t.vertex_count(); ++v)
            if (t.level(m).block_size(v) > 0)
                os << "  " << node(m, v) << " [label=\"" << g.vertices[v] << " (" << t.level(m).block_size(v) << ")\"];\n";
    }
    for (int m = 0; m < t.depth(); ++m)
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (t.level(m).block_size(v) == 0) continue;
            for (int c : g.adjacency[v]) os << "  " << node(m, v) << " -> " << node(m + 1, c) << ";\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace forkedtl
