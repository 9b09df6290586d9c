#ifndef MLNDS_GENERATORS_HPP_
#define MLNDS_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "network.hpp"
#include "rng.hpp"

namespace mlnds {

class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// Erdős–Rényi G(n, m) per layer: fixed edge count, all actors in all layers.
struct ErGenConfig {
    std::size_t n_actors = 0;
    std::size_t n_layers = 1;
    std::vector<std::size_t> edges_per_layer;
    std::uint64_t rng_seed = 0;
};

/// Multilayer preferential-attachment growth with inter-layer edge imports.
struct PaGenConfig {
    std::size_t n_actors = 0;
    std::size_t n_layers = 1;
    std::size_t m0 = 1;
    std::size_t m = 1;
    double pr_internal = 1.0;
    double pr_external = 0.0;
    double pr_none = 0.0;
    /// Row l gives the probability of importing from each source layer into l.
    /// Empty means 1/(L-1) off the diagonal.
    std::vector<std::vector<double>> dependency;
    std::uint64_t rng_seed = 0;
    /// The m0 initial actors form a clique in every layer; otherwise they start isolated.
    bool initial_clique = true;
    /// Attachment and import sampling see each layer as it was at the start of the growth step.
    bool freeze_degrees = true;
};

namespace detail {

inline std::string padded_name(char prefix, std::size_t index, std::size_t count) {
    std::size_t width = 1;
    for (std::size_t c = count > 0 ? count - 1 : 0; c >= 10; c /= 10)
        ++width;
    std::string digits = std::to_string(index);
    return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
}

inline std::uint64_t edge_key(std::size_t u, std::size_t v) {
    if (u > v)
        std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

/// Index-level network assembly; names are zero-padded so that name order
/// equals index order.
struct IndexedNetwork {
    std::size_t n_actors;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;

    MultilayerNetwork build() const {
        NetworkBuilder b;
        std::vector<std::string> actors(n_actors);
        for (std::size_t a = 0; a < n_actors; ++a)
            actors[a] = padded_name('a', a, n_actors);
        for (std::size_t l = 0; l < edges.size(); ++l) {
            std::string layer = padded_name('l', l + 1, edges.size() + 1);
            b.add_layer(layer);
            for (const auto& actor : actors)
                b.add_node(layer, actor);
            for (auto [u, v] : edges[l])
                b.add_edge(layer, actors[u], actors[v]);
        }
        return b.build();
    }
};

} // namespace detail

inline MultilayerNetwork generate_er(const ErGenConfig& config) {
    if (config.n_actors == 0 || config.n_layers == 0)
        throw InvalidConfig("ER config needs at least one actor and one layer");
    if (config.edges_per_layer.size() != config.n_layers)
        throw InvalidConfig("edges_per_layer must have one entry per layer");
    const std::size_t n = config.n_actors;
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    Rng rng(config.rng_seed);
    detail::IndexedNetwork out{n, std::vector<std::vector<std::pair<std::size_t, std::size_t>>>(config.n_layers)};
    for (std::size_t l = 0; l < config.n_layers; ++l) {
        const std::uint64_t want = config.edges_per_layer[l];
        if (want > max_edges)
            throw InvalidConfig("layer " + std::to_string(l) + " asks for " + std::to_string(want) +
                                " edges, at most " + std::to_string(max_edges) + " possible");
        // Sample the smaller of the edge set and its complement.
        const bool complement = want > max_edges / 2;
        const std::uint64_t draws = complement ? max_edges - want : want;
        std::unordered_set<std::uint64_t> picked;
        std::vector<std::uint64_t> order;
        while (picked.size() < draws) {
            std::size_t u = rng.index(n);
            std::size_t v = rng.index(n);
            if (u == v)
                continue;
            auto key = detail::edge_key(u, v);
            if (picked.insert(key).second)
                order.push_back(key);
        }
        auto& edges = out.edges[l];
        if (complement) {
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v)
                    if (!picked.contains(detail::edge_key(u, v)))
                        edges.emplace_back(u, v);
        } else {
            for (auto key : order)
                edges.emplace_back(static_cast<std::size_t>(key >> 32), static_cast<std::size_t>(key & 0xffffffffu));
        }
    }
    return out.build();
}

inline void validate(const PaGenConfig& c) {
    auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (c.n_layers == 0 || c.m0 == 0 || c.m == 0)
        throw InvalidConfig("PA config needs n_layers, m0 and m positive");
    if (c.m > c.m0)
        throw InvalidConfig("m must not exceed m0");
    if (c.n_actors < c.m0)
        throw InvalidConfig("n_actors must be at least m0");
    if (!is_prob(c.pr_internal) || !is_prob(c.pr_external) || !is_prob(c.pr_none) ||
        std::abs(c.pr_internal + c.pr_external + c.pr_none - 1.0) > 1e-9)
        throw InvalidConfig("event probabilities must be in [0,1] and sum to 1");
    if (c.n_layers == 1 && c.pr_external > 0.0)
        throw InvalidConfig("edge imports need at least two layers");
    if (!c.dependency.empty()) {
        if (c.dependency.size() != c.n_layers)
            throw InvalidConfig("dependency matrix must be n_layers x n_layers");
        for (std::size_t i = 0; i < c.n_layers; ++i) {
            const auto& row = c.dependency[i];
            if (row.size() != c.n_layers)
                throw InvalidConfig("dependency matrix must be n_layers x n_layers");
            double sum = 0.0;
            for (double p : row) {
                if (!is_prob(p))
                    throw InvalidConfig("dependency entries must be probabilities");
                sum += p;
            }
            if (row[i] != 0.0 || std::abs(sum - 1.0) > 1e-9)
                throw InvalidConfig("dependency rows need a zero diagonal and must sum to 1");
        }
    }
}

/// Grows n_actors - m0 steps. At each step a new actor joins every layer;
/// per layer one event is drawn: attach m preferential edges, import a
/// random edge from a dependency-sampled layer, or nothing.
inline MultilayerNetwork generate_pa(const PaGenConfig& config) {
    validate(config);
    const std::size_t n = config.n_actors;
    const std::size_t L = config.n_layers;
    Rng rng(config.rng_seed);

    struct LayerState {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::vector<std::size_t> endpoints; // each edge contributes both ends: degree-weighted urn
        std::unordered_set<std::uint64_t> keys;
        std::vector<std::size_t> degree;
        std::size_t connected = 0; // actors with positive degree

        bool add(std::size_t u, std::size_t v) {
            if (u == v || !keys.insert(detail::edge_key(u, v)).second)
                return false;
            for (auto x : {u, v})
                if (degree[x]++ == 0)
                    ++connected;
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
            return true;
        }
    };
    std::vector<LayerState> layers(L);
    for (auto& layer : layers)
        layer.degree.assign(n, 0);
    if (config.initial_clique)
        for (auto& layer : layers)
            for (std::size_t u = 0; u < config.m0; ++u)
                for (std::size_t v = u + 1; v < config.m0; ++v)
                    layer.add(u, v);

    std::vector<std::size_t> edge_snapshot(L), urn_snapshot(L), connected_snapshot(L);
    std::vector<std::size_t> targets;
    for (std::size_t fresh = config.m0; fresh < n; ++fresh) {
        for (std::size_t l = 0; l < L; ++l) {
            edge_snapshot[l] = layers[l].edges.size();
            urn_snapshot[l] = layers[l].endpoints.size();
            connected_snapshot[l] = layers[l].connected;
        }
        for (std::size_t l = 0; l < L; ++l) {
            auto& layer = layers[l];
            const double dice = rng.uniform();
            if (dice < config.pr_internal) {
                // Degree-preferential targets among the `fresh` existing actors.
                targets.clear();
                const std::size_t urn = config.freeze_degrees ? urn_snapshot[l] : layer.endpoints.size();
                const std::size_t from_urn = std::min(config.m, connected_snapshot[l]);
                while (targets.size() < from_urn) {
                    std::size_t cand = layer.endpoints[rng.index(config.freeze_degrees ? urn : layer.endpoints.size())];
                    if (cand == fresh)
                        continue;
                    if (std::ranges::find(targets, cand) == targets.end()) {
                        targets.push_back(cand);
                        if (!config.freeze_degrees)
                            layer.add(fresh, cand);
                    }
                }
                // Not enough connected actors: fill uniformly from the rest.
                while (targets.size() < config.m && targets.size() < fresh) {
                    std::size_t cand = rng.index(fresh);
                    if (std::ranges::find(targets, cand) == targets.end() && layer.degree[cand] == 0) {
                        targets.push_back(cand);
                        if (!config.freeze_degrees)
                            layer.add(fresh, cand);
                    }
                }
                if (config.freeze_degrees)
                    for (auto t : targets)
                        layer.add(fresh, t);
            } else if (dice < config.pr_internal + config.pr_external) {
                std::size_t source = l;
                if (config.dependency.empty()) {
                    source = rng.index(L - 1);
                    if (source >= l)
                        ++source;
                } else {
                    double u = rng.uniform();
                    const auto& row = config.dependency[l];
                    source = L;
                    for (std::size_t s = 0; s < L; ++s) {
                        if (row[s] <= 0.0)
                            continue;
                        source = s;
                        if (u < row[s])
                            break;
                        u -= row[s];
                    }
                }
                const std::size_t available =
                    config.freeze_degrees ? edge_snapshot[source] : layers[source].edges.size();
                if (source < L && source != l && available > 0) {
                    auto [u, v] = layers[source].edges[rng.index(available)];
                    layer.add(u, v);
                }
            }
        }
    }

    detail::IndexedNetwork out{n, {}};
    out.edges.reserve(L);
    for (auto& layer : layers)
        out.edges.push_back(std::move(layer.edges));
    return out.build();
}

} // namespace mlnds

#endif // MLNDS_GENERATORS_HPP_
