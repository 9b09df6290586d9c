#ifndef MLNDS_NETWORK_HPP_
#define MLNDS_NETWORK_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mlnds {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownActor : public Error {
public:
    using Error::Error;
};

class ActorNotPresent : public Error {
public:
    using Error::Error;
};

class InvalidNetwork : public Error {
public:
    using Error::Error;
};

/// Dense actor handle. Handles are assigned in ascending name order, so the
/// handle order is the actor total order used for all tie-breaking.
struct ActorId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(ActorId, ActorId) = default;
};

/// Dense layer handle, assigned in ascending layer-name order.
struct LayerId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(LayerId, LayerId) = default;
};

/// A set of actors kept as a sorted, duplicate-free vector.
class ActorSet {
public:
    using const_iterator = std::vector<ActorId>::const_iterator;

    ActorSet() = default;
    explicit ActorSet(std::vector<ActorId> items) : items_(std::move(items)) {
        std::ranges::sort(items_);
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }
    ActorSet(std::initializer_list<ActorId> items) : ActorSet(std::vector<ActorId>(items)) {}

    bool contains(ActorId a) const { return std::ranges::binary_search(items_, a); }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const_iterator begin() const noexcept { return items_.begin(); }
    const_iterator end() const noexcept { return items_.end(); }
    const std::vector<ActorId>& items() const noexcept { return items_; }

    bool insert(ActorId a) {
        auto it = std::ranges::lower_bound(items_, a);
        if (it != items_.end() && *it == a)
            return false;
        items_.insert(it, a);
        return true;
    }

    bool erase(ActorId a) {
        auto it = std::ranges::lower_bound(items_, a);
        if (it == items_.end() || *it != a)
            return false;
        items_.erase(it);
        return true;
    }

    friend bool operator==(const ActorSet&, const ActorSet&) = default;
    friend auto operator<=>(const ActorSet& x, const ActorSet& y) { return x.items_ <=> y.items_; }

private:
    std::vector<ActorId> items_;
};

/// Undirected multilayer network M = (A, L, V, E) without inter-layer edges.
///
/// Immutable once built (see NetworkBuilder). Each layer stores its node set
/// as a presence mask and its edges as a CSR adjacency with sorted
/// neighbour lists. An actor may be present in a layer without any edges
/// there; such a node has degree 0 and still counts as "represented".
class MultilayerNetwork {
public:
    MultilayerNetwork() = default;

    std::size_t actor_count() const noexcept { return actor_names_.size(); }
    std::size_t layer_count() const noexcept { return layers_.size(); }

    auto actors() const {
        return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(actor_count())) |
               std::views::transform([](std::uint32_t v) { return ActorId{v}; });
    }
    auto layers() const {
        return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(layer_count())) |
               std::views::transform([](std::uint32_t v) { return LayerId{v}; });
    }

    const std::string& actor_name(ActorId a) const {
        check_actor(a);
        return actor_names_[a.value];
    }
    const std::string& layer_name(LayerId l) const {
        check_layer(l);
        return layer_names_[l.value];
    }
    std::span<const std::string> actor_names() const noexcept { return actor_names_; }
    std::span<const std::string> layer_names() const noexcept { return layer_names_; }

    std::optional<ActorId> find_actor(std::string_view name) const {
        auto it = std::ranges::lower_bound(actor_names_, name, {}, [](const std::string& s) { return std::string_view(s); });
        if (it == actor_names_.end() || *it != name)
            return std::nullopt;
        return ActorId{static_cast<std::uint32_t>(it - actor_names_.begin())};
    }
    std::optional<LayerId> find_layer(std::string_view name) const {
        auto it = std::ranges::lower_bound(layer_names_, name, {}, [](const std::string& s) { return std::string_view(s); });
        if (it == layer_names_.end() || *it != name)
            return std::nullopt;
        return LayerId{static_cast<std::uint32_t>(it - layer_names_.begin())};
    }
    ActorId actor(std::string_view name) const {
        if (auto a = find_actor(name))
            return *a;
        throw UnknownActor("unknown actor '" + std::string(name) + "'");
    }
    LayerId layer(std::string_view name) const {
        if (auto l = find_layer(name))
            return *l;
        throw Error("unknown layer '" + std::string(name) + "'");
    }

    bool is_present(LayerId l, ActorId a) const {
        check_layer(l);
        check_actor(a);
        return layers_[l.value].present[a.value] != 0;
    }

    std::size_t degree(LayerId l, ActorId a) const { return neighbours(l, a).size(); }

    /// Sorted neighbours of the actor's node in layer l.
    std::span<const ActorId> neighbours(LayerId l, ActorId a) const {
        if (!is_present(l, a))
            throw ActorNotPresent("actor '" + actor_names_[a.value] + "' is not present in layer '" +
                                  layer_names_[l.value] + "'");
        return adjacent(l, a);
    }

    /// Layers in which the actor has a node, ascending.
    std::span<const LayerId> layers_of(ActorId a) const {
        check_actor(a);
        const auto& r = actor_layers_;
        return std::span<const LayerId>(r.data() + actor_layer_offsets_[a.value],
                                        actor_layer_offsets_[a.value + 1] - actor_layer_offsets_[a.value]);
    }

    /// Union of the actor's neighbour sets over all its layers.
    ActorSet one_hop_union(ActorId a) const {
        std::vector<ActorId> out;
        for (LayerId l : layers_of(a)) {
            auto n = adjacent(l, a);
            out.insert(out.end(), n.begin(), n.end());
        }
        return ActorSet(std::move(out));
    }

    /// Actors present in layer l, ascending.
    std::span<const ActorId> layer_actors(LayerId l) const {
        check_layer(l);
        return layers_[l.value].members;
    }

    std::size_t edge_count(LayerId l) const {
        check_layer(l);
        return layers_[l.value].targets.size() / 2;
    }
    std::size_t edge_count() const noexcept {
        std::size_t n = 0;
        for (const auto& layer : layers_)
            n += layer.targets.size() / 2;
        return n;
    }
    std::size_t node_count() const noexcept { return actor_layers_.size(); }

    /// Edges of layer l as (u, v) pairs with u < v, sorted.
    std::vector<std::pair<ActorId, ActorId>> edges(LayerId l) const {
        check_layer(l);
        std::vector<std::pair<ActorId, ActorId>> out;
        for (ActorId a : layers_[l.value].members)
            for (ActorId b : adjacent(l, a))
                if (a < b)
                    out.emplace_back(a, b);
        return out;
    }

    /// Unchecked neighbour access for hot loops; empty for absent nodes.
    std::span<const ActorId> adjacent(LayerId l, ActorId a) const noexcept {
        const auto& layer = layers_[l.value];
        return std::span<const ActorId>(layer.targets.data() + layer.offsets[a.value],
                                        layer.offsets[a.value + 1] - layer.offsets[a.value]);
    }
    bool present_unchecked(LayerId l, ActorId a) const noexcept { return layers_[l.value].present[a.value] != 0; }

private:
    friend class NetworkBuilder;

    struct Layer {
        std::vector<char> present;
        std::vector<std::uint32_t> offsets;
        std::vector<ActorId> targets;
        std::vector<ActorId> members;
    };

    void check_actor(ActorId a) const {
        if (a.value >= actor_names_.size())
            throw UnknownActor("actor id " + std::to_string(a.value) + " out of range");
    }
    void check_layer(LayerId l) const {
        if (l.value >= layer_names_.size())
            throw Error("layer id " + std::to_string(l.value) + " out of range");
    }

    std::vector<std::string> actor_names_;
    std::vector<std::string> layer_names_;
    std::vector<Layer> layers_;
    std::vector<std::uint32_t> actor_layer_offsets_{0};
    std::vector<LayerId> actor_layers_;
};

/// Accumulates nodes and edges, then freezes them into a MultilayerNetwork.
/// Edge endpoints are implicitly added to the layer; duplicate edges collapse.
class NetworkBuilder {
public:
    void add_layer(std::string_view layer) { layer_index(layer); }

    void add_node(std::string_view layer, std::string_view actor) {
        nodes_.emplace_back(layer_index(layer), actor_index(actor));
    }

    void add_edge(std::string_view layer, std::string_view a, std::string_view b) {
        if (a == b)
            throw InvalidNetwork("self-loop on actor '" + std::string(a) + "' in layer '" + std::string(layer) + "'");
        std::uint32_t l = layer_index(layer);
        std::uint32_t u = actor_index(a);
        std::uint32_t v = actor_index(b);
        nodes_.emplace_back(l, u);
        nodes_.emplace_back(l, v);
        edges_.emplace_back(l, std::min(u, v), std::max(u, v));
    }

    MultilayerNetwork build() const {
        MultilayerNetwork net;
        // Remap insertion-order indices to name order.
        auto actor_perm = sorted_permutation(actor_names_);
        auto layer_perm = sorted_permutation(layer_names_);
        const std::size_t n = actor_names_.size();
        net.actor_names_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            net.actor_names_[actor_perm[i]] = actor_names_[i];
        net.layer_names_.resize(layer_names_.size());
        for (std::size_t i = 0; i < layer_names_.size(); ++i)
            net.layer_names_[layer_perm[i]] = layer_names_[i];

        std::vector<std::vector<std::uint32_t>> present(layer_names_.size(), std::vector<std::uint32_t>{});
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> arcs(layer_names_.size());
        for (auto [l, a] : nodes_)
            present[layer_perm[l]].push_back(actor_perm[a]);
        for (auto [l, u, v] : edges_) {
            arcs[layer_perm[l]].emplace_back(actor_perm[u], actor_perm[v]);
            arcs[layer_perm[l]].emplace_back(actor_perm[v], actor_perm[u]);
        }

        net.layers_.resize(layer_names_.size());
        std::vector<std::vector<LayerId>> by_actor(n);
        for (std::size_t l = 0; l < layer_names_.size(); ++l) {
            auto& layer = net.layers_[l];
            layer.present.assign(n, 0);
            for (auto a : present[l])
                layer.present[a] = 1;
            for (std::uint32_t a = 0; a < n; ++a)
                if (layer.present[a]) {
                    layer.members.push_back(ActorId{a});
                    by_actor[a].push_back(LayerId{static_cast<std::uint32_t>(l)});
                }
            auto& e = arcs[l];
            std::ranges::sort(e);
            e.erase(std::unique(e.begin(), e.end()), e.end());
            layer.offsets.assign(n + 1, 0);
            for (auto [u, v] : e)
                ++layer.offsets[u + 1];
            for (std::size_t i = 0; i < n; ++i)
                layer.offsets[i + 1] += layer.offsets[i];
            layer.targets.reserve(e.size());
            for (auto [u, v] : e)
                layer.targets.push_back(ActorId{v});
        }
        for (std::size_t a = 0; a < n; ++a) {
            if (by_actor[a].empty())
                throw InvalidNetwork("actor '" + net.actor_names_[a] + "' is not present in any layer");
            net.actor_layers_.insert(net.actor_layers_.end(), by_actor[a].begin(), by_actor[a].end());
            net.actor_layer_offsets_.push_back(static_cast<std::uint32_t>(net.actor_layers_.size()));
        }
        return net;
    }

private:
    static std::vector<std::uint32_t> sorted_permutation(const std::vector<std::string>& names) {
        std::vector<std::uint32_t> order(names.size());
        for (std::uint32_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::ranges::sort(order, [&](std::uint32_t x, std::uint32_t y) { return names[x] < names[y]; });
        std::vector<std::uint32_t> rank(names.size());
        for (std::uint32_t i = 0; i < order.size(); ++i)
            rank[order[i]] = i;
        return rank;
    }

    std::uint32_t actor_index(std::string_view name) { return intern(actor_lookup_, actor_names_, name); }
    std::uint32_t layer_index(std::string_view name) { return intern(layer_lookup_, layer_names_, name); }

    static std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& lookup, std::vector<std::string>& names,
                                std::string_view name) {
        if (name.empty())
            throw InvalidNetwork("empty identifier");
        auto [it, inserted] = lookup.try_emplace(std::string(name), static_cast<std::uint32_t>(names.size()));
        if (inserted)
            names.emplace_back(name);
        return it->second;
    }

    std::unordered_map<std::string, std::uint32_t> actor_lookup_;
    std::unordered_map<std::string, std::uint32_t> layer_lookup_;
    std::vector<std::string> actor_names_;
    std::vector<std::string> layer_names_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes_;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges_;
};

} // namespace mlnds

#endif // MLNDS_NETWORK_HPP_
