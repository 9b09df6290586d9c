#ifndef MLNDS_TESTS_SUPPORT_HPP_
#define MLNDS_TESTS_SUPPORT_HPP_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <mlnds/mlnds.hpp>

namespace testing_support {

using namespace mlnds;

inline MultilayerNetwork net_from(std::string_view text) { return load_multiplex(text); }

inline ActorSet ids(const MultilayerNetwork& net, std::initializer_list<const char*> names) {
    std::vector<ActorId> out;
    for (const char* n : names)
        out.push_back(net.actor(n));
    return ActorSet(std::move(out));
}

inline std::set<std::string> names(const MultilayerNetwork& net, const ActorSet& s) {
    std::set<std::string> out;
    for (ActorId a : s)
        out.insert(net.actor_name(a));
    return out;
}

/// Random multilayer network: each actor joins each layer with probability
/// `presence`, each pair of co-present actors is linked with probability
/// `density`. Actors left without any layer get one at random.
inline MultilayerNetwork random_network(Rng& rng, std::size_t actors, std::size_t layers, double density,
                                        double presence = 0.85) {
    NetworkBuilder b;
    std::vector<std::vector<bool>> in(layers, std::vector<bool>(actors, false));
    auto actor = [](std::size_t i) { return "v" + std::to_string(100 + i); };
    auto layer = [](std::size_t l) { return "L" + std::to_string(l); };
    for (std::size_t a = 0; a < actors; ++a) {
        bool any = false;
        for (std::size_t l = 0; l < layers; ++l)
            if (rng.uniform() < presence) {
                in[l][a] = true;
                any = true;
            }
        if (!any)
            in[rng.index(layers)][a] = true;
    }
    for (std::size_t l = 0; l < layers; ++l) {
        b.add_layer(layer(l));
        for (std::size_t a = 0; a < actors; ++a)
            if (in[l][a])
                b.add_node(layer(l), actor(a));
        for (std::size_t a = 0; a < actors; ++a)
            for (std::size_t c = a + 1; c < actors; ++c)
                if (in[l][a] && in[l][c] && rng.uniform() < density)
                    b.add_edge(layer(l), actor(a), actor(c));
    }
    return b.build();
}

/// Domination check written directly from the definition over edge lists,
/// independent of the library's adjacency and coverage code.
inline bool oracle_dominating(const MultilayerNetwork& net, const std::set<std::uint32_t>& d) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, bool> covered; // (layer, actor)
    for (LayerId l : net.layers())
        for (ActorId a : net.layer_actors(l))
            covered[{l.value, a.value}] = false;
    for (LayerId l : net.layers())
        for (auto [u, v] : net.edges(l)) {
            if (d.count(u.value))
                covered[{l.value, v.value}] = true;
            if (d.count(v.value))
                covered[{l.value, u.value}] = true;
        }
    for (auto [key, ok] : covered)
        if (!ok && !d.count(key.second))
            return false;
    return true;
}

inline bool oracle_dominating(const MultilayerNetwork& net, const ActorSet& d) {
    std::set<std::uint32_t> s;
    for (ActorId a : d)
        s.insert(a.value);
    return oracle_dominating(net, s);
}

/// Smallest dominating set size by trying every subset (n <= 20).
inline std::size_t oracle_minimum_size(const MultilayerNetwork& net) {
    const std::size_t n = net.actor_count();
    std::size_t best = n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::size_t k = static_cast<std::size_t>(std::popcount(mask));
        if (k >= best)
            continue;
        std::set<std::uint32_t> d;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                d.insert(i);
        if (oracle_dominating(net, d))
            best = k;
    }
    return best;
}

inline bool single_removal_minimal(const MultilayerNetwork& net, const ActorSet& d) {
    for (ActorId a : d) {
        ActorSet smaller = d;
        smaller.erase(a);
        if (oracle_dominating(net, smaller))
            return false;
    }
    return true;
}

inline constexpr std::string_view path5 = "edge l1 v1 v2\nedge l1 v2 v3\nedge l1 v3 v4\nedge l1 v4 v5\n";
inline constexpr std::string_view star5 = "edge l1 c x1\nedge l1 c x2\nedge l1 c x3\nedge l1 c x4\n";
// T1: l1 edges (a1,a2),(a2,a3); l2 edge (a1,a2); a3 only in l1.
inline constexpr std::string_view t1 = "edge l1 a1 a2\nedge l1 a2 a3\nedge l2 a1 a2\n";

} // namespace testing_support

#endif // MLNDS_TESTS_SUPPORT_HPP_
