#ifndef MLNDS_SEEDING_HPP_
#define MLNDS_SEEDING_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "domination.hpp"
#include "network.hpp"
#include "rng.hpp"

namespace mlnds {

enum class Method { DegC, DegCD, Nghb1S, NghbSD, Random };

inline constexpr std::array<Method, 5> all_methods{Method::DegC, Method::DegCD, Method::Nghb1S, Method::NghbSD,
                                                   Method::Random};

inline std::string_view to_string(Method m) {
    switch (m) {
    case Method::DegC:
        return "deg-c";
    case Method::DegCD:
        return "deg-cd";
    case Method::Nghb1S:
        return "nghb-1s";
    case Method::NghbSD:
        return "nghb-sd";
    case Method::Random:
        return "random";
    }
    return "?";
}

inline Method parse_method(std::string_view s) {
    for (Method m : all_methods)
        if (to_string(m) == s)
            return m;
    if (s == "deg-c-d")
        return Method::DegCD;
    throw Error("unknown seed selection method '" + std::string(s) + "'");
}

/// A complete ranking of the actors, best first.
struct ActorRanking {
    Method method;
    std::vector<ActorId> order;
};

namespace detail {

/// Descending by score, ascending by actor id.
inline std::vector<ActorId> rank_by_score(const std::vector<std::int64_t>& score) {
    std::vector<ActorId> order(score.size());
    for (std::uint32_t i = 0; i < order.size(); ++i)
        order[i] = ActorId{i};
    std::ranges::stable_sort(order, [&](ActorId a, ActorId b) { return score[a.value] > score[b.value]; });
    return order;
}

/// Repeatedly takes the best-scoring actor; `on_pick` lowers the scores of
/// others through the supplied `lower(actor, by)` callback.
template <class OnPick>
std::vector<ActorId> rank_with_discount(std::vector<std::int64_t> score, OnPick on_pick) {
    const std::size_t n = score.size();
    std::set<std::pair<std::int64_t, std::uint32_t>> queue; // (-score, id)
    for (std::uint32_t a = 0; a < n; ++a)
        queue.emplace(-score[a], a);
    std::vector<char> picked(n, 0);
    std::vector<ActorId> order;
    order.reserve(n);
    auto lower = [&](ActorId a, std::int64_t by) {
        if (picked[a.value] || by == 0)
            return;
        queue.erase({-score[a.value], a.value});
        score[a.value] -= by;
        queue.emplace(-score[a.value], a.value);
    };
    while (!queue.empty()) {
        auto [neg, v] = *queue.begin();
        queue.erase(queue.begin());
        picked[v] = 1;
        order.push_back(ActorId{v});
        on_pick(ActorId{v}, lower);
    }
    return order;
}

} // namespace detail

/// deg-c: summed per-layer degree. nghb-1s: size of the one-hop union.
/// deg-cd: summed degree minus, per layer, the number of already picked
/// neighbours. nghb-sd: one-hop union size excluding picked actors.
/// random: a permutation drawn from `rng`. Ties go to the smaller actor id.
inline ActorRanking rank_actors(const MultilayerNetwork& net, Method method, Rng& rng) {
    const std::size_t n = net.actor_count();
    std::vector<std::int64_t> degree_sum(n, 0);
    for (ActorId a : net.actors())
        for (LayerId l : net.layers_of(a))
            degree_sum[a.value] += static_cast<std::int64_t>(net.adjacent(l, a).size());

    switch (method) {
    case Method::DegC:
        return {method, detail::rank_by_score(degree_sum)};
    case Method::Nghb1S: {
        std::vector<std::int64_t> score(n);
        for (ActorId a : net.actors())
            score[a.value] = static_cast<std::int64_t>(net.one_hop_union(a).size());
        return {method, detail::rank_by_score(score)};
    }
    case Method::DegCD:
        return {method, detail::rank_with_discount(degree_sum, [&](ActorId u, auto& lower) {
                    for (LayerId l : net.layers_of(u))
                        for (ActorId v : net.adjacent(l, u))
                            lower(v, 1);
                })};
    case Method::NghbSD: {
        std::vector<std::int64_t> score(n);
        std::vector<ActorSet> unions;
        unions.reserve(n);
        for (ActorId a : net.actors()) {
            unions.push_back(net.one_hop_union(a));
            score[a.value] = static_cast<std::int64_t>(unions.back().size());
        }
        return {method, detail::rank_with_discount(score, [&](ActorId u, auto& lower) {
                    for (ActorId v : unions[u.value])
                        lower(v, 1);
                })};
    }
    case Method::Random: {
        std::vector<ActorId> order(net.actors().begin(), net.actors().end());
        rng.shuffle(std::span<ActorId>(order));
        return {method, std::move(order)};
    }
    }
    throw Error("unknown seed selection method");
}

enum class SeedOrigin { Baseline, MdsFiltered };

struct SeedSet {
    ActorSet members;
    double budget = 0;
    SeedOrigin origin = SeedOrigin::Baseline;
};

/// floor(s * |A|), tolerant to representation error in s (0.29 * 100 is 28.999...).
inline std::size_t seed_budget(double s, std::size_t n_actors) {
    if (!(s > 0.0 && s < 1.0))
        throw Error("budget fraction must lie in (0, 1)");
    return static_cast<std::size_t>(std::floor(s * static_cast<double>(n_actors) + 1e-9));
}

class BudgetTooSmall : public Error {
public:
    using Error::Error;
};

inline SeedSet select_seeds(const ActorRanking& ranking, const MultilayerNetwork& net, double s) {
    const std::size_t k = seed_budget(s, net.actor_count());
    if (k == 0)
        throw BudgetTooSmall("budget " + std::to_string(s) + " selects no actor out of " +
                             std::to_string(net.actor_count()));
    if (ranking.order.size() != net.actor_count())
        throw Error("ranking does not cover the network");
    std::vector<ActorId> picked(ranking.order.begin(), ranking.order.begin() + static_cast<std::ptrdiff_t>(k));
    return {ActorSet(std::move(picked)), s, SeedOrigin::Baseline};
}

/// The first floor(s*|A|) ranked actors that belong to `mds`; nullopt when
/// the dominating set is smaller than the budget (the run is then excluded).
inline std::optional<SeedSet> select_seeds_mds(const ActorRanking& ranking, const MultilayerNetwork& net, double s,
                                               const DominatingSet& mds) {
    const std::size_t k = seed_budget(s, net.actor_count());
    if (k == 0)
        throw BudgetTooSmall("budget " + std::to_string(s) + " selects no actor out of " +
                             std::to_string(net.actor_count()));
    if (!is_dominating(net, mds))
        throw NotDominating("seed filter set does not dominate the network");
    if (mds.size() < k)
        return std::nullopt;
    std::vector<ActorId> picked;
    for (ActorId a : ranking.order) {
        if (picked.size() == k)
            break;
        if (mds.contains(a))
            picked.push_back(a);
    }
    return SeedSet{ActorSet(std::move(picked)), s, SeedOrigin::MdsFiltered};
}

} // namespace mlnds

#endif // MLNDS_SEEDING_HPP_
