#ifndef MLNDS_DOMINATION_HPP_
#define MLNDS_DOMINATION_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "network.hpp"
#include "rng.hpp"

namespace mlnds {

using DominatingSet = ActorSet;

class NotDominating : public Error {
public:
    using Error::Error;
};

/// Every actor is a member, or in every layer where it is represented its
/// node is adjacent to a member's node. A node isolated in some layer can
/// only be covered by its actor's membership.
inline bool is_dominating(const MultilayerNetwork& net, const ActorSet& candidate) {
    std::vector<char> member(net.actor_count(), 0);
    for (ActorId a : candidate) {
        if (a.value >= net.actor_count())
            throw UnknownActor("candidate actor id " + std::to_string(a.value) + " out of range");
        member[a.value] = 1;
    }
    for (ActorId a : net.actors()) {
        if (member[a.value])
            continue;
        for (LayerId l : net.layers_of(a)) {
            auto n = net.adjacent(l, a);
            if (std::ranges::none_of(n, [&](ActorId b) { return member[b.value] != 0; }))
                return false;
        }
    }
    return true;
}

/// Per layer: dominator -> actors whose node in that layer it covers
/// (itself plus its neighbours there).
struct DominationMap {
    std::vector<std::map<ActorId, ActorSet>> layers;

    const std::map<ActorId, ActorSet>& in(LayerId l) const { return layers.at(l.value); }
    friend bool operator==(const DominationMap&, const DominationMap&) = default;
};

inline DominationMap compute_domination(const MultilayerNetwork& net, const ActorSet& d) {
    DominationMap out;
    out.layers.resize(net.layer_count());
    for (ActorId a : d)
        for (LayerId l : net.layers_of(a)) {
            std::vector<ActorId> covered(net.adjacent(l, a).begin(), net.adjacent(l, a).end());
            covered.push_back(a);
            out.layers[l.value].emplace(a, ActorSet(std::move(covered)));
        }
    return out;
}

/// Actors outside d that cover every node exclusively dominated by `a`
/// (covered by `a` and by no other member in that layer).
inline ActorSet find_replacement_candidates(const MultilayerNetwork& net, ActorId a, const ActorSet& d,
                                            const DominationMap& dom) {
    if (!d.contains(a))
        throw Error("actor '" + net.actor_name(a) + "' is not in the dominating set");
    std::vector<std::pair<LayerId, ActorId>> exclusive;
    for (LayerId l : net.layers()) {
        const auto& layer = dom.in(l);
        auto own = layer.find(a);
        if (own == layer.end())
            continue;
        for (ActorId x : own->second) {
            bool shared = false;
            for (const auto& [other, covered] : layer)
                if (other != a && covered.contains(x)) {
                    shared = true;
                    break;
                }
            if (!shared)
                exclusive.emplace_back(l, x);
        }
    }
    std::vector<ActorId> out;
    for (ActorId c : net.actors()) {
        if (d.contains(c))
            continue;
        bool covers_all = std::ranges::all_of(exclusive, [&](const auto& node) {
            auto [l, x] = node;
            if (c == x)
                return true;
            return net.present_unchecked(l, c) && std::ranges::binary_search(net.adjacent(l, x), c);
        });
        if (covers_all)
            out.push_back(c);
    }
    return ActorSet(std::move(out));
}

namespace detail {

/// Incremental coverage bookkeeping for a candidate set.
///
/// count(l, y) is the number of members covering node (y, l); private_(x)
/// is the number of nodes member x covers alone. A member is redundant iff
/// it covers nothing alone. Every write is journalled so a trial move can
/// be rolled back.
class Coverage {
public:
    Coverage(const MultilayerNetwork& net, const ActorSet& initial)
        : net_(&net), n_(net.actor_count()), count_(net.actor_count() * net.layer_count(), 0),
          member_(net.actor_count(), 0), private_(net.actor_count(), 0), uncovered_(net.node_count()) {
        for (ActorId a : initial)
            add(a);
        journal_.clear();
    }

    bool dominating() const noexcept { return uncovered_ == 0; }
    std::size_t size() const noexcept { return size_; }
    bool member(ActorId a) const noexcept { return member_[a.value] != 0; }
    bool redundant(ActorId a) const noexcept { return member(a) && private_[a.value] == 0; }

    std::vector<ActorId> members() const {
        std::vector<ActorId> out;
        out.reserve(size_);
        for (std::uint32_t a = 0; a < n_; ++a)
            if (member_[a])
                out.push_back(ActorId{a});
        return out;
    }

    void add(ActorId x) {
        write(member_[x.value], 1);
        write(size_, size_ + 1);
        for (LayerId l : net_->layers_of(x)) {
            touch_add(l, x, x);
            for (ActorId y : net_->adjacent(l, x))
                touch_add(l, y, x);
        }
    }

    void remove(ActorId x) {
        write(member_[x.value], 0);
        write(size_, size_ - 1);
        for (LayerId l : net_->layers_of(x)) {
            touch_remove(l, x);
            for (ActorId y : net_->adjacent(l, x))
                touch_remove(l, y);
        }
        write(private_[x.value], 0);
    }

    /// Non-members covering every node that `a` covers alone.
    std::vector<ActorId> replacement_candidates(ActorId a) const {
        std::vector<std::pair<LayerId, ActorId>> exclusive;
        for (LayerId l : net_->layers_of(a)) {
            if (count(l, a) == 1)
                exclusive.emplace_back(l, a);
            for (ActorId y : net_->adjacent(l, a))
                if (count(l, y) == 1)
                    exclusive.emplace_back(l, y);
        }
        std::vector<ActorId> out;
        if (exclusive.empty()) {
            for (std::uint32_t c = 0; c < n_; ++c)
                if (!member_[c])
                    out.push_back(ActorId{c});
            return out;
        }
        auto [l0, y0] = exclusive.front();
        auto seed = net_->adjacent(l0, y0);
        auto covers = [&](ActorId c) {
            for (auto [l, y] : exclusive)
                if (c != y && !(net_->present_unchecked(l, c) && std::ranges::binary_search(net_->adjacent(l, y), c)))
                    return false;
            return true;
        };
        if (!member(y0) && covers(y0))
            out.push_back(y0);
        for (ActorId c : seed)
            if (!member(c) && covers(c))
                out.push_back(c);
        std::ranges::sort(out);
        return out;
    }

    std::size_t mark() const noexcept { return journal_.size(); }
    void commit() { journal_.clear(); }
    void rollback(std::size_t to) {
        while (journal_.size() > to) {
            auto [slot, old] = journal_.back();
            *slot = old;
            journal_.pop_back();
        }
    }

private:
    std::uint32_t count(LayerId l, ActorId y) const noexcept { return count_[l.value * n_ + y.value]; }

    void write(std::uint32_t& slot, std::size_t value) {
        journal_.emplace_back(&slot, slot);
        slot = static_cast<std::uint32_t>(value);
    }

    /// The single member covering (y, l); call only when count(l, y) == 1.
    ActorId sole_coverer(LayerId l, ActorId y) const {
        if (member(y))
            return y;
        for (ActorId z : net_->adjacent(l, y))
            if (member(z))
                return z;
        return y;
    }

    void touch_add(LayerId l, ActorId y, ActorId by) {
        std::uint32_t& c = count_[l.value * n_ + y.value];
        if (c == 0) {
            write(uncovered_, uncovered_ - 1);
            write(private_[by.value], private_[by.value] + 1);
        } else if (c == 1) {
            // The previous sole coverer is the only other member over (y, l).
            ActorId prev = y;
            if (y == by || !member(y)) {
                for (ActorId z : net_->adjacent(l, y))
                    if (z != by && member(z)) {
                        prev = z;
                        break;
                    }
            }
            write(private_[prev.value], private_[prev.value] - 1);
        }
        write(c, c + 1);
    }

    void touch_remove(LayerId l, ActorId y) {
        std::uint32_t& c = count_[l.value * n_ + y.value];
        write(c, c - 1);
        if (c == 0) {
            write(uncovered_, uncovered_ + 1);
        } else if (c == 1) {
            ActorId z = sole_coverer(l, y);
            write(private_[z.value], private_[z.value] + 1);
        }
    }

    const MultilayerNetwork* net_;
    std::size_t n_;
    std::vector<std::uint32_t> count_;
    std::vector<std::uint32_t> member_;
    std::vector<std::uint32_t> private_;
    std::uint32_t uncovered_;
    std::uint32_t size_ = 0;
    std::vector<std::pair<std::uint32_t*, std::uint32_t>> journal_;
};

inline void require_dominating(const MultilayerNetwork& net, const ActorSet& d) {
    if (!is_dominating(net, d))
        throw NotDominating("input set does not dominate the network");
}

/// Shuffled single pass removing members that cover nothing alone.
inline void prune_redundant(Coverage& cov, Rng& rng) {
    std::vector<ActorId> candidates;
    for (ActorId a : cov.members())
        if (cov.redundant(a))
            candidates.push_back(a);
    rng.shuffle(std::span<ActorId>(candidates));
    // Removals only ever raise other members' private counts, so members
    // that were needed before stay needed.
    for (ActorId a : candidates)
        if (cov.redundant(a))
            cov.remove(a);
}

} // namespace detail

/// Greedy construction: force actors isolated in any of their layers, then
/// repeatedly add the actor covering the most uncovered (actor, layer)
/// nodes. Ties go to the earlier actor in a random permutation.
inline DominatingSet greedy_dominating_set(const MultilayerNetwork& net, Rng& rng) {
    const std::size_t n = net.actor_count();
    std::vector<ActorId> order(net.actors().begin(), net.actors().end());
    rng.shuffle(std::span<ActorId>(order));
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t i = 0; i < n; ++i)
        rank[order[i].value] = i;

    std::vector<char> covered(n * net.layer_count(), 0);
    std::vector<char> chosen(n, 0);
    std::vector<std::int64_t> gain(n, 0);
    for (ActorId a : net.actors())
        for (LayerId l : net.layers_of(a))
            gain[a.value] += 1 + static_cast<std::int64_t>(net.adjacent(l, a).size());

    std::vector<ActorId> out;
    auto cover = [&](LayerId l, ActorId y) {
        char& c = covered[l.value * n + y.value];
        if (c)
            return;
        c = 1;
        --gain[y.value];
        for (ActorId z : net.adjacent(l, y))
            --gain[z.value];
    };
    auto choose = [&](ActorId x) {
        chosen[x.value] = 1;
        out.push_back(x);
        for (LayerId l : net.layers_of(x)) {
            cover(l, x);
            for (ActorId y : net.adjacent(l, x))
                cover(l, y);
        }
    };

    for (ActorId a : net.actors())
        for (LayerId l : net.layers_of(a))
            if (net.adjacent(l, a).empty()) {
                choose(a);
                break;
            }

    using Entry = std::tuple<std::int64_t, std::int64_t, std::uint32_t>; // gain, -rank, actor
    std::priority_queue<Entry> heap;
    for (ActorId a : net.actors())
        if (!chosen[a.value] && gain[a.value] > 0)
            heap.emplace(gain[a.value], -static_cast<std::int64_t>(rank[a.value]), a.value);
    while (!heap.empty()) {
        auto [g, neg_rank, v] = heap.top();
        heap.pop();
        if (chosen[v] || gain[v] <= 0)
            continue;
        if (g != gain[v]) {
            heap.emplace(gain[v], neg_rank, v);
            continue;
        }
        choose(ActorId{v});
    }
    return ActorSet(std::move(out));
}

/// Removes, in shuffled order, every member whose removal keeps the set
/// dominating. The result is minimal.
inline DominatingSet remove_redundant(const MultilayerNetwork& net, const DominatingSet& d, Rng& rng) {
    detail::require_dominating(net, d);
    detail::Coverage cov(net, d);
    std::vector<ActorId> order = cov.members();
    rng.shuffle(std::span<ActorId>(order));
    for (ActorId a : order)
        if (cov.redundant(a))
            cov.remove(a);
    return ActorSet(cov.members());
}

struct ImprovementStats {
    std::size_t initial_size = 0;
    std::size_t improvements = 0;
    std::size_t swaps_tried = 0;
    bool timed_out = false;
};

/// Swap-based local improvement of a dominating set.
///
/// Redundant members of `d0` are pruned first, so the result is minimal
/// even when no swap is accepted. Each round walks the members in random order; for each member it tries
/// the actors able to take over everything that member covers alone (also
/// in random order), swaps one in, prunes redundant members and accepts
/// the result only when strictly smaller. After an acceptance the round
/// restarts. Stops when a full round yields nothing, or keeps the current
/// best once `timeout` has elapsed (checked at the start of each round).
inline DominatingSet local_improvement(const MultilayerNetwork& net, const DominatingSet& d0, Rng& rng,
                                       std::chrono::milliseconds timeout, ImprovementStats& stats) {
    detail::require_dominating(net, d0);
    const auto start = std::chrono::steady_clock::now();
    stats = ImprovementStats{};
    stats.initial_size = d0.size();

    detail::Coverage cov(net, d0);
    detail::prune_redundant(cov, rng);
    cov.commit();
    bool improved = true;
    while (improved) {
        improved = false;
        if (std::chrono::steady_clock::now() - start > timeout) {
            stats.timed_out = true;
            break;
        }
        std::vector<ActorId> members = cov.members();
        rng.shuffle(std::span<ActorId>(members));
        for (ActorId out : members) {
            std::vector<ActorId> candidates = cov.replacement_candidates(out);
            rng.shuffle(std::span<ActorId>(candidates));
            const std::size_t old_size = cov.size();
            for (ActorId in : candidates) {
                ++stats.swaps_tried;
                const std::size_t mark = cov.mark();
                cov.remove(out);
                cov.add(in);
                if (cov.dominating()) {
                    detail::prune_redundant(cov, rng);
                    if (cov.size() < old_size) {
                        cov.commit();
                        ++stats.improvements;
                        improved = true;
                        break;
                    }
                }
                cov.rollback(mark);
            }
            if (improved)
                break;
        }
    }
    return ActorSet(cov.members());
}

inline DominatingSet local_improvement(const MultilayerNetwork& net, const DominatingSet& d0, Rng& rng,
                                       std::chrono::milliseconds timeout) {
    ImprovementStats stats;
    return local_improvement(net, d0, rng, timeout, stats);
}

/// 5 minutes of refinement per 1000 actors.
inline std::chrono::milliseconds default_improvement_timeout(std::size_t n_actors, double minutes_per_1000 = 5.0) {
    return std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(minutes_per_1000 * 60'000.0 * n_actors / 1000.0)));
}

struct MdsResult {
    DominatingSet initial; // greedy D'
    DominatingSet mds;     // after local improvement
    ImprovementStats stats;
};

/// Greedy construction followed by local improvement.
inline MdsResult find_mds(const MultilayerNetwork& net, Rng& rng, std::chrono::milliseconds timeout) {
    MdsResult r;
    r.initial = greedy_dominating_set(net, rng);
    r.mds = local_improvement(net, r.initial, rng, timeout, r.stats);
    return r;
}

/// Exhaustive search by increasing cardinality; the first hit in
/// lexicographic order of actor ids is returned.
inline std::optional<DominatingSet> minimum_ds_bruteforce(const MultilayerNetwork& net, std::size_t size_cap) {
    const std::size_t n = net.actor_count();
    if (size_cap > n)
        throw Error("size cap exceeds the number of actors");
    const std::size_t words = (n + 63) / 64;
    // For each actor, one mask per represented layer: its neighbours there.
    std::vector<std::vector<std::vector<std::uint64_t>>> masks(n);
    for (ActorId a : net.actors())
        for (LayerId l : net.layers_of(a)) {
            std::vector<std::uint64_t> m(words, 0);
            for (ActorId b : net.adjacent(l, a))
                m[b.value / 64] |= std::uint64_t{1} << (b.value % 64);
            masks[a.value].push_back(std::move(m));
        }
    std::vector<std::uint64_t> chosen(words, 0);
    auto dominated = [&]() {
        for (std::size_t a = 0; a < n; ++a) {
            if (chosen[a / 64] >> (a % 64) & 1)
                continue;
            for (const auto& m : masks[a]) {
                bool hit = false;
                for (std::size_t w = 0; w < words && !hit; ++w)
                    hit = (m[w] & chosen[w]) != 0;
                if (!hit)
                    return false;
            }
        }
        return true;
    };

    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k <= size_cap; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (true) {
            std::ranges::fill(chosen, 0);
            for (auto i : idx)
                chosen[i / 64] |= std::uint64_t{1} << (i % 64);
            if (dominated()) {
                std::vector<ActorId> out;
                for (auto i : idx)
                    out.push_back(ActorId{static_cast<std::uint32_t>(i)});
                return ActorSet(std::move(out));
            }
            // Next combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

/// Summary of a batch of dominating sets drawn for one network.
struct MdsStats {
    double size_min = 0;
    double size_max = 0;
    double size_mean = 0;
    double size_stdev = 0;
    std::size_t unique_count = 0;
    std::size_t total_count = 0;
    std::optional<double> avg_pairwise_iou;
    std::optional<double> entropy_bits;
    double reduction_mean = 0;
    double reduction_stdev = 0;
};

inline double jaccard(const ActorSet& x, const ActorSet& y) {
    if (x.empty() && y.empty())
        return 1.0;
    std::size_t common = 0;
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(x.size() + y.size() - common);
}

namespace detail {

inline std::pair<double, double> mean_stdev(const std::vector<double>& xs) {
    double mean = 0;
    for (double x : xs)
        mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0;
    for (double x : xs)
        var += (x - mean) * (x - mean);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

} // namespace detail

/// Sizes are fractions of n_actors; stdevs are population stdevs. IoU and
/// entropy are left empty when all sets are identical.
inline MdsStats mds_statistics(const std::vector<DominatingSet>& sets, const std::vector<std::size_t>& greedy_sizes,
                               std::size_t n_actors) {
    if (sets.empty())
        throw Error("mds_statistics needs at least one set");
    if (sets.size() != greedy_sizes.size())
        throw Error("sets and greedy sizes differ in length");
    if (n_actors == 0)
        throw Error("n_actors must be positive");
    MdsStats s;
    s.total_count = sets.size();

    std::vector<double> sizes, reductions;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        sizes.push_back(static_cast<double>(sets[i].size()) / static_cast<double>(n_actors));
        double g = static_cast<double>(greedy_sizes[i]);
        reductions.push_back(g > 0 ? (g - static_cast<double>(sets[i].size())) / g : 0.0);
    }
    s.size_min = *std::ranges::min_element(sizes);
    s.size_max = *std::ranges::max_element(sizes);
    std::tie(s.size_mean, s.size_stdev) = detail::mean_stdev(sizes);
    std::tie(s.reduction_mean, s.reduction_stdev) = detail::mean_stdev(reductions);

    s.unique_count = std::set<ActorSet>(sets.begin(), sets.end()).size();
    if (s.unique_count > 1) {
        double total = 0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                total += jaccard(sets[i], sets[j]);
                ++pairs;
            }
        s.avg_pairwise_iou = total / static_cast<double>(pairs);

        std::map<ActorId, std::size_t> occurrences;
        std::size_t all = 0;
        for (const auto& set : sets)
            for (ActorId a : set) {
                ++occurrences[a];
                ++all;
            }
        double h = 0;
        for (const auto& [a, c] : occurrences) {
            double p = static_cast<double>(c) / static_cast<double>(all);
            h -= p * std::log2(p);
        }
        s.entropy_bits = h;
    }
    return s;
}

} // namespace mlnds

#endif // MLNDS_DOMINATION_HPP_
