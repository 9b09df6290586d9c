#ifndef MLNDS_MLTM_HPP_
#define MLNDS_MLTM_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "network.hpp"

namespace mlnds {

enum class Protocol { And, Or };

inline std::string_view to_string(Protocol p) { return p == Protocol::And ? "AND" : "OR"; }

inline Protocol parse_protocol(std::string_view s) {
    if (s == "AND" || s == "and")
        return Protocol::And;
    if (s == "OR" || s == "or")
        return Protocol::Or;
    throw Error("unknown protocol '" + std::string(s) + "'");
}

/// Linear threshold parameters. A node receives positive input when its
/// active-neighbour fraction reaches mu (or exceeds it, with strict_threshold).
struct DiffusionParams {
    double mu = 0.5;
    Protocol protocol = Protocol::And;
    bool strict_threshold = false;
};

inline void validate(const DiffusionParams& p) {
    if (!(p.mu > 0.0 && p.mu < 1.0))
        throw Error("threshold mu must lie in (0, 1)");
}

namespace detail {

inline bool reaches(std::size_t active, std::size_t degree, const DiffusionParams& p) {
    if (degree == 0)
        return false;
    // Division rounds correctly, so an exact decimal ratio compares equal to the
    // literal mu it matches.
    double ratio = static_cast<double>(active) / static_cast<double>(degree);
    return p.strict_threshold ? ratio > p.mu : ratio >= p.mu;
}

} // namespace detail

inline bool node_positive_input(const MultilayerNetwork& net, LayerId l, ActorId a, const ActorSet& active,
                                double mu, bool strict_threshold = false) {
    auto n = net.neighbours(l, a);
    std::size_t on = 0;
    for (ActorId b : n)
        on += active.contains(b);
    return detail::reaches(on, n.size(), DiffusionParams{mu, Protocol::And, strict_threshold});
}

/// AND: positive input in every layer the actor is represented in; OR: in at least one.
inline bool actor_activates(const MultilayerNetwork& net, ActorId a, const ActorSet& active,
                            const DiffusionParams& params) {
    for (LayerId l : net.layers_of(a)) {
        bool positive = node_positive_input(net, l, a, active, params.mu, params.strict_threshold);
        if (params.protocol == Protocol::Or && positive)
            return true;
        if (params.protocol == Protocol::And && !positive)
            return false;
    }
    return params.protocol == Protocol::And;
}

/// One synchronous update: every inactive actor is evaluated against `active`.
inline ActorSet step(const MultilayerNetwork& net, const ActorSet& active, const DiffusionParams& params) {
    std::vector<ActorId> next = active.items();
    for (ActorId a : net.actors())
        if (!active.contains(a) && actor_activates(net, a, active, params))
            next.push_back(a);
    return ActorSet(std::move(next));
}

/// Activation history S_0 ⊆ S_1 ⊆ ... ⊆ S_T, stored as per-actor activation
/// times. S_T is the fixpoint; no state repeats.
class SpreadTrace {
public:
    static constexpr std::int32_t never = -1;

    SpreadTrace(std::vector<std::int32_t> activated_at, std::vector<std::size_t> sizes)
        : activated_at_(std::move(activated_at)), sizes_(std::move(sizes)) {}

    std::size_t actor_count() const noexcept { return activated_at_.size(); }
    /// Number of steps T.
    std::size_t steps() const noexcept { return sizes_.size() - 1; }
    /// |S_t| for t = 0..T.
    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    std::size_t seed_count() const noexcept { return sizes_.front(); }
    std::size_t final_count() const noexcept { return sizes_.back(); }
    /// Step at which each actor turned active, or `never`.
    const std::vector<std::int32_t>& activated_at() const noexcept { return activated_at_; }
    /// Seeds cover every actor; gain and area are then reported as 0.
    bool seeds_cover_all() const noexcept { return seed_count() == actor_count(); }

    ActorSet state(std::size_t t) const {
        std::vector<ActorId> out;
        for (std::uint32_t a = 0; a < activated_at_.size(); ++a)
            if (activated_at_[a] != never && static_cast<std::size_t>(activated_at_[a]) <= t)
                out.push_back(ActorId{a});
        return ActorSet(std::move(out));
    }

private:
    std::vector<std::int32_t> activated_at_;
    std::vector<std::size_t> sizes_;
};

/// Runs synchronous updates from the seed set until nothing changes.
/// Only neighbours of actors activated in the previous step are re-evaluated.
inline SpreadTrace simulate(const MultilayerNetwork& net, const ActorSet& seeds, const DiffusionParams& params) {
    validate(params);
    if (seeds.empty())
        throw Error("simulation needs a non-empty seed set");
    const std::size_t n = net.actor_count();
    const std::size_t layers = net.layer_count();
    std::vector<std::int32_t> at(n, SpreadTrace::never);
    std::vector<std::uint32_t> active_nbrs(n * layers, 0);
    std::vector<std::size_t> sizes;
    std::vector<ActorId> frontier;
    for (ActorId s : seeds) {
        if (s.value >= n)
            throw UnknownActor("seed id out of range");
        at[s.value] = 0;
        frontier.push_back(s);
    }
    sizes.push_back(frontier.size());

    std::vector<char> queued(n, 0);
    std::vector<ActorId> touched, fresh;
    for (std::int32_t t = 1;; ++t) {
        touched.clear();
        for (ActorId a : frontier)
            for (LayerId l : net.layers_of(a))
                for (ActorId b : net.adjacent(l, a)) {
                    ++active_nbrs[l.value * n + b.value];
                    if (at[b.value] == SpreadTrace::never && !queued[b.value]) {
                        queued[b.value] = 1;
                        touched.push_back(b);
                    }
                }
        fresh.clear();
        for (ActorId b : touched) {
            queued[b.value] = 0;
            bool any = false;
            bool all = true;
            for (LayerId l : net.layers_of(b)) {
                bool positive = detail::reaches(active_nbrs[l.value * n + b.value], net.adjacent(l, b).size(), params);
                any = any || positive;
                all = all && positive;
            }
            if (params.protocol == Protocol::Or ? any : all)
                fresh.push_back(b);
        }
        if (fresh.empty())
            break;
        for (ActorId b : fresh)
            at[b.value] = t;
        sizes.push_back(sizes.back() + fresh.size());
        frontier.swap(fresh);
    }
    return SpreadTrace(std::move(at), std::move(sizes));
}

/// Fraction of initially inactive actors that end up active.
inline double gamma(const SpreadTrace& trace) {
    if (trace.seeds_cover_all())
        return 0.0;
    return static_cast<double>(trace.final_count() - trace.seed_count()) /
           static_cast<double>(trace.actor_count() - trace.seed_count());
}

/// Trapezoidal area under the activation curve with time scaled to [0, 1]
/// and activations scaled by the number of initially inactive actors.
inline double lambda(const SpreadTrace& trace) {
    const std::size_t T = trace.steps();
    if (T == 0 || trace.seeds_cover_all())
        return 0.0;
    const double base = static_cast<double>(trace.seed_count());
    const double span = static_cast<double>(trace.actor_count()) - base;
    const auto& sizes = trace.sizes();
    double area = 0.0;
    double prev = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        double y = (static_cast<double>(sizes[t]) - base) / span;
        area += 0.5 * (prev + y) / static_cast<double>(T);
        prev = y;
    }
    return area;
}

} // namespace mlnds

#endif // MLNDS_MLTM_HPP_
