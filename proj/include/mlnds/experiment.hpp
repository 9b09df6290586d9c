#ifndef MLNDS_EXPERIMENT_HPP_
#define MLNDS_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "domination.hpp"
#include "generators.hpp"
#include "io/multiplex.hpp"
#include "io/plan.hpp"
#include "io/records.hpp"
#include "mltm.hpp"
#include "rng.hpp"
#include "seeding.hpp"

namespace mlnds {

/// Worker count: MLNDS_THREADS if set and positive, else hardware concurrency.
inline std::size_t default_thread_count() {
    if (const char* env = std::getenv("MLNDS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on `threads` workers.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                body(i);
        });
    for (auto& th : pool)
        th.join();
}

/// Materializes one instance of a network entry. Generator instances use
/// the configured seed mixed with the instance index.
inline MultilayerNetwork instantiate(const NetworkSpec& spec, std::size_t instance) {
    return std::visit(
        [&](const auto& src) -> MultilayerNetwork {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, NetworkFile>) {
                return load_multiplex_file(src.path);
            } else {
                T config = src;
                config.rng_seed = derive_seed(src.rng_seed, {instance});
                if constexpr (std::is_same_v<T, ErGenConfig>)
                    return generate_er(config);
                else
                    return generate_pa(config);
            }
        },
        spec.source);
}

struct GridResult {
    std::vector<RunRecord> records;
    std::vector<SeedRow> seeds;
    std::vector<MdsRow> mds;
    std::vector<NetworkRow> networks;
    std::vector<std::string> errors;
};

namespace detail {

enum : std::uint64_t { salt_mds = 1, salt_ranking = 2 };

inline std::uint64_t cell_seed(std::uint64_t base, const std::string& network, std::size_t instance,
                               Protocol protocol, double budget, std::size_t repetition, std::uint64_t salt,
                               std::uint64_t extra = 0) {
    return derive_seed(base, {hash_string(network), instance, static_cast<std::uint64_t>(protocol),
                              std::bit_cast<std::uint64_t>(budget), repetition, salt, extra});
}

inline std::vector<std::string> names_of(const MultilayerNetwork& net, const ActorSet& set) {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (ActorId a : set)
        out.push_back(net.actor_name(a));
    return out;
}

} // namespace detail

/// Executes the full grid.
///
/// One dominating set is drawn per (network instance, protocol, budget,
/// repetition) and shared by all methods and thresholds of that cell; its
/// seed is derived from base_rng_seed and that key. Random rankings are
/// drawn independently for the baseline and MDS-filtered variants. Output
/// order is canonical (plan order), so results do not depend on the
/// thread count. Failing cells are reported in `errors` and produce no rows.
inline GridResult run_grid(const ExperimentPlan& plan, std::size_t threads = default_thread_count()) {
    validate(plan);
    GridResult result;

    struct Instance {
        std::size_t spec;
        std::size_t index;
        std::shared_ptr<const MultilayerNetwork> net;
        std::string error;
    };
    std::vector<Instance> instances;
    for (std::size_t s = 0; s < plan.networks.size(); ++s)
        for (std::size_t i = 0; i < plan.networks[s].instances; ++i)
            instances.push_back({s, i, nullptr, {}});
    parallel_for(instances.size(), threads, [&](std::size_t k) {
        auto& inst = instances[k];
        try {
            inst.net = std::make_shared<const MultilayerNetwork>(instantiate(plan.networks[inst.spec], inst.index));
        } catch (const std::exception& e) {
            inst.error = plan.networks[inst.spec].name + " instance " + std::to_string(inst.index) + ": " + e.what();
        }
    });
    for (const auto& inst : instances) {
        if (!inst.net) {
            result.errors.push_back(inst.error);
            continue;
        }
        const auto& spec = plan.networks[inst.spec];
        result.networks.push_back({spec.name, spec.type, inst.index, inst.net->actor_count(),
                                   inst.net->layer_count(), inst.net->edge_count()});
    }

    struct Cell {
        std::size_t instance;
        std::size_t protocol;
        std::size_t budget;
        std::size_t repetition;
    };
    std::vector<Cell> cells;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        if (!instances[k].net)
            continue;
        for (std::size_t p = 0; p < plan.protocols.size(); ++p)
            for (std::size_t b = 0; b < plan.budgets.size(); ++b)
                for (std::size_t r = 0; r < plan.repetitions; ++r)
                    cells.push_back({k, p, b, r});
    }

    // Sort key: (instance, protocol, mu, budget, method, repetition, variant).
    using Order = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, bool>;
    struct CellOutput {
        std::vector<std::pair<Order, RunRecord>> records;
        std::vector<SeedRow> seeds;
        std::optional<MdsRow> mds;
        std::string error;
    };
    std::vector<CellOutput> outputs(cells.size());

    parallel_for(cells.size(), threads, [&](std::size_t c) {
        const Cell& cell = cells[c];
        const Instance& inst = instances[cell.instance];
        const MultilayerNetwork& net = *inst.net;
        const std::string& name = plan.networks[inst.spec].name;
        const Protocol protocol = plan.protocols[cell.protocol];
        const double budget = plan.budgets[cell.budget];
        CellOutput& out = outputs[c];
        try {
            Rng mds_rng(detail::cell_seed(plan.base_rng_seed, name, inst.index, protocol, budget, cell.repetition,
                                          detail::salt_mds));
            const auto timeout =
                default_improvement_timeout(net.actor_count(), plan.mds_timeout_minutes_per_1000_actors);
            MdsResult mds = find_mds(net, mds_rng, timeout);
            out.mds = MdsRow{name,
                             inst.index,
                             protocol,
                             budget,
                             cell.repetition,
                             mds.initial.size(),
                             mds.stats.timed_out,
                             detail::names_of(net, mds.mds)};

            for (std::size_t m = 0; m < plan.methods.size(); ++m) {
                const Method method = plan.methods[m];
                auto ranking_for = [&](bool filtered) {
                    Rng rng(detail::cell_seed(plan.base_rng_seed, name, inst.index, protocol, budget,
                                              cell.repetition, detail::salt_ranking,
                                              static_cast<std::uint64_t>(method) * 2 + (filtered ? 1 : 0)));
                    return rank_actors(net, method, rng);
                };
                const ActorRanking base_ranking = ranking_for(false);
                const ActorRanking mds_ranking = method == Method::Random ? ranking_for(true) : base_ranking;
                const SeedSet base_seeds = select_seeds(base_ranking, net, budget);
                const std::optional<SeedSet> mds_seeds = select_seeds_mds(mds_ranking, net, budget, mds.mds);

                out.seeds.push_back({name, inst.index, protocol, budget, cell.repetition, method, false, RunStatus::Ok,
                                     detail::names_of(net, base_seeds.members)});
                out.seeds.push_back({name, inst.index, protocol, budget, cell.repetition, method, true,
                                     mds_seeds ? RunStatus::Ok : RunStatus::MdsTooSmall,
                                     mds_seeds ? detail::names_of(net, mds_seeds->members)
                                               : std::vector<std::string>{}});

                for (std::size_t t = 0; t < plan.thresholds.size(); ++t) {
                    const DiffusionParams params{plan.thresholds[t], protocol, false};
                    RunRecord rec;
                    rec.network = name;
                    rec.instance = inst.index;
                    rec.method = method;
                    rec.protocol = protocol;
                    rec.mu = params.mu;
                    rec.budget = budget;
                    rec.repetition = cell.repetition;

                    const SpreadTrace base_trace = simulate(net, base_seeds.members, params);
                    RunRecord base = rec;
                    base.seed_count = base_seeds.members.size();
                    base.gamma = gamma(base_trace);
                    base.lambda = lambda(base_trace);
                    base.steps = base_trace.steps();
                    out.records.emplace_back(Order{cell.instance, cell.protocol, t, cell.budget, m, cell.repetition, false},
                                             std::move(base));

                    RunRecord filtered = rec;
                    filtered.mds_filtered = true;
                    filtered.mds_size = mds.mds.size();
                    if (mds_seeds) {
                        const SpreadTrace trace = simulate(net, mds_seeds->members, params);
                        filtered.seed_count = mds_seeds->members.size();
                        filtered.gamma = gamma(trace);
                        filtered.lambda = lambda(trace);
                        filtered.steps = trace.steps();
                    } else {
                        filtered.status = RunStatus::MdsTooSmall;
                    }
                    out.records.emplace_back(Order{cell.instance, cell.protocol, t, cell.budget, m, cell.repetition, true},
                                             std::move(filtered));
                }
            }
        } catch (const std::exception& e) {
            out = CellOutput{};
            out.error = name + " instance " + std::to_string(inst.index) + " " + std::string(to_string(protocol)) +
                        " budget " + csv::format_double(budget) + " repetition " + std::to_string(cell.repetition) +
                        ": " + e.what();
        }
    });

    std::vector<std::pair<Order, RunRecord>> ordered;
    for (auto& out : outputs) {
        if (!out.error.empty()) {
            result.errors.push_back(out.error);
            continue;
        }
        for (auto& r : out.records)
            ordered.push_back(std::move(r));
        for (auto& s : out.seeds)
            result.seeds.push_back(std::move(s));
        if (out.mds)
            result.mds.push_back(std::move(*out.mds));
    }
    std::ranges::stable_sort(ordered, {}, &std::pair<Order, RunRecord>::first);
    result.records.reserve(ordered.size());
    for (auto& [_, r] : ordered)
        result.records.push_back(std::move(r));
    return result;
}

} // namespace mlnds

#endif // MLNDS_EXPERIMENT_HPP_
