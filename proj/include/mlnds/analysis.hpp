#ifndef MLNDS_ANALYSIS_HPP_
#define MLNDS_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "domination.hpp"
#include "io/records.hpp"

namespace mlnds {

enum class Metric { Gamma, Lambda };

inline std::string_view to_string(Metric m) { return m == Metric::Gamma ? "gamma" : "lambda"; }

inline Metric parse_metric(std::string_view s) {
    if (s == "gamma")
        return Metric::Gamma;
    if (s == "lambda")
        return Metric::Lambda;
    throw Error("unknown metric '" + std::string(s) + "'");
}

struct PairKey {
    std::string network;
    std::size_t instance = 0;
    Method method = Method::DegC;
    Protocol protocol = Protocol::And;
    double mu = 0;
    double budget = 0;
    std::size_t repetition = 0;

    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

inline PairKey pair_key(const RunRecord& r) {
    return {r.network, r.instance, r.method, r.protocol, r.mu, r.budget, r.repetition};
}

/// A baseline run and its MDS-filtered counterpart.
struct PairedResult {
    PairKey key;
    RunStatus base_status = RunStatus::Ok;
    RunStatus mds_status = RunStatus::Ok;
    std::optional<double> gamma_base, gamma_mds;
    std::optional<double> lambda_base, lambda_mds;

    std::optional<double> base(Metric m) const { return m == Metric::Gamma ? gamma_base : lambda_base; }
    std::optional<double> mds(Metric m) const { return m == Metric::Gamma ? gamma_mds : lambda_mds; }
};

class PairingError : public Error {
public:
    using Error::Error;
};

inline PairedResult make_pair(const RunRecord& base, const RunRecord& mds) {
    if (base.mds_filtered || !mds.mds_filtered)
        throw PairingError("pair needs one baseline and one MDS-filtered record");
    if (pair_key(base) != pair_key(mds))
        throw PairingError("pairing keys differ between baseline and MDS-filtered record");
    return {pair_key(base), base.status, mds.status, base.gamma, mds.gamma, base.lambda, mds.lambda};
}

/// Matches every baseline record with its MDS-filtered twin, in key order.
inline std::vector<PairedResult> pair_records(const std::vector<RunRecord>& records) {
    std::map<PairKey, std::pair<const RunRecord*, const RunRecord*>> slots;
    for (const auto& r : records) {
        auto& slot = slots[pair_key(r)];
        auto& target = r.mds_filtered ? slot.second : slot.first;
        if (target)
            throw PairingError("duplicate record for " + r.network + " repetition " + std::to_string(r.repetition));
        target = &r;
    }
    std::vector<PairedResult> out;
    out.reserve(slots.size());
    for (const auto& [key, slot] : slots) {
        if (!slot.first || !slot.second)
            throw PairingError("record for " + key.network + " repetition " + std::to_string(key.repetition) +
                               " has no counterpart");
        out.push_back(make_pair(*slot.first, *slot.second));
    }
    return out;
}

enum class PairClass { Significant, Insignificant, FailedNoStart, FailedMdsTooSmall };

/// MDS-filtered minus baseline; only defined when both runs completed.
inline std::optional<double> pair_delta(const PairedResult& p, Metric m) {
    auto b = p.base(m);
    auto d = p.mds(m);
    if (!b || !d)
        return std::nullopt;
    return *d - *b;
}

/// A pair fails when the dominating set was below budget, or when neither
/// run activated anyone (gain 0 on both sides). A one-sided zero is an
/// ordinary difference.
inline PairClass classify_pair(const PairedResult& p, Metric metric, double significance = 0.01) {
    if (p.mds_status == RunStatus::MdsTooSmall)
        return PairClass::FailedMdsTooSmall;
    if (!p.gamma_base || !p.gamma_mds || !p.base(metric) || !p.mds(metric))
        throw PairingError("completed pair is missing metric values");
    if (*p.gamma_base == 0.0 && *p.gamma_mds == 0.0)
        return PairClass::FailedNoStart;
    return std::abs(*pair_delta(p, metric)) > significance ? PairClass::Significant : PairClass::Insignificant;
}

struct HeatmapTile {
    double mu = 0;
    double budget = 0;
    std::optional<double> mean_delta; // over feasible pairs
    std::size_t significant = 0;
    std::size_t insignificant = 0;
    std::size_t failed_no_start = 0;
    std::size_t failed_mds_too_small = 0;
    std::optional<double> pct_mds_better; // share of significant pairs favouring MDS, in percent

    std::size_t scheduled() const noexcept {
        return significant + insignificant + failed_no_start + failed_mds_too_small;
    }
};

/// Rows are thresholds (ascending), columns are budgets (ascending).
struct HeatmapGrid {
    std::vector<double> mus;
    std::vector<double> budgets;
    std::vector<std::vector<HeatmapTile>> tiles;
};

/// Folds pairs of one stratum into tiles over (mu, budget).
inline HeatmapGrid aggregate_heatmap(const std::vector<PairedResult>& pairs, Metric metric,
                                     double significance = 0.01) {
    struct Acc {
        HeatmapTile tile;
        double delta_sum = 0;
        std::size_t better = 0;
    };
    std::map<std::pair<double, double>, Acc> cells;
    std::map<double, int> mus, budgets;
    for (const auto& p : pairs) {
        mus[p.key.mu];
        budgets[p.key.budget];
        auto& acc = cells[{p.key.mu, p.key.budget}];
        switch (classify_pair(p, metric, significance)) {
        case PairClass::FailedMdsTooSmall:
            ++acc.tile.failed_mds_too_small;
            break;
        case PairClass::FailedNoStart:
            ++acc.tile.failed_no_start;
            break;
        case PairClass::Significant: {
            double d = *pair_delta(p, metric);
            ++acc.tile.significant;
            acc.delta_sum += d;
            if (d > 0)
                ++acc.better;
            break;
        }
        case PairClass::Insignificant:
            ++acc.tile.insignificant;
            acc.delta_sum += *pair_delta(p, metric);
            break;
        }
    }
    HeatmapGrid grid;
    for (auto [mu, _] : mus)
        grid.mus.push_back(mu);
    for (auto [b, _] : budgets)
        grid.budgets.push_back(b);
    for (double mu : grid.mus) {
        auto& row = grid.tiles.emplace_back();
        for (double b : grid.budgets) {
            HeatmapTile tile;
            if (auto it = cells.find({mu, b}); it != cells.end()) {
                const auto& acc = it->second;
                tile = acc.tile;
                std::size_t feasible = tile.significant + tile.insignificant;
                if (feasible > 0)
                    tile.mean_delta = acc.delta_sum / static_cast<double>(feasible);
                if (tile.significant > 0)
                    tile.pct_mds_better =
                        100.0 * static_cast<double>(acc.better) / static_cast<double>(tile.significant);
            }
            tile.mu = mu;
            tile.budget = b;
            row.push_back(tile);
        }
    }
    return grid;
}

inline std::string write_tiles_csv(const HeatmapGrid& grid) {
    std::string out = "mu,budget,mean_delta,significant,insignificant,failed_no_start,failed_mds_too_small,pct_mds_better\n";
    for (const auto& row : grid.tiles)
        for (const auto& t : row) {
            out += csv::format_double(t.mu) + ',' + csv::format_double(t.budget) + ',' +
                   csv::optional_field(t.mean_delta, csv::format_double) + ',' + std::to_string(t.significant) + ',' +
                   std::to_string(t.insignificant) + ',' + std::to_string(t.failed_no_start) + ',' +
                   std::to_string(t.failed_mds_too_small) + ',' +
                   csv::optional_field(t.pct_mds_better, csv::format_double) + '\n';
        }
    return out;
}

struct SimilarityRow {
    std::string network_type;
    Method method = Method::DegC;
    double budget = 0;
    double mean = 0;
    double stdev = 0;
    std::size_t count = 0;
};

namespace detail {

inline std::unordered_map<std::string, const NetworkRow*> index_networks(const std::vector<NetworkRow>& networks) {
    std::unordered_map<std::string, const NetworkRow*> out;
    for (const auto& n : networks)
        out.emplace(n.name, &n);
    return out;
}

} // namespace detail

/// Jaccard similarity between baseline and MDS-filtered seed sets, grouped
/// by (network type, method, budget). Pairs whose MDS was below budget are
/// skipped.
inline std::vector<SimilarityRow> similarity_report(const std::vector<SeedRow>& seeds,
                                                    const std::vector<NetworkRow>& networks) {
    auto types = detail::index_networks(networks);
    using Key = std::tuple<std::string, std::size_t, Protocol, double, std::size_t, Method>;
    std::map<Key, std::pair<const SeedRow*, const SeedRow*>> slots;
    for (const auto& s : seeds) {
        auto& slot = slots[{s.network, s.instance, s.protocol, s.budget, s.repetition, s.method}];
        (s.mds_filtered ? slot.second : slot.first) = &s;
    }
    std::map<std::tuple<std::string, Method, double>, std::vector<double>> groups;
    for (const auto& [key, slot] : slots) {
        if (!slot.first || !slot.second)
            throw PairingError("seed set for " + std::get<0>(key) + " has no counterpart");
        if (slot.second->status != RunStatus::Ok)
            continue;
        auto t = types.find(std::get<0>(key));
        if (t == types.end())
            throw Error("network '" + std::get<0>(key) + "' has no type");
        std::vector<std::string> a = slot.first->seeds, b = slot.second->seeds;
        std::ranges::sort(a);
        std::ranges::sort(b);
        std::vector<std::string> common;
        std::ranges::set_intersection(a, b, std::back_inserter(common));
        double uni = static_cast<double>(a.size() + b.size() - common.size());
        double j = uni == 0 ? 1.0 : static_cast<double>(common.size()) / uni;
        groups[{t->second->type, std::get<5>(key), std::get<3>(key)}].push_back(j);
    }
    std::vector<SimilarityRow> out;
    for (const auto& [key, values] : groups) {
        auto [mean, sd] = detail::mean_stdev(values);
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mean, sd, values.size()});
    }
    return out;
}

struct MdsReportRow {
    std::string network;
    std::string type;
    MdsStats stats;
};

/// Dominating-set statistics per network, pooling all instances and draws.
inline std::vector<MdsReportRow> mds_report(const std::vector<MdsRow>& rows, const std::vector<NetworkRow>& networks) {
    auto index = detail::index_networks(networks);
    std::map<std::string, std::vector<const MdsRow*>> groups;
    for (const auto& r : rows)
        groups[r.network].push_back(&r);
    std::vector<MdsReportRow> out;
    for (const auto& [name, group] : groups) {
        auto it = index.find(name);
        if (it == index.end())
            throw Error("network '" + name + "' has no size information");
        std::unordered_map<std::string, std::uint32_t> ids;
        std::vector<DominatingSet> sets;
        std::vector<std::size_t> greedy;
        for (const MdsRow* r : group) {
            std::vector<ActorId> members;
            for (const auto& m : r->members)
                members.push_back(ActorId{ids.try_emplace(m, static_cast<std::uint32_t>(ids.size())).first->second});
            sets.emplace_back(std::move(members));
            greedy.push_back(r->greedy_size);
        }
        out.push_back({name, it->second->type, mds_statistics(sets, greedy, it->second->actors)});
    }
    return out;
}

} // namespace mlnds

#endif // MLNDS_ANALYSIS_HPP_
