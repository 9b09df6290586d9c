#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <mlnds/mlnds.hpp>

namespace fs = std::filesystem;
using namespace mlnds;

namespace {

ActorSet read_actor_list(const MultilayerNetwork& net, const std::string& path) {
    std::vector<ActorId> ids;
    std::string text = read_text_file(path);
    for (auto line : csv::lines(text)) {
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        for (auto token : detail::split_ws(line))
            ids.push_back(net.actor(token));
    }
    return ActorSet(std::move(ids));
}

ActorSet parse_actor_names(const MultilayerNetwork& net, std::string list) {
    std::ranges::replace(list, ',', ' ');
    std::vector<ActorId> ids;
    for (const auto& name : csv::split_names(list))
        ids.push_back(net.actor(name));
    return ActorSet(std::move(ids));
}

std::string join(const MultilayerNetwork& net, const ActorSet& set, const char* sep = " ") {
    std::string out;
    for (ActorId a : set) {
        if (!out.empty())
            out += sep;
        out += net.actor_name(a);
    }
    return out;
}

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string fmt(const std::optional<double>& v, int digits = 6) { return v ? fmt(*v, digits) : "nan"; }

struct SeedOptions {
    std::string method = "deg-c";
    double budget = 0.1;
    std::string mds_file;
    std::uint64_t seed = 0;
};

void add_seed_options(CLI::App* cmd, SeedOptions& o) {
    cmd->add_option("--method", o.method, "deg-c | deg-cd | nghb-1s | nghb-sd | random")->capture_default_str();
    cmd->add_option("--budget,-s", o.budget, "seed budget as a fraction of actors")->capture_default_str();
    cmd->add_option("--mds", o.mds_file, "file listing a dominating set; seeds are filtered through it");
    cmd->add_option("--seed", o.seed, "rng seed for the random method")->capture_default_str();
}

// Returns nullopt when the dominating set is smaller than the budget.
std::optional<SeedSet> choose_seeds(const MultilayerNetwork& net, const SeedOptions& o) {
    Rng rng(o.seed);
    ActorRanking ranking = rank_actors(net, parse_method(o.method), rng);
    if (o.mds_file.empty())
        return select_seeds(ranking, net, o.budget);
    return select_seeds_mds(ranking, net, o.budget, read_actor_list(net, o.mds_file));
}

int run_mds(const std::string& path, std::uint64_t seed, double minutes_per_1000, std::size_t draws,
            std::optional<std::size_t> brute_cap) {
    MultilayerNetwork net = load_multiplex_file(path);
    const auto timeout = default_improvement_timeout(net.actor_count(), minutes_per_1000);
    std::vector<DominatingSet> sets;
    std::vector<std::size_t> greedy;
    for (std::size_t i = 0; i < draws; ++i) {
        Rng rng(derive_seed(seed, {i}));
        MdsResult r = find_mds(net, rng, timeout);
        std::cout << "mds " << join(net, r.mds) << "\n";
        std::cout << "size " << r.mds.size() << " greedy_size " << r.initial.size() << " improvements "
                  << r.stats.improvements << " timed_out " << (r.stats.timed_out ? 1 : 0) << "\n";
        sets.push_back(r.mds);
        greedy.push_back(r.initial.size());
    }
    if (draws > 1) {
        MdsStats s = mds_statistics(sets, greedy, net.actor_count());
        std::cout << "size_range " << fmt(s.size_min, 4) << " " << fmt(s.size_max, 4) << "\n"
                  << "avg_size " << fmt(s.size_mean, 4) << " +- " << fmt(s.size_stdev, 4) << "\n"
                  << "unique " << s.unique_count << " / " << s.total_count << "\n"
                  << "avg_iou " << fmt(s.avg_pairwise_iou, 4) << "\n"
                  << "entropy_bits " << fmt(s.entropy_bits, 4) << "\n"
                  << "avg_size_reduction " << fmt(s.reduction_mean, 4) << " +- " << fmt(s.reduction_stdev, 4) << "\n";
    }
    if (brute_cap) {
        auto best = minimum_ds_bruteforce(net, std::min(*brute_cap, net.actor_count()));
        if (best)
            std::cout << "minimum " << join(net, *best) << "\nminimum_size " << best->size() << "\n";
        else
            std::cout << "minimum none within cap " << *brute_cap << "\n";
    }
    return 0;
}

struct Outputs {
    std::vector<RunRecord> records;
    std::vector<SeedRow> seeds;
    std::vector<MdsRow> mds;
    std::vector<NetworkRow> networks;
};

Outputs load_outputs(const fs::path& dir, bool records, bool seeds, bool mds) {
    Outputs o;
    o.networks = read_networks_csv(read_text_file((dir / "networks.csv").string()));
    if (records)
        o.records = read_records_csv(read_text_file((dir / "records.csv").string()));
    if (seeds)
        o.seeds = read_seeds_csv(read_text_file((dir / "seeds.csv").string()));
    if (mds)
        o.mds = read_mds_csv(read_text_file((dir / "mds.csv").string()));
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal dominating sets and MDS-backed seeding on multilayer networks"};
    app.require_subcommand(1);

    // mds
    std::string mds_net;
    std::uint64_t mds_seed = 0;
    double mds_minutes = 5.0;
    std::size_t mds_draws = 1;
    std::optional<std::size_t> brute_cap;
    auto* mds_cmd = app.add_subcommand("mds", "compute a minimal dominating set");
    mds_cmd->add_option("network", mds_net, "multiplex network file")->required();
    mds_cmd->add_option("--seed", mds_seed, "rng seed")->capture_default_str();
    mds_cmd->add_option("--timeout-per-1000", mds_minutes, "refinement minutes per 1000 actors")->capture_default_str();
    mds_cmd->add_option("--draws", mds_draws, "number of independent draws; >1 also prints statistics")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mds_cmd->add_option("--brute-force", brute_cap, "also search a minimum set up to this size");

    // seed
    std::string seed_net;
    SeedOptions seed_opts;
    auto* seed_cmd = app.add_subcommand("seed", "select a seed set");
    seed_cmd->add_option("network", seed_net, "multiplex network file")->required();
    add_seed_options(seed_cmd, seed_opts);

    // simulate
    std::string sim_net, sim_seeds, sim_protocol = "AND";
    SeedOptions sim_opts;
    double sim_mu = 0.5;
    bool sim_strict = false;
    auto* sim_cmd = app.add_subcommand("simulate", "run the multilayer linear threshold model");
    sim_cmd->add_option("network", sim_net, "multiplex network file")->required();
    sim_cmd->add_option("--seeds", sim_seeds, "explicit seed actors, comma separated");
    add_seed_options(sim_cmd, sim_opts);
    sim_cmd->add_option("--mu", sim_mu, "activation threshold")->capture_default_str();
    sim_cmd->add_option("--protocol", sim_protocol, "AND | OR")->capture_default_str();
    sim_cmd->add_flag("--strict", sim_strict, "require the active fraction to exceed mu");

    // experiment
    std::string plan_path, out_dir;
    std::optional<std::size_t> threads;
    auto* exp_cmd = app.add_subcommand("experiment", "run an experiment plan");
    exp_cmd->add_option("--plan", plan_path, "JSON plan file")->required();
    exp_cmd->add_option("--out", out_dir, "output directory")->required();
    exp_cmd->add_option("--threads", threads, "worker threads (default: MLNDS_THREADS or all cores)");

    // report
    auto* report_cmd = app.add_subcommand("report", "aggregate experiment outputs");
    report_cmd->require_subcommand(1);
    std::string rep_dir, rep_metric = "gamma", rep_protocol = "AND", rep_type, rep_svg, rep_csv;
    std::optional<double> rep_significance;
    auto* heat_cmd = report_cmd->add_subcommand("heatmap", "difference heatmap over (mu, budget)");
    heat_cmd->add_option("--dir", rep_dir, "experiment output directory")->required();
    heat_cmd->add_option("--metric", rep_metric, "gamma | lambda")->capture_default_str();
    heat_cmd->add_option("--protocol", rep_protocol, "AND | OR")->capture_default_str();
    heat_cmd->add_option("--network-type", rep_type, "stratum, e.g. ER, SF or real")->required();
    heat_cmd->add_option("--significance", rep_significance, "absolute difference threshold (default 0.01)");
    heat_cmd->add_option("--svg", rep_svg, "SVG output path (default: <dir>/heatmap_<type>_<protocol>_<metric>.svg)");
    heat_cmd->add_option("--csv", rep_csv, "tile CSV output path (default: next to the SVG)");
    auto* stats_cmd = report_cmd->add_subcommand("mds-stats", "dominating set statistics per network");
    stats_cmd->add_option("--dir", rep_dir, "experiment output directory")->required();
    auto* sim_rep_cmd = report_cmd->add_subcommand("similarity", "baseline vs MDS-filtered seed set similarity");
    sim_rep_cmd->add_option("--dir", rep_dir, "experiment output directory")->required();

    // generate
    std::string gen_model = "er", gen_out;
    std::size_t gen_actors = 100, gen_layers = 2, gen_m0 = 6, gen_m = 6;
    std::vector<std::size_t> gen_edges;
    double gen_internal = 0.7, gen_external = 0.2, gen_none = 0.1;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd = app.add_subcommand("generate", "write a synthetic network");
    gen_cmd->add_option("model", gen_model, "er | pa")->required()->check(CLI::IsMember({"er", "pa"}));
    gen_cmd->add_option("--actors", gen_actors)->capture_default_str();
    gen_cmd->add_option("--layers", gen_layers)->capture_default_str();
    gen_cmd->add_option("--edges", gen_edges, "ER: edges per layer");
    gen_cmd->add_option("--m0", gen_m0)->capture_default_str();
    gen_cmd->add_option("--m", gen_m)->capture_default_str();
    gen_cmd->add_option("--pr-internal", gen_internal)->capture_default_str();
    gen_cmd->add_option("--pr-external", gen_external)->capture_default_str();
    gen_cmd->add_option("--pr-none", gen_none)->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--out,-o", gen_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mds_cmd)
            return run_mds(mds_net, mds_seed, mds_minutes, mds_draws, brute_cap);

        if (*seed_cmd) {
            MultilayerNetwork net = load_multiplex_file(seed_net);
            auto seeds = choose_seeds(net, seed_opts);
            if (!seeds) {
                std::cerr << "dominating set is smaller than the budget (mds_too_small)\n";
                return 2;
            }
            std::cout << join(net, seeds->members, "\n") << "\n";
            return 0;
        }

        if (*sim_cmd) {
            MultilayerNetwork net = load_multiplex_file(sim_net);
            ActorSet seeds;
            if (!sim_seeds.empty()) {
                seeds = parse_actor_names(net, sim_seeds);
            } else {
                auto chosen = choose_seeds(net, sim_opts);
                if (!chosen) {
                    std::cerr << "dominating set is smaller than the budget (mds_too_small)\n";
                    return 2;
                }
                seeds = chosen->members;
            }
            DiffusionParams params{sim_mu, parse_protocol(sim_protocol), sim_strict};
            SpreadTrace trace = simulate(net, seeds, params);
            std::cout << "step,active\n";
            for (std::size_t t = 0; t < trace.sizes().size(); ++t)
                std::cout << t << "," << trace.sizes()[t] << "\n";
            std::cout << "gamma " << fmt(gamma(trace)) << "\nlambda " << fmt(lambda(trace)) << "\n";
            if (trace.seeds_cover_all())
                std::cerr << "warning: seeds cover every actor; gamma and lambda reported as 0\n";
            return 0;
        }

        if (*exp_cmd) {
            ExperimentPlan plan = load_plan_file(plan_path);
            const auto start = std::chrono::steady_clock::now();
            GridResult r = run_grid(plan, threads.value_or(default_thread_count()));
            fs::create_directories(out_dir);
            const fs::path dir(out_dir);
            write_text_file((dir / "records.csv").string(), write_records_csv(r.records));
            write_text_file((dir / "seeds.csv").string(), write_seeds_csv(r.seeds));
            write_text_file((dir / "mds.csv").string(), write_mds_csv(r.mds));
            write_text_file((dir / "networks.csv").string(), write_networks_csv(r.networks));
            const auto secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::cerr << r.records.size() << " records written to " << out_dir << " in " << fmt(secs, 1) << " s\n";
            for (const auto& e : r.errors)
                std::cerr << "error: " << e << "\n";
            return r.errors.empty() ? 0 : 1;
        }

        if (*heat_cmd) {
            Outputs o = load_outputs(rep_dir, true, false, false);
            const Protocol protocol = parse_protocol(rep_protocol);
            const Metric metric = parse_metric(rep_metric);
            auto index = detail::index_networks(o.networks);
            std::vector<RunRecord> stratum;
            for (const auto& r : o.records) {
                auto it = index.find(r.network);
                if (it == index.end())
                    throw Error("network '" + r.network + "' missing from networks.csv");
                if (r.protocol == protocol && it->second->type == rep_type)
                    stratum.push_back(r);
            }
            if (stratum.empty())
                throw Error("no records for network type '" + rep_type + "' under " + rep_protocol);
            HeatmapGrid grid =
                aggregate_heatmap(pair_records(stratum), metric, rep_significance.value_or(0.01));
            if (rep_svg.empty())
                rep_svg = (fs::path(rep_dir) / ("heatmap_" + rep_type + "_" + rep_protocol + "_" + rep_metric + ".svg"))
                              .string();
            if (rep_csv.empty())
                rep_csv = fs::path(rep_svg).replace_extension(".csv").string();
            const std::string label = (metric == Metric::Gamma ? "\xce\x94\xce\x93" : "\xce\x94\xce\x9b") +
                                      std::string(" ") + rep_type + " " + rep_protocol;
            write_text_file(rep_svg, render_heatmap_svg(grid, label));
            write_text_file(rep_csv, write_tiles_csv(grid));
            std::cout << rep_svg << "\n" << rep_csv << "\n";
            return 0;
        }

        if (*stats_cmd) {
            Outputs o = load_outputs(rep_dir, false, false, true);
            std::cout << "network,type,size_min,size_max,size_mean,size_stdev,unique,total,avg_iou,entropy_bits,"
                         "reduction_mean,reduction_stdev\n";
            for (const auto& row : mds_report(o.mds, o.networks)) {
                const auto& s = row.stats;
                std::cout << row.network << "," << row.type << "," << fmt(s.size_min, 4) << "," << fmt(s.size_max, 4)
                          << "," << fmt(s.size_mean, 4) << "," << fmt(s.size_stdev, 4) << "," << s.unique_count << ","
                          << s.total_count << "," << fmt(s.avg_pairwise_iou, 4) << "," << fmt(s.entropy_bits, 4)
                          << "," << fmt(s.reduction_mean, 4) << "," << fmt(s.reduction_stdev, 4) << "\n";
            }
            return 0;
        }

        if (*sim_rep_cmd) {
            Outputs o = load_outputs(rep_dir, false, true, false);
            std::cout << "type,method,budget,mean_iou,stdev_iou,pairs\n";
            for (const auto& row : similarity_report(o.seeds, o.networks))
                std::cout << row.network_type << "," << to_string(row.method) << "," << csv::format_double(row.budget)
                          << "," << fmt(row.mean, 4) << "," << fmt(row.stdev, 4) << "," << row.count << "\n";
            return 0;
        }

        if (*gen_cmd) {
            MultilayerNetwork net = [&] {
                if (gen_model == "er") {
                    ErGenConfig c{gen_actors, gen_layers, gen_edges, gen_seed};
                    if (c.edges_per_layer.size() == 1)
                        c.edges_per_layer.assign(gen_layers, gen_edges.front());
                    return generate_er(c);
                }
                PaGenConfig c;
                c.n_actors = gen_actors;
                c.n_layers = gen_layers;
                c.m0 = gen_m0;
                c.m = gen_m;
                c.pr_internal = gen_internal;
                c.pr_external = gen_external;
                c.pr_none = gen_none;
                c.rng_seed = gen_seed;
                return generate_pa(c);
            }();
            std::string text = write_multiplex(net);
            if (gen_out.empty())
                std::cout << text;
            else
                write_text_file(gen_out, text);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
