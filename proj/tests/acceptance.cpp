// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"

using namespace mlnds;
using namespace testing_support;

namespace {

constexpr auto forever = std::chrono::milliseconds(std::chrono::hours(24));

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs)
        s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

struct CohortStats {
    double size = 0;      // mean |D^| / |A|
    double reduction = 0; // mean (|D'| - |D^|) / |D'|
};

/// One greedy + local-improvement draw per generated instance.
template <class Config>
CohortStats mds_cohort(const Config& base, std::size_t draws, std::size_t threads) {
    std::vector<double> sizes(draws), reductions(draws);
    parallel_for(draws, threads, [&](std::size_t i) {
        Config c = base;
        c.rng_seed = derive_seed(base.rng_seed, {i});
        MultilayerNetwork net;
        if constexpr (std::is_same_v<Config, ErGenConfig>)
            net = generate_er(c);
        else
            net = generate_pa(c);
        Rng rng(derive_seed(c.rng_seed, {0x6d6473}));
        auto r = find_mds(net, rng, default_improvement_timeout(net.actor_count()));
        sizes[i] = static_cast<double>(r.mds.size()) / static_cast<double>(net.actor_count());
        reductions[i] = static_cast<double>(r.initial.size() - r.mds.size()) / static_cast<double>(r.initial.size());
    });
    return {mean_of(sizes), mean_of(reductions)};
}

ErGenConfig er_cohort(std::vector<std::size_t> edges, std::uint64_t seed) {
    ErGenConfig c;
    c.n_actors = 1000;
    c.n_layers = edges.size();
    c.edges_per_layer = std::move(edges);
    c.rng_seed = seed;
    return c;
}

PaGenConfig sf_cohort(std::size_t layers, std::uint64_t seed) {
    PaGenConfig c;
    c.n_actors = 1000;
    c.n_layers = layers;
    c.m0 = 6;
    c.m = 6;
    c.pr_internal = 0.7;
    c.pr_external = 0.2;
    c.pr_none = 0.1;
    c.rng_seed = seed;
    return c;
}

struct Cohort {
    const char* name;
    double target;
};

constexpr Cohort er_names[] = {{"er-2", 0.27}, {"er-3", 0.35}, {"er-5", 0.35}};
constexpr Cohort sf_names[] = {{"sf-2", 0.50}, {"sf-3", 0.76}, {"sf-5", 0.70}};

std::vector<ErGenConfig> er_configs() {
    return {er_cohort({2730, 2729}, 301), er_cohort({2379, 2379, 2378}, 302),
            er_cohort({3022, 3022, 3022, 3022, 3021}, 303)};
}

std::vector<PaGenConfig> sf_configs() { return {sf_cohort(2, 401), sf_cohort(3, 402), sf_cohort(5, 403)}; }

// Cohort results are shared by criteria 3, 4 and 5.
struct Cohorts {
    std::vector<CohortStats> er, sf;
};

Cohorts& cohorts(std::size_t threads) {
    static Cohorts c = [&] {
        Cohorts out;
        for (const auto& cfg : er_configs())
            out.er.push_back(mds_cohort(cfg, 30, threads));
        for (const auto& cfg : sf_configs())
            out.sf.push_back(mds_cohort(cfg, 30, threads));
        return out;
    }();
    return c;
}

Outcome criterion1(std::size_t) {
    Rng gen(1001);
    std::size_t bad_dom = 0, bad_min = 0, bad_size = 0;
    for (int i = 0; i < 200; ++i) {
        auto net = random_network(gen, 10 + gen.index(41), 2 + gen.index(2), 0.02 + 0.4 * gen.uniform(),
                                  0.6 + 0.4 * gen.uniform());
        Rng rng(static_cast<std::uint64_t>(i));
        auto r = find_mds(net, rng, forever);
        bad_dom += !oracle_dominating(net, r.mds);
        bad_min += !single_removal_minimal(net, r.mds);
        bad_size += r.mds.size() > r.initial.size();
    }
    return {bad_dom + bad_min + bad_size == 0,
            fmt("200 networks: %zu not dominating, %zu not minimal, %zu larger than greedy", bad_dom, bad_min,
                bad_size)};
}

Outcome criterion2(std::size_t) {
    Rng gen(1002);
    std::size_t above = 0, within2 = 0;
    const std::size_t trials = 20;
    for (std::size_t i = 0; i < trials; ++i) {
        auto net = random_network(gen, 8 + gen.index(7), 2, 0.1 + 0.3 * gen.uniform());
        Rng rng(i);
        auto heuristic = find_mds(net, rng, forever).mds;
        auto minimum = minimum_ds_bruteforce(net, net.actor_count());
        if (!minimum || minimum->size() > heuristic.size())
            ++above;
        else if (heuristic.size() - minimum->size() <= 2)
            ++within2;
    }
    auto exact = [](std::string_view text, std::size_t expected) {
        auto net = net_from(text);
        for (std::uint64_t s = 0; s < 20; ++s) {
            Rng rng(s);
            if (find_mds(net, rng, forever).mds.size() != expected)
                return false;
        }
        auto m = minimum_ds_bruteforce(net, net.actor_count());
        return m && m->size() == expected;
    };
    const bool path_ok = exact(path5, 2), star_ok = exact(star5, 1);
    const double share = static_cast<double>(within2) / trials;
    return {above == 0 && share >= 0.9 && path_ok && star_ok,
            fmt("bound violations %zu, gap<=2 in %.0f%%, path=2 %s, star=1 %s", above, 100 * share,
                path_ok ? "yes" : "no", star_ok ? "yes" : "no")};
}

Outcome criterion3(std::size_t threads) {
    const auto& c = cohorts(threads).er;
    Outcome o;
    for (std::size_t i = 0; i < 3; ++i) {
        bool ok = std::abs(c[i].size - er_names[i].target) <= 0.10;
        o.pass = o.pass && ok;
        o.detail += fmt("%s%s %.3f (target %.2f +-0.10)", i ? ", " : "", er_names[i].name, c[i].size, er_names[i].target);
    }
    return o;
}

Outcome criterion4(std::size_t threads) {
    const auto& c = cohorts(threads).sf;
    Outcome o;
    for (std::size_t i = 0; i < 3; ++i) {
        bool ok = std::abs(c[i].size - sf_names[i].target) <= 0.12;
        o.pass = o.pass && ok;
        o.detail += fmt("%s%s %.3f (target %.2f +-0.12)%s", i ? ", " : "", sf_names[i].name, c[i].size,
                        sf_names[i].target, ok ? "" : " OUT");
    }
    return o;
}

Outcome criterion5(std::size_t threads) {
    const auto& c = cohorts(threads);
    Outcome o;
    for (std::size_t i = 0; i < 3; ++i) {
        bool ok = c.er[i].reduction >= 0.10;
        o.pass = o.pass && ok;
        o.detail += fmt("%s%s %.3f (>= 0.10)%s", i ? ", " : "", er_names[i].name, c.er[i].reduction, ok ? "" : " OUT");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        bool ok = c.sf[i].reduction >= 0.0 && c.sf[i].reduction <= 0.15;
        o.pass = o.pass && ok;
        o.detail += fmt(", %s %.3f (in [0, 0.15])%s", sf_names[i].name, c.sf[i].reduction, ok ? "" : " OUT");
    }
    return o;
}

Outcome criterion6(std::size_t threads) {
    ExperimentPlan plan;
    auto sf = sf_cohort(3, 601);
    plan.networks = {{"sf-3", "SF", sf, 20}};
    plan.protocols = {Protocol::And};
    plan.budgets = {0.30};
    plan.thresholds = {0.2};
    plan.methods = {Method::DegC, Method::DegCD, Method::Nghb1S, Method::NghbSD};
    plan.repetitions = 30;
    plan.base_rng_seed = 6;
    auto result = run_grid(plan, threads);
    if (!result.errors.empty())
        return {false, "grid errors: " + result.errors.front()};
    std::vector<double> dg, dl;
    std::size_t too_small = 0;
    for (const auto& p : pair_records(result.records)) {
        auto g = pair_delta(p, Metric::Gamma), l = pair_delta(p, Metric::Lambda);
        if (!g || !l) {
            ++too_small;
            continue;
        }
        dg.push_back(*g);
        dl.push_back(*l);
    }
    const double mg = mean_of(dg), ml = mean_of(dl);
    return {!dg.empty() && mg >= 0.15 && mg <= 0.40 && ml >= 0.05 && ml <= 0.25,
            fmt("%zu pairs (%zu mds too small): mean dGamma %.3f in [0.15, 0.40], mean dLambda %.3f in [0.05, 0.25]",
                dg.size(), too_small, mg, ml)};
}

Outcome criterion7(std::size_t threads) {
    ExperimentPlan plan;
    plan.networks = {{"er-2", "ER", er_cohort({2730, 2729}, 701), 10}};
    plan.protocols = {Protocol::And};
    plan.budgets = {0.05};
    plan.thresholds = {0.5};
    plan.methods = {Method::Random};
    plan.repetitions = 5;
    plan.base_rng_seed = 7;
    auto result = run_grid(plan, threads);
    if (!result.errors.empty())
        return {false, "grid errors: " + result.errors.front()};
    auto rows = similarity_report(result.seeds, result.networks);
    if (rows.size() != 1)
        return {false, "expected one similarity group"};
    return {rows[0].mean <= 0.10,
            fmt("%zu pairs: mean IoU %.4f (sd %.4f), need <= 0.10", rows[0].count, rows[0].mean, rows[0].stdev)};
}

bool subset(const ActorSet& x, const ActorSet& y) {
    return std::ranges::all_of(x, [&](ActorId a) { return y.contains(a); });
}

ActorSet state_at(const SpreadTrace& t, std::size_t s) { return t.state(std::min(s, t.steps())); }

ActorSet random_seeds(Rng& rng, const MultilayerNetwork& net, double p) {
    std::vector<ActorId> out;
    for (ActorId a : net.actors())
        if (rng.uniform() < p)
            out.push_back(a);
    if (out.empty())
        out.push_back(ActorId{static_cast<std::uint32_t>(rng.index(net.actor_count()))});
    return ActorSet(out);
}

Outcome criterion8(std::size_t) {
    Rng gen(1008);
    const int cases = 200;
    std::size_t dominance = 0, threshold = 0, seeds = 0, determinism = 0, termination = 0;
    for (int i = 0; i < cases; ++i) {
        auto net = random_network(gen, 10 + gen.index(60), 1 + gen.index(4), 0.03 + 0.3 * gen.uniform());
        auto s0 = random_seeds(gen, net, 0.1);
        const double mu = 0.05 + 0.9 * gen.uniform();
        const double mu_hi = mu + (0.99 - mu) * gen.uniform();
        const Protocol proto = gen.uniform() < 0.5 ? Protocol::And : Protocol::Or;

        auto a = simulate(net, s0, {mu, Protocol::And, false});
        auto o = simulate(net, s0, {mu, Protocol::Or, false});
        for (std::size_t s = 0; s <= std::max(a.steps(), o.steps()); ++s)
            if (!subset(state_at(a, s), state_at(o, s))) {
                ++dominance;
                break;
            }

        auto lo = simulate(net, s0, {mu, proto, false});
        auto hi = simulate(net, s0, {mu_hi, proto, false});
        for (std::size_t s = 0; s <= std::max(lo.steps(), hi.steps()); ++s)
            if (!subset(state_at(hi, s), state_at(lo, s))) {
                ++threshold;
                break;
            }

        auto more = s0;
        for (ActorId x : random_seeds(gen, net, 0.1))
            more.insert(x);
        auto big = simulate(net, more, {mu, proto, false});
        for (std::size_t s = 0; s <= std::max(lo.steps(), big.steps()); ++s)
            if (!subset(state_at(lo, s), state_at(big, s))) {
                ++seeds;
                break;
            }

        auto again = simulate(net, s0, {mu, proto, false});
        determinism += again.activated_at() != lo.activated_at() || again.sizes() != lo.sizes();

        bool grows = true;
        for (std::size_t s = 1; s < lo.sizes().size(); ++s)
            grows = grows && lo.sizes()[s] > lo.sizes()[s - 1];
        termination += !grows || lo.steps() > net.actor_count() - s0.size() ||
                       step(net, lo.state(lo.steps()), {mu, proto, false}) != lo.state(lo.steps());
    }
    const std::size_t total = dominance + threshold + seeds + determinism + termination;
    return {total == 0, fmt("%d cases each: violations dominance %zu, threshold %zu, seeds %zu, determinism %zu, "
                            "termination %zu",
                            cases, dominance, threshold, seeds, determinism, termination)};
}

Outcome criterion9(std::size_t) {
    std::vector<std::string> failures;
    auto check = [&](const char* what, double got, double want) {
        if (std::abs(got - want) > 1e-12)
            failures.push_back(fmt("%s %.15g != %.15g", what, got, want));
    };
    {
        auto net = net_from("edge l1 a b\nedge l1 b c\n");
        auto t = simulate(net, ids(net, {"b"}), {0.5, Protocol::And, false});
        check("path gamma", gamma(t), 1.0);
        check("path lambda", lambda(t), 0.5);
    }
    {
        std::vector<std::int32_t> at(100, SpreadTrace::never);
        for (int i = 0; i < 78; ++i)
            at[i] = i < 35 ? 0 : 1;
        SpreadTrace t(at, {35, 78});
        check("gamma 43/65", gamma(t), 43.0 / 65.0);
    }
    {
        std::vector<std::int32_t> at(100);
        for (int i = 0; i < 100; ++i)
            at[i] = i < 10 ? 0 : (i < 55 ? 1 : 2);
        SpreadTrace t(at, {10, 55, 100});
        check("three-point lambda", lambda(t), 0.5);
    }
    {
        auto net = net_from("edge l1 a b\nedge l2 b c\n");
        auto t = simulate(net, ids(net, {"a"}), {0.5, Protocol::And, false});
        check("no spread gamma", gamma(t), 0.0);
        check("no spread lambda", lambda(t), 0.0);
    }
    Rng gen(1009);
    std::size_t out_of_range = 0;
    const int traces = 300;
    for (int i = 0; i < traces; ++i) {
        auto net = random_network(gen, 5 + gen.index(60), 1 + gen.index(3), 0.03 + 0.4 * gen.uniform());
        auto t = simulate(net, random_seeds(gen, net, 0.2 * gen.uniform()),
                          {0.05 + 0.9 * gen.uniform(), gen.uniform() < 0.5 ? Protocol::And : Protocol::Or, false});
        const double g = gamma(t), l = lambda(t);
        out_of_range += !(g >= 0 && g <= 1 && l >= 0 && l <= 1);
    }
    std::string detail = fmt("4 fixtures, %zu mismatches; %d random traces, %zu out of [0,1]", failures.size(), traces,
                             out_of_range);
    for (const auto& f : failures)
        detail += "; " + f;
    return {failures.empty() && out_of_range == 0, detail};
}

Outcome criterion10(std::size_t threads) {
    ExperimentPlan plan;
    plan.networks = {{"er", "ER", er_cohort({400, 400}, 1010), 2}, {"sf", "SF", sf_cohort(3, 1011), 1}};
    std::get<ErGenConfig>(plan.networks[0].source).n_actors = 200;
    std::get<PaGenConfig>(plan.networks[1].source).n_actors = 200;
    plan.protocols = {Protocol::And, Protocol::Or};
    plan.budgets = {0.05, 0.15};
    plan.thresholds = {0.2, 0.5};
    plan.methods = {all_methods.begin(), all_methods.end()};
    plan.repetitions = 3;
    plan.base_rng_seed = 10;
    const auto first = write_records_csv(run_grid(plan, threads).records);
    const auto second = write_records_csv(run_grid(plan, threads).records);
    const auto serial = write_records_csv(run_grid(plan, 1).records);
    return {first == second && first == serial,
            fmt("%zu bytes; rerun %s, single-thread run %s", first.size(), first == second ? "identical" : "DIFFERS",
                first == serial ? "identical" : "DIFFERS")};
}

} // namespace

int main() {
    const std::size_t threads = default_thread_count();
    std::printf("acceptance suite, %zu threads\n", threads);
    struct Criterion {
        const char* name;
        std::function<Outcome(std::size_t)> run;
    };
    const Criterion criteria[] = {
        {"MDS soundness and minimality", criterion1},
        {"brute-force oracle gap", criterion2},
        {"ER MDS size", criterion3},
        {"SF MDS size", criterion4},
        {"local-improvement reduction", criterion5},
        {"follow-up dGamma/dLambda", criterion6},
        {"random-heuristic similarity", criterion7},
        {"MLTM properties", criterion8},
        {"metric fixtures and ranges", criterion9},
        {"reproducible records", criterion10},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(threads);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
