#pragma once

// Differential verification: every reduction is run next to an independent solver on
// seeded random and planted inputs, and every declared counting bound is compared with
// what the run produced. Trials may run concurrently; the report is assembled in trial
// order and contains no timings, so equal configs give byte-identical reports.

#include "xcover/bounds.hpp"
#include "xcover/color_coding.hpp"
#include "xcover/generators.hpp"
#include "xcover/hamiltonicity.hpp"
#include "xcover/ham_reduction.hpp"
#include "xcover/json_io.hpp"
#include "xcover/ktree_reduction.hpp"
#include "xcover/ntree_reduction.hpp"
#include "xcover/partitions.hpp"
#include "xcover/setcover_solvers.hpp"
#include "xcover/tree_cover.hpp"
#include "xcover/verify.hpp"

#include <atomic>
#include <set>
#include <thread>

namespace xcover {

namespace detail {

    /// fn(0..count-1) on up to `jobs` threads; results are returned in index order.
    template <typename F>
    auto parallel_map(int count, int jobs, F&& fn) -> std::vector<decltype(fn(0))>
    {
        std::vector<decltype(fn(0))> out(static_cast<std::size_t>(std::max(count, 0)));
        const int workers = std::clamp(jobs, 1, std::max(count, 1));
        if (workers == 1) {
            for (int i = 0; i < count; ++i)
                out[i] = fn(i);
            return out;
        }
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++)
                    out[i] = fn(i);
            });
        for (auto& t : pool)
            t.join();
        return out;
    }

    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    inline std::uint64_t trial_seed(std::uint64_t base, std::string_view family, int trial)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : family)
            h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
        return splitmix64(splitmix64(base ^ h) + static_cast<std::uint64_t>(trial));
    }

    /// Greedily drops items while `still_fails` keeps holding on what remains.
    template <typename T, typename Pred>
    std::vector<T> minimize_by_deletion(std::vector<T> items, Pred still_fails)
    {
        for (std::size_t i = items.size(); i-- > 0;) {
            auto trial = items;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (still_fails(trial))
                items = std::move(trial);
        }
        return items;
    }

    struct TrialOutcome {
        bool ok = true;
        Json failure;                    // details when !ok
        Json discrepancy;                // non-fatal finding (roots variant over-acceptance)
        std::vector<BoundReport> bounds;
        std::map<std::string, long long> tags;   // summed over the family

        void fail(Json detail)
        {
            ok = false;
            failure = std::move(detail);
        }
    };

    template <typename T>
    T param(const Json& params, const char* key, T fallback)
    {
        return params.contains(key) ? params.at(key).get<T>() : fallback;
    }

    inline const SetCoverSolver& default_cover_solver()
    {
        static const SetCoverSolver solver = [](const SetCoverInstance& inst) {
            return setcover_branch_and_bound(inst);
        };
        return solver;
    }

    // ---- families --------------------------------------------------------------

    inline TrialOutcome trial_tree_cover(const Json& params, std::uint64_t seed, int)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        const int k = uniform(rng, 2, std::max(2, param(params, "k_max", 200)));
        const int l = uniform(rng, 2, k);
        auto tree = random_tree(rng, k, uniform(rng, 0, 1) == 1);
        auto cover = tree_cover(tree, l);
        auto rep = check_cover_properties(tree, cover, l);
        out.tags["subtrees"] = static_cast<long long>(cover.subtrees.size());
        if (!rep.all())
            out.fail({{"k", k}, {"l", l}, {"problems", rep.problems}, {"tree", serialize(tree)}});
        return out;
    }

    inline TrialOutcome trial_ntree(const Json& params, std::uint64_t seed, int trial)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        const int n = uniform(rng, param(params, "n_min", 4), param(params, "n_max", 7));
        const int delta = param(params, "delta", 6);
        const auto variant = variant_from_name(param<std::string>(params, "variant", "anchored"))
                                 .value_or(NTreeVariant::anchored);
        const double p = param(params, "edge_probability", 0.35);
        Digraph g;
        PatternTree t;
        if (trial % 2 == 0) {
            auto planted = plant_embedded_tree(n, n, seed, p / 2);
            g = std::move(planted.host);
            t = std::move(planted.pattern);
        } else {
            GenParams gp;
            gp.n = n;
            gp.edge_probability = p;
            gp.seed = seed;
            g = std::get<Digraph>(gen_random(InstanceKind::digraph, gp));
            t = random_tree(rng, n, /*oriented=*/true);
        }

        const bool oracle = tree_embed_backtrack(g, t).yes();
        NTreeReduction reduction(g, t, delta, variant);
        const auto outcome = solve_batch(reduction, default_cover_solver());

        // full stream for the counting bounds
        std::uint64_t count = 0;
        int max_elements = 0;
        bool sizes_ok = true;
        reduction.for_each([&](const ProducedInstance& pi) {
            ++count;
            max_elements = std::max(max_elements, pi.instance.n);
            for (const auto& s : pi.instance.sets)
                sizes_ok &= static_cast<int>(s.size()) <= delta;
            return true;
        });
        const auto caps = reduction.bounds();
        BoundReport b;
        b.reduction = std::string("ntree-") + std::string(variant_name(variant));
        b.ntilde = n;
        b.delta = delta;
        b.add("instance_count", caps.log2_count, log2_count(static_cast<double>(count)));
        b.add("elements", std::log2(caps.elements), log2_count(max_elements));
        out.bounds.push_back(b);

        out.tags["oracle_yes"] = oracle;
        out.tags["accepted"] = outcome.accepted;
        out.tags["accepted_disjoint"] = outcome.accepted && outcome.cover_disjoint;
        out.tags["instances"] = static_cast<long long>(count);

        auto describe = [&](const Digraph& host) {
            return Json{{"host", serialize(host)}, {"pattern", serialize(t)}, {"delta", delta}};
        };
        if (!b.all_within() || !sizes_ok) {
            out.fail({{"reason", "batch exceeds a declared cap"}, {"bounds", to_json(b)}, {"input", describe(g)}});
            return out;
        }
        if (outcome.accepted == oracle)
            return out;

        auto mismatch = [&](const Digraph& host) {
            const bool o = tree_embed_backtrack(host, t).yes();
            const bool r = solve_ntree_via_setcover(host, t, delta, default_cover_solver(), variant).accepted;
            return o != r && r == outcome.accepted;
        };
        auto edges = minimize_by_deletion(g.edges(), [&](const std::vector<Edge>& e) {
            return mismatch(Digraph(n, e));
        });
        Json detail{{"oracle", oracle}, {"pipeline", outcome.accepted}, {"minimized", describe(Digraph(n, edges))}};
        if (variant == NTreeVariant::roots && !oracle)
            out.discrepancy = std::move(detail);   // over-acceptance is the known gap of this variant
        else
            out.fail(std::move(detail));
        return out;
    }

    inline TrialOutcome trial_ham(const Json& params, std::uint64_t seed, int trial)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        auto sizes = param(params, "sizes", std::vector<int>{4, 6, 8, 10});
        const int n = sizes[static_cast<std::size_t>(trial) % sizes.size()];
        const int delta = (trial / static_cast<int>(sizes.size())) % 2 == 0 ? 2 : n / 2;
        const double p = param(params, "edge_probability", 0.35);
        Digraph g;
        if (trial % 3 == 0) {
            g = plant_ham_cycle(n, uniform(rng, 0, n), seed).graph;
        } else {
            GenParams gp;
            gp.n = n;
            gp.edge_probability = p;
            gp.seed = seed;
            g = std::get<Digraph>(gen_random(InstanceKind::digraph, gp));
        }
        const bool oracle = heldkarp_ham(g).yes();
        HamReduction reduction(g, delta);
        const auto outcome = solve_batch(reduction, default_cover_solver());

        std::uint64_t count = 0;
        bool sizes_ok = true;
        reduction.for_each([&](const ProducedInstance& pi) {
            ++count;
            for (const auto& s : pi.instance.sets)
                sizes_ok &= static_cast<int>(s.size()) == delta;
            return true;
        });
        const auto caps = reduction.bounds();
        BoundReport b;
        b.reduction = "ham";
        b.ntilde = n;
        b.delta = delta;
        b.add("instance_count", caps.log2_count, log2_count(static_cast<double>(count)));
        out.bounds.push_back(b);
        out.tags["oracle_yes"] = oracle;
        out.tags["accepted"] = outcome.accepted;
        out.tags["accepted_disjoint"] = outcome.accepted && outcome.cover_disjoint;

        Json input{{"graph", serialize(g)}, {"delta", delta}};
        if (!sizes_ok)
            out.fail({{"reason", "a produced set does not have exactly delta nodes"}, {"input", input}});
        else if (!b.all_within())
            out.fail({{"reason", "batch exceeds its declared count"}, {"input", input}});
        else if (outcome.accepted && !outcome.cover_disjoint)
            out.fail({{"reason", "accepting cover is not pairwise disjoint"}, {"input", input}});
        else if (outcome.accepted != oracle) {
            auto edges = minimize_by_deletion(g.edges(), [&](const std::vector<Edge>& e) {
                Digraph h(n, e);
                return heldkarp_ham(h).yes() != solve_ham_via_setcover(h, delta, default_cover_solver()).accepted;
            });
            out.fail({{"oracle", oracle},
                      {"pipeline", outcome.accepted},
                      {"minimized", {{"graph", serialize(Digraph(n, edges))}, {"delta", delta}}}});
        }
        return out;
    }

    inline SetCoverInstance crafted_cover_instance(std::mt19937_64& rng, int n, int g, int m_min, int m_max,
                                                   std::uint64_t seed)
    {
        const int cap = std::max(1, n / (g * g));
        const int m = std::max(uniform(rng, m_min, m_max), (n + cap - 1) / cap);
        return plant_covered_universe(n, m, seed, cap).instance;
    }

    inline TrialOutcome trial_setcover_ktree(const Json& params, std::uint64_t seed, int trial)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        const int g = param(params, "g", 2);
        const int n = uniform(rng, param(params, "n_min", 8), param(params, "n_max", 12));
        auto inst = crafted_cover_instance(rng, n, g, param(params, "m_min", 5), param(params, "m_max", 8), seed);
        if (param(params, "large_sets", false) && trial % 2 == 1) {
            inst.sets.push_back(random_subset(rng, n, uniform(rng, n / (g * g) + 1, n)));
            inst.canonicalize();
        }
        const auto expected = setcover_dp(inst);
        const auto got = solve_setcover_via_ktree(inst, g, backtrack_ktree_solver());
        const auto& kt = got.ktree;

        const int L = pendant_group_size(n, g);
        BoundReport b;
        b.reduction = "setcover-ktree";
        b.ntilde = n;
        b.g = g;
        b.add("host_nodes", std::log2(static_cast<double>(HostGraphBundle::closed_form_size(n, inst.m(), g))),
              std::log2(static_cast<double>(kt.host_nodes)));
        b.add("tree_nodes", std::log2(4.0 + 4.0 * L + static_cast<double>(n) / g + g + n),
              log2_count(kt.max_tree_nodes));
        out.bounds.push_back(b);
        out.tags["trees_solved"] = static_cast<long long>(kt.trees_solved);
        out.tags["large_branch"] = got.from_large_branch;

        bool embedding_ok = true;
        if (kt.optimum) {
            auto host = build_host_graph(got.split.residual, g);
            auto tree = build_pattern_tree(kt.accepted, g, n);
            embedding_ok = verify_embedding(host.host, tree.tree, kt.embedding);
        }
        if (got.optimum != expected.optimum || !kt.size_formulas_hold || !b.all_within() || !embedding_ok)
            out.fail({{"expected", expected.optimum ? Json(*expected.optimum) : Json(nullptr)},
                      {"pipeline", got.optimum ? Json(*got.optimum) : Json(nullptr)},
                      {"size_formulas_hold", kt.size_formulas_hold},
                      {"embedding_ok", embedding_ok},
                      {"instance", serialize(inst)}});
        return out;
    }

    inline TrialOutcome trial_ppc_ktree(const Json& params, std::uint64_t seed, int)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        const int g = param(params, "g", 2);
        GenParams gp;
        gp.n = uniform(rng, 1, param(params, "n_max", 8));
        gp.m = uniform(rng, 1, param(params, "m_max", 7));
        gp.max_set_size = std::min(gp.n, 3);
        gp.seed = seed;
        auto inst = std::get<SetCoverInstance>(gen_random(InstanceKind::partialcover, gp));
        const auto expected = partialcover_dp(inst);
        const auto got = ppc_to_ktree(inst, g, backtrack_ktree_solver());
        const bool stream_ok =
            inst.p == 0 || BigInt(got.ktree.partitions_enumerated) == count_partitions(inst.p);
        out.tags["large_branch"] = got.from_large_branch;
        if (got.optimum != expected.optimum || !stream_ok)
            out.fail({{"expected", expected.optimum ? Json(*expected.optimum) : Json(nullptr)},
                      {"pipeline", got.optimum ? Json(*got.optimum) : Json(nullptr)},
                      {"partition_stream_ok", stream_ok},
                      {"instance", serialize(inst)}});
        return out;
    }

    inline TrialOutcome trial_exact_cover(const Json& params, std::uint64_t seed, int trial)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        auto deltas = param(params, "deltas", std::vector<int>{2, 3});
        const int delta = deltas[static_cast<std::size_t>(trial) % deltas.size()];
        const int n = uniform(rng, 1, param(params, "n_max", 12));
        SetCoverInstance inst;
        inst.n = n;
        inst.variant = CoverVariant::exact;
        if (trial % 2 == 0) {   // plant a partition of the ground set
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (int i = 0; i < n;) {
                const int size = uniform(rng, 1, n - i);
                inst.sets.emplace_back(order.begin() + i, order.begin() + i + size);
                i += size;
            }
        }
        const int extra = uniform(rng, 1, param(params, "m_max", 10));
        for (int s = 0; s < extra; ++s)
            inst.sets.push_back(random_subset(rng, n, uniform(rng, 1, n)));
        inst.canonicalize();
        const auto a = exactcover_with_large_sets(inst, delta);
        const auto b = exactcover_solve(inst);
        const bool cert_ok = !a.optimum || (verify_exact_cover(inst, a.certificate) &&
                                            static_cast<int>(a.certificate.size()) == *a.optimum);
        if (a.optimum != b.optimum || !cert_ok)
            out.fail({{"delta", delta},
                      {"with_large_sets", a.optimum ? Json(*a.optimum) : Json(nullptr)},
                      {"plain", b.optimum ? Json(*b.optimum) : Json(nullptr)},
                      {"instance", serialize(inst)}});
        return out;
    }

    inline TrialOutcome trial_setcover_oracles(const Json& params, std::uint64_t seed, int)
    {
        TrialOutcome out;
        auto rng = make_rng(seed);
        GenParams gp;
        gp.n = uniform(rng, 0, param(params, "n_max", 10));
        gp.m = uniform(rng, 0, param(params, "m_max", 12));
        gp.seed = seed;
        auto inst = std::get<SetCoverInstance>(gen_random(InstanceKind::setcover, gp));
        const auto dp = setcover_dp(inst);
        const auto brute = setcover_bruteforce(inst);
        const auto bnb = setcover_branch_and_bound(inst);
        auto partial = inst;
        partial.p = inst.n;
        const auto pc = partialcover_dp(partial);
        auto cert_ok = [&](const SolveResult& r) {
            return !r.optimum || (verify_cover(inst, r.certificate) &&
                                  static_cast<int>(r.certificate.size()) == *r.optimum);
        };
        const bool agree = dp.optimum == brute.optimum && dp.optimum == bnb.optimum &&
                           (!dp.optimum || pc.optimum == dp.optimum);
        if (!agree || !cert_ok(dp) || !cert_ok(brute) || !cert_ok(bnb)) {
            auto sets = minimize_by_deletion(inst.sets, [&](const std::vector<std::vector<int>>& s) {
                SetCoverInstance t = inst;
                t.sets = s;
                auto d = setcover_dp(t), b2 = setcover_bruteforce(t), c = setcover_branch_and_bound(t);
                return !(d.optimum == b2.optimum && d.optimum == c.optimum);
            });
            SetCoverInstance small = inst;
            small.sets = sets;
            out.fail({{"instance", serialize(inst)}, {"minimized", serialize(small)}});
        }
        return out;
    }

    inline TrialOutcome trial_color_coding(const Json& params, std::uint64_t seed, int)
    {
        TrialOutcome out;
        const int k = param(params, "k", 8);
        const int host_n = param(params, "host_n", 2 * k);
        auto planted = plant_embedded_tree(k, host_n, seed, param(params, "noise", 0.15));
        const auto r = ktree_colorcoding(planted.host, planted.pattern, param(params, "failure_prob", 0.01), seed);
        out.tags["yes"] = r.yes();
        out.tags["trials_run"] = static_cast<long long>(r.stats.explored);
        if (r.yes() && !verify_embedding(planted.host, planted.pattern, r.certificate))
            out.fail({{"reason", "embedding rejected by the checker"},
                      {"host", serialize(planted.host)},
                      {"pattern", serialize(planted.pattern)}});
        return out;
    }

    inline TrialOutcome trial_partitions(const Json&, std::uint64_t, int trial)
    {
        TrialOutcome out;
        const int a = trial + 1;
        std::set<std::vector<int>> seen;
        bool shape_ok = true;
        PartitionStream stream(a);
        while (stream.next()) {
            auto parts = stream.parts();
            std::vector<int> v(parts.begin(), parts.end());
            shape_ok &= std::accumulate(v.begin(), v.end(), 0) == a && std::is_sorted(v.rbegin(), v.rend()) &&
                        (v.empty() || v.back() >= 1);
            seen.insert(std::move(v));
        }
        const auto expected = count_partitions(a);
        if (!shape_ok || BigInt(seen.size()) != expected)
            out.fail({{"a", a}, {"distinct", seen.size()}, {"expected", expected.str()}, {"shape_ok", shape_ok}});
        return out;
    }

    using TrialFn = TrialOutcome (*)(const Json&, std::uint64_t, int);

    struct Family {
        const char* name;
        TrialFn run;
        int default_trials;
    };

    inline const std::vector<Family>& families()
    {
        static const std::vector<Family> all{
            {"tree_cover", trial_tree_cover, 1000},
            {"partitions", trial_partitions, 30},
            {"setcover_oracles", trial_setcover_oracles, 100},
            {"exact_cover", trial_exact_cover, 100},
            {"color_coding", trial_color_coding, 50},
            {"ntree", trial_ntree, 100},
            {"ham", trial_ham, 100},
            {"setcover_ktree", trial_setcover_ktree, 20},
            {"ppc_ktree", trial_ppc_ktree, 50},
        };
        return all;
    }

} // namespace detail

/// Configuration covering every family at acceptance scale.
inline Json default_verification_config()
{
    Json families = Json::object();
    families["tree_cover"] = {{"trials", 1000}, {"k_max", 200}};
    families["partitions"] = {{"trials", 30}};
    families["setcover_oracles"] = {{"trials", 100}, {"n_max", 10}, {"m_max", 12}};
    families["exact_cover"] = {{"trials", 100}, {"n_max", 12}, {"deltas", {2, 3}}};
    families["color_coding"] = {{"trials", 50}, {"k", 8}, {"host_n", 16}, {"failure_prob", 0.01}, {"max_misses", 1}};
    families["ntree"] = {{"trials", 100}, {"n_min", 4}, {"n_max", 7}, {"delta", 6}, {"variant", "anchored"}};
    families["ham"] = {{"trials", 100}, {"sizes", {4, 6, 8, 10}}};
    families["setcover_ktree"] = {{"trials", 20}, {"n_min", 8}, {"n_max", 12}, {"g", 2}};
    families["ppc_ktree"] = {{"trials", 50}, {"n_max", 8}, {"g", 2}};
    return {{"seed", 1}, {"families", families}};
}

/// Runs the configured families. A family runs when its name is a key of
/// config["families"]; its object may set "trials", "seed" and family parameters.
/// Failing trials are recorded with their inputs and never stop the suite.
inline Json run_verification_suite(const Json& config, int jobs = 1)
{
    const auto base_seed = config.value("seed", std::uint64_t{1});
    const Json& wanted = config.contains("families") ? config.at("families") : Json::object();
    Json report;
    report["seed"] = base_seed;
    Json fams = Json::array();
    long long total_failures = 0;

    for (const auto& fam : detail::families()) {
        if (!wanted.contains(fam.name))
            continue;
        const Json params = wanted.at(fam.name).is_object() ? wanted.at(fam.name) : Json::object();
        const int trials = params.value("trials", fam.default_trials);
        const auto seed = params.value("seed", base_seed);
        auto outcomes = detail::parallel_map(trials, jobs, [&](int i) {
            try {
                return fam.run(params, detail::trial_seed(seed, fam.name, i), i);
            } catch (const std::exception& e) {
                detail::TrialOutcome o;
                o.fail({{"error", e.what()}});
                return o;
            }
        });

        Json entry;
        entry["family"] = fam.name;
        entry["params"] = params;
        entry["trials"] = trials;
        Json failures = Json::array(), discrepancies = Json::array(), bounds = Json::array();
        std::map<std::string, long long> tags;
        int passed = 0, bounds_within = 0;
        for (int i = 0; i < trials; ++i) {
            auto& o = outcomes[i];
            if (o.ok)
                ++passed;
            else
                failures.push_back({{"trial", i}, {"detail", o.failure}});
            if (!o.discrepancy.is_null())
                discrepancies.push_back({{"trial", i}, {"detail", o.discrepancy}});
            for (const auto& b : o.bounds) {
                bounds.push_back(to_json(b));
                bounds_within += b.all_within();
            }
            for (const auto& [k, v] : o.tags)
                tags[k] += v;
        }
        if (std::string_view(fam.name) == "color_coding") {
            const long long misses = trials - tags["yes"];
            const long long allowed = params.value("max_misses", 1LL);
            if (misses > allowed)
                failures.push_back({{"trial", nullptr},
                                    {"detail", {{"reason", "too many planted instances answered no"},
                                                {"misses", misses},
                                                {"allowed", allowed}}}});
        }
        entry["passed"] = passed;
        entry["failed"] = static_cast<int>(failures.size());
        entry["failures"] = std::move(failures);
        entry["discrepancies"] = std::move(discrepancies);
        entry["tags"] = tags;
        entry["bound_reports"] = {{"count", bounds.size()}, {"within", bounds_within}, {"reports", bounds}};
        total_failures += entry["failed"].get<long long>();
        fams.push_back(std::move(entry));
    }
    report["families"] = std::move(fams);
    report["total_failures"] = total_failures;
    report["verdict"] = total_failures == 0 ? "pass" : "fail";
    return report;
}

} // namespace xcover
