// xcover: solvers, reductions and verification from the command line.
//
// Every command writes JSON lines to stdout; diagnostics go to stderr.
// Exit codes: 0 success, 1 verification failures, 2 usage/input errors,
// 3 capacity, precondition or budget errors.

#include <xcover.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace xcover;

namespace {

constexpr const char* tool_version = "xcover 0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string kind;
    std::vector<std::string> files;
    int delta = 0;
    int g = 2;
    double epsilon = 0.0;
    std::string variant = "anchored";
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    double failure_prob = 0.01;
    int jobs = 1;
    std::string emit_dir;
    std::uint64_t budget = 0;

    // bounds / partitions / verify / generate
    double ntilde = 0;
    int count = -1;
    bool list = false;
    std::string config, out;
    int n = 0, m = 0, max_set_size = 0, p = -1, k = 0, host_n = 0, extra_edges = 0;
    double edge_probability = 0.5;
    bool oriented = false, distinct = false;
    std::string planted;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest(const std::vector<std::string>& contents)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& c : contents) {
        for (unsigned char ch : c)
            h = (h ^ ch) * 0x100000001b3ULL;
        h = (h ^ 0xff) * 0x100000001b3ULL;   // file separator
    }
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

struct Inputs {
    std::vector<Instance> values;
    std::string digest;
};

Inputs load(const std::vector<std::string>& files, std::size_t expected)
{
    if (files.size() != expected)
        throw UsageError("expected " + std::to_string(expected) + " input file(s), got " +
                         std::to_string(files.size()));
    Inputs in;
    std::vector<std::string> contents;
    for (const auto& f : files) {
        contents.push_back(read_file(f));
        try {
            in.values.push_back(parse_instance(contents.back()));
        } catch (const ParseError&) {
            std::cerr << "in " << f << '\n';
            throw;
        }
    }
    in.digest = digest(contents);
    return in;
}

template <typename T>
const T& expect(const Instance& v, const char* what)
{
    if (!std::holds_alternative<T>(v))
        throw UsageError(std::string("input is not ") + what);
    return std::get<T>(v);
}

SolverLimits limits_for(const Options& o)
{
    auto limits = SolverLimits::from_env();
    if (o.budget > 0)
        limits.expansion_budget = o.budget;
    return limits;
}

void emit(Json record)
{
    std::cout << record.dump() << '\n';
}

Json base_record(const char* command, const Options& o, const std::string& input_digest)
{
    Json r;
    r["command"] = command;
    if (!o.kind.empty())
        r["kind"] = o.kind;
    if (!input_digest.empty())
        r["input_digest"] = input_digest;
    return r;
}

Json opt_int(const std::optional<int>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

NTreeVariant parse_variant(const std::string& s)
{
    auto v = variant_from_name(s);
    if (!v)
        throw UsageError("unknown variant " + s);
    return *v;
}

SetCoverSolver cover_solver(const SolverLimits& limits)
{
    return [limits](const SetCoverInstance& inst) { return setcover_branch_and_bound(inst, limits); };
}

// ---- solve -----------------------------------------------------------------------

int run_solve(const Options& o)
{
    const auto limits = limits_for(o);
    const bool pair = o.kind == "ktree" || o.kind == "ktree-cc";
    auto in = load(o.files, pair ? 2 : 1);
    Json params = Json::object();
    SolveResult r;
    if (o.kind == "setcover" || o.kind == "setcover-bruteforce" || o.kind == "setcover-bnb") {
        const auto& inst = expect<SetCoverInstance>(in.values[0], "a set cover instance");
        r = o.kind == "setcover"              ? setcover_dp(inst, limits)
            : o.kind == "setcover-bruteforce" ? setcover_bruteforce(inst, limits)
                                              : setcover_branch_and_bound(inst, limits);
    } else if (o.kind == "exactcover") {
        const auto& inst = expect<SetCoverInstance>(in.values[0], "a set cover instance");
        if (o.delta > 0) {
            params["delta"] = o.delta;
            r = exactcover_with_large_sets(inst, o.delta, limits);
        } else {
            r = exactcover_solve(inst, limits);
        }
    } else if (o.kind == "partialcover") {
        auto inst = expect<SetCoverInstance>(in.values[0], "a set cover instance");
        if (o.p >= 0)
            inst.p = o.p;
        params["p"] = inst.p;
        r = partialcover_dp(inst, limits);
    } else if (o.kind == "ham") {
        r = heldkarp_ham(expect<Digraph>(in.values[0], "a graph"), limits);
    } else if (o.kind == "ktree") {
        EmbedOptions opts;
        opts.budget = limits.expansion_budget;
        r = tree_embed_backtrack(expect<Digraph>(in.values[0], "a graph"),
                                 expect<PatternTree>(in.values[1], "a tree"), opts);
    } else if (o.kind == "ktree-cc") {
        const auto& host = expect<Digraph>(in.values[0], "a graph");
        const auto& tree = expect<PatternTree>(in.values[1], "a tree");
        params["seed"] = o.seed;
        if (o.trials > 0) {
            params["trials"] = o.trials;
            r = ktree_colorcoding_trials(host, tree, o.trials, o.seed, limits);
        } else {
            params["failure_prob"] = o.failure_prob;
            r = ktree_colorcoding(host, tree, o.failure_prob, o.seed, limits);
        }
    } else {
        throw UsageError("unknown solve kind " + o.kind);
    }
    std::cerr << "solved in " << r.stats.wall_ms << " ms\n";
    auto rec = base_record("solve", o, in.digest);
    rec["params"] = params;
    const Json body = to_json(r);
    for (auto& [key, value] : body.items())
        rec[key] = value;
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

// ---- reduce ------------------------------------------------------------------------

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + path.string());
    out << text;
}

Json bounds_json(const BatchBounds& b)
{
    return {{"declared_count_log2", b.log2_count}, {"declared_elements", b.elements}};
}

template <typename Batch>
int reduce_batch(const Batch& batch, const Options& o, const std::string& input_digest, Json params)
{
    if (!o.emit_dir.empty())
        fs::create_directories(o.emit_dir);
    std::uint64_t index = 0;
    auto tally = batch.for_each([&](const ProducedInstance& pi) {
        const std::string text =
            "c provenance " + pi.provenance_text() + "\nc target " + std::to_string(pi.target) + "\n" +
            serialize(pi.instance);
        if (!o.emit_dir.empty()) {
            std::ostringstream name;
            name << "instance_" << std::setw(6) << std::setfill('0') << index << ".sc";
            write_text(fs::path(o.emit_dir) / name.str(), text);
        } else {
            emit({{"command", "reduce"}, {"index", index}, {"target", pi.target},
                  {"provenance", pi.provenance_text()}, {"instance", serialize(pi.instance)}});
        }
        ++index;
        return true;
    });
    auto rec = base_record("reduce", o, input_digest);
    rec["params"] = std::move(params);
    rec["produced"] = tally.produced;
    rec["discarded_guesses"] = tally.discarded;
    rec["max_elements"] = tally.max_elements;
    rec["bounds"] = bounds_json(batch.bounds());
    rec["realised_count_log2"] = log2_count(static_cast<double>(tally.produced));
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

int reduce_ktree(const Options& o, bool partial)
{
    auto in = load(o.files, 1);
    auto inst = expect<SetCoverInstance>(in.values[0], "a set cover instance");
    if (partial && o.p >= 0)
        inst.p = o.p;
    const int leaves = partial ? inst.p : inst.n;
    if (partial && (leaves < 0 || leaves > inst.n))
        throw UsageError("partial cover target p outside [0, n]");
    if (auto big = first_large_set(inst, o.g, partial ? leaves - 1 : inst.n))
        throw PreconditionError("set " + std::to_string(*big) +
                                " is too large for the host graph; the pipeline command handles large sets");
    auto host = detail::build_host_graph_unchecked(inst, o.g);
    const auto forcing = check_forcing(host);
    if (!forcing.holds())
        throw PreconditionError("forcing condition fails for this instance");

    if (!o.emit_dir.empty()) {
        fs::create_directories(o.emit_dir);
        write_text(fs::path(o.emit_dir) / "host.graph", serialize(host.host));
    }
    auto partitions = all_partitions(leaves);
    std::stable_sort(partitions.begin(), partitions.end(),
                     [](const Partition& a, const Partition& b) { return a.length() < b.length(); });
    int max_tree = 0;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto tree = build_pattern_tree(partitions[i], o.g, inst.n);
        max_tree = std::max(max_tree, tree.tree.size());
        std::string parts;
        for (int x : partitions[i].parts)
            parts += ' ' + std::to_string(x);
        if (!o.emit_dir.empty()) {
            std::ostringstream name;
            name << "tree_" << std::setw(6) << std::setfill('0') << i << ".tree";
            write_text(fs::path(o.emit_dir) / name.str(), "c partition" + parts + "\n" + serialize(tree.tree));
        } else {
            emit({{"command", "reduce"}, {"index", i}, {"partition", partitions[i].parts},
                  {"tree_nodes", tree.tree.size()}, {"tree", serialize(tree.tree)}});
        }
    }
    auto rec = base_record("reduce", o, in.digest);
    rec["params"] = {{"g", o.g}};
    if (partial)
        rec["params"]["p"] = leaves;
    rec["host_nodes"] = host.host.num_nodes();
    rec["host_nodes_closed_form"] = HostGraphBundle::closed_form_size(host.n, host.m, host.g);
    rec["trees"] = partitions.size();
    rec["max_tree_nodes"] = max_tree;
    rec["forcing"] = {{"hub_degree_floor", forcing.hub_degree_floor}, {"max_set_degree", forcing.max_set_degree}};
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

int run_reduce(const Options& o)
{
    if (o.kind == "ntree-to-sc") {
        if (o.delta <= 0)
            throw UsageError("ntree-to-sc needs --delta");
        auto in = load(o.files, 2);
        NTreeReduction r(expect<Digraph>(in.values[0], "a graph"), expect<PatternTree>(in.values[1], "a tree"),
                         o.delta, parse_variant(o.variant));
        return reduce_batch(r, o, in.digest,
                            {{"delta", o.delta}, {"variant", o.variant}, {"l", r.l()}, {"target", r.target()}});
    }
    if (o.kind == "ham-to-sc") {
        if (o.delta <= 0)
            throw UsageError("ham-to-sc needs --delta");
        auto in = load(o.files, 1);
        HamReduction r(expect<Digraph>(in.values[0], "a graph"), o.delta);
        return reduce_batch(r, o, in.digest, {{"delta", o.delta}, {"target", r.target()}});
    }
    if (o.kind == "sc-to-ktree")
        return reduce_ktree(o, false);
    if (o.kind == "ppc-to-ktree")
        return reduce_ktree(o, true);
    throw UsageError("unknown reduction " + o.kind);
}

// ---- pipeline ----------------------------------------------------------------------

Json outcome_json(const BatchOutcome& out)
{
    Json j;
    j["answer"] = out.accepted ? "yes" : "no";
    j["instances_solved"] = out.accepted ? out.accepted_index + 1 : out.tally.produced;
    if (out.accepted) {
        j["accepted_provenance"] = out.witness.provenance_text();
        j["accepted_target"] = out.witness.target;
        j["certificate"] = out.witness_result.certificate;
        j["cover_disjoint"] = out.cover_disjoint;
    }
    return j;
}

Json composed_json(const ComposedOutcome& c)
{
    Json j;
    j["answer"] = c.optimum ? "yes" : "infeasible";
    j["optimum"] = opt_int(c.optimum);
    j["from_large_branch"] = c.from_large_branch;
    j["large_sets"] = c.split.large_sets;
    j["partitions_enumerated"] = c.ktree.partitions_enumerated;
    j["partitions_tested"] = c.ktree.partitions_tested;
    j["trees_solved"] = c.ktree.trees_solved;
    j["host_nodes"] = c.ktree.host_nodes;
    j["max_tree_nodes"] = c.ktree.max_tree_nodes;
    if (c.from_large_branch)
        j["certificate"] = c.split.certificate;
    else if (c.ktree.optimum)
        j["accepted_partition"] = c.ktree.accepted.parts;
    return j;
}

int run_pipeline(const Options& o)
{
    const auto limits = limits_for(o);
    auto rec = base_record("pipeline", o, "");
    Json result;
    std::string input_digest;
    if (o.kind == "ntree") {
        if (o.delta <= 0)
            throw UsageError("ntree pipeline needs --delta");
        auto in = load(o.files, 2);
        input_digest = in.digest;
        auto out = solve_ntree_via_setcover(expect<Digraph>(in.values[0], "a graph"),
                                            expect<PatternTree>(in.values[1], "a tree"), o.delta,
                                            cover_solver(limits), parse_variant(o.variant), o.jobs);
        rec["params"] = {{"delta", o.delta}, {"variant", o.variant}};
        result = outcome_json(out);
    } else if (o.kind == "ham") {
        if (o.delta <= 0)
            throw UsageError("ham pipeline needs --delta");
        auto in = load(o.files, 1);
        input_digest = in.digest;
        auto out = solve_ham_via_setcover(expect<Digraph>(in.values[0], "a graph"), o.delta,
                                          cover_solver(limits), o.jobs);
        rec["params"] = {{"delta", o.delta}};
        result = outcome_json(out);
    } else if (o.kind == "setcover-ktree" || o.kind == "ppc-ktree") {
        auto in = load(o.files, 1);
        input_digest = in.digest;
        auto inst = expect<SetCoverInstance>(in.values[0], "a set cover instance");
        const auto solver = backtrack_ktree_solver(limits.expansion_budget);
        rec["params"] = {{"g", o.g}};
        if (o.kind == "ppc-ktree") {
            if (o.p >= 0)
                inst.p = o.p;
            rec["params"]["p"] = inst.p;
            result = composed_json(ppc_to_ktree(inst, o.g, solver, limits));
        } else {
            result = composed_json(solve_setcover_via_ktree(inst, o.g, solver, limits));
        }
    } else {
        throw UsageError("unknown pipeline " + o.kind);
    }
    rec["input_digest"] = input_digest;
    for (auto& [key, value] : result.items())
        rec[key] = value;
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

// ---- verify ------------------------------------------------------------------------

int run_verify(const Options& o)
{
    Json config = default_verification_config();
    std::string input_digest;
    if (!o.config.empty()) {
        const auto text = read_file(o.config);
        input_digest = digest({text});
        try {
            config = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw UsageError(o.config + ": " + e.what());
        }
    }
    if (o.trials > 0 && config.contains("families"))
        for (auto& [name, fam] : config["families"].items()) {
            if (!fam.is_object())
                fam = Json::object();
            fam["trials"] = o.trials;
        }
    const auto report = run_verification_suite(config, o.jobs);
    if (!o.out.empty())
        write_text(o.out, report.dump(2) + "\n");

    auto rec = base_record("verify", o, input_digest);
    rec["verdict"] = report["verdict"];
    rec["total_failures"] = report["total_failures"];
    Json fams = Json::array();
    for (const auto& f : report["families"]) {
        fams.push_back({{"family", f["family"]},
                        {"trials", f["trials"]},
                        {"passed", f["passed"]},
                        {"failed", f["failed"]},
                        {"discrepancies", f["discrepancies"].size()},
                        {"bounds_within", f["bound_reports"]["within"]},
                        {"bound_reports", f["bound_reports"]["count"]}});
        std::cerr << f["family"].get<std::string>() << ": " << f["passed"] << "/" << f["trials"] << " passed\n";
    }
    rec["families"] = std::move(fams);
    if (o.out.empty())
        rec["report"] = report;
    rec["version"] = tool_version;
    emit(std::move(rec));
    return report["total_failures"].get<long long>() == 0 ? 0 : 1;
}

// ---- bounds ------------------------------------------------------------------------

int run_bounds(const Options& o)
{
    if (o.ntilde < 2 || o.delta < 1)
        throw UsageError("bounds needs --ntilde >= 2 and --delta >= 1");
    const double nt = o.ntilde, d = o.delta;
    const double lg = std::log2(nt);
    Json rec = base_record("bounds", o, "");
    rec["params"] = {{"ntilde", nt}, {"delta", o.delta}};
    rec["l"] = o.delta / 3 + 1;
    rec["max_subtrees"] = 9.0 * nt / d;
    rec["instance_count_log2"] = 9.0 * nt / d * lg;
    rec["anchored_instance_count_log2"] = 18.0 * nt / d * lg;
    rec["elements_bound"] = inflated_elements(nt, d);
    rec["enumeration_log2"] = (d + 1) * lg;
    if (o.delta >= 2) {
        const double lambda = koivisto_lambda(d);
        rec["lambda"] = lambda;
        rec["lambda_cap"] = 1.0 - 1.0 / (2.0 * d);
        if (d <= nt)
            rec["composed_runtime_log2"] =
                compose_runtime(nt, d, [lambda](double n, double) { return lambda * n; }, 9.0);
    }
    if (o.epsilon > 0) {
        const double e = o.epsilon;
        const double pd = reduction_delta(e, nt);
        Json eps;
        eps["epsilon"] = e;
        eps["delta"] = pd;
        eps["target_log2"] = nt - e * nt / 2.0;
        if (pd <= nt)
            eps["composed_runtime_log2"] =
                compose_runtime(nt, pd, [e](double n, double) { return (1.0 - e) * n; }, 9.0);
        else
            eps["composed_runtime_log2"] = nullptr;
        eps["within_target"] = pipeline_beats_target(e, nt);
        const auto threshold = pipeline_threshold(e);
        eps["threshold_ntilde"] = threshold ? Json(*threshold) : Json(nullptr);
        rec["epsilon"] = std::move(eps);
    }
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

// ---- partitions ----------------------------------------------------------------------

int run_partitions(const Options& o)
{
    if (o.count < 0)
        throw UsageError("partitions needs --count a with a >= 0");
    if (o.list) {
        PartitionStream s(o.count);
        std::uint64_t i = 0;
        while (s.next()) {
            auto parts = s.parts();
            Json r{{"command", "partitions"}, {"index", i++}, {"parts", std::vector<int>(parts.begin(), parts.end())}};
            if (o.g > 0) {
                auto sh = shrink_partition(parts, o.g);
                r["grouped"] = sh.grouped;
                r["remainder"] = sh.remainder;
            }
            emit(std::move(r));
        }
    }
    Json rec = base_record("partitions", o, "");
    rec["a"] = o.count;
    const auto count = count_partitions(o.count);
    if (count <= BigInt(std::numeric_limits<std::uint64_t>::max()))
        rec["count"] = count.convert_to<std::uint64_t>();
    else
        rec["count"] = count.str();
    if (o.count >= 1) {
        const double asym = partition_asymptotic(o.count);
        rec["asymptotic"] = asym;
        rec["ratio"] = count.convert_to<double>() / asym;
    }
    rec["version"] = tool_version;
    emit(std::move(rec));
    return 0;
}

// ---- generate ------------------------------------------------------------------------

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (int x : v)
        s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

int run_generate(const Options& o)
{
    auto out_text = [&](const std::string& name, const std::string& text) {
        if (o.emit_dir.empty()) {
            std::cout << text;
        } else {
            fs::create_directories(o.emit_dir);
            write_text(fs::path(o.emit_dir) / name, text);
        }
    };
    if (!o.planted.empty()) {
        if (o.planted == "ham") {
            auto p = plant_ham_cycle(o.n, o.extra_edges, o.seed);
            out_text("planted.graph", "c witness " + join(p.cycle) + "\n" + serialize(p.graph));
        } else if (o.planted == "cover") {
            auto p = plant_covered_universe(o.n, o.m, o.seed, o.max_set_size);
            out_text("planted.sc", "c witness " + join(p.cover) + "\n" + serialize(p.instance));
        } else if (o.planted == "tree") {
            if (o.emit_dir.empty())
                throw UsageError("a planted tree has two files; pass --emit-dir");
            auto p = plant_embedded_tree(o.k, o.host_n, o.seed, o.edge_probability, o.oriented);
            out_text("host.graph", serialize(p.host));
            out_text("pattern.tree", "c witness " + join(p.embedding) + "\n" + serialize(p.pattern));
        } else {
            throw UsageError("unknown planted kind " + o.planted);
        }
        return 0;
    }
    auto kind = kind_from_name(o.kind);
    if (!kind)
        throw UsageError("unknown instance kind " + o.kind);
    GenParams gp;
    gp.n = o.n;
    gp.m = o.m;
    gp.max_set_size = o.max_set_size;
    gp.p = o.p;
    gp.edge_probability = o.edge_probability;
    gp.distinct = o.distinct;
    gp.oriented = o.oriented;
    gp.seed = o.seed;
    out_text("generated.txt", serialize(gen_random(*kind, gp)));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Set Cover / tree-pattern reductions, exact solvers and differential verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    Options o;

    auto common_budget = [&](CLI::App* c) {
        c->add_option("--budget", o.budget, "node-expansion budget for searches");
    };

    auto* solve = app.add_subcommand("solve", "solve one instance exactly");
    solve->add_option("kind", o.kind,
                      "setcover | setcover-bruteforce | setcover-bnb | exactcover | partialcover | ham | ktree | ktree-cc")
        ->required();
    solve->add_option("files", o.files, "instance file(s); ktree kinds take <host> <tree>")->required();
    solve->add_option("--delta", o.delta, "exactcover: guess sets larger than this first");
    solve->add_option("--p", o.p, "partialcover: override the coverage target");
    solve->add_option("--failure-prob", o.failure_prob, "ktree-cc: one-sided error bound");
    solve->add_option("--trials", o.trials, "ktree-cc: fixed number of colourings");
    solve->add_option("--seed", o.seed, "ktree-cc: random seed");
    common_budget(solve);

    auto* reduce = app.add_subcommand("reduce", "stream the instances a reduction produces");
    reduce->add_option("kind", o.kind, "ntree-to-sc | ham-to-sc | sc-to-ktree | ppc-to-ktree")->required();
    reduce->add_option("files", o.files, "input file(s); ntree-to-sc takes <host> <tree>")->required();
    reduce->add_option("--delta", o.delta, "set size bound");
    reduce->add_option("--g", o.g, "grouping parameter for the kTree reductions");
    reduce->add_option("--p", o.p, "ppc-to-ktree: override the coverage target");
    reduce->add_option("--variant", o.variant, "roots | anchored")->check(CLI::IsMember({"roots", "anchored"}));
    reduce->add_option("--emit-dir", o.emit_dir, "write produced instances here instead of stdout");

    auto* pipeline = app.add_subcommand("pipeline", "run a reduction and solve what it produces");
    pipeline->add_option("kind", o.kind, "ntree | ham | setcover-ktree | ppc-ktree")->required();
    pipeline->add_option("files", o.files, "input file(s); ntree takes <host> <tree>")->required();
    pipeline->add_option("--delta", o.delta, "set size bound");
    pipeline->add_option("--g", o.g, "grouping parameter for the kTree reductions");
    pipeline->add_option("--p", o.p, "ppc-ktree: override the coverage target");
    pipeline->add_option("--variant", o.variant, "roots | anchored")->check(CLI::IsMember({"roots", "anchored"}));
    pipeline->add_option("--jobs", o.jobs, "solve produced instances on this many threads")
        ->check(CLI::PositiveNumber);
    common_budget(pipeline);

    auto* verify = app.add_subcommand("verify", "differential verification against brute-force oracles");
    verify->add_option("--config", o.config, "JSON config; defaults to the built-in acceptance config");
    verify->add_option("--out", o.out, "write the full report here");
    verify->add_option("--jobs", o.jobs, "run trials on this many threads")->check(CLI::PositiveNumber);
    verify->add_option("--trials", o.trials, "override every family's trial count");

    auto* bounds = app.add_subcommand("bounds", "evaluate the counting and running-time bounds");
    bounds->add_option("--ntilde", o.ntilde, "pattern/host size")->required();
    bounds->add_option("--delta", o.delta, "set size bound")->required();
    bounds->add_option("--epsilon", o.epsilon, "also evaluate the delta = 81/eps * log2(ntilde) instantiation");

    auto* partitions = app.add_subcommand("partitions", "count or list integer partitions");
    partitions->add_option("--count", o.count, "the integer to partition")->required();
    partitions->add_flag("--list", o.list, "emit every partition");
    partitions->add_option("--g", o.g, "with --list: also show the grouped form");

    auto* generate = app.add_subcommand("generate", "write a seeded random or planted instance");
    generate->add_option("kind", o.kind, "setcover | exactcover | partialcover | digraph | graph | tree");
    generate->add_option("--planted", o.planted, "ham | tree | cover");
    generate->add_option("--n", o.n, "elements / nodes");
    generate->add_option("--m", o.m, "sets");
    generate->add_option("--max-set-size", o.max_set_size, "largest set");
    generate->add_option("--p", o.p, "partial cover target");
    generate->add_option("--k", o.k, "planted tree size");
    generate->add_option("--host-n", o.host_n, "planted tree host size");
    generate->add_option("--extra-edges", o.extra_edges, "planted cycle: additional random edges");
    generate->add_option("--edge-probability", o.edge_probability, "edge probability / planted tree noise");
    generate->add_flag("--oriented", o.oriented, "orient tree edges");
    generate->add_flag("--distinct", o.distinct, "sets pairwise distinct");
    generate->add_option("--seed", o.seed, "random seed");
    generate->add_option("--emit-dir", o.emit_dir, "write files here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve)
            return run_solve(o);
        if (*reduce)
            return run_reduce(o);
        if (*pipeline)
            return run_pipeline(o);
        if (*verify)
            return run_verify(o);
        if (*bounds)
            return run_bounds(o);
        if (*partitions)
            return run_partitions(o);
        if (*generate)
            return run_generate(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
