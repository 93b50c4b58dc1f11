#pragma once

// Color coding for (Directed) kTree: colour the host with k colours at random and
// look for a colourful copy of the pattern by DP over (pattern node, host node,
// colour set). One-sided error: a "yes" always carries a checked embedding.

#include "xcover/errors.hpp"
#include "xcover/instances.hpp"
#include "xcover/solve_result.hpp"
#include "xcover/verify.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <random>

namespace xcover {

/// Number of random colourings needed for one-sided error at most `failure_prob`:
/// a fixed copy is colourful with probability k!/k^k >= e^{-k}.
inline std::uint64_t colorcoding_trials(int k, double failure_prob)
{
    if (!(failure_prob > 0.0 && failure_prob < 1.0))
        throw std::invalid_argument("failure probability must lie in (0, 1)");
    return static_cast<std::uint64_t>(std::ceil(std::exp(static_cast<double>(k)) * std::log(1.0 / failure_prob)));
}

namespace detail {

    class ColorfulTreeDp {
    public:
        ColorfulTreeDp(const Digraph& g, const PatternTree& t) : g_(g), t_(t), k_(t.size()), n_(g.num_nodes())
        {
            // post-order of the pattern
            std::vector<int> stack{t.root()};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                post_.push_back(u);
                for (int c : t.children(u))
                    stack.push_back(c);
            }
            std::reverse(post_.begin(), post_.end());
            size_.assign(k_, 1);
            for (int u : post_)
                if (u != t.root())
                    size_[t.parent(u)] += size_[u];
            table_.assign(k_, std::vector<std::vector<std::uint32_t>>(n_));
            mark_.assign(std::size_t{1} << k_, 0);
        }

        /// Runs the DP for one colouring; fills `embedding` when a colourful copy exists.
        bool solve(const std::vector<int>& color, std::vector<int>& embedding)
        {
            color_ = &color;
            for (int u : post_) {
                for (int v = 0; v < n_; ++v) {
                    auto& cur = table_[u][v];
                    cur.assign(1, std::uint32_t{1} << color[v]);
                    for (int c : t_.children(u)) {
                        if (cur.empty())
                            break;
                        std::vector<std::uint32_t> reach;
                        ++epoch_;
                        for (int w : child_hosts(c, v))
                            for (auto s : table_[c][w])
                                if (mark_[s] != epoch_) {
                                    mark_[s] = epoch_;
                                    reach.push_back(s);
                                }
                        std::vector<std::uint32_t> merged;
                        ++epoch_;
                        for (auto a : cur)
                            for (auto b : reach)
                                if (!(a & b) && mark_[a | b] != epoch_) {
                                    mark_[a | b] = epoch_;
                                    merged.push_back(a | b);
                                }
                        cur = std::move(merged);
                    }
                }
            }
            const std::uint32_t full = k_ == 32 ? ~0u : (1u << k_) - 1;
            for (int v = 0; v < n_; ++v)
                for (auto s : table_[t_.root()][v])
                    if (s == full) {
                        embedding.assign(k_, -1);
                        return rebuild(t_.root(), v, full, embedding);
                    }
            return false;
        }

    private:
        std::vector<int> child_hosts(int c, int v) const
        {
            std::span<const int> src;
            switch (t_.dir(c)) {
            case EdgeDir::down: src = g_.out_neighbors(v); break;
            case EdgeDir::up: src = g_.in_neighbors(v); break;
            case EdgeDir::undirected: src = g_.neighbors(v); break;
            }
            return {src.begin(), src.end()};
        }

        // Splits `s` among u's own colour and its children, then recurses.
        bool rebuild(int u, int v, std::uint32_t s, std::vector<int>& emb)
        {
            emb[u] = v;
            const auto& kids = t_.children(u);
            std::vector<std::pair<int, std::uint32_t>> pick(kids.size());
            std::function<bool(std::size_t, std::uint32_t)> split = [&](std::size_t i, std::uint32_t rest) {
                if (i == kids.size())
                    return rest == 0;
                const int c = kids[i];
                for (int w : child_hosts(c, v))
                    for (auto sc : table_[c][w])
                        if ((sc & rest) == sc && std::popcount(sc) == size_[c]) {
                            pick[i] = {w, sc};
                            if (split(i + 1, rest & ~sc))
                                return true;
                        }
                return false;
            };
            if (!split(0, s & ~(std::uint32_t{1} << (*color_)[v])))
                return false;
            for (std::size_t i = 0; i < kids.size(); ++i)
                if (!rebuild(kids[i], pick[i].first, pick[i].second, emb))
                    return false;
            return true;
        }

        const Digraph& g_;
        const PatternTree& t_;
        int k_, n_;
        std::vector<int> post_, size_;
        std::vector<std::vector<std::vector<std::uint32_t>>> table_;   // [pattern node][host node] -> colour sets
        std::vector<std::uint32_t> mark_;
        std::uint32_t epoch_ = 0;
        const std::vector<int>* color_ = nullptr;
    };

} // namespace detail

/// Runs exactly `trials` random colourings. Trial t colours the host from an RNG seeded
/// by (seed, t), so the outcome is a deterministic function of the inputs.
inline SolveResult ktree_colorcoding_trials(const Digraph& host, const PatternTree& pattern, std::uint64_t trials,
                                            std::uint64_t seed,
                                            const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    const int k = pattern.size();
    if (k > limits.max_pattern_nodes)
        throw CapacityError("color coding supports patterns of at most " +
                            std::to_string(limits.max_pattern_nodes) + " nodes");
    SolveResult r;
    r.answer = Answer::no;
    if (k > host.num_nodes()) {
        r.stats.wall_ms = clock.elapsed_ms();
        return r;
    }
    detail::ColorfulTreeDp dp(host, pattern);
    std::vector<int> color(host.num_nodes());
    std::vector<int> embedding;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++r.stats.explored;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<int> pick(0, k - 1);
        for (auto& c : color)
            c = pick(rng);
        if (dp.solve(color, embedding) && verify_embedding(host, pattern, embedding)) {
            r.answer = Answer::yes;
            r.certificate = embedding;
            break;
        }
    }
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Monte-Carlo kTree with one-sided error at most `failure_prob`.
inline SolveResult ktree_colorcoding(const Digraph& host, const PatternTree& pattern, double failure_prob,
                                     std::uint64_t seed, const SolverLimits& limits = SolverLimits::from_env())
{
    return ktree_colorcoding_trials(host, pattern, colorcoding_trials(pattern.size(), failure_prob), seed, limits);
}

} // namespace xcover
