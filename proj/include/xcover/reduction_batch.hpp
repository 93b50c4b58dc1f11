#pragma once

// Shared plumbing for reductions that turn one instance into a stream of Set Cover
// instances: the produced record, declared caps, and a solve loop that stops at the
// first accepted instance.

#include "xcover/instances.hpp"
#include "xcover/setcover_solvers.hpp"
#include "xcover/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <string>
#include <utility>

namespace xcover {

struct ProducedInstance {
    SetCoverInstance instance;
    int target = 0;   // required cover size
    /// The guess that generated the instance: (key, host node) pairs. Keys are pattern
    /// nodes for nTree batches and cycle positions for Hamiltonicity batches.
    std::vector<std::pair<int, int>> provenance;

    std::string provenance_text() const
    {
        std::string s;
        for (auto [key, v] : provenance) {
            if (!s.empty())
                s += ' ';
            s += std::to_string(key) + ':' + std::to_string(v);
        }
        return s;
    }
};

/// Declared caps on a batch, with the count kept in log2 space.
struct BatchBounds {
    double log2_count = 0.0;
    double elements = 0.0;
};

struct BatchTally {
    std::uint64_t produced = 0;
    std::uint64_t discarded = 0;   // guesses rejected before an instance was built
    int max_elements = 0;

    void record(const SetCoverInstance& inst)
    {
        ++produced;
        max_elements = std::max(max_elements, inst.n);
    }
};

/// Return false to stop the stream.
using InstanceVisitor = std::function<bool(const ProducedInstance&)>;

/// Removes repeated sets after canonicalising each one.
inline void dedup_sets(SetCoverInstance& inst)
{
    inst.canonicalize();
    inst.sets.erase(std::unique(inst.sets.begin(), inst.sets.end()), inst.sets.end());
}

struct BatchOutcome {
    bool accepted = false;
    std::uint64_t accepted_index = 0;   // position of the accepting instance in the stream
    ProducedInstance witness;           // the accepting instance, when accepted
    SolveResult witness_result;
    bool cover_disjoint = false;        // the accepting cover's sets are pairwise disjoint
    BatchTally tally;                   // covers the prefix of the stream that was solved
    std::uint64_t solver_explored = 0;
};

/// Solves a stream in order and stops at the first instance whose optimum equals its
/// target. With jobs > 1, chunks of the stream are solved concurrently; the reported
/// instance is still the first accepting one in stream order.
template <typename Batch>
BatchOutcome solve_batch(const Batch& batch, const SetCoverSolver& solver, int jobs = 1)
{
    BatchOutcome out;
    auto accepts = [](const ProducedInstance& p, const SolveResult& r) {
        return r.optimum && *r.optimum == p.target;
    };
    auto take = [&](ProducedInstance p, SolveResult r, std::uint64_t index) {
        out.accepted = true;
        out.accepted_index = index;
        out.cover_disjoint = pairwise_disjoint(p.instance, r.certificate);
        out.witness = std::move(p);
        out.witness_result = std::move(r);
    };

    std::uint64_t index = 0;
    if (jobs <= 1) {
        out.tally = batch.for_each([&](const ProducedInstance& p) {
            auto r = solver(p.instance);
            out.solver_explored += r.stats.explored;
            if (accepts(p, r)) {
                take(p, std::move(r), index);
                return false;
            }
            ++index;
            return true;
        });
        return out;
    }

    const std::size_t chunk = static_cast<std::size_t>(jobs) * 8;
    std::vector<ProducedInstance> pending;
    BatchTally seen;
    auto flush = [&]() {
        std::vector<std::future<SolveResult>> running;
        std::vector<SolveResult> results(pending.size());
        for (std::size_t start = 0; start < pending.size(); start += static_cast<std::size_t>(jobs)) {
            const std::size_t stop = std::min(pending.size(), start + static_cast<std::size_t>(jobs));
            running.clear();
            for (std::size_t i = start; i < stop; ++i)
                running.push_back(std::async(std::launch::async, solver, std::cref(pending[i].instance)));
            for (std::size_t i = start; i < stop; ++i)
                results[i] = running[i - start].get();
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            seen.record(pending[i].instance);
            out.solver_explored += results[i].stats.explored;
            if (accepts(pending[i], results[i])) {
                take(std::move(pending[i]), std::move(results[i]), index + i);
                return false;
            }
        }
        index += pending.size();
        pending.clear();
        return true;
    };
    auto streamed = batch.for_each([&](const ProducedInstance& p) {
        pending.push_back(p);
        return pending.size() < chunk || flush();
    });
    if (!out.accepted && !pending.empty())
        flush();
    // the stream runs ahead of the solver by up to one chunk; report only the solved prefix
    out.tally = seen;
    out.tally.discarded = streamed.discarded;
    return out;
}

} // namespace xcover
