#pragma once

#include "xcover/errors.hpp"
#include "xcover/instances.hpp"
#include "xcover/solve_result.hpp"

#include <bit>
#include <cstdint>

namespace xcover {

/// Held-Karp subset DP for directed Hamiltonian cycles. ends[mask] is the bitset of
/// nodes v such that some path starting at node 0 visits exactly `mask` and stops at v.
/// Graphs with fewer than two nodes have no cycle (there are no self-loops).
inline SolveResult heldkarp_ham(const Digraph& g, const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    const int n = g.num_nodes();
    if (n > limits.max_ham_nodes)
        throw CapacityError("Held-Karp supports at most " + std::to_string(limits.max_ham_nodes) + " nodes");
    SolveResult r;
    r.answer = Answer::no;
    if (n < 2) {
        r.stats.wall_ms = clock.elapsed_ms();
        return r;
    }

    using Mask = std::uint32_t;
    const Mask full = (Mask{1} << n) - 1;
    std::vector<Mask> out(n);
    for (auto [u, v] : g.edges()) {
        out[u] |= Mask{1} << v;
        if (g.undirected())
            out[v] |= Mask{1} << u;
    }

    std::vector<Mask> ends(std::size_t{1} << n, 0);
    ends[1] = 1;
    for (Mask mask = 1; mask <= full; ++mask) {
        if (!(mask & 1) || ends[mask] == 0)
            continue;
        ++r.stats.explored;
        for (Mask e = ends[mask]; e; e &= e - 1) {
            const int v = std::countr_zero(e);
            for (Mask nx = out[v] & ~mask; nx; nx &= nx - 1) {
                const int w = std::countr_zero(nx);
                ends[mask | (Mask{1} << w)] |= Mask{1} << w;
            }
        }
    }

    int last = -1;
    for (Mask e = ends[full]; e; e &= e - 1) {
        const int v = std::countr_zero(e);
        if (out[v] & 1) {
            last = v;
            break;
        }
    }
    if (last >= 0) {
        r.answer = Answer::yes;
        std::vector<int> rev{last};
        Mask mask = full;
        int v = last;
        while (v != 0) {
            mask &= ~(Mask{1} << v);
            int prev = -1;
            for (Mask e = ends[mask]; e; e &= e - 1) {
                const int u = std::countr_zero(e);
                if (out[u] >> v & 1) {
                    prev = u;
                    break;
                }
            }
            v = prev;
            rev.push_back(v);
        }
        r.certificate.assign(rev.rbegin(), rev.rend());
    }
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

} // namespace xcover
