#pragma once

// Directed Hamiltonicity -> Set Cover with all sets of size Δ.
//
// A Hamiltonian cycle cut every Δ steps falls into K = n/Δ paths of Δ edges between
// consecutive representatives z_1..z_K. Each ordered choice of representatives (with
// z_1 fixed to node 0) yields one instance over V(G): one set per directed path of
// exactly Δ edges from z_i to z_{i+1} whose inner nodes avoid all representatives,
// holding the path's nodes without its last one. Any cover by K such sets is a
// partition of V(G), and gluing the paths gives the cycle.

#include "xcover/errors.hpp"
#include "xcover/reduction_batch.hpp"

#include <cmath>

namespace xcover {

class HamReduction {
public:
    HamReduction(Digraph g, int delta) : g_(std::move(g)), delta_(delta)
    {
        const int n = g_.num_nodes();
        if (delta_ < 2)
            throw PreconditionError("Hamiltonicity reduction needs delta >= 2");
        if (n < delta_)
            throw PreconditionError("Hamiltonicity reduction needs n >= delta");
        if (n % delta_ != 0)
            throw PreconditionError("Hamiltonicity reduction needs delta to divide n");
        k_ = n / delta_;
    }

    const Digraph& graph() const { return g_; }
    int delta() const { return delta_; }
    int target() const { return k_; }

    /// (n-1)!/(n-K)! ordered representative choices, n elements each.
    BatchBounds bounds() const
    {
        const int n = g_.num_nodes();
        double log2_count = 0.0;
        for (int i = 0; i < k_ - 1; ++i)
            log2_count += std::log2(static_cast<double>(n - 1 - i));
        return {log2_count, static_cast<double>(n)};
    }

    BatchTally for_each(const InstanceVisitor& visit) const
    {
        BatchTally tally;
        const int n = g_.num_nodes();
        std::vector<int> reps{0};
        std::vector<char> is_rep(n, 0);
        is_rep[0] = 1;
        bool stop = false;

        std::function<void()> choose = [&]() {
            if (stop)
                return;
            if (static_cast<int>(reps.size()) == k_) {
                auto produced = build(reps, is_rep);
                tally.record(produced.instance);
                stop = !visit(produced);
                return;
            }
            for (int v = 1; v < n && !stop; ++v) {
                if (is_rep[v])
                    continue;
                reps.push_back(v);
                is_rep[v] = 1;
                choose();
                is_rep[v] = 0;
                reps.pop_back();
            }
        };
        choose();
        return tally;
    }

private:
    ProducedInstance build(const std::vector<int>& reps, const std::vector<char>& is_rep) const
    {
        const int n = g_.num_nodes();
        ProducedInstance out;
        out.target = k_;
        out.instance.n = n;
        out.instance.delta = delta_;
        for (int i = 0; i < k_; ++i)
            out.provenance.emplace_back(i, reps[i]);

        std::vector<int> path;
        std::vector<char> on_path(n, 0);
        for (int i = 0; i < k_; ++i) {
            const int from = reps[i], to = reps[(i + 1) % k_];
            // extend simple paths from `from`; inner nodes are non-representatives
            std::function<void(int)> walk = [&](int v) {
                const int edges = static_cast<int>(path.size()) - 1;
                if (edges == delta_ - 1) {
                    if (g_.has_edge(v, to))
                        out.instance.sets.push_back(path);
                    return;
                }
                for (int w : g_.out_neighbors(v)) {
                    if (is_rep[w] || on_path[w])
                        continue;
                    path.push_back(w);
                    on_path[w] = 1;
                    walk(w);
                    on_path[w] = 0;
                    path.pop_back();
                }
            };
            path.assign(1, from);
            on_path[from] = 1;
            walk(from);
            on_path[from] = 0;
        }
        dedup_sets(out.instance);
        return out;
    }

    Digraph g_;
    int delta_;
    int k_ = 0;
};

inline BatchOutcome solve_ham_via_setcover(const Digraph& g, int delta, const SetCoverSolver& solver, int jobs = 1)
{
    HamReduction reduction(g, delta);
    return solve_batch(reduction, solver, jobs);
}

} // namespace xcover
