#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace xcover {

enum class Answer { yes, no, infeasible };

inline const char* answer_name(Answer a)
{
    switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::infeasible: return "infeasible";
    }
    return "?";
}

struct SolveStats {
    std::uint64_t explored = 0;   // DP states touched, search nodes expanded, or trials run
    double wall_ms = 0.0;
};

/// Outcome of a solver. Optimisation solvers report `yes` together with `optimum`;
/// decision solvers leave `optimum` empty.
struct SolveResult {
    Answer answer = Answer::no;
    std::optional<int> optimum;
    std::vector<int> certificate;
    SolveStats stats;

    bool yes() const { return answer == Answer::yes; }
};

struct SolverLimits {
    int max_subset_bits = 24;       // element-subset DP width
    int max_bruteforce_sets = 20;
    int max_ham_nodes = 22;
    int max_pattern_nodes = 16;     // color coding
    std::uint64_t expansion_budget = 100'000'000;

    /// Defaults, with XCOVER_CAP_N overriding the subset DP width (clamped to 30).
    static SolverLimits from_env()
    {
        SolverLimits limits;
        if (const char* cap = std::getenv("XCOVER_CAP_N")) {
            try {
                int v = std::stoi(cap);
                if (v >= 0)
                    limits.max_subset_bits = std::min(v, 30);
            } catch (const std::exception&) {
            }
        }
        return limits;
    }
};

namespace detail {

    class Stopwatch {
    public:
        double elapsed_ms() const
        {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
                .count();
        }

    private:
        std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    };

} // namespace detail

} // namespace xcover
