#pragma once

// Unordered integer partitions: constant-amortized-time enumeration, exact
// counts, the Hardy-Ramanujan estimate, and the grouped ("shrunk") form used to
// size the pattern trees of the set cover -> kTree reduction.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace xcover {

struct Partition {
    std::vector<int> parts;   // non-increasing, all >= 1
    int total = 0;

    int length() const { return static_cast<int>(parts.size()); }
    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Streams the partitions of `total` in descending lexicographic order,
/// (total), (total-1, 1), ..., (1, ..., 1). Each step costs O(1) amortized.
///
///     PartitionStream s(5);
///     while (s.next()) use(s.parts());
class PartitionStream {
public:
    explicit PartitionStream(int total) : total_(total)
    {
        if (total < 0)
            throw std::invalid_argument("cannot partition a negative number");
        x_.assign(static_cast<std::size_t>(total) + 1, 1);
    }

    bool next()
    {
        if (done_)
            return false;
        if (!started_) {
            started_ = true;
            if (total_ == 0) {
                length_ = 0;
                done_after_this_ = true;
                return true;
            }
            x_[1] = total_;
            length_ = 1;
            head_ = x_[1] == 1 ? 0 : 1;
            done_after_this_ = total_ == 1;
            return true;
        }
        if (done_after_this_) {
            done_ = true;
            return false;
        }
        // x_[1..length_] holds the current partition; head_ is the last part > 1.
        if (x_[head_] == 2) {
            ++length_;
            x_[head_] = 1;
            --head_;
        } else {
            const int r = x_[head_] - 1;
            int t = length_ - head_ + 1;
            x_[head_] = r;
            while (t >= r) {
                ++head_;
                x_[head_] = r;
                t -= r;
            }
            if (t == 0) {
                length_ = head_;
            } else {
                length_ = head_ + 1;
                if (t > 1) {
                    ++head_;
                    x_[head_] = t;
                }
            }
            for (int j = head_ + 1; j <= length_; ++j)
                x_[j] = 1;
        }
        done_after_this_ = x_[1] == 1;
        return true;
    }

    std::span<const int> parts() const
    {
        return std::span<const int>(x_).subspan(1, static_cast<std::size_t>(length_));
    }

    Partition current() const { return {{parts().begin(), parts().end()}, total_}; }

private:
    int total_;
    std::vector<int> x_;   // 1-based
    int length_ = 0;
    int head_ = 0;
    bool started_ = false;
    bool done_ = false;
    bool done_after_this_ = false;
};

inline std::vector<Partition> all_partitions(int total)
{
    std::vector<Partition> out;
    PartitionStream s(total);
    while (s.next())
        out.push_back(s.current());
    return out;
}

using BigInt = boost::multiprecision::cpp_int;

/// Number of unordered partitions of `a`, via Euler's pentagonal recurrence.
inline BigInt count_partitions(int a)
{
    if (a < 0)
        throw std::invalid_argument("count_partitions: negative argument");
    std::vector<BigInt> p(static_cast<std::size_t>(a) + 1);
    p[0] = 1;
    for (int i = 1; i <= a; ++i) {
        BigInt sum = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            if (g1 > i)
                break;
            const int g2 = k * (3 * k + 1) / 2;
            BigInt term = p[i - g1];
            if (g2 <= i)
                term += p[i - g2];
            if (k % 2)
                sum += term;
            else
                sum -= term;
        }
        p[i] = sum;
    }
    return p[a];
}

/// Hardy-Ramanujan leading term e^{pi sqrt(2a/3)} / (4 a sqrt 3).
inline double partition_asymptotic(int a)
{
    if (a < 1)
        throw std::invalid_argument("partition_asymptotic: a must be positive");
    const double x = static_cast<double>(a);
    return std::exp(std::numbers::pi * std::sqrt(2.0 * x / 3.0)) / (4.0 * x * std::sqrt(3.0));
}

struct ShrunkPartition {
    std::vector<int> grouped;     // sums of consecutive blocks of g parts
    std::vector<int> remainder;   // the last l mod g parts, in stored order

    int length() const { return static_cast<int>(grouped.size() + remainder.size()); }
    int total() const
    {
        return std::accumulate(grouped.begin(), grouped.end(), 0) +
               std::accumulate(remainder.begin(), remainder.end(), 0);
    }
    friend bool operator==(const ShrunkPartition&, const ShrunkPartition&) = default;
};

inline ShrunkPartition shrink_partition(std::span<const int> parts, int g)
{
    if (g < 1)
        throw std::invalid_argument("group size must be positive");
    ShrunkPartition out;
    const std::size_t blocks = parts.size() / static_cast<std::size_t>(g);
    for (std::size_t b = 0; b < blocks; ++b) {
        auto block = parts.subspan(b * g, static_cast<std::size_t>(g));
        out.grouped.push_back(std::accumulate(block.begin(), block.end(), 0));
    }
    auto rest = parts.subspan(blocks * g);
    out.remainder.assign(rest.begin(), rest.end());
    return out;
}

inline ShrunkPartition shrink_partition(const Partition& alpha, int g)
{
    return shrink_partition(std::span<const int>(alpha.parts), g);
}

} // namespace xcover
