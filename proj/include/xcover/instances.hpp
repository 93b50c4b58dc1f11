#pragma once

// Core data model: set cover instances, host digraphs and pattern trees, plus
// the line-oriented text format shared by the CLI and the test corpus.

#include "xcover/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace xcover {

enum class CoverVariant { plain, exact, partial };

struct SetCoverInstance {
    int n = 0;
    std::vector<std::vector<int>> sets;
    CoverVariant variant = CoverVariant::plain;
    int p = 0;                  // target coverage, meaningful for partial only
    std::optional<int> delta;   // declared max set size, not part of the text format

    int m() const { return static_cast<int>(sets.size()); }

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const
    {
        if (n < 0)
            throw std::invalid_argument("negative ground set size");
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto& s = sets[i];
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (s[j] < 0 || s[j] >= n)
                    throw std::invalid_argument("set " + std::to_string(i) + " has element " +
                                                std::to_string(s[j]) + " outside [0, n)");
                if (j > 0 && s[j - 1] >= s[j])
                    throw std::invalid_argument("set " + std::to_string(i) +
                                                " is not strictly increasing");
            }
            if (delta && static_cast<int>(s.size()) > *delta)
                throw std::invalid_argument("set " + std::to_string(i) + " exceeds delta");
        }
        if (variant == CoverVariant::partial && (p < 0 || p > n))
            throw std::invalid_argument("partial cover target p outside [0, n]");
    }

    /// Sorts every set, then the list of sets. Duplicate sets are kept.
    void canonicalize()
    {
        for (auto& s : sets) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        std::sort(sets.begin(), sets.end());
    }

    friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

using Edge = std::pair<int, int>;

/// Node-indexed graph. In undirected mode every stored pair (u, v) with u < v
/// stands for both orientations.
class Digraph {
public:
    Digraph() = default;

    Digraph(int num_nodes, std::vector<Edge> edges, bool undirected = false)
        : n_(num_nodes), undirected_(undirected), edges_(std::move(edges))
    {
        if (n_ < 0)
            throw std::invalid_argument("negative node count");
        for (auto& [u, v] : edges_) {
            if (u < 0 || v < 0 || u >= n_ || v >= n_)
                throw std::invalid_argument("edge endpoint out of range");
            if (u == v)
                throw std::invalid_argument("self-loop at node " + std::to_string(u));
            if (undirected_ && u > v)
                std::swap(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("duplicate edge");

        out_.assign(n_, {});
        in_.assign(n_, {});
        any_.assign(n_, {});
        for (auto [u, v] : edges_) {
            out_[u].push_back(v);
            in_[v].push_back(u);
            if (undirected_) {
                out_[v].push_back(u);
                in_[u].push_back(v);
            }
        }
        for (int v = 0; v < n_; ++v) {
            std::sort(out_[v].begin(), out_[v].end());
            std::sort(in_[v].begin(), in_[v].end());
            std::set_union(out_[v].begin(), out_[v].end(), in_[v].begin(), in_[v].end(),
                           std::back_inserter(any_[v]));
        }
    }

    int num_nodes() const { return n_; }
    bool undirected() const { return undirected_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const
    {
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

    std::span<const int> out_neighbors(int v) const { return out_[v]; }
    std::span<const int> in_neighbors(int v) const { return in_[v]; }
    /// Union of in- and out-neighbours, sorted.
    std::span<const int> neighbors(int v) const { return any_[v]; }

    friend bool operator==(const Digraph& a, const Digraph& b)
    {
        return a.n_ == b.n_ && a.undirected_ == b.undirected_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    bool undirected_ = false;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_, any_;
};

/// Orientation of the edge between a node and its parent.
enum class EdgeDir : std::uint8_t { undirected, down, up };   // down: parent -> child

/// Rooted tree given by a parent array; parent[root] == -1.
class PatternTree {
public:
    PatternTree() : PatternTree(std::vector<int>{-1}) {}

    explicit PatternTree(std::vector<int> parent, std::vector<EdgeDir> dir = {})
        : parent_(std::move(parent)), dir_(std::move(dir))
    {
        const int k = size();
        if (k == 0)
            throw std::invalid_argument("tree must have at least one node");
        if (dir_.empty())
            dir_.assign(k, EdgeDir::undirected);
        if (static_cast<int>(dir_.size()) != k)
            throw std::invalid_argument("orientation array size mismatch");

        root_ = -1;
        children_.assign(k, {});
        for (int v = 0; v < k; ++v) {
            if (parent_[v] == -1) {
                if (root_ != -1)
                    throw std::invalid_argument("more than one root");
                root_ = v;
                dir_[v] = EdgeDir::undirected;
            } else if (parent_[v] < 0 || parent_[v] >= k || parent_[v] == v) {
                throw std::invalid_argument("bad parent for node " + std::to_string(v));
            } else {
                children_[parent_[v]].push_back(v);
            }
        }
        if (root_ == -1)
            throw std::invalid_argument("no root");

        // connected and acyclic iff every node is reachable from the root
        std::vector<int> stack{root_};
        int seen = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++seen;
            for (int c : children_[v])
                stack.push_back(c);
        }
        if (seen != k)
            throw std::invalid_argument("parent array contains a cycle");

        bool any_oriented = false, any_plain = false;
        for (int v = 0; v < k; ++v) {
            if (v == root_)
                continue;
            (dir_[v] == EdgeDir::undirected ? any_plain : any_oriented) = true;
        }
        if (any_oriented && any_plain)
            throw std::invalid_argument("tree mixes oriented and undirected edges");
        oriented_ = any_oriented;
    }

    int size() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    EdgeDir dir(int v) const { return dir_[v]; }
    bool oriented() const { return oriented_; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<EdgeDir>& dirs() const { return dir_; }
    /// Children in ascending id order.
    const std::vector<int>& children(int v) const { return children_[v]; }
    int degree(int v) const
    {
        return static_cast<int>(children_[v].size()) + (v == root_ ? 0 : 1);
    }

    friend bool operator==(const PatternTree& a, const PatternTree& b)
    {
        return a.parent_ == b.parent_ && a.dir_ == b.dir_;
    }

private:
    std::vector<int> parent_;
    std::vector<EdgeDir> dir_;
    std::vector<std::vector<int>> children_;
    int root_ = 0;
    bool oriented_ = false;
};

/// Host edge that realises the tree edge (parent(child), child) when the parent
/// is mapped to `pu` and the child to `cv`.
inline bool edge_realised(const Digraph& g, EdgeDir d, int pu, int cv)
{
    switch (d) {
    case EdgeDir::down: return g.has_edge(pu, cv);
    case EdgeDir::up: return g.has_edge(cv, pu);
    case EdgeDir::undirected: return g.has_edge(pu, cv) || g.has_edge(cv, pu);
    }
    return false;
}

// ---------------------------------------------------------------------------
// text format

enum class InstanceKind { setcover, exactcover, partialcover, digraph, graph, tree };

inline std::string_view kind_name(InstanceKind k)
{
    switch (k) {
    case InstanceKind::setcover: return "setcover";
    case InstanceKind::exactcover: return "exactcover";
    case InstanceKind::partialcover: return "partialcover";
    case InstanceKind::digraph: return "digraph";
    case InstanceKind::graph: return "graph";
    case InstanceKind::tree: return "tree";
    }
    return "?";
}

inline std::optional<InstanceKind> kind_from_name(std::string_view s)
{
    for (auto k : {InstanceKind::setcover, InstanceKind::exactcover, InstanceKind::partialcover,
                   InstanceKind::digraph, InstanceKind::graph, InstanceKind::tree})
        if (kind_name(k) == s)
            return k;
    return std::nullopt;
}

using Instance = std::variant<SetCoverInstance, Digraph, PatternTree>;

namespace detail {

    struct Line {
        int number;
        std::string_view text;
    };

    inline std::vector<Line> split_lines(std::string_view text)
    {
        std::vector<Line> lines;
        int number = 1;
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            auto line = text.substr(pos, end - pos);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (line.empty() || line.front() != 'c')
                lines.push_back({number, line});
            pos = end + 1;
            ++number;
        }
        return lines;
    }

    inline std::vector<std::string_view> tokens(std::string_view s)
    {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
                ++i;
            std::size_t j = i;
            while (j < s.size() && s[j] != ' ' && s[j] != '\t')
                ++j;
            if (j > i)
                out.push_back(s.substr(i, j - i));
            i = j;
        }
        return out;
    }

    inline int to_int(std::string_view tok, int line)
    {
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
        return value;
    }

    inline bool blank(std::string_view s) { return tokens(s).empty(); }

} // namespace detail

/// Parses any of the six instance kinds; the kind is taken from the `p` header.
inline Instance parse_instance(std::string_view text)
{
    using namespace detail;
    auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && blank(lines[i].text))
        ++i;
    if (i == lines.size())
        throw ParseError(1, "missing 'p' header");

    const int header_line = lines[i].number;
    auto head = tokens(lines[i].text);
    if (head.size() < 2 || head[0] != "p")
        throw ParseError(header_line, "malformed header");
    auto kind = kind_from_name(head[1]);
    if (!kind)
        throw ParseError(header_line, "unknown instance kind '" + std::string(head[1]) + "'");
    ++i;

    auto expect_fields = [&](std::size_t count) {
        if (head.size() != count)
            throw ParseError(header_line, "malformed header: expected " +
                                              std::to_string(count - 2) + " numeric fields");
    };
    auto trailing = [&](std::size_t from) {
        for (std::size_t j = from; j < lines.size(); ++j)
            if (!blank(lines[j].text))
                throw ParseError(lines[j].number, "unexpected record after the declared count");
    };

    switch (*kind) {
    case InstanceKind::setcover:
    case InstanceKind::exactcover:
    case InstanceKind::partialcover: {
        SetCoverInstance inst;
        if (*kind == InstanceKind::partialcover) {
            expect_fields(5);
            inst.variant = CoverVariant::partial;
            inst.p = to_int(head[4], header_line);
        } else {
            expect_fields(4);
            inst.variant = *kind == InstanceKind::exactcover ? CoverVariant::exact : CoverVariant::plain;
        }
        inst.n = to_int(head[2], header_line);
        const int m = to_int(head[3], header_line);
        if (inst.n < 0 || m < 0)
            throw ParseError(header_line, "negative size in header");
        if (inst.variant == CoverVariant::partial && (inst.p < 0 || inst.p > inst.n))
            throw ParseError(header_line, "p must lie in [0, n]");
        for (int s = 0; s < m; ++s, ++i) {
            if (i >= lines.size())
                throw ParseError(lines.empty() ? header_line : lines.back().number + 1,
                                 "expected " + std::to_string(m) + " sets, got " + std::to_string(s));
            std::vector<int> set;
            for (auto tok : tokens(lines[i].text)) {
                int e = to_int(tok, lines[i].number);
                if (e < 0 || e >= inst.n)
                    throw ParseError(lines[i].number, "element " + std::to_string(e) + " out of range");
                set.push_back(e);
            }
            std::sort(set.begin(), set.end());
            if (std::adjacent_find(set.begin(), set.end()) != set.end())
                throw ParseError(lines[i].number, "duplicate element in set");
            inst.sets.push_back(std::move(set));
        }
        trailing(i);
        inst.canonicalize();
        return inst;
    }
    case InstanceKind::digraph:
    case InstanceKind::graph: {
        expect_fields(4);
        const bool undirected = *kind == InstanceKind::graph;
        const int n = to_int(head[2], header_line);
        const int m = to_int(head[3], header_line);
        if (n < 0 || m < 0)
            throw ParseError(header_line, "negative size in header");
        std::set<Edge> seen;
        std::vector<Edge> edges;
        int got = 0;
        for (; got < m && i < lines.size(); ++i) {
            if (blank(lines[i].text))
                continue;
            auto t = tokens(lines[i].text);
            if (t.size() != 2)
                throw ParseError(lines[i].number, "edge line needs exactly two endpoints");
            int u = to_int(t[0], lines[i].number), v = to_int(t[1], lines[i].number);
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ParseError(lines[i].number, "edge endpoint out of range");
            if (u == v)
                throw ParseError(lines[i].number, "self-loop");
            Edge key = undirected ? Edge{std::min(u, v), std::max(u, v)} : Edge{u, v};
            if (!seen.insert(key).second)
                throw ParseError(lines[i].number, "duplicate edge");
            edges.push_back(key);
            ++got;
        }
        if (got < m)
            throw ParseError(lines.empty() ? header_line : lines.back().number + 1,
                             "expected " + std::to_string(m) + " edges, got " + std::to_string(got));
        trailing(i);
        return Digraph(n, std::move(edges), undirected);
    }
    case InstanceKind::tree: {
        expect_fields(3);
        const int k = to_int(head[2], header_line);
        if (k < 1)
            throw ParseError(header_line, "tree needs at least one node");
        std::vector<int> parent(k, -1);
        std::vector<EdgeDir> dir(k, EdgeDir::undirected);
        int got = 0, last_line = header_line;
        for (; got < k - 1 && i < lines.size(); ++i) {
            if (blank(lines[i].text))
                continue;
            const int ln = lines[i].number;
            last_line = ln;
            auto t = tokens(lines[i].text);
            if (t.size() != 2 && t.size() != 3)
                throw ParseError(ln, "tree line must be '<parent> <child> [fwd|rev]'");
            int p = to_int(t[0], ln), c = to_int(t[1], ln);
            if (p < 0 || c < 0 || p >= k || c >= k)
                throw ParseError(ln, "tree node out of range");
            if (p == c)
                throw ParseError(ln, "node is its own parent");
            if (parent[c] != -1)
                throw ParseError(ln, "node " + std::to_string(c) + " has two parents");
            parent[c] = p;
            if (t.size() == 3) {
                if (t[2] == "fwd")
                    dir[c] = EdgeDir::down;
                else if (t[2] == "rev")
                    dir[c] = EdgeDir::up;
                else
                    throw ParseError(ln, "orientation must be 'fwd' or 'rev'");
            }
            ++got;
        }
        if (got < k - 1)
            throw ParseError(last_line + 1, "expected " + std::to_string(k - 1) + " tree edges");
        trailing(i);
        try {
            return PatternTree(std::move(parent), std::move(dir));
        } catch (const std::invalid_argument& e) {
            throw ParseError(last_line, std::string("not a tree: ") + e.what());
        }
    }
    }
    throw ParseError(header_line, "unreachable");
}

template <typename T>
T parse_as(std::string_view text)
{
    auto value = parse_instance(text);
    if (auto* v = std::get_if<T>(&value))
        return std::move(*v);
    throw ParseError(1, "instance has the wrong kind for this operation");
}

inline std::string serialize(const SetCoverInstance& inst)
{
    auto canon = inst;
    canon.canonicalize();
    std::ostringstream out;
    switch (canon.variant) {
    case CoverVariant::plain: out << "p setcover " << canon.n << ' ' << canon.m(); break;
    case CoverVariant::exact: out << "p exactcover " << canon.n << ' ' << canon.m(); break;
    case CoverVariant::partial:
        out << "p partialcover " << canon.n << ' ' << canon.m() << ' ' << canon.p;
        break;
    }
    out << '\n';
    for (const auto& s : canon.sets) {
        for (std::size_t j = 0; j < s.size(); ++j)
            out << (j ? " " : "") << s[j];
        out << '\n';
    }
    return out.str();
}

inline std::string serialize(const Digraph& g)
{
    std::ostringstream out;
    out << "p " << (g.undirected() ? "graph " : "digraph ") << g.num_nodes() << ' ' << g.num_edges()
        << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
    return out.str();
}

inline std::string serialize(const PatternTree& t)
{
    std::vector<Edge> lines;
    for (int v = 0; v < t.size(); ++v)
        if (v != t.root())
            lines.emplace_back(t.parent(v), v);
    std::sort(lines.begin(), lines.end());
    std::ostringstream out;
    out << "p tree " << t.size() << '\n';
    for (auto [p, c] : lines) {
        out << p << ' ' << c;
        if (t.dir(c) == EdgeDir::down)
            out << " fwd";
        else if (t.dir(c) == EdgeDir::up)
            out << " rev";
        out << '\n';
    }
    return out.str();
}

inline std::string serialize(const Instance& value)
{
    return std::visit([](const auto& v) { return serialize(v); }, value);
}

} // namespace xcover
