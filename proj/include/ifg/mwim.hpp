#ifndef IFG_MWIM_HPP
#define IFG_MWIM_HPP

// Maximum weight induced matching through union filaments.
//
// Every intersecting pair {a, b} of the base set becomes one filament a u b
// spanning [min(l_a, l_b), max(r_a, r_b)]. Two unions meet iff they share a
// member or some cross pair meets in the base set, so independent sets of
// the union set are exactly the induced matchings of the base graph.

#include "ifg/instance.hpp"
#include "ifg/mwis.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ifg {

using Edge = std::pair<std::size_t, std::size_t>;

inline Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

/// Explicit edge weights keyed by normalized pairs of base positions.
template <class W>
using EdgeWeights = std::map<Edge, W>;

template <class W>
struct MatchingSolution
{
    W weight{};
    /// Normalized pairs of base positions, ascending.
    std::vector<Edge> edges;
};

template <class W>
struct MwimResult
{
    MatchingSolution<W> solution;
    /// Number of union filaments.
    std::size_t union_size = 0;
    DPTable<W> table;
    /// verify_induced_matching passed. Can only fail when the base set
    /// violates the axioms.
    bool certified = false;
};

/// The union filament set built from a base set. Models FilamentSet.
template <class W>
class UnionInstance
{
public:
    using weight_type = W;

    struct Member
    {
        Edge pair;
        Rational left;
        Rational right;
        W weight;
    };

    UnionInstance(std::vector<Member> members, AdjacencyMatrix base_adjacency)
        : members_(std::move(members)), base_(std::move(base_adjacency))
    {
    }

    std::size_t size() const { return members_.size(); }
    const Rational& left(std::size_t u) const { return members_[u].left; }
    const Rational& right(std::size_t u) const { return members_[u].right; }
    const W& weight(std::size_t u) const { return members_[u].weight; }
    const Edge& pair(std::size_t u) const { return members_[u].pair; }
    const std::vector<Member>& members() const { return members_; }
    const AdjacencyMatrix& base_adjacency() const { return base_; }

    bool intersects(std::size_t u, std::size_t v) const
    {
        const auto [a, b] = members_[u].pair;
        const auto [c, d] = members_[v].pair;
        return base_(a, c) || base_(a, d) || base_(b, c) || base_(b, d);
    }

private:
    std::vector<Member> members_;
    AdjacencyMatrix base_;
};

/// One union per intersecting pair, ordered by (l, r, smaller id, larger id).
/// Pair weights come from edge_weights when given, else the sum of the two
/// member weights. Throws std::invalid_argument for an edge weight on an
/// unknown or non-intersecting pair.
template <FilamentSet Set>
UnionInstance<typename Set::weight_type> build_union_instance(
    const Set& base, const EdgeWeights<typename Set::weight_type>* edge_weights = nullptr)
{
    using W = typename Set::weight_type;
    const std::size_t n = base.size();
    AdjacencyMatrix adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj.set(i, j, base.intersects(i, j));

    EdgeWeights<W> keyed;
    if (edge_weights)
        for (const auto& [e, w] : *edge_weights)
        {
            const auto [a, b] = normalized(e);
            keyed[{a, b}] = w;
            if (b >= n)
                throw std::invalid_argument("edge weight references unknown filament " + std::to_string(b));
            if (a == b || !adj(a, b))
                throw std::invalid_argument("edge weight on non-intersecting pair (" + std::to_string(a) + ", "
                                            + std::to_string(b) + ")");
        }

    std::vector<typename UnionInstance<W>::Member> members;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
        {
            if (!adj(a, b))
                continue;
            W w = checked_add(W(base.weight(a)), W(base.weight(b)));
            if (auto it = keyed.find({a, b}); it != keyed.end())
                w = it->second;
            members.push_back({{a, b},
                               std::min(base.left(a), base.left(b)),
                               std::max(base.right(a), base.right(b)),
                               w});
        }
    std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) {
        if (x.left != y.left)
            return x.left < y.left;
        if (x.right != y.right)
            return x.right < y.right;
        return x.pair < y.pair;
    });
    return UnionInstance<W>(std::move(members), std::move(adj));
}

/// Distinct endpoints across pairs and no meeting cross pair. Throws
/// std::invalid_argument if some pair is not an edge of the base graph.
template <FilamentSet Set>
bool verify_induced_matching(const Set& base, const std::vector<Edge>& edges)
{
    for (const auto& [a, b] : edges)
        if (a >= base.size() || b >= base.size() || a == b || !base.intersects(a, b))
            throw std::invalid_argument("pair (" + std::to_string(a) + ", " + std::to_string(b)
                                        + ") is not an edge of the intersection graph");
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
        {
            const auto [a, b] = edges[i];
            const auto [c, d] = edges[j];
            if (a == c || a == d || b == c || b == d)
                return false;
            if (base.intersects(a, c) || base.intersects(a, d) || base.intersects(b, c) || base.intersects(b, d))
                return false;
        }
    return true;
}

template <FilamentSet Set>
MwimResult<typename Set::weight_type> solve_mwim(const Set& base,
                                                 const EdgeWeights<typename Set::weight_type>* edge_weights = nullptr,
                                                 const SolveOptions& options = {})
{
    using W = typename Set::weight_type;
    auto unions = build_union_instance(base, edge_weights);
    const std::uint64_t m = unions.size() + 1;
    if (DPTable<W>::bytes_required(m) > options.memory_budget)
        throw memory_budget_exceeded(DPTable<W>::bytes_required(m), options.memory_budget,
                                     DPTable<W>::cell_count(m),
                                     "union set has " + std::to_string(unions.size()) + " filaments; ");

    const auto idx = build_index(std::move(unions));
    auto r = solve_mwis(idx, options);

    MwimResult<W> out;
    out.union_size = idx.source().size();
    out.solution.weight = r.solution.weight;
    for (std::size_t u : r.solution.members)
        out.solution.edges.push_back(idx.source().pair(u));
    std::sort(out.solution.edges.begin(), out.solution.edges.end());
    out.table = std::move(r.table);

    out.certified = verify_induced_matching(base, out.solution.edges);
    return out;
}

} // namespace ifg

#endif // IFG_MWIM_HPP
