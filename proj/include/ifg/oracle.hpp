#ifndef IFG_ORACLE_HPP
#define IFG_ORACLE_HPP

// Exhaustive reference solvers. They only use the set's intersects() and
// weights, never the indexing or the DP, so they stay independent of the
// code they check.

#include "ifg/instance.hpp"
#include "ifg/mwim.hpp"
#include "ifg/mwis.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifg {

inline constexpr std::size_t oracle_max_filaments = 25;
inline constexpr std::size_t oracle_max_edges = 20;

class oracle_cap_exceeded : public std::length_error
{
public:
    using std::length_error::length_error;
};

namespace detail {

// True when the ascending member list of mask a precedes that of mask b.
inline bool lex_less(std::uint32_t a, std::uint32_t b)
{
    const std::uint32_t diff = a ^ b;
    if (diff == 0)
        return false;
    const std::uint32_t low = diff & (~diff + 1);
    const bool a_has = (a & low) != 0;
    const std::uint32_t other = a_has ? b : a;
    // The holder continues with the lowest differing element. The other list
    // is smaller only if it stops there.
    const bool other_continues = (other & ~(low | (low - 1))) != 0;
    return other_continues ? a_has : !a_has;
}

inline std::vector<std::size_t> bits_of(std::uint32_t mask)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u)
            out.push_back(i);
    return out;
}

template <class W>
struct BestMask
{
    bool found = false;
    W weight{};
    std::uint32_t mask = 0;

    void offer(W w, std::uint32_t m)
    {
        if (!found || w > weight || (w == weight && lex_less(m, mask)))
        {
            found = true;
            weight = w;
            mask = m;
        }
    }
};

} // namespace detail

/// Best pairwise non-intersecting subset over all 2^n subsets. Ties go to
/// the lexicographically smallest member list.
template <FilamentSet Set>
Solution<typename Set::weight_type> brute_mwis(const Set& set)
{
    using W = typename Set::weight_type;
    const std::size_t n = set.size();
    if (n > oracle_max_filaments)
        throw oracle_cap_exceeded("brute-force MWIS is capped at " + std::to_string(oracle_max_filaments)
                                  + " filaments, got " + std::to_string(n));

    std::vector<std::uint32_t> conflicts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && set.intersects(i, j))
                conflicts[i] |= std::uint32_t{1} << j;

    detail::BestMask<W> best;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s < total; ++s)
    {
        const auto mask = static_cast<std::uint32_t>(s);
        bool independent = true;
        W w{};
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
        {
            const auto i = static_cast<std::size_t>(std::countr_zero(rest));
            if (conflicts[i] & mask)
            {
                independent = false;
                break;
            }
            w = checked_add(w, W(set.weight(i)));
        }
        if (independent)
            best.offer(w, mask);
    }
    return {best.weight, detail::bits_of(best.mask)};
}

/// Edges of the intersection graph as normalized pairs in ascending order.
template <FilamentSet Set>
std::vector<Edge> intersection_edges(const Set& set)
{
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b)
            if (set.intersects(a, b))
                edges.emplace_back(a, b);
    return edges;
}

/// Best induced matching over all subsets of the edge set. Edge weights
/// default to the sum of the endpoint weights. Ties go to the
/// lexicographically smallest edge list.
///
/// Subsets are visited depth-first in lexicographic order, and a branch is
/// cut as soon as its subset stops being an induced matching (no superset of
/// it can be one either). max_edges bounds the edge count accepted.
template <FilamentSet Set>
MatchingSolution<typename Set::weight_type> brute_mwim(const Set& set,
                                                       const EdgeWeights<typename Set::weight_type>* edge_weights = nullptr,
                                                       std::size_t max_edges = oracle_max_edges)
{
    using W = typename Set::weight_type;
    const auto edges = intersection_edges(set);
    const std::size_t m = edges.size();
    if (m > max_edges)
        throw oracle_cap_exceeded("brute-force MWIM is capped at " + std::to_string(max_edges)
                                  + " edges, got " + std::to_string(m));

    std::vector<W> w(m);
    for (std::size_t e = 0; e < m; ++e)
        w[e] = checked_add(W(set.weight(edges[e].first)), W(set.weight(edges[e].second)));
    if (edge_weights)
        for (const auto& [e, ew] : *edge_weights)
        {
            const auto it = std::lower_bound(edges.begin(), edges.end(), normalized(e));
            if (it == edges.end() || *it != normalized(e))
                throw std::invalid_argument("edge weight on a pair that is not an edge");
            w[static_cast<std::size_t>(it - edges.begin())] = ew;
        }

    // Induced-matching validity is pairwise.
    std::vector<std::vector<bool>> compatible(m, std::vector<bool>(m, false));
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t f = e + 1; f < m; ++f)
            compatible[e][f] = compatible[f][e] = verify_induced_matching(set, {edges[e], edges[f]});

    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best_set;
    W best{};
    auto visit = [&](auto&& self, std::size_t from, W sum) -> void {
        if (sum > best)
        {
            best = sum;
            best_set = chosen;
        }
        for (std::size_t e = from; e < m; ++e)
        {
            bool ok = true;
            for (std::size_t c : chosen)
                ok = ok && compatible[c][e];
            if (!ok)
                continue;
            chosen.push_back(e);
            self(self, e + 1, checked_add(sum, w[e]));
            chosen.pop_back();
        }
    };
    visit(visit, 0, W{});

    MatchingSolution<W> out;
    out.weight = best;
    for (std::size_t e : best_set)
        out.edges.push_back(edges[e]);
    return out;
}

} // namespace ifg

#endif // IFG_ORACLE_HPP
