#ifndef IFG_TESTS_SUPPORT_HPP
#define IFG_TESTS_SUPPORT_HPP

// Test-only builders and independent reference predicates.

#include "ifg/generators.hpp"
#include "ifg/geometry.hpp"
#include "ifg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <cstdint>
#include <vector>

namespace ifg::test {

inline Point pt(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

inline Filament arc(std::int64_t l, std::int64_t r) { return SemicircleFilament{Rational(l), Rational(r)}; }

inline Filament polyline(std::initializer_list<std::pair<std::int64_t, std::int64_t>> vs)
{
    PolylineFilament p;
    for (auto [x, y] : vs)
        p.vertices.push_back(pt(x, y));
    return p;
}

inline Instance<std::int64_t> arcs(std::vector<std::pair<std::int64_t, std::int64_t>> ivs,
                                   std::vector<std::int64_t> weights = {})
{
    std::vector<Filament> fs;
    for (auto [l, r] : ivs)
        fs.push_back(arc(l, r));
    if (weights.empty())
        weights.assign(fs.size(), 1);
    return Instance<std::int64_t>(std::move(fs), std::move(weights));
}

inline Instance<std::int64_t> abstract(std::vector<std::pair<std::int64_t, std::int64_t>> ivs,
                                       std::vector<std::vector<bool>> rows, std::vector<std::int64_t> weights = {})
{
    std::vector<Filament> fs;
    for (auto [l, r] : ivs)
        fs.push_back(AbstractFilament{Rational(l), Rational(r)});
    if (weights.empty())
        weights.assign(fs.size(), 1);
    return Instance<std::int64_t>(std::move(fs), std::move(weights), AdjacencyMatrix::from_rows(rows));
}

/// Same filaments and weights, with adjacency frozen into an explicit
/// matrix.
template <class W>
Instance<W> as_matrix(const Instance<W>& inst)
{
    return Instance<W>(inst.filaments(), inst.weights(), intersection_matrix(inst));
}

/// Closed-segment intersection by solving a1 + t (a2 - a1) = b1 + s (b2 - b1)
/// directly; parallel and degenerate cases fall back to parameter overlap.
inline bool parametric_segments_intersect(const Point& a1, const Point& a2, const Point& b1, const Point& b2)
{
    const Rational dax = a2.x - a1.x, day = a2.y - a1.y;
    const Rational dbx = b2.x - b1.x, dby = b2.y - b1.y;
    const Rational ex = b1.x - a1.x, ey = b1.y - a1.y;
    const Rational det = dax * (-dby) - (-dbx) * day;
    if (det != 0)
    {
        const Rational t = (ex * (-dby) - (-dbx) * ey) / det;
        const Rational s = (dax * ey - day * ex) / det;
        return t >= 0 && t <= 1 && s >= 0 && s <= 1;
    }
    // Parallel or degenerate: intersect iff some point of one lies on the other.
    auto point_on = [](const Point& p, const Point& q1, const Point& q2) {
        const Rational dx = q2.x - q1.x, dy = q2.y - q1.y;
        if (dx == 0 && dy == 0)
            return p == q1;
        if ((p.x - q1.x) * dy != (p.y - q1.y) * dx)
            return false;
        const Rational t = dx != 0 ? (p.x - q1.x) / dx : (p.y - q1.y) / dy;
        return t >= 0 && t <= 1;
    };
    return point_on(a1, b1, b2) || point_on(a2, b1, b2) || point_on(b1, a1, a2) || point_on(b2, a1, a2);
}

/// Inscribed polygon of the semicircle on [l, r] with the given chord count.
/// Vertices come from the rational parametrisation of the circle, so every
/// vertex lies exactly on it; t is a rational near tan(theta / 2) for evenly
/// spaced theta.
inline PolylineFilament discretized_semicircle(std::int64_t l, std::int64_t r, int chords)
{
    const Rational cx = Rational(l + r) / 2;
    const Rational rad = Rational(r - l) / 2;
    PolylineFilament p;
    p.vertices.push_back(pt(l, 0));
    constexpr std::int64_t denom = 1 << 20;
    const double pi = std::acos(-1.0);
    for (int k = chords - 1; k >= 1; --k)
    {
        const double theta = pi * k / chords;
        const Rational t(static_cast<std::int64_t>(std::llround(std::tan(theta / 2) * denom)), denom);
        const Rational c = (1 - t * t) / (1 + t * t);
        const Rational s = 2 * t / (1 + t * t);
        p.vertices.push_back({cx + rad * c, rad * s});
    }
    p.vertices.push_back(pt(r, 0));
    return p;
}

/// Induced matching by definition: the endpoint set of the chosen edges has
/// twice as many vertices as edges and spans no other edge.
template <class Set>
bool reference_induced(const Set& set, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    std::vector<std::size_t> vs;
    for (auto [a, b] : edges)
    {
        vs.push_back(a);
        vs.push_back(b);
    }
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        return false;
    std::size_t spanned = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            spanned += set.intersects(vs[i], vs[j]);
    return spanned == edges.size();
}

/// Mask enumeration over every edge subset; returns the optimum weight only.
template <class Set, class W = typename Set::weight_type>
W reference_mwim_weight(const Set& set, const std::map<std::pair<std::size_t, std::size_t>, W>* ew = nullptr)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b)
            if (set.intersects(a, b))
                edges.emplace_back(a, b);
    W best{};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask)
    {
        std::vector<std::pair<std::size_t, std::size_t>> pick;
        W w{};
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (mask >> e & 1)
            {
                pick.push_back(edges[e]);
                if (ew && ew->count(edges[e]))
                    w += ew->at(edges[e]);
                else
                    w += W(set.weight(edges[e].first)) + W(set.weight(edges[e].second));
            }
        if (w > best && reference_induced(set, pick))
            best = w;
    }
    return best;
}

/// Mask enumeration over every filament subset; returns the optimum weight.
template <class Set, class W = typename Set::weight_type>
W reference_mwis_weight(const Set& set)
{
    const std::size_t n = set.size();
    W best{};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    {
        W w{};
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (mask >> i & 1)
            {
                w += W(set.weight(i));
                for (std::size_t j = i + 1; j < n && ok; ++j)
                    ok = !(mask >> j & 1) || !set.intersects(i, j);
            }
        if (ok && w > best)
            best = w;
    }
    return best;
}

} // namespace ifg::test

#endif // IFG_TESTS_SUPPORT_HPP
