#ifndef IFG_INSTANCE_HPP
#define IFG_INSTANCE_HPP

// Weighted filament collections, the left-endpoint indexing used by the
// solvers, and an exhaustive checker for the three intersection axioms the
// solvers rely on.

#include "ifg/geometry.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ifg {

/// A collection of weighted filaments with endpoints and a symmetric
/// intersection test. Instance and UnionInstance both model this, so every
/// solver and checker runs on either.
template <class S>
concept FilamentSet = requires(const S& s, std::size_t i) {
    typename S::weight_type;
    { s.size() } -> std::convertible_to<std::size_t>;
    { s.left(i) } -> std::convertible_to<const Rational&>;
    { s.right(i) } -> std::convertible_to<const Rational&>;
    { s.weight(i) } -> std::convertible_to<typename S::weight_type>;
    { s.intersects(i, i) } -> std::convertible_to<bool>;
};

class invalid_instance : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense symmetric boolean matrix with a true diagonal.
class AdjacencyMatrix
{
public:
    AdjacencyMatrix() = default;

    explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, false)
    {
        for (std::size_t i = 0; i < n; ++i)
            bits_[i * n + i] = true;
    }

    /// Throws invalid_instance unless rows form a symmetric square matrix with
    /// a true diagonal.
    static AdjacencyMatrix from_rows(const std::vector<std::vector<bool>>& rows)
    {
        const std::size_t n = rows.size();
        AdjacencyMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (rows[i].size() != n)
                throw invalid_instance("adjacency row " + std::to_string(i) + " has length "
                                       + std::to_string(rows[i].size()) + ", expected "
                                       + std::to_string(n));
            if (!rows[i][i])
                throw invalid_instance("adjacency diagonal entry " + std::to_string(i) + " is 0");
            for (std::size_t j = 0; j < n; ++j)
                m.bits_[i * n + j] = rows[i][j];
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (m(i, j) != m(j, i))
                    throw invalid_instance("adjacency is not symmetric at (" + std::to_string(i) + ", "
                                           + std::to_string(j) + ")");
        return m;
    }

    std::size_t size() const { return n_; }

    bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, bool value)
    {
        bits_[i * n_ + j] = value;
        bits_[j * n_ + i] = value;
    }

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<bool> bits_;
};

/// Weighted filaments plus their intersection source: geometry when no
/// matrix is given, otherwise the explicit matrix for every pair.
template <class Weight = std::int64_t>
class Instance
{
public:
    using weight_type = Weight;

    Instance() = default;

    Instance(std::vector<Filament> filaments, std::vector<Weight> weights,
             std::optional<AdjacencyMatrix> adjacency = std::nullopt)
        : filaments_(std::move(filaments)), weights_(std::move(weights)), adjacency_(std::move(adjacency))
    {
        if (weights_.size() != filaments_.size())
            throw invalid_instance("weight count " + std::to_string(weights_.size())
                                   + " does not match filament count " + std::to_string(filaments_.size()));
        for (std::size_t i = 0; i < filaments_.size(); ++i)
        {
            if (const auto* p = std::get_if<PolylineFilament>(&filaments_[i]); p && p->vertices.size() < 2)
                throw invalid_instance("polyline filament " + std::to_string(i) + " has fewer than two vertices");
            if (left_of(filaments_[i]) > right_of(filaments_[i]))
                throw invalid_instance("filament " + std::to_string(i) + " has l > r");
        }
        if (adjacency_)
        {
            if (adjacency_->size() != filaments_.size())
                throw invalid_instance("adjacency dimension " + std::to_string(adjacency_->size())
                                       + " does not match filament count " + std::to_string(filaments_.size()));
        }
        else if (std::any_of(filaments_.begin(), filaments_.end(), is_abstract))
        {
            throw invalid_instance("abstract filaments require an explicit adjacency matrix");
        }
        rank_semicircles();
    }

    std::size_t size() const { return filaments_.size(); }
    bool empty() const { return filaments_.empty(); }

    const Filament& filament(std::size_t i) const { return filaments_.at(i); }
    const std::vector<Filament>& filaments() const { return filaments_; }
    const Rational& left(std::size_t i) const { return left_of(filaments_[i]); }
    const Rational& right(std::size_t i) const { return right_of(filaments_[i]); }
    const Weight& weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Weight>& weights() const { return weights_; }

    bool geometric() const { return !adjacency_.has_value(); }
    const std::optional<AdjacencyMatrix>& adjacency() const { return adjacency_; }

    bool intersects(std::size_t i, std::size_t j) const
    {
        if (adjacency_)
            return (*adjacency_)(i, j);
        if (i == j)
            return true;
        if (semicircle_rank_[i] && semicircle_rank_[j])
            return semicircles_intersect(semicircle_rank_[i]->first, semicircle_rank_[i]->second,
                                         semicircle_rank_[j]->first, semicircle_rank_[j]->second);
        return filaments_intersect(filaments_[i], filaments_[j]);
    }

private:
    // Integer ranks of semicircle endpoints so the common semicircle case
    // avoids rational comparisons.
    void rank_semicircles()
    {
        semicircle_rank_.assign(filaments_.size(), std::nullopt);
        std::vector<const Rational*> coords;
        for (const auto& f : filaments_)
            if (const auto* s = std::get_if<SemicircleFilament>(&f))
            {
                coords.push_back(&s->left);
                coords.push_back(&s->right);
            }
        std::sort(coords.begin(), coords.end(), [](const Rational* a, const Rational* b) { return *a < *b; });
        auto rank = [&](const Rational& x) {
            const auto it = std::lower_bound(coords.begin(), coords.end(), &x,
                                             [](const Rational* a, const Rational* b) { return *a < *b; });
            return static_cast<std::int64_t>(it - coords.begin());
        };
        for (std::size_t i = 0; i < filaments_.size(); ++i)
            if (const auto* s = std::get_if<SemicircleFilament>(&filaments_[i]))
                semicircle_rank_[i] = std::pair{rank(s->left), rank(s->right)};
    }

    std::vector<Filament> filaments_;
    std::vector<Weight> weights_;
    std::optional<AdjacencyMatrix> adjacency_;
    std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> semicircle_rank_;
};

template <class Weight>
AdjacencyMatrix intersection_matrix(const Instance<Weight>& inst)
{
    AdjacencyMatrix m(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i)
        for (std::size_t j = i + 1; j < inst.size(); ++j)
            m.set(i, j, inst.intersects(i, j));
    return m;
}

struct IndexOptions
{
    /// Store all pairwise intersections up front (n^2 bits) instead of
    /// querying the source on demand.
    bool precompute_intersections = false;
};

/// A filament set after the indexing pass: a zero-weight sentinel at index 0
/// that lies strictly over everything, the remaining filaments at indices
/// 1..n ordered by left endpoint (ties by input order), and after(i) for
/// every index.
///
/// Indices are 0-based, so size() == n + 1 and after(i) lies in (i, size()].
template <FilamentSet Set>
class IndexedInstance
{
public:
    using weight_type = typename Set::weight_type;
    static constexpr std::size_t sentinel = 0;

    explicit IndexedInstance(Set set, IndexOptions options = {}) : set_(std::move(set))
    {
        const std::size_t n = set_.size();
        const std::size_t m = n + 1;

        order_.resize(n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return set_.left(a) < set_.left(b); });
        order_.insert(order_.begin(), npos);

        // Dense ranks over all 2n endpoint values; equal values share a rank.
        std::vector<const Rational*> coords;
        coords.reserve(2 * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            coords.push_back(&set_.left(i));
            coords.push_back(&set_.right(i));
        }
        auto less = [](const Rational* a, const Rational* b) { return *a < *b; };
        std::sort(coords.begin(), coords.end(), less);
        coords.erase(std::unique(coords.begin(), coords.end(),
                                 [](const Rational* a, const Rational* b) { return *a == *b; }),
                     coords.end());
        auto rank = [&](const Rational& x) {
            return static_cast<std::int64_t>(std::lower_bound(coords.begin(), coords.end(), &x, less)
                                             - coords.begin());
        };

        left_.resize(m);
        right_.resize(m);
        weight_.resize(m);
        left_[0] = std::numeric_limits<std::int64_t>::min();
        right_[0] = std::numeric_limits<std::int64_t>::max();
        weight_[0] = weight_type{};
        for (std::size_t k = 1; k < m; ++k)
        {
            left_[k] = rank(set_.left(order_[k]));
            right_[k] = rank(set_.right(order_[k]));
            weight_[k] = set_.weight(order_[k]);
        }

        // Right-to-left sweep: visit filaments by decreasing right endpoint
        // while a cursor tracks the first index whose left endpoint exceeds it.
        std::vector<std::size_t> by_right(m);
        std::iota(by_right.begin(), by_right.end(), std::size_t{0});
        std::stable_sort(by_right.begin(), by_right.end(),
                         [&](std::size_t a, std::size_t b) { return right_[a] > right_[b]; });
        after_.assign(m, m);
        std::size_t cursor = m;
        for (std::size_t k : by_right)
        {
            while (cursor > 1 && left_[cursor - 1] > right_[k])
                --cursor;
            after_[k] = std::max(cursor, k + 1);
        }

        if (options.precompute_intersections)
        {
            matrix_ = AdjacencyMatrix(m);
            for (std::size_t i = 1; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    matrix_->set(i, j, set_.intersects(order_[i], order_[j]));
        }
    }

    /// Number of indices including the sentinel.
    std::size_t size() const { return order_.size(); }

    const Set& source() const { return set_; }

    /// Position in the source set of the filament at index k (k >= 1).
    std::size_t original(std::size_t k) const { return order_.at(k); }

    std::size_t after(std::size_t k) const { return after_[k]; }
    const weight_type& weight(std::size_t k) const { return weight_[k]; }

    /// Endpoint ranks; the sentinel gets the extreme values.
    std::int64_t left_rank(std::size_t k) const { return left_[k]; }
    std::int64_t right_rank(std::size_t k) const { return right_[k]; }

    bool intersects(std::size_t i, std::size_t j) const
    {
        check_index(i);
        check_index(j);
        if (i == sentinel || j == sentinel)
            return false;
        if (matrix_)
            return (*matrix_)(i, j);
        return set_.intersects(order_[i], order_[j]);
    }

    /// l_y < l_x <= r_x < r_y and x does not meet y. Everything other than
    /// the sentinel is strictly under the sentinel.
    bool strictly_under(std::size_t x, std::size_t y) const
    {
        if (x == sentinel)
            return false;
        if (y == sentinel)
            return true;
        return left_[y] < left_[x] && right_[x] < right_[y] && !intersects(x, y);
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    void check_index(std::size_t k) const
    {
        if (k >= order_.size())
            throw std::out_of_range("filament index " + std::to_string(k) + " out of range");
    }

    Set set_;
    std::vector<std::size_t> order_;
    std::vector<std::int64_t> left_;
    std::vector<std::int64_t> right_;
    std::vector<weight_type> weight_;
    std::vector<std::size_t> after_;
    std::optional<AdjacencyMatrix> matrix_;
};

template <class Set>
    requires FilamentSet<std::decay_t<Set>>
IndexedInstance<std::decay_t<Set>> build_index(Set&& set, IndexOptions options = {})
{
    return IndexedInstance<std::decay_t<Set>>(std::forward<Set>(set), options);
}

// ---------------------------------------------------------------------------
// Axiom checker

struct AxiomReport
{
    /// (P1) pairs (a, b) with r_a < l_b that intersect.
    std::vector<std::pair<std::size_t, std::size_t>> p1_violations;
    /// (P2) pairs (a, b) with l_a <= l_b <= r_a <= r_b that do not intersect.
    std::vector<std::pair<std::size_t, std::size_t>> p2_violations;
    /// (P3) triples (a, b, c) with l_a < l_b < l_c <= r_c < r_b < r_a, a and b
    /// disjoint, b and c disjoint, yet a and c intersecting.
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> p3_violations;

    bool empty() const { return p1_violations.empty() && p2_violations.empty() && p3_violations.empty(); }
};

/// Exhaustive O(n^3) check. Indices in the report refer to positions in the
/// input set.
template <FilamentSet Set>
AxiomReport check_axioms(const Set& set)
{
    AxiomReport report;
    const std::size_t n = set.size();
    auto l = [&](std::size_t i) -> const Rational& { return set.left(i); };
    auto r = [&](std::size_t i) -> const Rational& { return set.right(i); };

    AdjacencyMatrix meets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            meets.set(i, j, set.intersects(i, j));

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
        {
            if (a == b)
                continue;
            if (r(a) < l(b) && meets(a, b))
                report.p1_violations.emplace_back(a, b);
            // Identical intervals match both orientations; report the pair once.
            const bool overlap = l(a) <= l(b) && l(b) <= r(a) && r(a) <= r(b);
            const bool mirrored = l(a) == l(b) && r(a) == r(b) && b < a;
            if (overlap && !mirrored && !meets(a, b))
                report.p2_violations.emplace_back(a, b);
        }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
        {
            if (!(l(a) < l(b) && r(b) < r(a)) || meets(a, b))
                continue;
            for (std::size_t c = 0; c < n; ++c)
            {
                if (!(l(b) < l(c) && r(c) < r(b)) || meets(b, c))
                    continue;
                if (meets(a, c))
                    report.p3_violations.emplace_back(a, b, c);
            }
        }
    return report;
}

} // namespace ifg

#endif // IFG_INSTANCE_HPP
