#ifndef IFG_MWIS_HPP
#define IFG_MWIS_HPP

// Maximum weight independent set on an indexed filament set.
//
// F(l, c) is the best weight of an independent set drawn from indices >= c
// that lie strictly under filament l. With m indices (sentinel included):
//
//   F(l, m) = 0
//   F(l, c) = F(l, c + 1)                                  c not under l
//   F(l, c) = max(F(l, c + 1),
//                 F(c, c + 1) + F(l, after(c)) + w(c))     otherwise
//
// and the optimum is F(sentinel, 1). Every dependency of column c lies in a
// larger column, so the table is filled column by column from the right.

#include "ifg/instance.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ifg {

/// Default cap on DP table memory: 4 GiB.
inline constexpr std::uint64_t default_memory_budget = std::uint64_t{4} << 30;

class memory_budget_exceeded : public std::runtime_error
{
public:
    memory_budget_exceeded(std::uint64_t required, std::uint64_t budget, std::uint64_t states,
                           const std::string& context = {})
        : std::runtime_error(context + "DP table needs " + std::to_string(required) + " bytes for "
                             + std::to_string(states) + " states; budget is " + std::to_string(budget)
                             + " bytes"),
          required_(required), budget_(budget), states_(states)
    {
    }

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }
    std::uint64_t states() const { return states_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
    std::uint64_t states_;
};

class weight_overflow : public std::overflow_error
{
public:
    weight_overflow() : std::overflow_error("weight sum overflows the weight type") {}
};

/// Addition that throws weight_overflow instead of wrapping for integral
/// weights. Floating weights are added as-is.
template <class W>
W checked_add(W a, W b)
{
    if constexpr (std::is_integral_v<W>)
    {
        W out;
        if (__builtin_add_overflow(a, b, &out))
            throw weight_overflow();
        return out;
    }
    else
    {
        return a + b;
    }
}

enum class Choice : std::uint8_t
{
    unset,
    base,    // c == m
    skip,    // c not strictly under l
    exclude, // c under l, leaving it out is at least as good
    include  // c under l and taking it is strictly better
};

enum class EvaluationOrder
{
    bottom_up, // every cell with l < c
    memoized   // only cells reachable from (sentinel, 1)
};

struct SolveOptions
{
    EvaluationOrder order = EvaluationOrder::bottom_up;
    std::uint64_t memory_budget = default_memory_budget;
};

/// Triangular table over 0 <= l < c <= m, stored column by column.
template <class W>
class DPTable
{
public:
    DPTable() = default;

    explicit DPTable(std::size_t m)
        : m_(m), values_(cell_count(m), W{}), choices_(cell_count(m), Choice::unset)
    {
    }

    static std::uint64_t cell_count(std::uint64_t m) { return m * (m + 1) / 2; }

    static std::uint64_t bytes_required(std::uint64_t m)
    {
        return cell_count(m) * (sizeof(W) + sizeof(Choice));
    }

    /// Number of filament indices m (sentinel included).
    std::size_t size() const { return m_; }

    const W& value(std::size_t l, std::size_t c) const { return values_[cell(l, c)]; }
    Choice choice(std::size_t l, std::size_t c) const { return choices_[cell(l, c)]; }
    bool evaluated(std::size_t l, std::size_t c) const { return choice(l, c) != Choice::unset; }

    std::uint64_t evaluated_states() const { return evaluated_; }

    void store(std::size_t l, std::size_t c, W value, Choice choice)
    {
        const std::size_t k = cell(l, c);
        values_[k] = value;
        choices_[k] = choice;
        ++evaluated_;
    }

private:
    std::size_t cell(std::size_t l, std::size_t c) const
    {
        if (!(l < c && c <= m_))
            throw std::out_of_range("DP state (" + std::to_string(l) + ", " + std::to_string(c)
                                    + ") out of range");
        return c * (c - 1) / 2 + l;
    }

    std::size_t m_ = 0;
    std::vector<W> values_;
    std::vector<Choice> choices_;
    std::uint64_t evaluated_ = 0;
};

template <class W>
struct Solution
{
    W weight{};
    /// Positions in the source set, ascending. Never contains the sentinel.
    std::vector<std::size_t> members;
};

template <class W>
struct MwisResult
{
    Solution<W> solution;
    DPTable<W> table;
    /// verify_independent_set passed. Can only fail when the source set
    /// violates the axioms.
    bool certified = false;
};

template <class W>
std::uint64_t state_count(const DPTable<W>& table)
{
    return table.evaluated_states();
}

namespace detail {

template <FilamentSet Set>
std::pair<typename Set::weight_type, Choice> evaluate_cell(const IndexedInstance<Set>& idx,
                                                           const DPTable<typename Set::weight_type>& t,
                                                           std::size_t l, std::size_t c)
{
    using W = typename Set::weight_type;
    const std::size_t m = idx.size();
    if (c == m)
        return {W{}, Choice::base};
    if (!idx.strictly_under(c, l))
        return {t.value(l, c + 1), Choice::skip};
    const W without = t.value(l, c + 1);
    const W with = checked_add(checked_add(t.value(c, c + 1), t.value(l, idx.after(c))), idx.weight(c));
    if (with > without)
        return {with, Choice::include};
    return {without, Choice::exclude};
}

template <FilamentSet Set>
void fill_bottom_up(const IndexedInstance<Set>& idx, DPTable<typename Set::weight_type>& t)
{
    const std::size_t m = idx.size();
    for (std::size_t c = m; c >= 1; --c)
        for (std::size_t l = 0; l < c; ++l)
        {
            auto [v, ch] = evaluate_cell(idx, t, l, c);
            t.store(l, c, v, ch);
        }
}

// Depth-first evaluation from (sentinel, 1) on an explicit stack; a cell is
// pushed back under its missing dependencies until they are ready.
template <FilamentSet Set>
void fill_memoized(const IndexedInstance<Set>& idx, DPTable<typename Set::weight_type>& t)
{
    const std::size_t m = idx.size();
    std::vector<std::pair<std::size_t, std::size_t>> stack{{IndexedInstance<Set>::sentinel, 1}};
    while (!stack.empty())
    {
        const auto [l, c] = stack.back();
        if (t.evaluated(l, c))
        {
            stack.pop_back();
            continue;
        }
        std::size_t missing = 0;
        auto need = [&](std::size_t dl, std::size_t dc) {
            if (!t.evaluated(dl, dc))
            {
                stack.emplace_back(dl, dc);
                ++missing;
            }
        };
        if (c < m)
        {
            need(l, c + 1);
            if (idx.strictly_under(c, l))
            {
                need(c, c + 1);
                need(l, idx.after(c));
            }
        }
        if (missing > 0)
            continue;
        stack.pop_back();
        auto [v, ch] = evaluate_cell(idx, t, l, c);
        t.store(l, c, v, ch);
    }
}

} // namespace detail

/// Walks stored choices from (sentinel, 1) and collects the chosen members.
template <FilamentSet Set>
Solution<typename Set::weight_type> reconstruct(const IndexedInstance<Set>& idx,
                                                const DPTable<typename Set::weight_type>& table)
{
    using W = typename Set::weight_type;
    Solution<W> out;
    if (table.size() != idx.size())
        throw std::invalid_argument("DP table was not built for this instance");
    out.weight = table.value(IndexedInstance<Set>::sentinel, 1);

    W total{};
    std::vector<std::pair<std::size_t, std::size_t>> stack{{IndexedInstance<Set>::sentinel, 1}};
    while (!stack.empty())
    {
        const auto [l, c] = stack.back();
        stack.pop_back();
        switch (table.choice(l, c))
        {
        case Choice::base:
            break;
        case Choice::skip:
        case Choice::exclude:
            stack.emplace_back(l, c + 1);
            break;
        case Choice::include:
            out.members.push_back(idx.original(c));
            total = checked_add(total, idx.weight(c));
            stack.emplace_back(c, c + 1);
            stack.emplace_back(l, idx.after(c));
            break;
        case Choice::unset:
            throw std::logic_error("reconstruction reached an unevaluated DP state");
        }
    }
    std::sort(out.members.begin(), out.members.end());
    if (total != out.weight)
        throw std::logic_error("reconstructed members do not sum to the table optimum");
    return out;
}

/// Pairwise non-intersection plus the weight sum. Positions refer to the
/// source set.
template <FilamentSet Set>
bool verify_independent_set(const Set& set, const Solution<typename Set::weight_type>& s)
{
    using W = typename Set::weight_type;
    W total{};
    for (std::size_t a = 0; a < s.members.size(); ++a)
    {
        if (s.members[a] >= set.size())
            return false;
        total = checked_add(total, set.weight(s.members[a]));
        for (std::size_t b = a + 1; b < s.members.size(); ++b)
            if (s.members[a] == s.members[b] || set.intersects(s.members[a], s.members[b]))
                return false;
    }
    return total == s.weight;
}

template <FilamentSet Set>
MwisResult<typename Set::weight_type> solve_mwis(const IndexedInstance<Set>& idx, const SolveOptions& options = {})
{
    using W = typename Set::weight_type;
    const std::uint64_t m = idx.size();
    const std::uint64_t required = DPTable<W>::bytes_required(m);
    if (required > options.memory_budget)
        throw memory_budget_exceeded(required, options.memory_budget, DPTable<W>::cell_count(m));

    MwisResult<W> result{{}, DPTable<W>(idx.size())};
    if (options.order == EvaluationOrder::bottom_up)
        detail::fill_bottom_up(idx, result.table);
    else
        detail::fill_memoized(idx, result.table);
    result.solution = reconstruct(idx, result.table);
    result.certified = verify_independent_set(idx.source(), result.solution);
    return result;
}

} // namespace ifg

#endif // IFG_MWIS_HPP
