#ifndef IFG_GENERATORS_HPP
#define IFG_GENERATORS_HPP

// Seeded instance generators. All randomness goes through SplitMix64 and the
// bounded draw below, so a (family, n, seed, weights) tuple reproduces the
// same instance on every platform.

#include "ifg/instance.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifg {

/// SplitMix64 (Steele, Lea, Flood 2014) with its published constants.
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do
            x = next();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == ~std::uint64_t{0})
            return static_cast<std::int64_t>(next());
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
    }

    /// Fisher-Yates, last position first.
    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

struct WeightRange
{
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

enum class Family
{
    worstcase,
    random_arcs,
    random_polylines,
    nested_arcs
};

inline std::string to_string(Family f)
{
    switch (f)
    {
    case Family::worstcase: return "worstcase";
    case Family::random_arcs: return "random-arcs";
    case Family::random_polylines: return "random-polylines";
    case Family::nested_arcs: return "nested-arcs";
    }
    return "unknown";
}

inline std::optional<Family> parse_family(const std::string& s)
{
    for (Family f : {Family::worstcase, Family::random_arcs, Family::random_polylines, Family::nested_arcs})
        if (to_string(f) == s)
            return f;
    return std::nullopt;
}

namespace detail {

inline std::vector<std::int64_t> draw_weights(SplitMix64& rng, std::size_t n, WeightRange range)
{
    if (range.lo > range.hi)
        throw std::invalid_argument("empty weight range");
    std::vector<std::int64_t> w(n);
    for (auto& x : w)
        x = rng.between(range.lo, range.hi);
    return w;
}

inline Filament arc(std::int64_t l, std::int64_t r) { return SemicircleFilament{Rational(l), Rational(r)}; }

// Random pairing of the points 1..2n as (left, right) intervals.
inline std::vector<std::pair<std::int64_t, std::int64_t>> random_intervals(SplitMix64& rng, std::size_t n)
{
    std::vector<std::int64_t> pts(2 * n);
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = static_cast<std::int64_t>(i + 1);
    rng.shuffle(pts);
    std::vector<std::pair<std::int64_t, std::int64_t>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {std::min(pts[2 * i], pts[2 * i + 1]), std::max(pts[2 * i], pts[2 * i + 1])};
    return out;
}

} // namespace detail

/// Two cliques of k semicircles each, the inner clique strictly nested inside
/// every outer arc. Outer arc i spans [i, 3k + i] and inner arc j spans
/// [k + j, 2k + j], so all 4k endpoints are distinct. Outer arcs come first.
/// With no weights given every filament weighs 1.
inline Instance<std::int64_t> gen_worstcase(std::size_t k, const std::vector<std::int64_t>* weights = nullptr)
{
    const auto kk = static_cast<std::int64_t>(k);
    std::vector<Filament> fs;
    fs.reserve(2 * k);
    for (std::int64_t i = 0; i < kk; ++i)
        fs.push_back(detail::arc(i, 3 * kk + i));
    for (std::int64_t j = 0; j < kk; ++j)
        fs.push_back(detail::arc(kk + j, 2 * kk + j));
    std::vector<std::int64_t> w = weights ? *weights : std::vector<std::int64_t>(2 * k, 1);
    return Instance<std::int64_t>(std::move(fs), std::move(w));
}

/// n semicircles over a random pairing of 1..2n.
inline Instance<std::int64_t> gen_random_arcs(std::size_t n, std::uint64_t seed, WeightRange weights)
{
    SplitMix64 rng(seed);
    std::vector<Filament> fs;
    for (const auto& [l, r] : detail::random_intervals(rng, n))
        fs.push_back(detail::arc(l, r));
    auto w = detail::draw_weights(rng, n, weights);
    return Instance<std::int64_t>(std::move(fs), std::move(w));
}

/// n polylines with segments_per_filament segments each. Intervals come from
/// a random pairing of 1..2n scaled by 16; interior vertices have x inside
/// the interval (sorted) and integer heights in [0, r - l].
inline Instance<std::int64_t> gen_random_polylines(std::size_t n, std::uint64_t seed, std::size_t segments_per_filament,
                                                   WeightRange weights)
{
    if (segments_per_filament < 1)
        throw std::invalid_argument("segments_per_filament must be at least 1");
    constexpr std::int64_t scale = 16;
    SplitMix64 rng(seed);
    std::vector<Filament> fs;
    for (auto [l, r] : detail::random_intervals(rng, n))
    {
        l *= scale;
        r *= scale;
        std::vector<std::int64_t> xs(segments_per_filament - 1);
        for (auto& x : xs)
            x = rng.between(l, r);
        std::sort(xs.begin(), xs.end());
        PolylineFilament p;
        p.vertices.push_back({Rational(l), Rational(0)});
        for (auto x : xs)
            p.vertices.push_back({Rational(x), Rational(rng.between(0, r - l))});
        p.vertices.push_back({Rational(r), Rational(0)});
        fs.emplace_back(std::move(p));
    }
    auto w = detail::draw_weights(rng, n, weights);
    return Instance<std::int64_t>(std::move(fs), std::move(w));
}

/// n pairwise non-intersecting semicircles: each pair is nested or disjoint.
/// The intervals are the matching brackets of a uniformly random balanced
/// bracket word over positions 1..2n.
inline Instance<std::int64_t> gen_nested_arcs(std::size_t n, std::uint64_t seed, WeightRange weights)
{
    SplitMix64 rng(seed);
    // n opens and n closes in random order, then rotated to start just after
    // the lowest prefix sum, which makes the word balanced.
    std::vector<int> word(2 * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        word[i] = 1;
        word[n + i] = -1;
    }
    rng.shuffle(word);
    std::size_t start = 0;
    int depth = 0;
    int lowest = 0;
    for (std::size_t i = 0; i < word.size(); ++i)
    {
        depth += word[i];
        if (depth < lowest)
        {
            lowest = depth;
            start = i + 1;
        }
    }
    std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(start % std::max<std::size_t>(word.size(), 1)),
                word.end());

    std::vector<Filament> fs;
    std::vector<std::int64_t> open;
    for (std::size_t i = 0; i < word.size(); ++i)
    {
        const auto pos = static_cast<std::int64_t>(i + 1);
        if (word[i] > 0)
        {
            open.push_back(pos);
        }
        else
        {
            fs.push_back(detail::arc(open.back(), pos));
            open.pop_back();
        }
    }
    auto w = detail::draw_weights(rng, n, weights);
    return Instance<std::int64_t>(std::move(fs), std::move(w));
}

struct GeneratorSpec
{
    Family family = Family::random_arcs;
    /// Filament count. Must be even for worstcase (two cliques of n / 2).
    std::size_t n = 0;
    std::uint64_t seed = 0;
    /// Unset means unit weights for worstcase and [1, 100] elsewhere.
    std::optional<WeightRange> weights;
    std::size_t segments = 3;
};

inline Instance<std::int64_t> generate(const GeneratorSpec& spec)
{
    const WeightRange default_range{1, 100};
    switch (spec.family)
    {
    case Family::worstcase: {
        if (spec.n % 2 != 0)
            throw std::invalid_argument("worstcase needs an even filament count");
        if (!spec.weights)
            return gen_worstcase(spec.n / 2);
        SplitMix64 rng(spec.seed);
        const auto w = detail::draw_weights(rng, spec.n, *spec.weights);
        return gen_worstcase(spec.n / 2, &w);
    }
    case Family::random_arcs: return gen_random_arcs(spec.n, spec.seed, spec.weights.value_or(default_range));
    case Family::random_polylines:
        return gen_random_polylines(spec.n, spec.seed, spec.segments, spec.weights.value_or(default_range));
    case Family::nested_arcs: return gen_nested_arcs(spec.n, spec.seed, spec.weights.value_or(default_range));
    }
    throw std::invalid_argument("unknown family");
}

} // namespace ifg

#endif // IFG_GENERATORS_HPP
