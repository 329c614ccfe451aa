#ifndef IFG_GEOMETRY_HPP
#define IFG_GEOMETRY_HPP

// Exact filament curves and intersection predicates between them.
//
// Every predicate in this header is evaluated in exact rational arithmetic.
// Touching counts as intersecting: two curves that share a single point
// (including a common endpoint on the axis) intersect.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace ifg {

using Rational = boost::multiprecision::cpp_rational;

struct Point
{
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Upper semicircle on the diameter [left, right] of the x-axis.
struct SemicircleFilament
{
    Rational left;
    Rational right;
};

/// Polyline from (left, 0) to (right, 0); left and right are the x of the
/// first and last vertex.
struct PolylineFilament
{
    std::vector<Point> vertices;

    const Rational& left() const { return vertices.front().x; }
    const Rational& right() const { return vertices.back().x; }
};

/// Endpoints only. The body is unknown and adjacency must come from an
/// explicit matrix.
struct AbstractFilament
{
    Rational left;
    Rational right;
};

using Filament = std::variant<SemicircleFilament, PolylineFilament, AbstractFilament>;

inline const Rational& left_of(const Filament& f)
{
    return std::visit(
        [](const auto& g) -> const Rational& {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, PolylineFilament>)
                return g.left();
            else
                return g.left;
        },
        f);
}

inline const Rational& right_of(const Filament& f)
{
    return std::visit(
        [](const auto& g) -> const Rational& {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, PolylineFilament>)
                return g.right();
            else
                return g.right;
        },
        f);
}

inline bool is_abstract(const Filament& f) { return std::holds_alternative<AbstractFilament>(f); }

// ---------------------------------------------------------------------------
// Validation of polyline filaments

enum class FilamentCondition
{
    too_few_vertices,   // fewer than two vertices
    endpoint_off_axis,  // first or last vertex has y != 0
    below_axis,         // y >= 0
    outside_strip,      // left <= x <= right
    reversed_endpoints  // left <= right
};

inline std::string to_string(FilamentCondition c)
{
    switch (c)
    {
    case FilamentCondition::too_few_vertices: return "at least two vertices";
    case FilamentCondition::endpoint_off_axis: return "endpoint on axis (y = 0)";
    case FilamentCondition::below_axis: return "y >= 0";
    case FilamentCondition::outside_strip: return "l <= x <= r";
    case FilamentCondition::reversed_endpoints: return "l <= r";
    }
    return "unknown";
}

struct FilamentViolation
{
    FilamentCondition condition;
    std::size_t vertex;

    friend bool operator==(const FilamentViolation&, const FilamentViolation&) = default;
};

struct FilamentReport
{
    std::vector<FilamentViolation> violations;

    bool ok() const { return violations.empty(); }
};

inline FilamentReport validate_filament(const PolylineFilament& f)
{
    FilamentReport report;
    const auto& v = f.vertices;
    if (v.size() < 2)
    {
        report.violations.push_back({FilamentCondition::too_few_vertices, 0});
        return report;
    }
    const std::size_t last = v.size() - 1;
    if (v.front().y != 0)
        report.violations.push_back({FilamentCondition::endpoint_off_axis, 0});
    if (v.back().y != 0)
        report.violations.push_back({FilamentCondition::endpoint_off_axis, last});
    const Rational& l = f.left();
    const Rational& r = f.right();
    if (l > r)
        report.violations.push_back({FilamentCondition::reversed_endpoints, last});
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (v[i].y < 0)
            report.violations.push_back({FilamentCondition::below_axis, i});
        if (v[i].x < l || v[i].x > r)
            report.violations.push_back({FilamentCondition::outside_strip, i});
    }
    return report;
}

inline FilamentReport validate_filament(const Filament& f)
{
    if (const auto* p = std::get_if<PolylineFilament>(&f))
        return validate_filament(*p);
    FilamentReport report;
    if (left_of(f) > right_of(f))
        report.violations.push_back({FilamentCondition::reversed_endpoints, 1});
    return report;
}

// ---------------------------------------------------------------------------
// Predicates

/// Sign of the cross product (b - a) x (c - a).
inline int orientation(const Point& a, const Point& b, const Point& c)
{
    const Rational det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return det.sign();
}

namespace detail {

// c is known to be collinear with segment a-b.
inline bool on_segment(const Point& a, const Point& b, const Point& c)
{
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y
           && c.y <= std::max(a.y, b.y);
}

} // namespace detail

/// True iff the closed segments a1-a2 and b1-b2 share at least one point.
inline bool segments_intersect(const Point& a1, const Point& a2, const Point& b1, const Point& b2)
{
    const int o1 = orientation(a1, a2, b1);
    const int o2 = orientation(a1, a2, b2);
    const int o3 = orientation(b1, b2, a1);
    const int o4 = orientation(b1, b2, a2);

    if (o1 * o2 < 0 && o3 * o4 < 0)
        return true;

    if (o1 == 0 && detail::on_segment(a1, a2, b1))
        return true;
    if (o2 == 0 && detail::on_segment(a1, a2, b2))
        return true;
    if (o3 == 0 && detail::on_segment(b1, b2, a1))
        return true;
    if (o4 == 0 && detail::on_segment(b1, b2, a2))
        return true;
    return false;
}

/// Combinatorial rule for two upper semicircles given by their diameters.
/// Works for any totally ordered coordinate type, so callers may pass ranks.
template <class T>
bool semicircles_intersect(const T& l1, const T& r1, const T& l2, const T& r2)
{
    if (r1 < l2 || r2 < l1)
        return false;
    const bool first_inside = l2 < l1 && r1 < r2;
    const bool second_inside = l1 < l2 && r2 < r1;
    return !(first_inside || second_inside);
}

namespace detail {

struct Box
{
    Rational xmin, xmax, ymin, ymax;
};

inline Box bounding_box(const std::vector<Point>& pts)
{
    Box b{pts.front().x, pts.front().x, pts.front().y, pts.front().y};
    for (const auto& p : pts)
    {
        b.xmin = std::min(b.xmin, p.x);
        b.xmax = std::max(b.xmax, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.ymax = std::max(b.ymax, p.y);
    }
    return b;
}

inline bool boxes_overlap(const Box& a, const Box& b)
{
    return a.xmin <= b.xmax && b.xmin <= a.xmax && a.ymin <= b.ymax && b.ymin <= a.ymax;
}

inline bool segment_boxes_overlap(const Point& a1, const Point& a2, const Point& b1, const Point& b2)
{
    return std::min(a1.x, a2.x) <= std::max(b1.x, b2.x) && std::min(b1.x, b2.x) <= std::max(a1.x, a2.x)
           && std::min(a1.y, a2.y) <= std::max(b1.y, b2.y) && std::min(b1.y, b2.y) <= std::max(a1.y, a2.y);
}

inline bool polylines_intersect(const PolylineFilament& f, const PolylineFilament& g)
{
    if (!boxes_overlap(bounding_box(f.vertices), bounding_box(g.vertices)))
        return false;
    const auto& a = f.vertices;
    const auto& b = g.vertices;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
    {
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
        {
            if (!segment_boxes_overlap(a[i], a[i + 1], b[j], b[j + 1]))
                continue;
            if (segments_intersect(a[i], a[i + 1], b[j], b[j + 1]))
                return true;
        }
    }
    return false;
}

// Segment p-q against the full circle on diameter [l, r] of the x-axis. The
// caller guarantees the segment lies in y >= 0, where the circle and the upper
// semicircle coincide.
inline bool segment_meets_circle(const Point& p, const Point& q, const Rational& l, const Rational& r)
{
    const Rational cx = (l + r) / 2;
    const Rational rad = (r - l) / 2;
    const Rational dx = q.x - p.x;
    const Rational dy = q.y - p.y;
    const Rational px = p.x - cx;
    const Rational py = p.y;
    // f(t) = a t^2 + b t + c over t in [0, 1]
    const Rational a = dx * dx + dy * dy;
    const Rational b = 2 * (dx * px + dy * py);
    const Rational c = px * px + py * py - rad * rad;
    const Rational f0 = c;
    const Rational f1 = a + b + c;
    if (a == 0)
        return c == 0;
    if (f0 == 0 || f1 == 0)
        return true;
    if ((f0 < 0) != (f1 < 0))
        return true;
    if (f0 < 0)
        return false; // whole segment strictly inside (convexity)
    // both ends outside; check the vertex of the parabola
    const Rational t = -b / (2 * a);
    if (t <= 0 || t >= 1)
        return false;
    return c - b * b / (4 * a) <= 0;
}

inline bool polyline_meets_semicircle(const PolylineFilament& f, const SemicircleFilament& s)
{
    const auto& v = f.vertices;
    if (v.size() == 1)
        return segment_meets_circle(v[0], v[0], s.left, s.right);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (segment_meets_circle(v[i], v[i + 1], s.left, s.right))
            return true;
    return false;
}

} // namespace detail

/// Exact intersection of two geometric filaments. Abstract filaments have no
/// body; asking about one throws std::invalid_argument.
inline bool filaments_intersect(const Filament& f, const Filament& g)
{
    return std::visit(
        [](const auto& a, const auto& b) -> bool {
            using A = std::decay_t<decltype(a)>;
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<A, AbstractFilament> || std::is_same_v<B, AbstractFilament>)
                throw std::invalid_argument("abstract filaments have no geometry");
            else if constexpr (std::is_same_v<A, SemicircleFilament> && std::is_same_v<B, SemicircleFilament>)
                return semicircles_intersect(a.left, a.right, b.left, b.right);
            else if constexpr (std::is_same_v<A, PolylineFilament> && std::is_same_v<B, PolylineFilament>)
                return detail::polylines_intersect(a, b);
            else if constexpr (std::is_same_v<A, PolylineFilament>)
                return detail::polyline_meets_semicircle(a, b);
            else
                return detail::polyline_meets_semicircle(b, a);
        },
        f, g);
}

} // namespace ifg

#endif // IFG_GEOMETRY_HPP
