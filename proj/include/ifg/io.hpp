#ifndef IFG_IO_HPP
#define IFG_IO_HPP

// Line-delimited JSON instance files.
//
//   {"format_version":1,"type":"instance"}
//   {"id":"a","kind":"semicircle","l":0,"r":2,"type":"filament","weight":3}
//   {"id":"p","kind":"polyline","type":"filament","vertices":[[0,0],[[1,2],3],[2,0]],"weight":1}
//   {"id":"x","kind":"abstract","l":0,"r":5,"type":"filament","weight":1}
//   {"row":[1,0,1],"type":"adjacency"}
//   {"a":"a","b":"p","type":"edge_weight","w":7}
//
// A coordinate is an integer or a [numerator, denominator] pair. Adjacency
// rows follow filament order and are required iff some filament is abstract.
// Blank lines and lines starting with '#' are ignored.

#include "ifg/geometry.hpp"
#include "ifg/instance.hpp"
#include "ifg/mwim.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ifg {

inline constexpr int format_version = 1;

class parse_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

template <class W>
struct EdgeWeightRecord
{
    std::string a;
    std::string b;
    W w{};
};

/// File contents before any geometric validation, so invalid filaments can
/// still be loaded and reported on.
template <class W>
struct InstanceRecord
{
    std::vector<std::string> ids;
    std::vector<Filament> filaments;
    std::vector<W> weights;
    std::optional<std::vector<std::vector<bool>>> adjacency;
    std::vector<EdgeWeightRecord<W>> edge_weights;

    std::size_t size() const { return filaments.size(); }

    Instance<W> build() const
    {
        std::optional<AdjacencyMatrix> adj;
        if (adjacency)
            adj = AdjacencyMatrix::from_rows(*adjacency);
        return Instance<W>(filaments, weights, std::move(adj));
    }

    std::optional<std::size_t> position(const std::string& id) const
    {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id)
                return i;
        return std::nullopt;
    }

    /// Edge weights keyed by positions; unknown ids throw parse_error.
    EdgeWeights<W> edge_weight_map() const
    {
        EdgeWeights<W> out;
        for (const auto& e : edge_weights)
        {
            const auto a = position(e.a);
            const auto b = position(e.b);
            if (!a || !b)
                throw parse_error("edge weight references unknown id '" + (a ? e.b : e.a) + "'");
            out[normalized({*a, *b})] = e.w;
        }
        return out;
    }
};

namespace detail {

using nlohmann::json;

inline Rational parse_rational(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    {
        const auto den = j[1].get<std::int64_t>();
        if (den == 0)
            throw parse_error(where + ": zero denominator");
        return Rational(j[0].get<std::int64_t>(), den);
    }
    throw parse_error(where + ": expected an integer or [numerator, denominator]");
}

inline json rational_json(const Rational& q)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const auto num = numerator(q);
    const auto den = denominator(q);
    const auto lo = std::numeric_limits<std::int64_t>::min();
    const auto hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi)
        throw std::out_of_range("coordinate does not fit the 64-bit file encoding");
    if (den == 1)
        return num.convert_to<std::int64_t>();
    return json::array({num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()});
}

template <class W>
W parse_weight(const json& j, const std::string& where)
{
    if constexpr (std::is_integral_v<W>)
    {
        if (!j.is_number_integer())
            throw parse_error(where + ": weight must be an integer");
        return j.get<W>();
    }
    else
    {
        if (!j.is_number())
            throw parse_error(where + ": weight must be a number");
        return j.get<W>();
    }
}

inline const json& field(const json& j, const char* key, const std::string& where)
{
    auto it = j.find(key);
    if (it == j.end())
        throw parse_error(where + ": missing \"" + key + "\"");
    return *it;
}

} // namespace detail

template <class W = std::int64_t>
InstanceRecord<W> parse_instance(std::istream& in)
{
    using detail::field;
    using nlohmann::json;
    InstanceRecord<W> rec;
    bool header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const std::string where = "line " + std::to_string(lineno);
        json j;
        try
        {
            j = json::parse(line);
        }
        catch (const json::parse_error& e)
        {
            throw parse_error(where + ": " + e.what());
        }
        if (!j.is_object())
            throw parse_error(where + ": expected a JSON object");
        const auto& type = field(j, "type", where);
        if (!type.is_string())
            throw parse_error(where + ": \"type\" must be a string");
        const auto t = type.get<std::string>();

        if (!header)
        {
            if (t != "instance")
                throw parse_error(where + ": first record must be the instance header");
            const auto& v = field(j, "format_version", where);
            if (!v.is_number_integer() || v.get<int>() != format_version)
                throw parse_error(where + ": unsupported format_version");
            header = true;
            continue;
        }

        if (t == "filament")
        {
            if (rec.adjacency)
                throw parse_error(where + ": filament after adjacency rows");
            const auto& id = field(j, "id", where);
            if (!id.is_string())
                throw parse_error(where + ": \"id\" must be a string");
            if (rec.position(id.get<std::string>()))
                throw parse_error(where + ": duplicate id '" + id.get<std::string>() + "'");
            const auto kind = field(j, "kind", where);
            if (!kind.is_string())
                throw parse_error(where + ": \"kind\" must be a string");
            const auto k = kind.get<std::string>();
            if (k == "semicircle" || k == "abstract")
            {
                Rational l = detail::parse_rational(field(j, "l", where), where);
                Rational r = detail::parse_rational(field(j, "r", where), where);
                if (k == "semicircle")
                    rec.filaments.emplace_back(SemicircleFilament{std::move(l), std::move(r)});
                else
                    rec.filaments.emplace_back(AbstractFilament{std::move(l), std::move(r)});
            }
            else if (k == "polyline")
            {
                const auto& vs = field(j, "vertices", where);
                if (!vs.is_array() || vs.size() < 2)
                    throw parse_error(where + ": polyline needs at least two vertices");
                PolylineFilament p;
                for (const auto& v : vs)
                {
                    if (!v.is_array() || v.size() != 2)
                        throw parse_error(where + ": vertex must be [x, y]");
                    p.vertices.push_back({detail::parse_rational(v[0], where), detail::parse_rational(v[1], where)});
                }
                rec.filaments.emplace_back(std::move(p));
            }
            else
            {
                throw parse_error(where + ": unknown filament kind '" + k + "'");
            }
            rec.ids.push_back(id.get<std::string>());
            rec.weights.push_back(detail::parse_weight<W>(field(j, "weight", where), where));
        }
        else if (t == "adjacency")
        {
            const auto& row = field(j, "row", where);
            if (!row.is_array())
                throw parse_error(where + ": \"row\" must be an array");
            std::vector<bool> bits;
            for (const auto& b : row)
            {
                if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
                    throw parse_error(where + ": adjacency entries must be 0 or 1");
                bits.push_back(b.get<int>() == 1);
            }
            if (!rec.adjacency)
                rec.adjacency.emplace();
            rec.adjacency->push_back(std::move(bits));
        }
        else if (t == "edge_weight")
        {
            const auto& a = field(j, "a", where);
            const auto& b = field(j, "b", where);
            if (!a.is_string() || !b.is_string())
                throw parse_error(where + ": edge endpoints must be ids");
            rec.edge_weights.push_back({a.get<std::string>(), b.get<std::string>(),
                                        detail::parse_weight<W>(field(j, "w", where), where)});
        }
        else
        {
            throw parse_error(where + ": unknown record type '" + t + "'");
        }
    }
    if (!header)
        throw parse_error("missing instance header");

    bool any_abstract = false;
    for (const auto& f : rec.filaments)
        any_abstract = any_abstract || is_abstract(f);
    if (any_abstract && !rec.adjacency)
        throw parse_error("abstract filaments require adjacency rows");
    if (rec.adjacency)
    {
        if (rec.adjacency->size() != rec.size())
            throw parse_error("adjacency has " + std::to_string(rec.adjacency->size()) + " rows for "
                              + std::to_string(rec.size()) + " filaments");
        try
        {
            (void)AdjacencyMatrix::from_rows(*rec.adjacency);
        }
        catch (const invalid_instance& e)
        {
            throw parse_error(e.what());
        }
    }
    for (const auto& e : rec.edge_weights)
        if (!rec.position(e.a) || !rec.position(e.b))
            throw parse_error("edge weight references unknown id '" + (rec.position(e.a) ? e.b : e.a) + "'");
    return rec;
}

template <class W = std::int64_t>
InstanceRecord<W> parse_instance(const std::string& text)
{
    std::istringstream in(text);
    return parse_instance<W>(in);
}

template <class W>
std::string serialize(const InstanceRecord<W>& rec)
{
    using nlohmann::json;
    std::string out = json{{"type", "instance"}, {"format_version", format_version}}.dump() + "\n";
    for (std::size_t i = 0; i < rec.size(); ++i)
    {
        json j{{"type", "filament"}, {"id", rec.ids[i]}, {"weight", rec.weights[i]}};
        std::visit(
            [&](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, PolylineFilament>)
                {
                    j["kind"] = "polyline";
                    json vs = json::array();
                    for (const auto& v : f.vertices)
                        vs.push_back(json::array({detail::rational_json(v.x), detail::rational_json(v.y)}));
                    j["vertices"] = std::move(vs);
                }
                else
                {
                    j["kind"] = std::is_same_v<F, SemicircleFilament> ? "semicircle" : "abstract";
                    j["l"] = detail::rational_json(f.left);
                    j["r"] = detail::rational_json(f.right);
                }
            },
            rec.filaments[i]);
        out += j.dump() + "\n";
    }
    if (rec.adjacency)
        for (const auto& row : *rec.adjacency)
        {
            json r = json::array();
            for (bool b : row)
                r.push_back(b ? 1 : 0);
            out += json{{"type", "adjacency"}, {"row", std::move(r)}}.dump() + "\n";
        }
    for (const auto& e : rec.edge_weights)
        out += json{{"type", "edge_weight"}, {"a", e.a}, {"b", e.b}, {"w", e.w}}.dump() + "\n";
    return out;
}

/// Record for an in-memory instance with ids f0, f1, ...
template <class W>
InstanceRecord<W> to_record(const Instance<W>& inst, const EdgeWeights<W>* edge_weights = nullptr)
{
    InstanceRecord<W> rec;
    for (std::size_t i = 0; i < inst.size(); ++i)
        rec.ids.push_back("f" + std::to_string(i));
    rec.filaments = inst.filaments();
    rec.weights = inst.weights();
    if (inst.adjacency())
    {
        rec.adjacency.emplace();
        for (std::size_t i = 0; i < inst.size(); ++i)
        {
            std::vector<bool> row(inst.size());
            for (std::size_t j = 0; j < inst.size(); ++j)
                row[j] = (*inst.adjacency())(i, j);
            rec.adjacency->push_back(std::move(row));
        }
    }
    if (edge_weights)
        for (const auto& [e, w] : *edge_weights)
            rec.edge_weights.push_back({rec.ids[e.first], rec.ids[e.second], w});
    return rec;
}

} // namespace ifg

#endif // IFG_IO_HPP
