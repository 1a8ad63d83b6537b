#include "weyl/serialize.hpp"

namespace weyl
{

namespace
{

const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(std::string("missing JSON field '") + key + "'");
    return j.at(key);
}

int int_field(const Json &j, const char *key)
{
    const Json &v = field(j, key);
    if (!v.is_number_integer())
        throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

const Json &array_field(const Json &j, const char *key)
{
    const Json &v = field(j, key);
    if (!v.is_array())
        throw std::invalid_argument(std::string("field '") + key + "' must be an array");
    return v;
}

} // namespace

Json to_json(const Polynomial &p)
{
    Json out;
    const int n = p.variables();
    if (n % 2 == 0)
        out["N"] = n / 2;
    else
        out["variables"] = n;
    Json terms = Json::array();
    // Highest degree first, matching the text rendering.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Json exps = Json::array();
        for (int v = 0; v < n; ++v)
            exps.push_back(static_cast<int>(it->first.exps[static_cast<std::size_t>(v)]));
        terms.push_back({{"exp", exps}, {"re", to_string(it->second.real())}, {"im", to_string(it->second.imag())}});
    }
    out["terms"] = terms;
    return out;
}

Polynomial polynomial_from_json(const Json &j)
{
    int n = 0;
    if (j.is_object() && j.contains("variables"))
        n = int_field(j, "variables");
    else
        n = 2 * int_field(j, "N");
    if (n < 1 || n > kMaxVariables)
        throw std::invalid_argument("variable count out of range");
    Polynomial p(n);
    for (const auto &t : array_field(j, "terms")) {
        const Json &exps = array_field(t, "exp");
        if (static_cast<int>(exps.size()) != n)
            throw std::invalid_argument("exponent vector length differs from the variable count");
        Monomial m;
        for (int v = 0; v < n; ++v) {
            const int e = exps[static_cast<std::size_t>(v)].get<int>();
            if (e < 0 || e > kMaxTotalDegree)
                throw std::invalid_argument("exponent out of range");
            m.exps[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
        }
        const std::string im = t.contains("im") ? t.at("im").get<std::string>() : "0";
        p.add_term(m, parse_gaussian(field(t, "re").get<std::string>(), im));
    }
    return p;
}

Json to_json(const SymbolSeries &s)
{
    Json h = Json::array();
    for (const auto &c : s.coefficients())
        h.push_back(to_json(c));
    return {{"order", s.order()}, {"hbar", h}};
}

SymbolSeries series_from_json(const Json &j)
{
    const int order = int_field(j, "order");
    const Json &h = array_field(j, "hbar");
    if (static_cast<int>(h.size()) != order + 1)
        throw std::invalid_argument("series needs order + 1 coefficients");
    const Polynomial first = polynomial_from_json(h[0]);
    SymbolSeries s(order, first);
    s[0] = first;
    for (int e = 1; e <= order; ++e) {
        s[e] = polynomial_from_json(h[static_cast<std::size_t>(e)]);
        if (s[e].variables() != first.variables())
            throw std::invalid_argument("series coefficients live in different rings");
    }
    return s;
}

Json to_json(const JetSeries &jet)
{
    Json terms = Json::array();
    for (const auto &[key, poly] : jet.terms())
        terms.push_back({{"hbar", key.first}, {"deriv", key.second}, {"poly", to_json(poly)}});
    return {{"order", jet.order()}, {"base", to_json(jet.base())}, {"terms", terms}};
}

JetSeries jet_from_json(const Json &j)
{
    JetSeries jet(polynomial_from_json(field(j, "base")), int_field(j, "order"));
    for (const auto &t : array_field(j, "terms")) {
        const Polynomial q = polynomial_from_json(field(t, "poly"));
        if (q.variables() != jet.variables())
            throw std::invalid_argument("jet coefficient lives in a different ring");
        jet.add(int_field(t, "hbar"), int_field(t, "deriv"), q);
    }
    return jet;
}

Json to_json(const ResolventSymbol &r)
{
    Json laurent = Json::array();
    for (const auto &[power, poly] : r.laurent())
        laurent.push_back({{"power", power}, {"poly", to_json(poly)}});
    return {{"base", to_json(r.base())}, {"laurent", laurent}};
}

ResolventSymbol resolvent_from_json(const Json &j)
{
    const Polynomial base = polynomial_from_json(field(j, "base"));
    ResolventSymbol r(base);
    for (const auto &t : array_field(j, "laurent"))
        r += ResolventSymbol::term(base, polynomial_from_json(field(t, "poly")), int_field(t, "power"));
    return r;
}

Json to_json(const HbarSeries<ResolventSymbol> &s)
{
    Json h = Json::array();
    for (const auto &c : s.coefficients())
        h.push_back(to_json(c));
    return {{"order", s.order()}, {"base", to_json(s[0].base())}, {"hbar", h}};
}

HbarSeries<ResolventSymbol> resolvent_series_from_json(const Json &j)
{
    const int order = int_field(j, "order");
    const Polynomial base = polynomial_from_json(field(j, "base"));
    const Json &h = array_field(j, "hbar");
    if (static_cast<int>(h.size()) != order + 1)
        throw std::invalid_argument("series needs order + 1 coefficients");
    HbarSeries<ResolventSymbol> s(order, ResolventSymbol(base));
    for (int e = 0; e <= order; ++e) {
        s[e] = resolvent_from_json(h[static_cast<std::size_t>(e)]);
        if (!(s[e].base() == base))
            throw std::invalid_argument("resolvent coefficients disagree on the base symbol");
    }
    return s;
}

Json to_json(const LabeledGraph &g)
{
    Json edges = Json::array();
    for (const auto &[u, v] : g.edge_map())
        edges.push_back({u + 1, v + 1});
    return {{"V", g.vertices()}, {"edges", edges}};
}

std::pair<int, std::vector<Arrow>> arrows_from_json(const Json &j)
{
    const int v = int_field(j, "V");
    if (v < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    std::vector<Arrow> arrows;
    for (const auto &e : array_field(j, "edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("each edge is a pair of vertex numbers");
        const int a = e[0].get<int>();
        const int b = e[1].get<int>();
        if (a < 1 || b < 1 || a > v || b > v)
            throw std::invalid_argument("edge endpoint out of range (vertices are numbered from 1)");
        if (a == b)
            throw std::invalid_argument("self-loops are not graphs of this calculus");
        arrows.push_back({a - 1, b - 1});
    }
    return {v, arrows};
}

LabeledGraph labeled_graph_from_json(const Json &j)
{
    const auto [v, arrows] = arrows_from_json(j);
    std::vector<std::pair<int, int>> edges;
    for (const auto &a : arrows)
        edges.emplace_back(a.tail, a.head);
    return LabeledGraph(v, std::move(edges));
}

Json to_json(const UnlabeledGraph &g) { return to_json(g.representative()); }

UnlabeledGraph unlabeled_graph_from_json(const Json &j) { return canonicalize(labeled_graph_from_json(j)); }

Json to_json(const PropagatorSeries &s)
{
    Json terms = Json::array();
    for (const auto &[key, poly] : s.terms)
        terms.push_back({{"t", key.first}, {"hbar", key.second}, {"poly", to_json(poly)}});
    return {{"t_order", s.t_order}, {"terms", terms}};
}

PropagatorSeries propagator_from_json(const Json &j)
{
    PropagatorSeries s;
    s.t_order = int_field(j, "t_order");
    for (const auto &t : array_field(j, "terms")) {
        Polynomial p = polynomial_from_json(field(t, "poly"));
        if (!p.is_zero())
            s.terms[{int_field(t, "t"), int_field(t, "hbar")}] = std::move(p);
    }
    return s;
}

} // namespace weyl
