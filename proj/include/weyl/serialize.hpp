#ifndef WEYL_SERIALIZE_HPP
#define WEYL_SERIALIZE_HPP

#include <json.hpp>

#include "weyl/functional_calculus.hpp"
#include "weyl/graph.hpp"
#include "weyl/quadratic.hpp"

namespace weyl
{

using Json = nlohmann::json;

// Exact values travel as strings ("-1/8") so no precision is lost.
//
// Polynomial: {"N": 1, "terms": [{"exp": [2, 0], "re": "1/2", "im": "0"}]}; a ring with an odd
// number of variables uses "variables" in place of "N".
Json to_json(const Polynomial &p);
Polynomial polynomial_from_json(const Json &j);

// {"order": 4, "hbar": [poly, ...]}
Json to_json(const SymbolSeries &s);
SymbolSeries series_from_json(const Json &j);

// {"order": 4, "base": poly, "terms": [{"hbar": 2, "deriv": 2, "poly": poly}, ...]}
Json to_json(const JetSeries &jet);
JetSeries jet_from_json(const Json &j);

// {"base": poly, "laurent": [{"power": -3, "poly": poly}, ...]}
Json to_json(const ResolventSymbol &r);
ResolventSymbol resolvent_from_json(const Json &j);

// {"order": 4, "base": poly, "hbar": [resolvent, ...]}
Json to_json(const HbarSeries<ResolventSymbol> &s);
HbarSeries<ResolventSymbol> resolvent_series_from_json(const Json &j);

// {"V": 3, "edges": [[1, 2], [2, 3]]}, vertices 1-based; each pair is an arrow tail -> head.
Json to_json(const LabeledGraph &g);
LabeledGraph labeled_graph_from_json(const Json &j);
/// Arrows exactly as listed (no reordering of endpoints).
std::pair<int, std::vector<Arrow>> arrows_from_json(const Json &j);
// Unlabeled graphs are written through their canonical representative.
Json to_json(const UnlabeledGraph &g);
UnlabeledGraph unlabeled_graph_from_json(const Json &j);

// {"t_order": 4, "terms": [{"t": 3, "hbar": -1, "poly": poly}, ...]}
Json to_json(const PropagatorSeries &s);
PropagatorSeries propagator_from_json(const Json &j);

} // namespace weyl

#endif
