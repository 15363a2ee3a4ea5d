#pragma once

#include "json.hpp"

#include "twi/bsi.hpp"
#include "twi/cnf.hpp"
#include "twi/graph.hpp"
#include "twi/interdict.hpp"
#include "twi/pipelines.hpp"
#include "twi/tree_decomposition.hpp"

// JSON views of solver results.  Vertex, variable and edge endpoints are
// 1-based in every document, matching the DIMACS files they refer to.
namespace twi {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json vertices_to_json(const std::vector<Vertex>& vs);
std::vector<Vertex> vertices_from_json(const Json& j);

Json edges_to_json(const Graph& g, const std::vector<EdgeId>& edges);
// Resolves [u, v] pairs to edge ids of g; throws std::invalid_argument on a
// pair that is not an edge.
std::vector<EdgeId> edges_from_json(const Graph& g, const Json& j);

Json decomposition_to_json(const TreeDecomposition& t);
TreeDecomposition decomposition_from_json(const Json& j);

Json assignment_to_json(const std::vector<bool>& assignment);  // [1, -2, 3, ...]
std::vector<bool> assignment_from_json(const Json& j, int num_vars);
// "v 1 -2 3 0"
std::string assignment_certificate(const std::vector<bool>& assignment);

Json cut_to_json(const Graph& g, const CutInequality& cut);

Json interdiction_to_json(const Graph& g, const InterdictionResult& r, const InterdictConfig& c);
Json bsi_to_json(const Graph& g, const BsiSolveResult& r, int s, double beta);
Json mis_to_json(const MisReport& r);
Json maxsat_to_json(const CnfFormula& phi, const MaxSatReport& r);

}  // namespace twi
