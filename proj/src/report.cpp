#include "twi/report.hpp"

#include <sstream>
#include <stdexcept>

namespace twi {

Json vertices_to_json(const std::vector<Vertex>& vs) {
  Json j = Json::array();
  for (Vertex v : vs) j.push_back(v + 1);
  return j;
}

std::vector<Vertex> vertices_from_json(const Json& j) {
  std::vector<Vertex> out;
  for (const auto& v : j) out.push_back(v.get<int>() - 1);
  return out;
}

Json edges_to_json(const Graph& g, const std::vector<EdgeId>& edges) {
  Json j = Json::array();
  for (EdgeId e : edges) j.push_back({g.edge(e).u + 1, g.edge(e).v + 1});
  return j;
}

std::vector<EdgeId> edges_from_json(const Graph& g, const Json& j) {
  std::vector<EdgeId> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("edge must be a pair");
    const int a = pair[0].get<int>() - 1, b = pair[1].get<int>() - 1;
    if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count() || a == b ||
        !g.has_edge(a, b))
      throw std::invalid_argument("(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                                  ") is not an edge of the instance");
    out.push_back(*g.edge_id(a, b));
  }
  return out;
}

Json decomposition_to_json(const TreeDecomposition& t) {
  Json bags = Json::array();
  for (const auto& b : t.bags) bags.push_back(vertices_to_json(b));
  Json parent = Json::array();
  for (int p : t.parent) parent.push_back(p);
  return Json{{"width", width(t)}, {"parent", parent}, {"bags", bags}};
}

TreeDecomposition decomposition_from_json(const Json& j) {
  TreeDecomposition t;
  const auto& bags = j.at("bags");
  const auto& parent = j.at("parent");
  if (bags.size() != parent.size()) throw std::invalid_argument("bags and parent differ in length");
  for (std::size_t i = 0; i < bags.size(); ++i) {
    t.parent.push_back(parent[i].get<int>());
    auto bag = vertices_from_json(bags[i]);
    std::sort(bag.begin(), bag.end());
    t.bags.push_back(std::move(bag));
  }
  return t;
}

Json assignment_to_json(const std::vector<bool>& assignment) {
  Json j = Json::array();
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    const int lit = static_cast<int>(v) + 1;
    j.push_back(assignment[v] ? lit : -lit);
  }
  return j;
}

std::vector<bool> assignment_from_json(const Json& j, int num_vars) {
  std::vector<bool> a(num_vars, false);
  std::vector<char> seen(num_vars, 0);
  for (const auto& lit : j) {
    const int l = lit.get<int>();
    const int v = std::abs(l) - 1;
    if (l == 0 || v >= num_vars) throw std::invalid_argument("literal out of range");
    if (seen[v]) throw std::invalid_argument("variable assigned twice");
    seen[v] = 1;
    a[v] = l > 0;
  }
  for (int v = 0; v < num_vars; ++v)
    if (!seen[v]) throw std::invalid_argument("variable " + std::to_string(v + 1) + " unassigned");
  return a;
}

std::string assignment_certificate(const std::vector<bool>& assignment) {
  std::ostringstream out;
  out << 'v';
  for (std::size_t v = 0; v < assignment.size(); ++v)
    out << ' ' << (assignment[v] ? "" : "-") << v + 1;
  out << " 0";
  return out.str();
}

Json cut_to_json(const Graph& g, const CutInequality& cut) {
  Json terms = Json::array();
  for (const auto& [e, c] : cut.coefficients)
    terms.push_back({{"edge", {g.edge(e).u + 1, g.edge(e).v + 1}}, {"coefficient", c}});
  return Json{{"origin", cut.origin},
              {"terms", terms},
              {"rhs", cut.rhs},
              {"violation_at_addition", cut.violation_at_addition}};
}

Json interdiction_to_json(const Graph& g, const InterdictionResult& r, const InterdictConfig& c) {
  const auto& st = r.stats;
  Json levels = Json::array();
  for (double v : st.level_volumes) levels.push_back(v);
  Json history = Json::array();
  for (double v : st.objective_history) history.push_back(v);
  Json cuts = Json::array();
  for (const auto& cut : r.cuts) cuts.push_back(cut_to_json(g, cut));
  Json trace = Json::array();
  for (const auto& node : r.trace.nodes)
    trace.push_back({{"parent", node.parent},
                     {"vertices", node.vertices.size()},
                     {"S", vertices_to_json(node.S)},
                     {"X", vertices_to_json(node.X)},
                     {"D", edges_to_json(g, node.D)},
                     {"leaf", node.leaf},
                     {"seeded", node.seeded},
                     {"padded", node.padded}});
  return Json{{"w", c.w},
              {"bag_cap", r.bag_cap},
              {"F", edges_to_json(g, r.F)},
              {"decomposition", decomposition_to_json(r.decomposition)},
              {"stats",
               {{"lp_lower_bound", st.lp_lower_bound},
                {"cuts", st.cuts},
                {"rounds", st.rounds},
                {"ratio", st.ratio ? Json(*st.ratio) : Json(nullptr)},
                {"sep_lp_calls", st.sep_lp_calls},
                {"partition_calls", st.partition_calls},
                {"max_depth", st.max_depth},
                {"level_volumes", levels},
                {"objective_history", history}}},
              {"cut_pool", cuts},
              {"trace", trace}};
}

Json bsi_to_json(const Graph& g, const BsiSolveResult& r, int s, double beta) {
  Json pieces = Json::array();
  for (const auto& p : r.best.pieces) pieces.push_back(vertices_to_json(p));
  Json proper_pieces = Json::array();
  for (const auto& p : r.proper.pieces) proper_pieces.push_back(vertices_to_json(p));
  Json runs = Json::array();
  for (const auto& run : r.runs)
    runs.push_back({{"a", run.a},
                    {"lp_objective", run.lp_objective},
                    {"repeat", run.repeat},
                    {"seed", run.seed},
                    {"separator_size", run.separator_size},
                    {"cross_edges", run.cross_edges},
                    {"x_prime", run.x_prime},
                    {"score", run.score}});
  Json grid = Json::array();
  for (int a : r.grid) grid.push_back(a);
  return Json{{"s", s},
              {"beta", beta},
              {"a", r.best.a},
              {"seed", r.best.seed},
              {"lp_objective", r.lp.objective},
              {"X_prime", vertices_to_json(r.best.X)},
              {"pieces", pieces},
              {"cross_edges", edges_to_json(g, r.best.cross_edges)},
              {"phase_count", r.best.phase_count},
              {"preprocessed", r.best.preprocessed},
              {"leftover", r.best.leftover},
              {"fallback", r.best.fallback},
              {"X_double_prime", vertices_to_json(r.proper.X)},
              {"proper_pieces", proper_pieces},
              {"a_grid", grid},
              {"runs", runs}};
}

Json mis_to_json(const MisReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(vertices_to_json(c));
  return Json{{"objective", r.objective},
              {"independent_set", vertices_to_json(r.independent_set)},
              {"separator", vertices_to_json(r.separator)},
              {"largest_component", r.largest_component},
              {"components", comps}};
}

Json maxsat_to_json(const CnfFormula& phi, const MaxSatReport& r) {
  Json deleted = Json::array();
  for (int c : r.deleted_clauses) deleted.push_back(c + 1);
  const Graph h = build_factor_graph(phi);
  return Json{{"objective", r.objective},
              {"clauses", phi.clause_count()},
              {"reduced_optimum", r.reduced_optimum},
              {"deleted_clauses", deleted},
              {"deleted_edges", edges_to_json(h, r.deleted_edges)},
              {"decomposition_width", r.decomposition_width},
              {"bag_cap", r.bag_cap},
              {"lp_lower_bound", r.interdiction.lp_lower_bound},
              {"cuts", r.interdiction.cuts},
              {"assignment", assignment_to_json(r.assignment)},
              {"certificate", assignment_certificate(r.assignment)}};
}

}  // namespace twi
