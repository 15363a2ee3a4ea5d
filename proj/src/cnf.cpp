#include "twi/cnf.hpp"

#include <algorithm>
#include <string>

namespace twi {

int CnfFormula::max_arity() const {
  std::size_t k = 0;
  for (const auto& c : clauses) k = std::max(k, c.size());
  return static_cast<int>(k);
}

CnfFormula normalized(CnfFormula phi) {
  if (phi.num_vars < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    auto& c = phi.clauses[i];
    for (const auto& lit : c)
      if (lit.var < 0 || lit.var >= phi.num_vars)
        throw std::invalid_argument("clause " + std::to_string(i + 1) +
                                    " references undeclared variable " +
                                    std::to_string(lit.var + 1));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t j = 1; j < c.size(); ++j)
      if (c[j].var == c[j - 1].var)
        throw std::invalid_argument("clause " + std::to_string(i + 1) +
                                    " contains a variable and its negation");
  }
  return phi;
}

bool satisfies(const Clause& c, const std::vector<bool>& assignment) {
  return std::any_of(c.begin(), c.end(),
                     [&](const Literal& l) { return assignment[l.var] == l.positive; });
}

int count_satisfied(const CnfFormula& phi, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != phi.num_vars)
    throw std::invalid_argument("assignment length differs from variable count");
  int count = 0;
  for (const auto& c : phi.clauses) count += satisfies(c, assignment) ? 1 : 0;
  return count;
}

Graph build_factor_graph(const CnfFormula& phi) {
  const CnfFormula norm = normalized(phi);
  std::vector<Edge> edges;
  for (int i = 0; i < norm.clause_count(); ++i)
    for (const auto& lit : norm.clauses[i]) edges.push_back({lit.var, clause_vertex(norm, i)});
  std::vector<VertexRole> roles(norm.num_vars, VertexRole::variable);
  roles.resize(norm.num_vars + norm.clause_count(), VertexRole::clause);
  return Graph(norm.num_vars + norm.clause_count(), std::move(edges), std::move(roles));
}

}  // namespace twi
