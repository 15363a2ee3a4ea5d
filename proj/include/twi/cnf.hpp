#pragma once

#include <vector>

#include "twi/graph.hpp"

namespace twi {

struct Literal {
  int var = 0;  // 0-based
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  int max_arity() const;
  bool operator==(const CnfFormula&) const = default;
};

// Sorts each clause, drops repeated literals and checks variable ranges.
// Throws std::invalid_argument on an undeclared variable or on a clause
// containing both x and not-x.
CnfFormula normalized(CnfFormula phi);

bool satisfies(const Clause& c, const std::vector<bool>& assignment);
int count_satisfied(const CnfFormula& phi, const std::vector<bool>& assignment);

// Bipartite incidence graph: vertices 0..n-1 are variables, n..n+m-1 clauses.
Graph build_factor_graph(const CnfFormula& phi);
inline Vertex clause_vertex(const CnfFormula& phi, int clause) { return phi.num_vars + clause; }

}  // namespace twi
