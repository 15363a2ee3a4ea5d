#pragma once

#include <variant>
#include <vector>

#include "twi/graph.hpp"
#include "twi/lp.hpp"

namespace twi {

// Per-edge lengths x_e in [0,1], indexed by edge id of the parent graph.
using EdgeLengths = std::vector<double>;
// Per-vertex weights y_v, indexed by vertex id; ids past the end weigh 0.
using VertexWeights = std::vector<double>;

inline double weight_of(const VertexWeights& y, Vertex v) {
  return v < static_cast<int>(y.size()) ? y[v] : 0.0;
}

// Length of an arc of a Subgraph: a real edge or a zombie edge (which
// inherits the length of the edge it replaces).
double arc_length(const Subgraph& h, const EdgeLengths& x, int tag);
// The parent edge behind an arc tag.
EdgeId arc_edge(const Subgraph& h, int tag);

struct ShortestPaths {
  Vertex source = -1;
  std::vector<double> dist;   // indexed by vertex id; +inf when unreachable
  std::vector<Vertex> pred;   // -1 at the source and for unreachable vertices
  std::vector<int> pred_tag;  // arc tag used to reach each vertex

  // Vertices from the source to `target`, inclusive.
  std::vector<Vertex> path_to(Vertex target) const;
};

// Path length counts every edge length and every vertex weight on the path,
// both end vertices included.
ShortestPaths node_weighted_shortest_paths(const Subgraph& h, const EdgeLengths& x,
                                           const VertexWeights& y, Vertex source);

// Symmetric matrix over the positions 0..|S|-1 of S.
using PairDistances = std::vector<std::vector<double>>;

struct SpreadingViolation {
  int center = -1;           // position in S
  std::vector<int> members;  // positions in S, center included
  double violation = 0.0;    // (|U| - |S|/2) - sum_{v in U} d(center, v)
};

// Most violated spreading row whose centre is `center`, if it is violated by
// more than tol.  Only sets with a positive right-hand side are considered.
std::optional<SpreadingViolation> most_violated_spreading(const PairDistances& d, int center,
                                                          double tol);
// The most violated spreading row over all centres.
std::optional<SpreadingViolation> separate_spreading(const PairDistances& d, double tol = 1e-9);

struct SeparatorSolution {
  std::vector<Vertex> S;
  VertexWeights y;  // indexed by vertex id of the parent graph
  PairDistances d;  // over positions of S
  double objective = 0.0;
  double dual_objective = 0.0;
};

struct PathFlow {
  std::vector<Vertex> path;
  std::vector<EdgeId> edges;  // parent edge ids along the path
  int pair_a = -1, pair_b = -1;  // positions in S of the end points
  double value = 0.0;
};

struct SpreadingDual {
  int center = -1;
  std::vector<int> members;
  double value = 0.0;
};

struct DualCertificate {
  std::vector<Vertex> S;
  std::vector<PathFlow> flows;
  std::vector<SpreadingDual> spreading;
  SparseRow coefficients;  // c_e over edge ids
  double K = 0.0;
  double lambda = 0.0;     // optimum of the restricted sep-LP
};

struct SepLpOptions {
  LpTolerances tol;
  int max_rounds = 2000;
};

struct SepLpStats {
  int rounds = 0;
  int path_rows = 0;
  int spreading_rows = 0;
};

using SepLpOutcome = std::variant<SeparatorSolution, DualCertificate>;

class SepLpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimises sum(y) subject to the path and spreading rows for S, generated
// lazily.  Returns the solution when the optimum is at most w + tol, and the
// restricted dual otherwise.
SepLpOutcome solve_sep_lp(const Subgraph& h, const EdgeLengths& x, const std::vector<Vertex>& S,
                          double w, const SepLpOptions& options = {}, SepLpStats* stats = nullptr);

// The inequality sum_e c_e x_e >= K - w carried by a certificate.
CutInequality extract_cut(const DualCertificate& cert, double w);

// Largest violation of the flow-LP constraints by (f, g); <= tol means the
// pair is S-valid.
double s_validity_violation(const DualCertificate& cert);

}  // namespace twi
