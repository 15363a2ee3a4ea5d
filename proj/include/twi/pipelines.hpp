#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "twi/bsi.hpp"
#include "twi/cnf.hpp"
#include "twi/graph.hpp"
#include "twi/interdict.hpp"
#include "twi/tree_decomposition.hpp"

namespace twi {

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- MAX-SAT over a tree decomposition of the factor graph ----

struct MaxSatDpOptions {
  int max_bag = 22;  // largest bag the DP accepts
};

struct MaxSatDpResult {
  int satisfied = 0;
  std::vector<bool> assignment;
};

// Exact MAX-SAT by dynamic programming.  `t` must be a valid nice
// decomposition of build_factor_graph(phi).
MaxSatDpResult maxsat_dp(const CnfFormula& phi, const NiceTreeDecomposition& t,
                         const MaxSatDpOptions& options = {});

// ---- MIS on a noisy planar graph ----

struct MisParams {
  int s = 6;
  double beta = 0.5;
  BsiOptions bsi;
};

// Knobs derived from an accuracy target: gamma = eps^2, s = ceil(1/gamma^2),
// beta = sqrt(gamma).
MisParams mis_theory_preset(double epsilon);
MisParams mis_fast_preset();

struct MisReport {
  std::vector<Vertex> independent_set;
  int objective = 0;
  std::vector<Vertex> separator;                 // X''
  std::vector<std::vector<Vertex>> components;   // of G - X''
  int largest_component = 0;
  BsiSolveResult bsi;
  MisParams params;
};

MisReport noisy_mis(const Graph& g, const MisParams& params);

// ---- MAX-k-SAT on a noisy planar formula ----

struct MaxSatParams {
  InterdictConfig interdict;
  MaxSatDpOptions dp;
};

// w = ceil(c * ln(m) * ln(ln(m)) / eps), at least 1; everything else default.
MaxSatParams maxsat_theory_preset(double epsilon, int clause_count, double c = 1.0);
MaxSatParams maxsat_fast_preset(int w);

struct MaxSatReport {
  std::vector<bool> assignment;
  int objective = 0;             // clauses of the input formula satisfied
  int reduced_optimum = 0;       // optimum of the formula with deleted clauses removed
  std::vector<int> deleted_clauses;
  std::vector<EdgeId> deleted_edges;  // F' in the factor graph
  int decomposition_width = 0;         // of the decomposition handed to the DP
  InterdictionStats interdiction;
  int bag_cap = 0;
  MaxSatParams params;
};

MaxSatReport noisy_maxsat(const CnfFormula& phi, const MaxSatParams& params);

// Independent recounts used by the CLI and the tests.
bool is_independent(const Graph& g, const std::vector<Vertex>& set);

}  // namespace twi
