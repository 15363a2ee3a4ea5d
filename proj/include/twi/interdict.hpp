#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "twi/graph.hpp"
#include "twi/lp.hpp"
#include "twi/region_growing.hpp"
#include "twi/sep_lp.hpp"
#include "twi/tree_decomposition.hpp"

namespace twi {

// How the root S is chosen, and how a node whose inherited S is empty is
// seeded.  `explicit_set` applies to the root only; empty children fall back
// to top_degree.
enum class S0Policy { top_degree, all, explicit_set };

S0Policy parse_s0_policy(const std::string& name);
std::string to_string(S0Policy policy);

// Largest |S| (and bag) the recursion may produce for width target w.
int default_bag_cap(int w);

struct InterdictConfig {
  int w = 1;
  int bag_cap = 0;  // 0 selects default_bag_cap(w)
  S0Policy s0_policy = S0Policy::top_degree;
  std::vector<Vertex> s0;  // used by explicit_set
  int max_cut_rounds = 500;
  LpTolerances tol;
  RegionGrowingConstants constants;
  std::uint64_t seed = 0;  // recorded only; the algorithm is deterministic

  int effective_bag_cap() const { return bag_cap > 0 ? bag_cap : default_bag_cap(w); }
};

// The initial S for a subgraph under a policy.
std::vector<Vertex> choose_s0(const Subgraph& h, const InterdictConfig& config);

struct InterdictionStats {
  double lp_lower_bound = 0.0;  // final master objective
  int cuts = 0;
  int rounds = 0;
  std::optional<double> ratio;  // |F| / lp_lower_bound when the bound is positive
  int sep_lp_calls = 0;
  int partition_calls = 0;
  int max_depth = 0;
  std::vector<double> level_volumes;  // sum of region vol_x per recursion depth
  std::vector<double> objective_history;
};

struct InterdictionResult {
  std::vector<EdgeId> F;
  TreeDecomposition decomposition;  // of G - F
  RecursionTrace trace;
  InterdictionStats stats;
  int bag_cap = 0;
  std::vector<CutInequality> cuts;  // every cut added to the master LP
  std::vector<double> x;            // master LP point the decomposition was built from
};

// The recursion got stuck at some S: the violated inequality to add.
struct NeedCut {
  CutInequality cut;
  DualCertificate certificate;
  int node = -1;  // trace node that got stuck
};

using InterdictOutcome = std::variant<InterdictionResult, NeedCut>;

// Answers sep-LP queries at recursion nodes.
using SepSolver = std::function<SepLpOutcome(const Subgraph& h, const EdgeLengths& x,
                                             const std::vector<Vertex>& S, double w)>;

SepSolver default_sep_solver(const LpTolerances& tol = {});

class InterdictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One pass of the recursion for a fixed candidate x.
InterdictOutcome interdict_with_solution(const Graph& g, const EdgeLengths& x,
                                         const InterdictConfig& config,
                                         const SepSolver& sep_solver);
InterdictOutcome interdict_with_solution(const Graph& g, const EdgeLengths& x,
                                         const InterdictConfig& config);

// Cutting-plane loop over the master LP min sum(x), 0 <= x <= 1.
InterdictionResult round_or_separate(const Graph& g, const InterdictConfig& config);

}  // namespace twi
