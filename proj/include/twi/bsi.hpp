#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "twi/graph.hpp"
#include "twi/lp.hpp"

namespace twi {

class BsiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Candidate pieces: every vertex set of size 1..s, or only the connected
// ones.  Sorted by size, then lexicographically.
std::vector<std::vector<Vertex>> enumerate_pieces(const Graph& g, int s, bool connected_only = true,
                                                  std::size_t budget = 500000);

// Column layout of the configuration LP: x over edges, then y over vertices,
// then z over pieces.
struct ConfigLpLayout {
  int edges = 0;
  int vertices = 0;
  int pieces = 0;
  int x(EdgeId e) const { return e; }
  int y(Vertex v) const { return edges + v; }
  int z(int p) const { return edges + vertices + p; }
};

struct ConfigLp {
  LinearProgram lp{Sense::minimize};
  ConfigLpLayout layout;
  std::vector<std::vector<Vertex>> pieces;
};

ConfigLp build_config_lp(const Graph& g, int s, double a, bool connected_only = true,
                         std::size_t budget = 500000);

struct ConfigLpSolution {
  int s = 0;
  double a = 0.0;
  double objective = 0.0;
  std::vector<double> x;  // per edge
  std::vector<double> y;  // per vertex
  std::vector<double> z;  // per piece
  std::vector<std::vector<Vertex>> pieces;
  int iterations = 0;

  // Largest violation of the LP rows by (x, y, z).
  double max_violation(const Graph& g) const;
};

ConfigLpSolution solve_config_lp(const Graph& g, int s, double a, bool connected_only = true,
                                 const SimplexOptions& options = {});

struct BsiResult {
  std::vector<Vertex> X;                    // X'
  std::vector<std::vector<Vertex>> pieces;  // C'_1..C'_k
  std::vector<EdgeId> cross_edges;          // F: edges between distinct pieces
  int phase_count = 0;
  std::uint64_t seed = 0;
  double a = 0.0;
  double beta = 0.0;
  int preprocessed = 0;  // |{v : y_v >= beta}|
  int leftover = 0;      // vertices moved to X' by the phase cap
  bool fallback = false; // beta > 1/2: arbitrary chop
  // Phase in which each vertex got covered: 0 for X' from preprocessing,
  // -1 for phase-cap leftovers, otherwise 1-based.
  std::vector<int> covered_in_phase;
  std::vector<EdgeId> cut_edges_by_sampling;  // same as cross_edges, kept per run
};

int phase_cap(int n);

BsiResult round_bsi(const Graph& g, const ConfigLpSolution& sol, double beta, std::uint64_t seed);

struct ProperSeparator {
  std::vector<Vertex> X;                    // X''
  std::vector<std::vector<Vertex>> pieces;  // pieces with moved endpoints removed
  std::vector<Vertex> moved;                // one endpoint per cross edge, as moved
};

ProperSeparator properize(const Graph& g, const BsiResult& result);

struct BsiOptions {
  int fixed_a = -1;  // < 0 selects the geometric grid {0, 1, 2, 4, ..., n}
  int repeats = 10;
  std::uint64_t seed = 0;
  bool connected_only = true;
  SimplexOptions simplex;
  // Ranks roundings, lower is better; unset ranks by |X''|.
  std::function<double(const BsiResult&, const ProperSeparator&)> score;
};

std::vector<int> a_grid(int n, const BsiOptions& options);

struct BsiRun {
  double a = 0.0;
  double lp_objective = 0.0;
  int repeat = 0;
  std::uint64_t seed = 0;
  int separator_size = 0;  // |X''|
  int cross_edges = 0;     // |F|
  int x_prime = 0;         // |X'|
  double score = 0.0;
};

struct BsiSolveResult {
  BsiResult best;
  ProperSeparator proper;
  ConfigLpSolution lp;  // the LP the best rounding came from
  std::vector<BsiRun> runs;
  std::vector<int> grid;
};

// Best rounding (smallest score, then |F|, then a, then repeat) over the
// a-grid and `repeats` seeds per a.
BsiSolveResult bsi_solve(const Graph& g, int s, double beta, const BsiOptions& options = {});

// Checks that the pieces are disjoint, of size <= s, cover V minus X, and that
// F is exactly the set of edges between distinct pieces.  Throws BsiError.
void check_bsi_result(const Graph& g, const BsiResult& r, int s);

}  // namespace twi
