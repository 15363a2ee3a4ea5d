#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twi/cnf.hpp"
#include "twi/graph.hpp"

namespace twi {

enum class NoiseMode { uniform, expander, clustered };

NoiseMode parse_noise_mode(const std::string& name);
std::string to_string(NoiseMode mode);

struct NoiseSpec {
  double delta = 0.0;  // fraction in [0, 1]; the item count is floor(delta * size)
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::uniform;
};

struct NoisyGraph {
  Graph graph;
  std::vector<Edge> noisy_edges;  // ground truth, for evaluation only
};

struct NoisyFormula {
  CnfFormula formula;
  std::vector<int> noisy_clauses;  // indices into formula.clauses, ground truth only
};

Graph gen_grid(int k);

// Delaunay triangulation of n random points in the unit square, reduced to a
// random spanning tree plus each remaining edge independently with
// probability keep_probability.  Connected and planar.
Graph gen_random_planar(int n, std::uint64_t seed, double keep_probability = 0.6);

NoisyGraph add_noise_edges(const Graph& g, const NoiseSpec& spec);

// Planar k-CNF on n variables with m clauses, k in {1,2,3}: clauses sit on
// distinct triangles (k=3) or edges (k=2) of a random Delaunay triangulation
// of the variables, or on single variables (k=1), with random signs.
CnfFormula gen_planar_cnf(int n, int m, int k, std::uint64_t seed);

// Adds floor(delta*m) clauses with exactly max_arity distinct variables each.
NoisyFormula add_noise_clauses(const CnfFormula& phi, const NoiseSpec& spec);

struct Point {
  double x = 0;
  double y = 0;
};
std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<Point>& points);

}  // namespace twi
