#pragma once

#include <stdexcept>
#include <vector>

#include "twi/graph.hpp"
#include "twi/sep_lp.hpp"

namespace twi {

// Constants of the good-radius test.  Defaults are the values for which a
// good radius is guaranteed to exist.
struct RegionGrowingConstants {
  double boundary_factor = 48.0;
  double max_radius = 1.0 / 12.0;
};

// Everything about B(s, r) for one radius.  Edges are identified by arc tags
// of the subgraph the profile was built on (see SubgraphAdjacency).
struct BallState {
  double radius = 0.0;
  std::vector<Vertex> ball;          // d(s,v) <= r
  std::vector<Vertex> cut_vertices;  // d(s,v) - y_v < r < d(s,v)
  // Edges (u,v) with u in the ball, v outside ball and cut vertices, and
  // d(s,u) <= r < d(s,u) + x_uv.
  std::vector<int> cut_edges;
  double lp_cost = 0.0;
  double wt = 0.0;
  double vol_x = 0.0;
  double vol_y = 0.0;
  // An edge leaves the ball towards an uncut outside vertex without being
  // cut; only happens at the exact radius d(s,v) - y_v.
  bool degenerate = false;
  std::vector<std::pair<int, double>> edge_contribution;       // tag -> share of lp_cost
  std::vector<std::pair<Vertex, double>> vertex_contribution;  // vertex -> share of wt

  bool removes(Vertex v) const;  // v in ball or cut
};

class BallProfile {
 public:
  BallProfile(const Subgraph& hhat, const EdgeLengths& x, const VertexWeights& y, Vertex center,
              double lp_cost_total, int n, double w, const RegionGrowingConstants& constants = {});

  Vertex center() const { return center_; }
  const std::vector<double>& dist() const { return dist_; }
  // Every radius where the ball, the cut vertices or the cut edges change.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  // States at the breakpoints inside [0, max_radius].
  const std::vector<BallState>& states() const { return states_; }
  BallState at(double r) const;

  const Subgraph& subgraph() const { return h_; }
  double lp_cost_total() const { return lp_cost_total_; }
  int n() const { return n_; }
  double w() const { return w_; }
  const RegionGrowingConstants& constants() const { return constants_; }

 private:
  Subgraph h_;
  const EdgeLengths* x_;
  const VertexWeights* y_;
  Vertex center_;
  double lp_cost_total_;
  int n_;
  double w_;
  RegionGrowingConstants constants_;
  std::vector<double> dist_;
  std::vector<double> breakpoints_;
  std::vector<BallState> states_;
};

BallProfile ball_profile(const Subgraph& hhat, const EdgeLengths& x, const VertexWeights& y,
                         Vertex center, double lp_cost_total, int n, double w,
                         const RegionGrowingConstants& constants = {});

// Right-hand sides of the two good-radius inequalities at `state`.
struct RadiusTest {
  double edge_limit = 0.0;    // bound on |cut_edges|
  double vertex_limit = 0.0;  // bound on |cut_vertices|
  bool edges_ok = false;
  bool vertices_ok = false;
  bool good() const { return edges_ok && vertices_ok; }
};
RadiusTest test_radius(const BallProfile& profile, const BallState& state);

class RadiusNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smallest radius in [0, max_radius] that removes the centre, has no
// degenerate edge and passes both inequalities.  Candidates are the
// breakpoints and, for each gap between breakpoints, a point just below the
// gap's upper end (both inequalities only get easier as r grows inside a gap).
BallState find_good_radius(const BallProfile& profile);

struct Region {
  Vertex center = -1;
  double radius = 0.0;
  double vol_x = 0.0;
  double vol_y = 0.0;
  double vol_x_max = 0.0;  // vol_x at max_radius
  std::vector<Vertex> ball;          // original vertices inside
  std::vector<Vertex> cut_vertices;  // original ids
  std::vector<EdgeId> cut_edges;     // original edge ids
  double edge_bound = 0.0;           // per-region share of the |D| bound
  double diameter = 0.0;             // max d over pairs of S inside the ball
  int s_inside = 0;                  // |ball & S|
};

struct PartitionChecks {
  double d_bound = 0.0;
  double x_bound = 0.0;
  int max_component_s = 0;  // max |C & S| over components
  bool contained = true;
  bool diameter_ok = true;  // small-diameter regions hold <= 2|S|/3 of S
};

struct PartitionResult {
  std::vector<Vertex> X;
  std::vector<EdgeId> D;
  std::vector<Region> regions;
  std::vector<std::vector<Vertex>> components;  // of h - X - D
  std::vector<Subgraph> pieces;                 // boundary subgraph of each component
  PartitionChecks checks;
  double vol_x_h = 0.0;  // LP-cost(G)/n^2 + sum of x over E(h)
};

class PartitionInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grows regions around S vertices until at most 2|S|/3 of S is left, then
// splits h along the cut vertices X and cut edges D.  The four guarantees
// (|D| bound, |X| bound, balance, containment) are checked and a violation
// throws PartitionInvariantError.  `d` are the sep-LP distances over S, used
// for the diameter check only.
PartitionResult partition(const Subgraph& h, const std::vector<Vertex>& S, const EdgeLengths& x,
                          const VertexWeights& y, double w, double lp_cost_total, int n,
                          const PairDistances& d = {},
                          const RegionGrowingConstants& constants = {});

// If every pair of U & S is within 1/6 under d, then |U & S| <= 2|S|/3.
// Returns whether that implication holds.
bool check_radius_diameter(const std::vector<Vertex>& U, const PairDistances& d,
                           const std::vector<Vertex>& S);

}  // namespace twi
