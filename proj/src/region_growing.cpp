#include "twi/region_growing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace twi {

bool BallState::removes(Vertex v) const {
  return std::binary_search(ball.begin(), ball.end(), v) ||
         std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
}

BallProfile::BallProfile(const Subgraph& hhat, const EdgeLengths& x, const VertexWeights& y,
                         Vertex center, double lp_cost_total, int n, double w,
                         const RegionGrowingConstants& constants)
    : h_(hhat),
      x_(&x),
      y_(&y),
      center_(center),
      lp_cost_total_(lp_cost_total),
      n_(n),
      w_(w),
      constants_(constants) {
  if (w < 1) throw std::invalid_argument("region growing needs w >= 1");
  dist_ = node_weighted_shortest_paths(h_, x, y, center).dist;
  std::vector<double> points;
  for (Vertex v : h_.vertices()) {
    if (!std::isfinite(dist_[v])) continue;
    points.push_back(dist_[v]);
    points.push_back(dist_[v] - weight_of(y, v));
  }
  SubgraphAdjacency adj(h_);
  for (Vertex u : h_.vertices())
    for (const auto& arc : adj.arcs[u]) {
      const double du = dist_[u];
      if (!std::isfinite(du) || du > dist_[arc.to]) continue;
      points.push_back(du);
      points.push_back(du + arc_length(h_, x, arc.tag));
    }
  for (double& p : points) p = std::max(0.0, p);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  breakpoints_ = std::move(points);
  for (double b : breakpoints_)
    if (b <= constants_.max_radius) states_.push_back(at(b));
}

BallState BallProfile::at(double r) const {
  const EdgeLengths& x = *x_;
  const VertexWeights& y = *y_;
  BallState s;
  s.radius = r;
  std::vector<char> where(h_.id_bound(), 0);  // 1 ball, 2 cut
  for (Vertex v : h_.vertices()) {
    const double d = dist_[v];
    if (d <= r) {
      where[v] = 1;
      s.ball.push_back(v);
      s.wt += weight_of(y, v);
      s.vertex_contribution.emplace_back(v, weight_of(y, v));
    } else if (d - weight_of(y, v) < r && r < d) {
      where[v] = 2;
      s.cut_vertices.push_back(v);
      const double share = r - (d - weight_of(y, v));
      s.wt += share;
      s.vertex_contribution.emplace_back(v, share);
    }
  }
  auto visit = [&](Vertex a, Vertex b, int tag) {
    if (where[a] != 1 && where[b] != 1) return;
    if (where[a] != 1) std::swap(a, b);  // a is in the ball
    const double len = arc_length(h_, x, tag);
    if (where[b] != 0) {
      s.lp_cost += len;
      s.edge_contribution.emplace_back(tag, len);
    } else if (r < dist_[a] + len) {
      s.cut_edges.push_back(tag);
      s.lp_cost += r - dist_[a];
      s.edge_contribution.emplace_back(tag, r - dist_[a]);
    } else {
      s.degenerate = true;
    }
  };
  for (EdgeId e : h_.edges()) visit(h_.parent().edge(e).u, h_.parent().edge(e).v, e);
  for (int k = 0; k < static_cast<int>(h_.zombies().size()); ++k)
    visit(h_.zombies()[k].zombie, h_.zombies()[k].real, -(k + 1));
  const double nn = static_cast<double>(n_);
  s.vol_x = lp_cost_total_ / (nn * nn) + s.lp_cost;
  s.vol_y = 1.0 / w_ + s.wt;
  return s;
}

BallProfile ball_profile(const Subgraph& hhat, const EdgeLengths& x, const VertexWeights& y,
                         Vertex center, double lp_cost_total, int n, double w,
                         const RegionGrowingConstants& constants) {
  return BallProfile(hhat, x, y, center, lp_cost_total, n, w, constants);
}

RadiusTest test_radius(const BallProfile& profile, const BallState& state) {
  const auto& c = profile.constants();
  const double n = profile.n();
  const double w = profile.w();
  const double vol_max = profile.at(c.max_radius).vol_x;
  RadiusTest t;
  if (state.vol_x > 0)
    t.edge_limit = c.boundary_factor * std::log(std::exp(1.0) * vol_max / state.vol_x) *
                   std::log(std::log(std::exp(1.0) * (n + 1))) * state.vol_x;
  t.vertex_limit = c.boundary_factor * std::log(w * w + 1) * state.vol_y;
  const double slack = 1e-12;
  t.edges_ok = state.cut_edges.empty() ||
               static_cast<double>(state.cut_edges.size()) <= t.edge_limit * (1 + slack) + slack;
  t.vertices_ok = static_cast<double>(state.cut_vertices.size()) <=
                  t.vertex_limit * (1 + slack) + slack;
  return t;
}

BallState find_good_radius(const BallProfile& profile) {
  const double R = profile.constants().max_radius;
  std::vector<double> points;
  for (double b : profile.breakpoints())
    if (b <= R) points.push_back(b);
  if (points.empty() || points.front() > 0) points.insert(points.begin(), 0.0);
  if (points.back() < R) points.push_back(R);
  std::vector<double> candidates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    candidates.push_back(points[i]);
    if (i + 1 < points.size()) {
      const double gap = points[i + 1] - points[i];
      const double inner = points[i + 1] - std::min(1e-9, gap / 4);
      if (inner > points[i]) candidates.push_back(inner);
    }
  }
  const double vol_max = profile.at(R).vol_x;
  (void)vol_max;
  for (double r : candidates) {
    BallState s = profile.at(r);
    if (s.degenerate || !s.removes(profile.center())) continue;
    if (test_radius(profile, s).good()) return s;
  }
  throw RadiusNotFound("no good radius in [0, " + std::to_string(R) + "] around vertex " +
                       std::to_string(profile.center()));
}

bool check_radius_diameter(const std::vector<Vertex>& U, const PairDistances& d,
                           const std::vector<Vertex>& S) {
  std::vector<int> inside;
  for (int a = 0; a < static_cast<int>(S.size()); ++a)
    if (std::find(U.begin(), U.end(), S[a]) != U.end()) inside.push_back(a);
  double diam = 0;
  for (int a : inside)
    for (int b : inside) diam = std::max(diam, d[a][b]);
  if (diam > 1.0 / 6.0) return true;
  return 3 * inside.size() <= 2 * S.size();
}

PartitionResult partition(const Subgraph& h, const std::vector<Vertex>& S_in, const EdgeLengths& x,
                          const VertexWeights& y, double w, double lp_cost_total, int n,
                          const PairDistances& d, const RegionGrowingConstants& constants) {
  if (w < 1) throw std::invalid_argument("partition needs w >= 1");
  const Graph& g = h.parent();
  std::vector<Vertex> S = S_in;
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (Vertex s : S)
    if (!h.contains(s)) throw std::invalid_argument("partition: S outside the subgraph");
  const int l = static_cast<int>(S.size());
  const int gn = g.vertex_count();

  PartitionResult result;
  const double nn = static_cast<double>(n);
  result.vol_x_h = lp_cost_total / (nn * nn);
  for (EdgeId e : h.edges()) result.vol_x_h += x[e];

  std::vector<char> alive(gn, 0);
  for (Vertex v : h.vertices()) alive[v] = 1;
  std::vector<char> edge_alive(g.edge_count(), 0);
  for (EdgeId e : h.edges()) edge_alive[e] = 1;
  std::vector<ZombieEdge> zombies;
  int next_zombie = gn;
  std::vector<int> region_of(gn, -1);  // region whose ball swallowed the vertex
  std::vector<int> cut_at(gn, -1);     // region that cut the vertex
  std::set<Vertex> X;
  std::set<EdgeId> D;

  auto covered = [&] {
    int c = 0;
    for (Vertex s : S) c += alive[s] ? 1 : 0;
    return c;
  };
  const double c_lnln = std::log(std::log(std::exp(1.0) * (nn + 1)));

  while (3 * covered() > 2 * l) {
    if (static_cast<int>(result.regions.size()) >= l)
      throw PartitionInvariantError("more phases than vertices of S");
    Vertex center = -1;
    for (Vertex s : S)
      if (alive[s]) {
        center = s;
        break;
      }
    std::vector<Vertex> verts;
    for (Vertex v : h.vertices())
      if (alive[v]) verts.push_back(v);
    for (const auto& z : zombies) verts.push_back(z.zombie);
    std::vector<EdgeId> edges;
    for (EdgeId e : h.edges())
      if (edge_alive[e]) edges.push_back(e);
    const Subgraph hhat(g, verts, edges, zombies);
    const BallProfile profile(hhat, x, y, center, lp_cost_total, n, w, constants);
    const BallState state = find_good_radius(profile);
    const int idx = static_cast<int>(result.regions.size());

    Region region;
    region.center = center;
    region.radius = state.radius;
    region.vol_x = state.vol_x;
    region.vol_y = state.vol_y;
    region.vol_x_max = profile.at(constants.max_radius).vol_x;
    region.edge_bound = constants.boundary_factor * c_lnln *
                        std::log(std::exp(1.0) * result.vol_x_h / state.vol_x) * state.vol_x;
    for (Vertex v : state.ball)
      if (!hhat.is_zombie(v)) {
        region.ball.push_back(v);
        region_of[v] = idx;
      }
    for (Vertex v : state.cut_vertices) {
      if (hhat.is_zombie(v)) throw PartitionInvariantError("zero-weight zombie reported as cut");
      region.cut_vertices.push_back(v);
      cut_at[v] = idx;
      X.insert(v);
    }
    for (int tag : state.cut_edges) {
      region.cut_edges.push_back(arc_edge(hhat, tag));
      D.insert(arc_edge(hhat, tag));
    }
    std::sort(region.cut_edges.begin(), region.cut_edges.end());
    if (!d.empty()) {
      std::vector<int> inside;
      for (int a = 0; a < l; ++a)
        if (std::binary_search(region.ball.begin(), region.ball.end(), S[a])) inside.push_back(a);
      for (int a : inside)
        for (int b : inside) region.diameter = std::max(region.diameter, d[a][b]);
      region.s_inside = static_cast<int>(inside.size());
      if (!check_radius_diameter(region.ball, d, S)) result.checks.diameter_ok = false;
    }

    // Remove the ball and the cut vertices.  Every surviving neighbour u of
    // a cut vertex s keeps a zero-weight stand-in for s hanging off the edge
    // (s, u), so later balls still see that edge at its old distance.
    std::vector<char> gone(hhat.id_bound(), 0);
    for (Vertex v : state.ball) gone[v] = 1;
    for (Vertex v : state.cut_vertices) gone[v] = 1;
    SubgraphAdjacency adj(hhat);
    std::vector<ZombieEdge> kept;
    for (const auto& z : zombies)
      if (!gone[z.zombie] && !gone[z.real]) kept.push_back(z);
    for (Vertex s : state.cut_vertices)
      for (const auto& arc : adj.arcs[s]) {
        if (gone[arc.to] || hhat.is_zombie(arc.to)) continue;
        kept.push_back({next_zombie++, arc.to, arc_edge(hhat, arc.tag), s});
      }
    zombies = std::move(kept);
    for (Vertex v : hhat.vertices())
      if (gone[v] && !hhat.is_zombie(v)) alive[v] = 0;
    for (EdgeId e : edges)
      if (!alive[g.edge(e).u] || !alive[g.edge(e).v]) edge_alive[e] = 0;
    result.regions.push_back(std::move(region));
  }

  result.X.assign(X.begin(), X.end());
  result.D.assign(D.begin(), D.end());

  std::vector<char> in_x(gn, 0);
  for (Vertex v : result.X) in_x[v] = 1;
  std::vector<char> in_d(g.edge_count(), 0);
  for (EdgeId e : result.D) in_d[e] = 1;
  std::vector<Vertex> rest_v;
  for (Vertex v : h.vertices())
    if (!in_x[v]) rest_v.push_back(v);
  std::vector<EdgeId> rest_e;
  for (EdgeId e : h.edges())
    if (!in_d[e] && !in_x[g.edge(e).u] && !in_x[g.edge(e).v]) rest_e.push_back(e);
  result.components = connected_components(Subgraph(g, rest_v, rest_e));
  for (const auto& comp : result.components)
    result.pieces.push_back(boundary_subgraph(h, comp, result.D));

  // Guarantees.
  auto& chk = result.checks;
  for (const auto& r : result.regions) chk.d_bound += r.edge_bound;
  chk.x_bound = constants.boundary_factor * std::log(w * w + 1) * (w + l / w);
  std::vector<char> in_s(gn, 0);
  for (Vertex s : S) in_s[s] = 1;
  for (std::size_t i = 0; i < result.components.size(); ++i) {
    const auto& comp = result.components[i];
    int cs = 0;
    for (Vertex v : comp) cs += in_s[v];
    chk.max_component_s = std::max(chk.max_component_s, cs);
    const int label = region_of[comp.front()];
    for (Vertex v : comp)
      if (region_of[v] != label) chk.contained = false;
    if (label >= 0)
      for (EdgeId e : result.pieces[i].edges()) {
        const Vertex a = g.edge(e).u, b = g.edge(e).v;
        const Vertex other = in_x[a] ? a : (in_x[b] ? b : -1);
        if (other >= 0 && cut_at[other] > label) chk.contained = false;
      }
  }
  const double slack = 1e-9;
  if (static_cast<double>(result.D.size()) > chk.d_bound * (1 + slack) + slack)
    throw PartitionInvariantError("|D| = " + std::to_string(result.D.size()) +
                                  " exceeds its bound " + std::to_string(chk.d_bound));
  if (static_cast<double>(result.X.size()) > chk.x_bound * (1 + slack) + slack)
    throw PartitionInvariantError("|X| = " + std::to_string(result.X.size()) +
                                  " exceeds its bound " + std::to_string(chk.x_bound));
  if (3 * chk.max_component_s > 2 * l)
    throw PartitionInvariantError("a component holds " + std::to_string(chk.max_component_s) +
                                  " of the " + std::to_string(l) + " vertices of S");
  if (!chk.contained) throw PartitionInvariantError("a piece straddles two regions");
  return result;
}

}  // namespace twi
