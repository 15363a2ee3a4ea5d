#include "twi/sep_lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace twi {

double arc_length(const Subgraph& h, const EdgeLengths& x, int tag) {
  return x[arc_edge(h, tag)];
}

EdgeId arc_edge(const Subgraph& h, int tag) {
  return tag >= 0 ? tag : h.zombies()[-tag - 1].original;
}

std::vector<Vertex> ShortestPaths::path_to(Vertex target) const {
  if (target < 0 || target >= static_cast<int>(dist.size()) || !std::isfinite(dist[target]))
    return {};
  std::vector<Vertex> path;
  for (Vertex v = target; v >= 0; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPaths node_weighted_shortest_paths(const Subgraph& h, const EdgeLengths& x,
                                           const VertexWeights& y, Vertex source) {
  if (!h.contains(source)) throw std::invalid_argument("shortest paths: source not in subgraph");
  SubgraphAdjacency adj(h);
  ShortestPaths sp;
  sp.source = source;
  const int bound = h.id_bound();
  sp.dist.assign(bound, kInfinity);
  sp.pred.assign(bound, -1);
  sp.pred_tag.assign(bound, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  sp.dist[source] = weight_of(y, source);
  queue.push({sp.dist[source], source});
  while (!queue.empty()) {
    auto [du, u] = queue.top();
    queue.pop();
    if (du > sp.dist[u]) continue;
    for (const auto& arc : adj.arcs[u]) {
      const double nd = du + arc_length(h, x, arc.tag) + weight_of(y, arc.to);
      if (nd < sp.dist[arc.to]) {
        sp.dist[arc.to] = nd;
        sp.pred[arc.to] = u;
        sp.pred_tag[arc.to] = arc.tag;
        queue.push({nd, arc.to});
      }
    }
  }
  return sp;
}

std::optional<SpreadingViolation> most_violated_spreading(const PairDistances& d, int center,
                                                          double tol) {
  const int l = static_cast<int>(d.size());
  std::vector<int> others;
  for (int v = 0; v < l; ++v)
    if (v != center) others.push_back(v);
  std::stable_sort(others.begin(), others.end(),
                   [&](int a, int b) { return d[center][a] < d[center][b]; });
  double sum = d[center][center];
  double best = tol;
  int best_size = 0;
  for (int size = 1; size <= l; ++size) {
    if (size > 1) sum += d[center][others[size - 2]];
    const double rhs = size - l / 2.0;
    if (rhs <= 0) continue;  // vacuous row
    if (rhs - sum > best) {
      best = rhs - sum;
      best_size = size;
    }
  }
  if (best_size == 0) return std::nullopt;
  SpreadingViolation v;
  v.center = center;
  v.members.push_back(center);
  v.members.insert(v.members.end(), others.begin(), others.begin() + (best_size - 1));
  std::sort(v.members.begin(), v.members.end());
  v.violation = best;
  return v;
}

std::optional<SpreadingViolation> separate_spreading(const PairDistances& d, double tol) {
  std::optional<SpreadingViolation> best;
  for (int c = 0; c < static_cast<int>(d.size()); ++c) {
    auto v = most_violated_spreading(d, c, tol);
    if (v && (!best || v->violation > best->violation)) best = std::move(v);
  }
  return best;
}

namespace {

struct RowInfo {
  enum class Kind { diagonal, path, spreading } kind;
  PathFlow path;          // diagonal and path rows
  SpreadingDual spread;   // spreading rows
};

}  // namespace

SepLpOutcome solve_sep_lp(const Subgraph& h, const EdgeLengths& x, const std::vector<Vertex>& S_in,
                          double w, const SepLpOptions& options, SepLpStats* stats) {
  const Graph& g = h.parent();
  if (static_cast<int>(x.size()) != g.edge_count())
    throw std::invalid_argument("edge lengths do not match the graph");
  std::vector<Vertex> S = S_in;
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (Vertex s : S)
    if (!h.contains(s) || h.is_zombie(s)) throw std::invalid_argument("S not inside the subgraph");
  const int l = static_cast<int>(S.size());

  LinearProgram lp(Sense::minimize);
  std::vector<int> yvar(h.id_bound(), -1);
  for (Vertex v : h.vertices())
    if (!h.is_zombie(v)) yvar[v] = lp.add_variable(0.0, kInfinity, 1.0, "y" + std::to_string(v));
  std::vector<std::vector<int>> dvar(l, std::vector<int>(l, -1));
  for (int a = 0; a < l; ++a)
    for (int b = a; b < l; ++b)
      dvar[a][b] = dvar[b][a] =
          lp.add_variable(0.0, kInfinity, 0.0, "d" + std::to_string(S[a]) + "_" + std::to_string(S[b]));

  std::vector<RowInfo> rows;
  for (int a = 0; a < l; ++a) {
    lp.add_constraint({{dvar[a][a], 1.0}, {yvar[S[a]], -1.0}}, Relation::less_equal, 0.0);
    RowInfo info{RowInfo::Kind::diagonal, {}, {}};
    info.path.path = {S[a]};
    info.path.pair_a = info.path.pair_b = a;
    rows.push_back(std::move(info));
  }

  const double tol = options.tol.feas;
  SimplexOptions simplex;
  simplex.tol = options.tol;
  LpSolution sol;
  SepLpStats local;
  for (;;) {
    if (++local.rounds > options.max_rounds)
      throw SepLpError("sep-LP constraint generation exceeded " +
                       std::to_string(options.max_rounds) + " rounds");
    sol = solve(lp, simplex);
    if (!sol.optimal()) throw SepLpError("sep-LP solve ended with status " + to_string(sol.status));
    VertexWeights y(h.id_bound(), 0.0);
    for (Vertex v : h.vertices())
      if (yvar[v] >= 0) y[v] = std::max(0.0, sol.primal[yvar[v]]);
    PairDistances d(l, std::vector<double>(l));
    for (int a = 0; a < l; ++a)
      for (int b = 0; b < l; ++b) d[a][b] = sol.primal[dvar[a][b]];

    bool added = false;
    for (int a = 0; a < l; ++a) {
      const auto sp = node_weighted_shortest_paths(h, x, y, S[a]);
      for (int b = a + 1; b < l; ++b) {
        if (!(d[a][b] > sp.dist[S[b]] + tol)) continue;
        RowInfo info{RowInfo::Kind::path, {}, {}};
        info.path.path = sp.path_to(S[b]);
        info.path.pair_a = a;
        info.path.pair_b = b;
        double xsum = 0;
        SparseRow row{{dvar[a][b], 1.0}};
        for (Vertex t : info.path.path)
          if (yvar[t] >= 0) row.emplace_back(yvar[t], -1.0);
        for (std::size_t k = 1; k < info.path.path.size(); ++k) {
          const int tag = sp.pred_tag[info.path.path[k]];
          info.path.edges.push_back(arc_edge(h, tag));
          xsum += arc_length(h, x, tag);
        }
        lp.add_constraint(std::move(row), Relation::less_equal, xsum);
        rows.push_back(std::move(info));
        ++local.path_rows;
        added = true;
      }
    }
    for (int a = 0; a < l; ++a) {
      auto v = most_violated_spreading(d, a, tol);
      if (!v) continue;
      SparseRow row;
      for (int b : v->members) row.emplace_back(dvar[a][b], 1.0);
      lp.add_constraint(std::move(row), Relation::greater_equal,
                        static_cast<double>(v->members.size()) - l / 2.0);
      RowInfo info{RowInfo::Kind::spreading, {}, {}};
      info.spread.center = a;
      info.spread.members = v->members;
      rows.push_back(std::move(info));
      ++local.spreading_rows;
      added = true;
    }
    if (!added) {
      if (stats) *stats = local;
      const double lambda = sol.objective;
      if (lambda <= w + options.tol.cut) {
        SeparatorSolution out;
        out.S = S;
        out.y = std::move(y);
        out.d = std::move(d);
        out.objective = lambda;
        out.dual_objective = dual_objective(lp, sol.duals);
        return out;
      }
      break;
    }
  }

  DualCertificate cert;
  cert.S = S;
  cert.lambda = sol.objective;
  std::map<EdgeId, double> coeff;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double dual = sol.duals[i];
    auto& info = rows[i];
    if (info.kind == RowInfo::Kind::spreading) {
      info.spread.value = std::max(0.0, dual);
      cert.K += info.spread.value * (static_cast<double>(info.spread.members.size()) - l / 2.0);
      cert.spreading.push_back(std::move(info.spread));
    } else {
      info.path.value = std::max(0.0, -dual);
      for (EdgeId e : info.path.edges) coeff[e] += info.path.value;
      cert.flows.push_back(std::move(info.path));
    }
  }
  double cx = 0;
  for (const auto& [e, c] : coeff)
    if (c != 0.0) {
      cert.coefficients.emplace_back(e, c);
      cx += c * x[e];
    }
  const double flow_value = cert.K - cx;
  if (std::abs(flow_value - cert.lambda) > options.tol.gap * std::max(1.0, cert.lambda))
    throw SepLpError("restricted dual objective " + std::to_string(flow_value) +
                     " differs from the sep-LP optimum " + std::to_string(cert.lambda));
  return cert;
}

CutInequality extract_cut(const DualCertificate& cert, double w) {
  CutInequality cut;
  cut.coefficients = cert.coefficients;
  cut.relation = Relation::greater_equal;
  cut.rhs = cert.K - w;
  cut.origin = "S={";
  for (std::size_t i = 0; i < cert.S.size(); ++i)
    cut.origin += (i ? "," : "") + std::to_string(cert.S[i]);
  cut.origin += "}";
  bool spreading_support = std::any_of(cert.spreading.begin(), cert.spreading.end(),
                                       [](const SpreadingDual& s) { return s.value > 0; });
  if (!spreading_support || cut.rhs <= 0)
    throw SepLpError("certificate yields a null cut (K - w <= 0)");
  return cut;
}

double s_validity_violation(const DualCertificate& cert) {
  const int l = static_cast<int>(cert.S.size());
  std::vector<std::vector<double>> lhs(l, std::vector<double>(l, 0.0));
  std::vector<std::vector<double>> rhs(l, std::vector<double>(l, 0.0));
  for (const auto& s : cert.spreading)
    for (int b : s.members) {
      const int lo = std::min(s.center, b), hi = std::max(s.center, b);
      lhs[lo][hi] += s.value;
    }
  std::map<Vertex, double> through;
  for (const auto& f : cert.flows) {
    const int lo = std::min(f.pair_a, f.pair_b), hi = std::max(f.pair_a, f.pair_b);
    rhs[lo][hi] += f.value;
    for (Vertex t : f.path) through[t] += f.value;
  }
  double worst = 0;
  for (int a = 0; a < l; ++a)
    for (int b = a; b < l; ++b) worst = std::max(worst, lhs[a][b] - rhs[a][b]);
  for (const auto& [t, total] : through) worst = std::max(worst, total - 1.0);
  for (const auto& f : cert.flows) worst = std::max(worst, -f.value);
  for (const auto& s : cert.spreading) worst = std::max(worst, -s.value);
  return worst;
}

}  // namespace twi
