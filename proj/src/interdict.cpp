#include "twi/interdict.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twi {

S0Policy parse_s0_policy(const std::string& name) {
  if (name == "top_degree") return S0Policy::top_degree;
  if (name == "all") return S0Policy::all;
  if (name == "explicit") return S0Policy::explicit_set;
  throw std::invalid_argument("unknown S0 policy '" + name + "'");
}

std::string to_string(S0Policy policy) {
  switch (policy) {
    case S0Policy::top_degree: return "top_degree";
    case S0Policy::all: return "all";
    case S0Policy::explicit_set: return "explicit";
  }
  return "?";
}

int default_bag_cap(int w) {
  if (w < 1) throw std::invalid_argument("bag cap needs w >= 1");
  const double lw = std::log(static_cast<double>(w) * w + 1);
  const double denom = 1.0 - 144.0 * lw / w;
  if (denom > 0) return static_cast<int>(std::ceil(3.0 * 48.0 * lw * w / denom));
  return static_cast<int>(std::ceil(6.0 * 48.0 * w * lw));
}

std::vector<Vertex> choose_s0(const Subgraph& h, const InterdictConfig& config) {
  const auto& verts = h.vertices();
  if (config.s0_policy == S0Policy::all) return verts;
  if (config.s0_policy == S0Policy::explicit_set && !config.s0.empty()) {
    std::vector<Vertex> s;
    for (Vertex v : config.s0)
      if (h.contains(v)) s.push_back(v);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty()) return s;
  }
  std::vector<int> degree(h.parent().vertex_count(), 0);
  for (EdgeId e : h.edges()) {
    ++degree[h.parent().edge(e).u];
    ++degree[h.parent().edge(e).v];
  }
  std::vector<Vertex> order = verts;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return degree[a] > degree[b]; });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(config.w) + 1));
  std::sort(order.begin(), order.end());
  return order;
}

SepSolver default_sep_solver(const LpTolerances& tol) {
  return [tol](const Subgraph& h, const EdgeLengths& x, const std::vector<Vertex>& S, double w) {
    SepLpOptions options;
    options.tol = tol;
    return solve_sep_lp(h, x, S, w, options);
  };
}

namespace {

std::vector<Vertex> sorted_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a,
                                        const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Pending {
  Subgraph h;
  std::vector<Vertex> S;
  int parent;
  int depth;
  bool seeded;
  bool padded;
};

}  // namespace

InterdictOutcome interdict_with_solution(const Graph& g, const EdgeLengths& x,
                                         const InterdictConfig& config,
                                         const SepSolver& sep_solver) {
  if (config.w < 1) throw std::invalid_argument("interdict needs w >= 1");
  if (static_cast<int>(x.size()) != g.edge_count())
    throw std::invalid_argument("edge lengths do not match the graph");
  const int bag_cap = config.effective_bag_cap();
  if (bag_cap < config.w) throw std::invalid_argument("bag cap below w");
  const int n = g.vertex_count();
  const double w = config.w;
  const double lp_cost_total = std::accumulate(x.begin(), x.end(), 0.0);
  const int depth_cap = static_cast<int>(4 * std::log2(std::max(n, 2)) + 10);

  InterdictionResult result;
  result.bag_cap = bag_cap;
  result.x = x;
  std::vector<char> deleted(g.edge_count(), 0);

  std::vector<Pending> stack;
  {
    Subgraph root(g);
    auto s0 = choose_s0(root, config);
    stack.push_back({std::move(root), std::move(s0), -1, 0, false, false});
  }
  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();
    if (job.depth > depth_cap)
      throw InterdictError("recursion deeper than " + std::to_string(depth_cap));
    if (static_cast<int>(job.S.size()) > bag_cap)
      throw InterdictError("|S| = " + std::to_string(job.S.size()) + " exceeds the bag cap " +
                           std::to_string(bag_cap));
    const int id = static_cast<int>(result.trace.nodes.size());
    TraceNode node;
    node.parent = job.parent;
    node.vertices = job.h.vertices();
    node.edges = job.h.edges();
    node.S = job.S;
    node.seeded = job.seeded;
    node.padded = job.padded;
    if (job.parent >= 0) result.trace.nodes[job.parent].children.push_back(id);
    result.stats.max_depth = std::max(result.stats.max_depth, job.depth);

    const bool leaf = std::includes(job.S.begin(), job.S.end(), node.vertices.begin(),
                                    node.vertices.end()) ||
                      job.h.vertex_count() <= bag_cap;
    if (leaf) {
      node.leaf = true;
      result.trace.nodes.push_back(std::move(node));
      continue;
    }

    ++result.stats.sep_lp_calls;
    SepLpOutcome outcome = sep_solver(job.h, x, job.S, w);
    if (auto* cert = std::get_if<DualCertificate>(&outcome)) {
      NeedCut need;
      need.cut = extract_cut(*cert, w);
      need.certificate = std::move(*cert);
      need.node = id;
      return need;
    }
    const auto& sol = std::get<SeparatorSolution>(outcome);
    ++result.stats.partition_calls;
    PartitionResult part =
        partition(job.h, job.S, x, sol.y, w, lp_cost_total, n, sol.d, config.constants);
    if (static_cast<int>(result.stats.level_volumes.size()) <= job.depth)
      result.stats.level_volumes.resize(job.depth + 1, 0.0);
    for (const auto& r : part.regions) result.stats.level_volumes[job.depth] += r.vol_x;

    node.X = part.X;
    node.D = part.D;
    for (EdgeId e : part.D) {
      if (deleted[e]) throw InterdictError("edge " + std::to_string(e) + " deleted twice");
      deleted[e] = 1;
    }
    const auto sep = sorted_union(job.S, part.X);
    if (static_cast<int>(sep.size()) > bag_cap)
      throw InterdictError("|S u X| = " + std::to_string(sep.size()) + " exceeds the bag cap " +
                           std::to_string(bag_cap));
    result.trace.nodes.push_back(std::move(node));

    // Push children in reverse so they are visited, and numbered, in order.
    std::vector<Pending> children;
    for (std::size_t i = 0; i < part.pieces.size(); ++i) {
      Subgraph& piece = part.pieces[i];
      auto s = sorted_intersection(piece.vertices(), sep);
      bool seeded = false, padded = false;
      if (s.empty()) {
        InterdictConfig seeding = config;
        if (seeding.s0_policy == S0Policy::explicit_set) seeding.s0_policy = S0Policy::top_degree;
        s = choose_s0(piece, seeding);
        seeded = true;
      } else if (piece.vertices() == job.h.vertices() && s == job.S) {
        for (Vertex v : part.components[i])
          if (!std::binary_search(s.begin(), s.end(), v)) {
            s.insert(std::upper_bound(s.begin(), s.end(), v), v);
            padded = true;
            break;
          }
      }
      children.push_back({std::move(piece), std::move(s), id, job.depth + 1, seeded, padded});
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (deleted[e]) result.F.push_back(e);
  result.decomposition = assemble(result.trace);
  const Graph residual = remove_edges(g, result.F);
  const auto report = validate(result.decomposition, residual);
  if (report.kind != ValidationReport::Kind::ok)
    throw InterdictError("assembled decomposition is invalid: " + report.message);
  if (width(result.decomposition) > bag_cap - 1)
    throw InterdictError("decomposition width " + std::to_string(width(result.decomposition)) +
                         " exceeds bag cap - 1");
  return result;
}

InterdictOutcome interdict_with_solution(const Graph& g, const EdgeLengths& x,
                                         const InterdictConfig& config) {
  return interdict_with_solution(g, x, config, default_sep_solver(config.tol));
}

InterdictionResult round_or_separate(const Graph& g, const InterdictConfig& config) {
  if (config.w < 1) throw std::invalid_argument("interdict needs w >= 1");
  LinearProgram master(Sense::minimize);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    master.add_variable(0.0, 1.0, 1.0, "x" + std::to_string(e));
  const SepSolver sep = default_sep_solver(config.tol);
  std::optional<InterdictionResult> accepted;
  auto separate = [&](const LpSolution& sol) -> std::optional<CutInequality> {
    EdgeLengths x(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) x[e] = std::clamp(sol.primal[e], 0.0, 1.0);
    InterdictOutcome outcome = interdict_with_solution(g, x, config, sep);
    if (auto* need = std::get_if<NeedCut>(&outcome)) return std::move(need->cut);
    accepted = std::move(std::get<InterdictionResult>(outcome));
    return std::nullopt;
  };
  CuttingPlaneOptions options;
  options.max_rounds = config.max_cut_rounds;
  options.simplex.tol = config.tol;
  CuttingPlaneResult cp;
  try {
    cp = cutting_plane(master, separate, options);
  } catch (const CuttingPlaneError& e) {
    throw InterdictError(std::string("round-or-separate failed: ") + e.what());
  }
  InterdictionResult result = std::move(*accepted);
  result.cuts = std::move(cp.pool.cuts);
  auto& st = result.stats;
  st.lp_lower_bound = std::max(0.0, cp.solution.objective);
  st.cuts = static_cast<int>(result.cuts.size());
  st.rounds = cp.rounds;
  st.objective_history = cp.objective_history;
  if (st.lp_lower_bound > config.tol.gap)
    st.ratio = static_cast<double>(result.F.size()) / st.lp_lower_bound;
  return result;
}

}  // namespace twi
