#include "twi/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "twi/oracles.hpp"

namespace twi {

namespace {

using Key = std::uint64_t;

struct DpState {
  Key key;
  int score;
  int from_a;  // index into the first child's table, or -1
  int from_b;  // second child (joins only)
};

Key insert_bit(Key k, int pos, Key bit) {
  const Key low = k & ((Key{1} << pos) - 1);
  return low | (bit << pos) | ((k >> pos) << (pos + 1));
}

Key remove_bit(Key k, int pos) {
  const Key low = k & ((Key{1} << pos) - 1);
  return low | ((k >> (pos + 1)) << pos);
}

int position(const std::vector<Vertex>& bag, Vertex v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

class TableBuilder {
 public:
  void offer(Key key, int score, int a, int b) {
    auto [it, fresh] = index_.try_emplace(key, static_cast<int>(states_.size()));
    if (fresh) {
      states_.push_back({key, score, a, b});
    } else if (score > states_[it->second].score) {
      states_[it->second] = {key, score, a, b};
    }
  }
  std::vector<DpState> take() { return std::move(states_); }

 private:
  std::unordered_map<Key, int> index_;
  std::vector<DpState> states_;
};

}  // namespace

MaxSatDpResult maxsat_dp(const CnfFormula& phi, const NiceTreeDecomposition& t,
                         const MaxSatDpOptions& options) {
  const int n = phi.num_vars;
  const Graph factor = build_factor_graph(phi);
  const auto report = validate(t.plain(), factor);
  if (!report.ok()) throw PipelineError("decomposition does not fit the formula: " + report.message);
  for (const auto& node : t.nodes)
    if (static_cast<int>(node.bag.size()) > options.max_bag)
      throw PipelineError("bag of size " + std::to_string(node.bag.size()) +
                          " exceeds the DP limit " + std::to_string(options.max_bag));

  // sign[c] maps a variable of clause c to the value that satisfies it.
  std::vector<std::unordered_map<int, bool>> sign(phi.clause_count());
  for (int c = 0; c < phi.clause_count(); ++c)
    for (const Literal& l : phi.clauses[c]) sign[c][l.var] = l.positive;
  auto satisfied_by = [&](int c, int var, bool value) {
    auto it = sign[c].find(var);
    return it != sign[c].end() && it->second == value;
  };
  auto is_var = [&](Vertex v) { return v < n; };

  std::vector<std::vector<DpState>> table(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const NiceNode& node = t.nodes[i];
    const auto& bag = node.bag;
    TableBuilder out;
    switch (node.kind) {
      case NiceKind::leaf: {
        // All variable values; clause flags follow from them.
        std::vector<int> var_pos;
        for (int p = 0; p < static_cast<int>(bag.size()); ++p)
          if (is_var(bag[p])) var_pos.push_back(p);
        for (Key m = 0; m < (Key{1} << var_pos.size()); ++m) {
          Key key = 0;
          for (std::size_t j = 0; j < var_pos.size(); ++j)
            if (m >> j & 1) key |= Key{1} << var_pos[j];
          for (int p = 0; p < static_cast<int>(bag.size()); ++p) {
            if (is_var(bag[p])) continue;
            for (int q : var_pos)
              if (satisfied_by(bag[p] - n, bag[q], key >> q & 1)) key |= Key{1} << p;
          }
          out.offer(key, 0, -1, -1);
        }
        break;
      }
      case NiceKind::introduce: {
        const auto& child = table[node.children[0]];
        const Vertex v = node.vertex;
        const int p = position(bag, v);
        for (int s = 0; s < static_cast<int>(child.size()); ++s) {
          const Key base = insert_bit(child[s].key, p, 0);
          if (is_var(v)) {
            for (Key value = 0; value < 2; ++value) {
              Key key = base | (value << p);
              for (int q = 0; q < static_cast<int>(bag.size()); ++q)
                if (!is_var(bag[q]) && satisfied_by(bag[q] - n, v, value)) key |= Key{1} << q;
              out.offer(key, child[s].score, s, -1);
            }
          } else {
            Key flag = 0;
            for (int q = 0; q < static_cast<int>(bag.size()); ++q)
              if (is_var(bag[q]) && satisfied_by(v - n, bag[q], base >> q & 1)) flag = 1;
            out.offer(base | (flag << p), child[s].score, s, -1);
          }
        }
        break;
      }
      case NiceKind::forget: {
        const auto& child = table[node.children[0]];
        const auto& cbag = t.nodes[node.children[0]].bag;
        const int p = position(cbag, node.vertex);
        for (int s = 0; s < static_cast<int>(child.size()); ++s) {
          const int gain = is_var(node.vertex) ? 0 : static_cast<int>(child[s].key >> p & 1);
          out.offer(remove_bit(child[s].key, p), child[s].score + gain, s, -1);
        }
        break;
      }
      case NiceKind::join: {
        const auto& A = table[node.children[0]];
        const auto& B = table[node.children[1]];
        Key var_mask = 0;
        for (int p = 0; p < static_cast<int>(bag.size()); ++p)
          if (is_var(bag[p])) var_mask |= Key{1} << p;
        std::unordered_map<Key, std::vector<int>> by_vars;
        for (int s = 0; s < static_cast<int>(A.size()); ++s) by_vars[A[s].key & var_mask].push_back(s);
        for (int r = 0; r < static_cast<int>(B.size()); ++r) {
          auto it = by_vars.find(B[r].key & var_mask);
          if (it == by_vars.end()) continue;
          for (int s : it->second)
            out.offer(A[s].key | B[r].key, A[s].score + B[r].score, s, r);
        }
        break;
      }
    }
    table[i] = out.take();
  }

  const auto& root_table = table[t.root];
  if (root_table.empty()) throw PipelineError("empty DP table at the root");
  int best = 0;
  for (int s = 1; s < static_cast<int>(root_table.size()); ++s)
    if (root_table[s].score > root_table[best].score) best = s;

  MaxSatDpResult result;
  result.satisfied = root_table[best].score;
  result.assignment.assign(n, false);
  std::vector<std::pair<int, int>> stack{{t.root, best}};
  while (!stack.empty()) {
    auto [i, s] = stack.back();
    stack.pop_back();
    const NiceNode& node = t.nodes[i];
    const DpState& st = table[i][s];
    for (int p = 0; p < static_cast<int>(node.bag.size()); ++p)
      if (is_var(node.bag[p])) result.assignment[node.bag[p]] = st.key >> p & 1;
    if (st.from_a >= 0) stack.push_back({node.children[0], st.from_a});
    if (st.from_b >= 0) stack.push_back({node.children[1], st.from_b});
  }
  const int recount = count_satisfied(phi, result.assignment);
  if (recount != result.satisfied)
    throw PipelineError("DP optimum " + std::to_string(result.satisfied) +
                        " differs from the recount " + std::to_string(recount));
  return result;
}

MisParams mis_theory_preset(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double gamma = epsilon * epsilon;
  MisParams p;
  p.s = static_cast<int>(std::ceil(1.0 / (gamma * gamma)));
  p.beta = std::sqrt(gamma);
  return p;
}

MisParams mis_fast_preset() { return MisParams{}; }

bool is_independent(const Graph& g, const std::vector<Vertex>& set) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : set) {
    if (v < 0 || v >= g.vertex_count() || in[v]) return false;
    in[v] = 1;
  }
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) return false;
  return true;
}

namespace {

// Union of exact MIS over the components of G - X.
std::vector<Vertex> mis_outside(const Graph& g, const std::vector<Vertex>& X) {
  std::vector<char> removed(g.vertex_count(), 0);
  for (Vertex v : X) removed[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!removed[v]) keep.push_back(v);
  const auto [rest, ids] = induced_subgraph(g, keep);
  std::vector<Vertex> out;
  for (const auto& comp : connected_components(rest)) {
    const auto [piece, local] = induced_subgraph(rest, comp);
    for (Vertex v : exact_mis(piece)) out.push_back(ids[local[v]]);
  }
  return out;
}

}  // namespace

MisReport noisy_mis(const Graph& g, const MisParams& params) {
  MisReport report;
  report.params = params;
  BsiOptions options = params.bsi;
  if (!options.score)
    options.score = [&g](const BsiResult&, const ProperSeparator& p) {
      return -static_cast<double>(mis_outside(g, p.X).size());
    };
  report.bsi = bsi_solve(g, params.s, params.beta, options);
  report.separator = report.bsi.proper.X;
  std::vector<char> removed(g.vertex_count(), 0);
  for (Vertex v : report.separator) removed[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!removed[v]) keep.push_back(v);
  const auto [rest, ids] = induced_subgraph(g, keep);
  for (const auto& comp : connected_components(rest)) {
    if (static_cast<int>(comp.size()) > params.s)
      throw PipelineError("component of size " + std::to_string(comp.size()) +
                          " exceeds s = " + std::to_string(params.s));
    report.largest_component = std::max(report.largest_component, static_cast<int>(comp.size()));
    const auto [piece, local] = induced_subgraph(rest, comp);
    std::vector<Vertex> original;
    for (Vertex v : comp) original.push_back(ids[v]);
    report.components.push_back(original);
    for (Vertex v : exact_mis(piece)) report.independent_set.push_back(ids[local[v]]);
  }
  std::sort(report.independent_set.begin(), report.independent_set.end());
  report.objective = static_cast<int>(report.independent_set.size());
  if (!is_independent(g, report.independent_set))
    throw PipelineError("union of component solutions is not independent in the input graph");
  return report;
}

MaxSatParams maxsat_theory_preset(double epsilon, int clause_count, double c) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double m = std::max(clause_count, 3);
  const double w = std::ceil(c * std::log(m) * std::log(std::log(m)) / epsilon);
  MaxSatParams p;
  p.interdict.w = std::max(1, static_cast<int>(w));
  return p;
}

MaxSatParams maxsat_fast_preset(int w) {
  MaxSatParams p;
  p.interdict.w = w;
  return p;
}

MaxSatReport noisy_maxsat(const CnfFormula& phi, const MaxSatParams& params) {
  MaxSatReport report;
  report.params = params;
  const Graph h = build_factor_graph(phi);
  InterdictionResult cut = round_or_separate(h, params.interdict);
  report.deleted_edges = cut.F;
  report.interdiction = cut.stats;
  report.bag_cap = cut.bag_cap;

  const int n = phi.num_vars;
  std::vector<char> drop(phi.clause_count(), 0);
  for (EdgeId e : cut.F) {
    const Edge& ed = h.edge(e);
    drop[std::max(ed.u, ed.v) - n] = 1;  // the clause end of a factor-graph edge
  }
  CnfFormula reduced;
  reduced.num_vars = n;
  std::vector<Vertex> new_id(h.vertex_count(), -1);
  for (Vertex v = 0; v < n; ++v) new_id[v] = v;
  for (int c = 0; c < phi.clause_count(); ++c) {
    if (drop[c]) {
      report.deleted_clauses.push_back(c);
      continue;
    }
    new_id[clause_vertex(phi, c)] = n + reduced.clause_count();
    reduced.clauses.push_back(phi.clauses[c]);
  }

  // A decomposition of H - F' restricted to the surviving clauses fits the
  // factor graph of the reduced formula.  Leaf bags can be as large as the
  // bag cap, so they are refined before the DP.
  const Graph reduced_graph = build_factor_graph(reduced);
  TreeDecomposition t = remap(cut.decomposition, new_id);
  t = refine_leaf_bags(t, reduced_graph);
  const auto check = validate(t, reduced_graph);
  if (!check.ok()) throw PipelineError("restricted decomposition is invalid: " + check.message);
  const NiceTreeDecomposition nice = make_nice(t);
  report.decomposition_width = width(nice);
  MaxSatDpResult dp = maxsat_dp(reduced, nice, params.dp);
  report.reduced_optimum = dp.satisfied;
  report.assignment = std::move(dp.assignment);
  report.objective = count_satisfied(phi, report.assignment);
  return report;
}

}  // namespace twi
