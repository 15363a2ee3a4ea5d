#include "twi/tree_decomposition.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace twi {

int TreeDecomposition::add_node(int parent_node, std::vector<Vertex> bag) {
  std::sort(bag.begin(), bag.end());
  bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  parent.push_back(parent_node);
  bags.push_back(std::move(bag));
  return node_count() - 1;
}

int width(const TreeDecomposition& t) {
  std::size_t best = 0;
  for (const auto& b : t.bags) best = std::max(best, b.size());
  return static_cast<int>(best) - 1;
}

namespace {

std::string edge_name(const Edge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
}

std::vector<std::vector<int>> child_lists(const TreeDecomposition& t) {
  std::vector<std::vector<int>> children(t.node_count());
  for (int i = 0; i < t.node_count(); ++i)
    if (t.parent[i] >= 0) children[t.parent[i]].push_back(i);
  return children;
}

int find_root(const TreeDecomposition& t) {
  for (int i = 0; i < t.node_count(); ++i)
    if (t.parent[i] < 0) return i;
  return -1;
}

std::vector<std::vector<int>> undirected(const TreeDecomposition& t) {
  std::vector<std::vector<int>> adj(t.node_count());
  for (int i = 0; i < t.node_count(); ++i)
    if (t.parent[i] >= 0) {
      adj[i].push_back(t.parent[i]);
      adj[t.parent[i]].push_back(i);
    }
  return adj;
}

bool is_subset(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ValidationReport validate(const TreeDecomposition& t, const Graph& g) {
  ValidationReport r;
  auto fail = [&](ValidationReport::Kind kind, std::string msg) {
    r.kind = kind;
    r.message = std::move(msg);
    return r;
  };
  const int nodes = t.node_count();
  if (static_cast<int>(t.parent.size()) != nodes)
    return fail(ValidationReport::Kind::malformed_tree, "parent and bag arrays differ in length");
  if (nodes == 0) {
    if (g.vertex_count() == 0) return r;
    r.vertex = 0;
    return fail(ValidationReport::Kind::vertex_missing, "decomposition has no nodes");
  }
  int roots = 0;
  for (int i = 0; i < nodes; ++i) {
    if (t.parent[i] < -1 || t.parent[i] >= nodes || t.parent[i] == i)
      return fail(ValidationReport::Kind::malformed_tree,
                  "node " + std::to_string(i) + " has an invalid parent");
    roots += t.parent[i] == -1 ? 1 : 0;
  }
  if (roots != 1)
    return fail(ValidationReport::Kind::malformed_tree,
                "expected exactly one root, found " + std::to_string(roots));
  // Every node must reach the root within `nodes` steps.
  std::vector<int> state(nodes, 0);  // 0 unknown, 1 in progress, 2 reaches root
  for (int i = 0; i < nodes; ++i) {
    std::vector<int> path;
    int cur = i;
    while (cur >= 0 && state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = t.parent[cur];
    }
    if (cur >= 0 && state[cur] == 1)
      return fail(ValidationReport::Kind::malformed_tree,
                  "parent links contain a cycle through node " + std::to_string(cur));
    for (int p : path) state[p] = 2;
  }

  const int n = g.vertex_count();
  std::vector<std::vector<int>> occurs(n);
  for (int i = 0; i < nodes; ++i) {
    std::vector<Vertex> bag = t.bags[i];
    std::sort(bag.begin(), bag.end());
    for (std::size_t k = 0; k < bag.size(); ++k) {
      if (bag[k] < 0 || bag[k] >= n) {
        r.vertex = bag[k];
        return fail(ValidationReport::Kind::vertex_out_of_range,
                    "bag " + std::to_string(i) + " holds unknown vertex " + std::to_string(bag[k]));
      }
      if (k > 0 && bag[k] == bag[k - 1]) continue;
      occurs[bag[k]].push_back(i);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (occurs[v].empty()) {
      r.vertex = v;
      return fail(ValidationReport::Kind::vertex_missing,
                  "vertex " + std::to_string(v) + " occurs in no bag");
    }
  for (const auto& e : g.edges()) {
    std::vector<int> both;
    std::set_intersection(occurs[e.u].begin(), occurs[e.u].end(), occurs[e.v].begin(),
                          occurs[e.v].end(), std::back_inserter(both));
    if (both.empty()) {
      r.edge = e;
      return fail(ValidationReport::Kind::edge_uncovered, "edge " + edge_name(e) + " is uncovered");
    }
  }
  std::vector<char> mark(nodes, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (int i : occurs[v]) mark[i] = 1;
    int links = 0;
    for (int i : occurs[v])
      if (t.parent[i] >= 0 && mark[t.parent[i]]) ++links;
    for (int i : occurs[v]) mark[i] = 0;
    if (links != static_cast<int>(occurs[v].size()) - 1) {
      r.vertex = v;
      return fail(ValidationReport::Kind::subtree_disconnected,
                  "bags containing vertex " + std::to_string(v) + " are not connected");
    }
  }
  return r;
}

TreeDecomposition decomposition_from_elimination_order(const Graph& g,
                                                       const std::vector<Vertex>& order) {
  const int n = g.vertex_count();
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order is not a permutation");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0)
      throw std::invalid_argument("order is not a permutation");
    pos[order[i]] = i;
  }
  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  TreeDecomposition t;
  t.parent.assign(n, -1);
  t.bags.resize(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> later(adj[v].begin(), adj[v].end());
    for (std::size_t a = 0; a < later.size(); ++a) {
      adj[later[a]].erase(v);
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        adj[later[a]].insert(later[b]);
        adj[later[b]].insert(later[a]);
      }
    }
    std::vector<Vertex> bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    t.bags[i] = std::move(bag);
    if (later.empty()) {
      roots.push_back(i);
    } else {
      int first = n;
      for (Vertex u : later) first = std::min(first, pos[u]);
      t.parent[i] = first;
    }
  }
  if (n == 0) t.add_node(-1, {});
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) t.parent[roots[k]] = roots.back();
  return t;
}

std::vector<Vertex> min_fill_order(const Graph& g, const std::vector<char>& last) {
  const int n = g.vertex_count();
  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> done(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  auto deferred = [&](Vertex v) { return !last.empty() && last[v]; };
  for (int step = 0; step < n; ++step) {
    bool only_deferred = true;
    for (Vertex v = 0; v < n; ++v)
      if (!done[v] && !deferred(v)) only_deferred = false;
    Vertex best = -1;
    long long best_fill = std::numeric_limits<long long>::max();
    std::size_t best_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (done[v] || (deferred(v) && !only_deferred)) continue;
      long long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (fill < best_fill || (fill == best_fill && adj[v].size() < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = adj[v].size();
      }
    }
    std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
    for (std::size_t a = 0; a < nb.size(); ++a) {
      adj[nb[a]].erase(best);
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
    }
    adj[best].clear();
    done[best] = 1;
    order.push_back(best);
  }
  return order;
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
  return decomposition_from_elimination_order(g, min_fill_order(g));
}

TreeDecomposition reroot(const TreeDecomposition& t, int node) {
  if (node < 0 || node >= t.node_count()) throw std::invalid_argument("reroot: bad node");
  auto adj = undirected(t);
  TreeDecomposition out;
  out.bags = t.bags;
  out.parent.assign(t.node_count(), -2);
  out.parent[node] = -1;
  std::vector<int> queue{node};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int nb : adj[queue[i]])
      if (out.parent[nb] == -2) {
        out.parent[nb] = queue[i];
        queue.push_back(nb);
      }
  return out;
}

TreeDecomposition compress(const TreeDecomposition& t) {
  const int nodes = t.node_count();
  if (nodes <= 1) return t;
  std::vector<std::set<int>> adj(nodes);
  for (int i = 0; i < nodes; ++i)
    if (t.parent[i] >= 0) {
      adj[i].insert(t.parent[i]);
      adj[t.parent[i]].insert(i);
    }
  std::vector<std::vector<Vertex>> bags = t.bags;
  for (auto& b : bags) std::sort(b.begin(), b.end());
  std::vector<char> alive(nodes, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < nodes; ++a) {
      if (!alive[a]) continue;
      for (int b : adj[a]) {
        if (!is_subset(bags[a], bags[b])) continue;
        // Contract a into b.
        for (int c : adj[a])
          if (c != b) {
            adj[c].erase(a);
            adj[c].insert(b);
            adj[b].insert(c);
          }
        adj[b].erase(a);
        adj[a].clear();
        alive[a] = 0;
        changed = true;
        break;
      }
    }
  }
  std::vector<int> new_id(nodes, -1);
  TreeDecomposition out;
  for (int i = 0; i < nodes; ++i)
    if (alive[i]) {
      new_id[i] = out.node_count();
      out.parent.push_back(-2);
      out.bags.push_back(bags[i]);
    }
  const int root = static_cast<int>(std::find(alive.begin(), alive.end(), 1) - alive.begin());
  out.parent[new_id[root]] = -1;
  std::vector<int> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int nb : adj[queue[i]])
      if (out.parent[new_id[nb]] == -2) {
        out.parent[new_id[nb]] = new_id[queue[i]];
        queue.push_back(nb);
      }
  return out;
}

TreeDecomposition remap(const TreeDecomposition& t, const std::vector<Vertex>& new_id) {
  TreeDecomposition out;
  out.parent = t.parent;
  for (const auto& bag : t.bags) {
    std::vector<Vertex> mapped;
    for (Vertex v : bag) {
      if (v < 0 || v >= static_cast<int>(new_id.size()))
        throw std::invalid_argument("remap: vertex outside the map");
      if (new_id[v] >= 0) mapped.push_back(new_id[v]);
    }
    std::sort(mapped.begin(), mapped.end());
    out.bags.push_back(std::move(mapped));
  }
  return out;
}

TreeDecomposition refine_leaf_bags(const TreeDecomposition& t, const Graph& g) {
  const auto children = child_lists(t);
  TreeDecomposition out = t;
  for (int leaf = 0; leaf < t.node_count(); ++leaf) {
    if (!children[leaf].empty()) continue;
    const auto& bag = t.bags[leaf];
    if (bag.size() <= 1) continue;
    std::vector<Vertex> iface;
    if (t.parent[leaf] >= 0) {
      const auto& pb = t.bags[t.parent[leaf]];
      std::set_intersection(bag.begin(), bag.end(), pb.begin(), pb.end(),
                            std::back_inserter(iface));
    }
    auto [local, ids] = induced_subgraph(g, bag);
    std::vector<int> local_of(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) local_of[ids[i]] = i;
    std::vector<Edge> edges = local.edges();
    std::vector<char> deferred(ids.size(), 0);
    for (std::size_t a = 0; a < iface.size(); ++a) {
      deferred[local_of[iface[a]]] = 1;
      for (std::size_t b = a + 1; b < iface.size(); ++b)
        if (!local.has_edge(local_of[iface[a]], local_of[iface[b]]))
          edges.push_back({local_of[iface[a]], local_of[iface[b]]});
    }
    const Graph closed(local.vertex_count(), std::move(edges));
    const auto order = min_fill_order(closed, deferred);
    TreeDecomposition sub = decomposition_from_elimination_order(closed, order);
    int anchor = find_root(sub);
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
      if (deferred[order[i]]) {
        anchor = i;  // first interface vertex eliminated: its bag holds the whole interface
        break;
      }
    sub = reroot(sub, anchor);
    const int base = out.node_count();
    std::vector<int> placed(sub.node_count());
    for (int i = 0; i < sub.node_count(); ++i) placed[i] = i == anchor ? leaf : base + (i < anchor ? i : i - 1);
    for (int i = 0; i < sub.node_count(); ++i) {
      std::vector<Vertex> global;
      for (Vertex v : sub.bags[i]) global.push_back(ids[v]);
      std::sort(global.begin(), global.end());
      if (i == anchor) {
        out.bags[leaf] = std::move(global);
      } else {
        out.parent.push_back(placed[sub.parent[i]]);
        out.bags.push_back(std::move(global));
      }
    }
  }
  return out;
}

TreeDecomposition NiceTreeDecomposition::plain() const {
  TreeDecomposition t;
  t.parent.assign(nodes.size(), -1);
  for (const auto& node : nodes) t.bags.push_back(node.bag);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    for (int c : nodes[i].children) t.parent[c] = i;
  return t;
}

int width(const NiceTreeDecomposition& t) {
  std::size_t best = 0;
  for (const auto& node : t.nodes) best = std::max(best, node.bag.size());
  return static_cast<int>(best) - 1;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& input) {
  NiceTreeDecomposition nice;
  if (input.node_count() == 0) {
    nice.nodes.push_back({NiceKind::leaf, -1, {}, {}});
    nice.root = 0;
    return nice;
  }
  const TreeDecomposition t = compress(input);
  const auto children = child_lists(t);
  const int root = find_root(t);

  auto add = [&](NiceKind kind, Vertex v, std::vector<int> kids, std::vector<Vertex> bag) {
    nice.nodes.push_back({kind, v, std::move(kids), std::move(bag)});
    return static_cast<int>(nice.nodes.size()) - 1;
  };
  // Walks from nice node `from` to a node with bag `target` by forgetting
  // then introducing one vertex at a time.
  auto morph = [&](int from, const std::vector<Vertex>& target) {
    std::vector<Vertex> bag = nice.nodes[from].bag;
    std::vector<Vertex> drop, gain;
    std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(),
                        std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(),
                        std::back_inserter(gain));
    int cur = from;
    for (Vertex v : drop) {
      bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
      cur = add(NiceKind::forget, v, {cur}, bag);
    }
    for (Vertex v : gain) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add(NiceKind::introduce, v, {cur}, bag);
    }
    return cur;
  };

  // Iterative post-order over the compressed tree.
  std::vector<int> top(t.node_count(), -1);
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [u, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({u, true});
      for (auto it = children[u].rbegin(); it != children[u].rend(); ++it) stack.push_back({*it, false});
      continue;
    }
    const auto& bag = t.bags[u];
    if (children[u].empty()) {
      top[u] = morph(add(NiceKind::leaf, -1, {}, {}), bag);
      continue;
    }
    int acc = morph(top[children[u][0]], bag);
    for (std::size_t k = 1; k < children[u].size(); ++k) {
      const int other = morph(top[children[u][k]], bag);
      acc = add(NiceKind::join, -1, {acc, other}, bag);
    }
    top[u] = acc;
  }
  nice.root = morph(top[root], {});
  return nice;
}

TreeDecomposition assemble(const RecursionTrace& trace) {
  TreeDecomposition t;
  const int count = static_cast<int>(trace.nodes.size());
  for (int i = 0; i < count; ++i) {
    const auto& node = trace.nodes[i];
    if ((i == 0) != (node.parent < 0) || node.parent >= i)
      throw TraceError("trace node " + std::to_string(i) + " has an invalid parent");
    if (node.parent >= 0) {
      const auto& par = trace.nodes[node.parent];
      if (std::find(par.children.begin(), par.children.end(), i) == par.children.end())
        throw TraceError("trace node " + std::to_string(i) + " missing from its parent's children");
      std::vector<Vertex> sep;
      std::set_union(par.X.begin(), par.X.end(), par.S.begin(), par.S.end(),
                     std::back_inserter(sep));
      std::vector<Vertex> expected;
      std::set_intersection(node.vertices.begin(), node.vertices.end(), sep.begin(), sep.end(),
                            std::back_inserter(expected));
      const bool widened = node.seeded || node.padded;
      const bool consistent = widened ? is_subset(expected, node.S) : expected == node.S;
      if (!consistent)
        throw TraceError("trace node " + std::to_string(i) +
                         ": S differs from V(H) & (X | S) of the parent");
    }
    if (!is_subset(node.S, node.vertices) || !is_subset(node.X, node.vertices))
      throw TraceError("trace node " + std::to_string(i) + ": S or X outside V(H)");
    std::vector<Vertex> bag;
    if (node.leaf) {
      bag = node.vertices;
    } else {
      std::set_union(node.S.begin(), node.S.end(), node.X.begin(), node.X.end(),
                     std::back_inserter(bag));
    }
    t.add_node(node.parent, std::move(bag));
  }
  return t;
}

}  // namespace twi
