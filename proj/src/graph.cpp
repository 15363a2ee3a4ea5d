#include "twi/graph.hpp"

#include <algorithm>
#include <numeric>

namespace twi {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges, std::vector<VertexRole> roles)
    : n_(n), roles_(std::move(roles)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (!roles_.empty() && static_cast<int>(roles_.size()) != n)
    throw std::invalid_argument("role vector length differs from vertex count");
  if (std::all_of(roles_.begin(), roles_.end(),
                  [](VertexRole r) { return r == VertexRole::plain; }))
    roles_.clear();
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) + ", " +
                                std::to_string(dup->v) + ")");
  edges_ = std::move(edges);

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(2 * edges_.size());
  adj_edge_.resize(2 * edges_.size());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edge_count(); ++id) {
    const auto& e = edges_[id];
    adj_[fill[e.u]] = e.v;
    adj_edge_[fill[e.u]++] = id;
    adj_[fill[e.v]] = e.u;
    adj_edge_[fill[e.v]++] = id;
  }
  // Edges were inserted in (u, v) order, so each neighbour list is sorted
  // for the lower endpoint but not in general; sort both arrays together.
  for (Vertex v = 0; v < n_; ++v) {
    std::vector<std::pair<Vertex, EdgeId>> tmp;
    for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) tmp.emplace_back(adj_[i], adj_edge_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (int i = offsets_[v]; i < offsets_[v + 1]; ++i) {
      adj_[i] = tmp[i - offsets_[v]].first;
      adj_edge_[i] = tmp[i - offsets_[v]].second;
    }
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const {
  return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return adj_edge_[offsets_[u] + (it - nb.begin())];
}

VertexRole Graph::role(Vertex v) const { return roles_.empty() ? VertexRole::plain : roles_[v]; }

Graph remove_edges(const Graph& g, std::span<const EdgeId> removed) {
  std::vector<char> drop(g.edge_count(), 0);
  for (EdgeId e : removed) {
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("edge id out of range");
    drop[e] = 1;
  }
  std::vector<Edge> kept;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!drop[e]) kept.push_back(g.edge(e));
  return Graph(g.vertex_count(), std::move(kept), g.roles());
}

std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g,
                                                       std::span<const Vertex> keep) {
  std::vector<Vertex> ids(keep.begin(), keep.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> local(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) local[ids[i]] = i;
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0) edges.push_back({local[e.u], local[e.v]});
  std::vector<VertexRole> roles;
  if (!g.roles().empty())
    for (Vertex v : ids) roles.push_back(g.role(v));
  return {Graph(static_cast<int>(ids.size()), std::move(edges), std::move(roles)), ids};
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(g.vertex_count(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Vertex u : g.neighbors(members[i]))
        if (comp[u] < 0) {
          comp[u] = comp[s];
          members.push_back(u);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Subgraph::Subgraph(const Graph& parent) : parent_(&parent) {
  vertices_.resize(parent.vertex_count());
  std::iota(vertices_.begin(), vertices_.end(), 0);
  edges_.resize(parent.edge_count());
  std::iota(edges_.begin(), edges_.end(), 0);
}

Subgraph::Subgraph(const Graph& parent, std::vector<Vertex> vertices, std::vector<EdgeId> edges,
                   std::vector<ZombieEdge> zombies)
    : parent_(&parent),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      zombies_(std::move(zombies)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (EdgeId e : edges_) {
    if (e < 0 || e >= parent.edge_count()) throw std::invalid_argument("edge id out of range");
    const auto& ed = parent.edge(e);
    if (!contains(ed.u) || !contains(ed.v))
      throw std::invalid_argument("subgraph edge with endpoint outside the vertex set");
  }
  for (const auto& z : zombies_) {
    if (z.zombie < parent.vertex_count() || !contains(z.zombie) || !contains(z.real))
      throw std::invalid_argument("malformed zombie edge");
  }
}

bool Subgraph::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int Subgraph::id_bound() const {
  int bound = parent_ ? parent_->vertex_count() : 0;
  if (!vertices_.empty()) bound = std::max(bound, vertices_.back() + 1);
  return bound;
}

SubgraphAdjacency::SubgraphAdjacency(const Subgraph& h) : arcs(h.id_bound()) {
  const auto& g = h.parent();
  for (EdgeId e : h.edges()) {
    const auto& ed = g.edge(e);
    arcs[ed.u].push_back({ed.v, e});
    arcs[ed.v].push_back({ed.u, e});
  }
  for (int k = 0; k < static_cast<int>(h.zombies().size()); ++k) {
    const auto& z = h.zombies()[k];
    arcs[z.zombie].push_back({z.real, -(k + 1)});
    arcs[z.real].push_back({z.zombie, -(k + 1)});
  }
}

std::vector<std::vector<Vertex>> connected_components(const Subgraph& h) {
  SubgraphAdjacency adj(h);
  std::vector<char> seen(h.id_bound(), 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s : h.vertices()) {
    if (seen[s]) continue;
    std::vector<Vertex> members{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& a : adj.arcs[members[i]])
        if (!seen[a.to]) {
          seen[a.to] = 1;
          members.push_back(a.to);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Subgraph boundary_subgraph(const Subgraph& h, std::span<const Vertex> component,
                           std::span<const EdgeId> deleted) {
  const auto& g = h.parent();
  std::vector<char> in_comp(h.id_bound(), 0);
  for (Vertex c : component) {
    if (!h.contains(c)) throw std::invalid_argument("component vertex not in subgraph");
    in_comp[c] = 1;
  }
  std::vector<char> is_deleted(g.edge_count(), 0);
  for (EdgeId e : deleted) is_deleted[e] = 1;
  std::vector<Vertex> verts(component.begin(), component.end());
  std::vector<EdgeId> edges;
  for (EdgeId e : h.edges()) {
    if (is_deleted[e]) continue;
    const auto& ed = g.edge(e);
    if (in_comp[ed.u] || in_comp[ed.v]) {
      edges.push_back(e);
      verts.push_back(ed.u);
      verts.push_back(ed.v);
    }
  }
  return Subgraph(g, std::move(verts), std::move(edges));
}

}  // namespace twi
