#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twi {

using Vertex = int;
using EdgeId = int;

// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

enum class VertexRole : std::uint8_t { plain, variable, clause };

// Immutable simple undirected graph on vertices 0..n-1.  Edges are kept in
// lexicographic (u, v) order, so edge ids are a deterministic function of the
// edge set.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::vector<Edge> edges, std::vector<VertexRole> roles = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const;
  std::span<const EdgeId> incident_edges(Vertex v) const;
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }
  VertexRole role(Vertex v) const;
  const std::vector<VertexRole>& roles() const { return roles_; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && roles_ == other.roles_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexRole> roles_;  // empty means all plain
  std::vector<int> offsets_ = {0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
};

// G - F with vertex ids preserved.  Edge ids of the result are renumbered.
Graph remove_edges(const Graph& g, std::span<const EdgeId> removed);

// Subgraph of g induced by `keep`; returns the graph on 0..k-1 together
// with the map local id -> id in g.
std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g,
                                                       std::span<const Vertex> keep);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// An edge of a Subgraph that hangs off a zombie vertex.  The zombie stands
// in for `original_vertex`, which has been cut away; `real` is the surviving
// endpoint of the parent edge `original`.
struct ZombieEdge {
  Vertex zombie = 0;
  Vertex real = 0;
  EdgeId original = 0;
  Vertex original_vertex = 0;
};

// A subgraph of a fixed parent graph: a sorted vertex list, a sorted list of
// parent edge ids whose endpoints are all present, and optional zombie edges.
// Zombie ids are >= parent.vertex_count().
class Subgraph {
 public:
  Subgraph() = default;
  explicit Subgraph(const Graph& parent);  // the whole graph
  Subgraph(const Graph& parent, std::vector<Vertex> vertices, std::vector<EdgeId> edges,
           std::vector<ZombieEdge> zombies = {});

  const Graph& parent() const { return *parent_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<ZombieEdge>& zombies() const { return zombies_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  bool contains(Vertex v) const;
  bool is_zombie(Vertex v) const { return v >= parent_->vertex_count(); }
  // One past the largest vertex id that may occur (parent n plus zombies).
  int id_bound() const;

  bool same_as(const Subgraph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_ && zombies_.empty() &&
           other.zombies_.empty();
  }

 private:
  const Graph* parent_ = nullptr;
  std::vector<Vertex> vertices_;
  std::vector<EdgeId> edges_;
  std::vector<ZombieEdge> zombies_;
};

// Local adjacency of a Subgraph.  Edge tags are parent edge ids for real
// edges and -(k+1) for the k-th zombie edge.
struct SubgraphAdjacency {
  struct Arc {
    Vertex to;
    int tag;
  };
  std::vector<std::vector<Arc>> arcs;  // indexed by vertex id, size id_bound()

  explicit SubgraphAdjacency(const Subgraph& h);
};

std::vector<std::vector<Vertex>> connected_components(const Subgraph& h);

// Edges of h (minus `deleted`) with at least one endpoint in `component`,
// together with their endpoints and the component vertices themselves.
Subgraph boundary_subgraph(const Subgraph& h, std::span<const Vertex> component,
                           std::span<const EdgeId> deleted);

}  // namespace twi
