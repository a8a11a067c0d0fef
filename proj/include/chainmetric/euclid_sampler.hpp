/*
 * Copyright 2026 The chainmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chainmetric/identification.hpp"
#include "chainmetric/metric_core.hpp"
#include "chainmetric/point.hpp"
#include "chainmetric/std_phi.hpp"

namespace chainmetric {

enum class GraphMode { complete, structured };

std::string to_string(GraphMode mode);

// Node placement and graph settings for approximating d^phi on R^s.
struct SamplerConfig {
  int dimension = 2;
  // Sphere nets are placed on S_1 .. S_M.
  int max_sphere_index = 8;
  // Every unit direction is within angular_resolution/2 of a net direction.
  double angular_resolution = std::numbers::pi / 8.0;
  // Interior radial nodes at radii j/radial_steps, 0 <= j < radial_steps, along
  // the net directions; 0 disables them.
  int radial_steps = 2;
  // Unset: complete up to complete_limit nodes, structured above.
  std::optional<GraphMode> graph_mode;
  std::size_t complete_limit = 2000;
  // Euclidean nearest neighbours linked in structured mode.
  int neighbours = 8;

  void validate() const;
};

enum class Provenance { endpoint, sphere, ladder, radial };

std::string to_string(Provenance provenance);

struct SampleNode {
  Point point;
  Provenance provenance = Provenance::sphere;
  // Exact sphere membership for library-placed nodes; endpoints are classified
  // by the weight.
  std::optional<SphereTag> sphere;
  // Nodes sharing a family lie on one identification curve; -1 for none.
  int family = -1;
};

// Endpoints first (in the given order, deduplicated), then for each endpoint
// with a_m <= |x| < a_{m+1} its identification ladder over S_1 .. S_M and its
// projections onto the bracketing spheres S_m and S_{m+1}, then the sphere
// nets lifted to S_1 .. S_M, then the interior radial nodes. Points that
// coincide exactly are merged.
std::vector<SampleNode> build_sample(const SamplerConfig& config, std::span<const Point> endpoints,
                                     const IdentificationWeight& weight);

struct WeightedEdge {
  std::size_t to = 0;
  double weight = 0.0;
};

class SampleGraph {
 public:
  SampleGraph(EuclideanLinkCost cost, std::vector<SampleNode> nodes, GraphMode mode, int neighbours);

  std::size_t size() const { return nodes_.size(); }
  GraphMode mode() const { return mode_; }
  const SampleNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<SampleNode>& nodes() const { return nodes_; }
  const AnnotatedPoint& annotated(std::size_t i) const { return annotated_[i]; }
  const EuclideanLinkCost& cost() const { return cost_; }

  std::size_t edge_count() const;
  double link(std::size_t i, std::size_t j) const { return cost_.delta(annotated_[i], annotated_[j]); }
  std::optional<std::size_t> find(const Point& p) const;

  template <class Fn>
  void for_each_neighbour(std::size_t i, Fn&& fn) const {
    if (mode_ == GraphMode::complete) {
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (j != i) fn(j, link(i, j));
      }
    } else {
      for (const WeightedEdge& e : adjacency_[i]) fn(e.to, e.weight);
    }
  }

 private:
  EuclideanLinkCost cost_;
  std::vector<SampleNode> nodes_;
  std::vector<AnnotatedPoint> annotated_;
  GraphMode mode_;
  std::vector<std::vector<WeightedEdge>> adjacency_;  // structured mode only
};

// Complete mode: every pair, weight delta. Structured mode: pairs on a common
// sphere, pairs on a common identification curve, the Euclidean
// nearest-neighbour pairs, and every pair touching an endpoint.
SampleGraph build_graph(const EuclideanLinkCost& cost, std::vector<SampleNode> nodes, GraphMode mode,
                        int neighbours = 8);
SampleGraph build_graph(const EuclideanLinkCost& cost, std::vector<SampleNode> nodes,
                        const SamplerConfig& config);

struct ShortestPaths {
  std::size_t source = 0;
  std::vector<double> distance;
  std::vector<std::size_t> parent;  // parent[source] == source; unreachable: size()
};

// Binary-heap Dijkstra; equal keys pop in node-index order.
ShortestPaths shortest_paths(const SampleGraph& graph, std::size_t source);

struct Approximation {
  // Cost of the best chain through graph nodes: an upper bound on d^phi.
  double upper_bound = 0.0;
  Chain<Point> witness;
  std::vector<std::size_t> witness_nodes;
};

Approximation approx_dphi(const SampleGraph& graph, std::size_t from, std::size_t to);
// x and y must be nodes of the graph (exact coordinates).
Approximation approx_dphi(const SampleGraph& graph, const Point& x, const Point& y);

// Builds samples and graphs on demand for a fixed link cost and configuration.
class SampledDphi {
 public:
  SampledDphi(EuclideanLinkCost cost, SamplerConfig config);

  const EuclideanLinkCost& cost() const { return cost_; }
  const SamplerConfig& config() const { return config_; }

  SampleGraph graph(std::span<const Point> endpoints) const;
  Approximation approx(const Point& x, const Point& y) const;
  // One graph holding every point as an endpoint; entry (i,j) is the
  // shortest-path value from points[i] to points[j].
  DistanceMatrix approx_matrix(std::span<const Point> points) const;

 private:
  EuclideanLinkCost cost_;
  SamplerConfig config_;
};

// Multi-source shortest-path values to a fixed center set over a base graph;
// arbitrary points are attached through a few extra chain points.
class SetDistanceField {
 public:
  SetDistanceField(SampleGraph graph, std::span<const std::size_t> sources);

  const SampleGraph& graph() const { return graph_; }
  double at(std::size_t node) const { return field_[node]; }

  // Best chain p -> (via points)* -> graph node -> ... -> source. The result is
  // a chain cost, hence an upper bound on the d^phi distance to the set.
  double upper_bound(const Point& p, std::span<const Point> via) const;

 private:
  SampleGraph graph_;
  std::vector<double> field_;
};

// Coverage solver for epsilon-net verification: the base graph is the center
// set plus the configured sample, and each query point is attached through its
// projections onto the bracketing spheres and its identification ladder.
CoverageSolverFactory make_coverage_solver(EuclideanLinkCost cost, SamplerConfig config);

struct ConvergenceRow {
  int level = 0;
  std::size_t node_count = 0;
  double upper_bound = 0.0;
};

// Level l halves the angular resolution and doubles radial_steps l times,
// so every level's node set contains the previous one.
std::vector<ConvergenceRow> convergence_run(const EuclideanLinkCost& cost, const Point& x, const Point& y,
                                            int levels, const SamplerConfig& base);

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);
// "i j weight" per undirected edge.
void write_edge_list(std::ostream& out, const SampleGraph& graph);
// "i x_1 .. x_s provenance" per node.
void write_node_table(std::ostream& out, const SampleGraph& graph);

}  // namespace chainmetric
