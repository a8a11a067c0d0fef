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

#include "chainmetric/euclid_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "chainmetric/parallel.hpp"

namespace chainmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string to_string(GraphMode mode) { return mode == GraphMode::complete ? "complete" : "structured"; }

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::endpoint: return "endpoint";
    case Provenance::sphere: return "sphere";
    case Provenance::ladder: return "ladder";
    case Provenance::radial: return "radial";
  }
  return "unknown";
}

void SamplerConfig::validate() const {
  if (dimension < 2) throw std::invalid_argument("sampler dimension must be >= 2");
  if (max_sphere_index < 1) throw std::invalid_argument("max_sphere_index must be >= 1");
  if (!(angular_resolution > 0.0) || !std::isfinite(angular_resolution)) {
    throw std::invalid_argument("angular_resolution must be positive");
  }
  if (radial_steps < 0) throw std::invalid_argument("radial_steps must be >= 0");
  if (neighbours < 1) throw std::invalid_argument("neighbours must be >= 1");
}

std::vector<SampleNode> build_sample(const SamplerConfig& config, std::span<const Point> endpoints,
                                     const IdentificationWeight& weight) {
  config.validate();
  const std::size_t s = static_cast<std::size_t>(config.dimension);
  std::vector<SampleNode> nodes;
  std::map<Point, std::size_t> index;
  auto add = [&](SampleNode node) {
    auto [it, inserted] = index.emplace(node.point, nodes.size());
    if (inserted) {
      nodes.push_back(std::move(node));
      return;
    }
    SampleNode& existing = nodes[it->second];
    if (!existing.sphere && node.sphere) existing.sphere = std::move(node.sphere);
    if (existing.family < 0) existing.family = node.family;
  };

  for (const Point& e : endpoints) {
    if (e.size() != s) throw std::invalid_argument("endpoint dimension does not match the sampler");
    require_finite(e);
    add({e, Provenance::endpoint, std::nullopt, -1});
  }

  int family = 0;
  for (const Point& e : endpoints) {
    const double r = norm(e);
    if (r < 1.0) continue;
    const Point u = weight.key_of(e);
    const Point key = weight.lift(u, 1);
    const int m = std::max(1, weight.table().shell_index(r));
    for (int j = 1; j <= config.max_sphere_index; ++j) {
      add({weight.lift(u, j), Provenance::ladder, SphereTag{j, key}, family});
    }
    for (int j : {m, m + 1}) {
      if (j > config.max_sphere_index) add({weight.lift(u, j), Provenance::ladder, SphereTag{j, key}, family});
    }
    ++family;
  }

  const std::vector<Point> directions = unit_sphere_net(config.dimension, config.angular_resolution);
  for (const Point& u : directions) {
    const Point key = weight.lift(u, 1);
    for (int m = 1; m <= config.max_sphere_index; ++m) {
      add({m == 1 ? key : weight.lift(u, m), Provenance::sphere, SphereTag{m, key}, family});
    }
    ++family;
  }

  if (config.radial_steps >= 1) {
    add({Point(s, 0.0), Provenance::radial, std::nullopt, -1});
    for (int j = 1; j < config.radial_steps; ++j) {
      const double radius = static_cast<double>(j) / config.radial_steps;
      for (const Point& u : directions) add({scaled(u, radius), Provenance::radial, std::nullopt, -1});
    }
  }
  return nodes;
}

SampleGraph::SampleGraph(EuclideanLinkCost cost, std::vector<SampleNode> nodes, GraphMode mode, int neighbours)
    : cost_(std::move(cost)), nodes_(std::move(nodes)), mode_(mode) {
  if (nodes_.size() < 2) throw std::invalid_argument("a sample graph needs at least two nodes");
  annotated_.reserve(nodes_.size());
  for (const SampleNode& n : nodes_) annotated_.push_back(cost_.annotate(n.point, n.sphere));
  if (mode_ == GraphMode::complete) return;

  const std::size_t n = nodes_.size();
  std::vector<std::vector<std::size_t>> links(n);
  auto connect = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    links[i].push_back(j);
    links[j].push_back(i);
  };
  auto clique = [&](const std::map<int, std::vector<std::size_t>>& groups) {
    for (const auto& [key, members] : groups) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) connect(members[a], members[b]);
      }
    }
  };

  std::map<int, std::vector<std::size_t>> by_sphere, by_family;
  for (std::size_t i = 0; i < n; ++i) {
    if (annotated_[i].sphere) by_sphere[annotated_[i].sphere->index].push_back(i);
    if (nodes_[i].family >= 0) by_family[nodes_[i].family].push_back(i);
  }
  clique(by_sphere);
  clique(by_family);

  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(neighbours), n - 1);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.emplace_back(euclidean_distance(nodes_[i].point, nodes_[j].point), j);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    for (std::size_t t = 0; t < k; ++t) connect(i, order[t].second);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (nodes_[i].provenance != Provenance::endpoint) continue;
    for (std::size_t j = 0; j < n; ++j) connect(i, j);
  }

  adjacency_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = links[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    adjacency_[i].reserve(list.size());
    for (std::size_t j : list) adjacency_[i].push_back({j, link(i, j)});
  }
}

std::size_t SampleGraph::edge_count() const {
  if (mode_ == GraphMode::complete) return nodes_.size() * (nodes_.size() - 1) / 2;
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total / 2;
}

std::optional<std::size_t> SampleGraph::find(const Point& p) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].point == p) return i;
  }
  return std::nullopt;
}

SampleGraph build_graph(const EuclideanLinkCost& cost, std::vector<SampleNode> nodes, GraphMode mode,
                        int neighbours) {
  return SampleGraph(cost, std::move(nodes), mode, neighbours);
}

SampleGraph build_graph(const EuclideanLinkCost& cost, std::vector<SampleNode> nodes,
                        const SamplerConfig& config) {
  const GraphMode mode = config.graph_mode.value_or(nodes.size() <= config.complete_limit ? GraphMode::complete
                                                                                         : GraphMode::structured);
  return SampleGraph(cost, std::move(nodes), mode, config.neighbours);
}

namespace {

ShortestPaths run_dijkstra(const SampleGraph& graph, std::span<const std::size_t> sources) {
  const std::size_t n = graph.size();
  ShortestPaths out;
  out.source = sources.empty() ? n : sources.front();
  out.distance.assign(n, kInf);
  out.parent.assign(n, n);
  std::vector<bool> done(n, false);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t s : sources) {
    out.distance[s] = 0.0;
    out.parent[s] = s;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    graph.for_each_neighbour(u, [&](std::size_t v, double w) {
      if (done[v]) return;
      const double candidate = d + w;
      if (candidate < out.distance[v]) {
        out.distance[v] = candidate;
        out.parent[v] = u;
        heap.emplace(candidate, v);
      }
    });
  }
  return out;
}

}  // namespace

ShortestPaths shortest_paths(const SampleGraph& graph, std::size_t source) {
  if (source >= graph.size()) throw std::out_of_range("source node out of range");
  const std::size_t sources[] = {source};
  return run_dijkstra(graph, sources);
}

Approximation approx_dphi(const SampleGraph& graph, std::size_t from, std::size_t to) {
  if (from >= graph.size() || to >= graph.size()) throw std::out_of_range("node index out of range");
  Approximation out;
  if (from == to) {
    out.witness.points = {graph.node(from).point, graph.node(from).point};
    out.witness_nodes = {from};
    return out;
  }
  const ShortestPaths paths = shortest_paths(graph, from);
  if (!std::isfinite(paths.distance[to])) throw std::runtime_error("sample graph is disconnected");
  out.upper_bound = paths.distance[to];
  for (std::size_t v = to;; v = paths.parent[v]) {
    out.witness_nodes.push_back(v);
    if (v == from) break;
  }
  std::reverse(out.witness_nodes.begin(), out.witness_nodes.end());
  for (std::size_t v : out.witness_nodes) out.witness.points.push_back(graph.node(v).point);
  return out;
}

Approximation approx_dphi(const SampleGraph& graph, const Point& x, const Point& y) {
  const auto i = graph.find(x);
  const auto j = graph.find(y);
  if (!i || !j) throw std::invalid_argument("query points must be nodes of the sample graph");
  return approx_dphi(graph, *i, *j);
}

SampledDphi::SampledDphi(EuclideanLinkCost cost, SamplerConfig config)
    : cost_(std::move(cost)), config_(std::move(config)) {
  config_.validate();
  if (cost_.anchor().size() != static_cast<std::size_t>(config_.dimension)) {
    throw std::invalid_argument("anchor dimension does not match the sampler");
  }
}

SampleGraph SampledDphi::graph(std::span<const Point> endpoints) const {
  return build_graph(cost_, build_sample(config_, endpoints, cost_.weight()), config_);
}

Approximation SampledDphi::approx(const Point& x, const Point& y) const {
  const Point endpoints[] = {x, y};
  const SampleGraph g = graph(endpoints);
  return approx_dphi(g, x, y);
}

DistanceMatrix SampledDphi::approx_matrix(std::span<const Point> points) const {
  const SampleGraph g = graph(points);
  std::vector<std::size_t> ids;
  ids.reserve(points.size());
  for (const Point& p : points) ids.push_back(*g.find(p));
  DistanceMatrix out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const ShortestPaths paths = shortest_paths(g, ids[i]);
    for (std::size_t j = 0; j < points.size(); ++j) out(i, j) = paths.distance[ids[j]];
  });
  return out;
}

SetDistanceField::SetDistanceField(SampleGraph graph, std::span<const std::size_t> sources)
    : graph_(std::move(graph)) {
  if (sources.empty()) throw std::invalid_argument("distance field needs at least one source");
  field_ = run_dijkstra(graph_, sources).distance;
}

double SetDistanceField::upper_bound(const Point& p, std::span<const Point> via) const {
  const EuclideanLinkCost& cost = graph_.cost();
  std::vector<AnnotatedPoint> extra;
  extra.reserve(via.size() + 1);
  extra.push_back(cost.annotate(p));
  for (const Point& v : via) extra.push_back(cost.annotate(v));

  const std::size_t t = extra.size();
  std::vector<double> best(t, kInf);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      if (std::isfinite(field_[v])) best[i] = std::min(best[i], cost.delta(extra[i], graph_.annotated(v)) + field_[v]);
    }
  }
  std::vector<double> link(t * t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) link[i * t + j] = cost.delta(extra[i], extra[j]);
  }
  for (std::size_t round = 0; round < t; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        const double candidate = link[i * t + j] + best[j];
        if (candidate < best[i]) {
          best[i] = candidate;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return best[0];
}

CoverageSolverFactory make_coverage_solver(EuclideanLinkCost cost, SamplerConfig config) {
  config.validate();
  return [cost = std::move(cost), config](std::span<const Point> centers) -> CoverageQuery {
    std::vector<SampleNode> nodes;
    for (const Point& c : centers) nodes.push_back({c, Provenance::endpoint, std::nullopt, -1});
    std::vector<SampleNode> sample = build_sample(config, {}, cost.weight());
    nodes.insert(nodes.end(), std::make_move_iterator(sample.begin()), std::make_move_iterator(sample.end()));

    for (SampleNode& n : nodes) {
      if (n.provenance == Provenance::endpoint) n.provenance = Provenance::sphere;
    }
    std::vector<std::size_t> sources(centers.size());
    for (std::size_t i = 0; i < sources.size(); ++i) sources[i] = i;
    auto field = std::make_shared<const SetDistanceField>(build_graph(cost, std::move(nodes), config), sources);

    const int max_sphere = config.max_sphere_index;
    return [field, max_sphere](const Point& p) {
      const IdentificationWeight& weight = field->graph().cost().weight();
      std::vector<Point> via;
      const double r = norm(p);
      if (r >= 1.0) {
        const Point u = weight.key_of(p);
        const int m = std::max(1, weight.table().shell_index(r));
        via.push_back(weight.lift(u, m));
        via.push_back(weight.lift(u, m + 1));
        for (int j = 1; j <= max_sphere; ++j) {
          if (j != m && j != m + 1) via.push_back(weight.lift(u, j));
        }
      }
      return field->upper_bound(p, via);
    };
  };
}

std::vector<ConvergenceRow> convergence_run(const EuclideanLinkCost& cost, const Point& x, const Point& y,
                                            int levels, const SamplerConfig& base) {
  if (levels < 1) throw std::invalid_argument("convergence_run needs levels >= 1");
  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < levels; ++level) {
    SamplerConfig cfg = base;
    cfg.angular_resolution = base.angular_resolution / std::ldexp(1.0, level);
    cfg.radial_steps = base.radial_steps << level;
    const SampledDphi solver(cost, cfg);
    const Point endpoints[] = {x, y};
    const SampleGraph g = solver.graph(endpoints);
    rows.push_back({level, g.size(), approx_dphi(g, x, y).upper_bound});
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
  out << "level,node_count,upper_bound\n";
  for (const ConvergenceRow& row : rows) {
    out << row.level << ',' << row.node_count << ',' << format_real(row.upper_bound) << '\n';
  }
}

void write_edge_list(std::ostream& out, const SampleGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    graph.for_each_neighbour(i, [&](std::size_t j, double w) {
      if (i < j) out << i << ' ' << j << ' ' << format_real(w) << '\n';
    });
  }
}

void write_node_table(std::ostream& out, const SampleGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const SampleNode& n = graph.node(i);
    out << i << ' ' << format_point(n.point, ' ') << ' ' << to_string(n.provenance) << '\n';
  }
}

}  // namespace chainmetric
