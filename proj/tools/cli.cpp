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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chainmetric/completion.hpp"
#include "chainmetric/finite_oracle.hpp"
#include "chainmetric/ray_psi.hpp"
#include "chainmetric/std_phi.hpp"

namespace chainmetric::cli {

namespace {

using nlohmann::json;

class CertificateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json point_json(const Point& p) { return json(std::vector<double>(p.begin(), p.end())); }

template <class T>
T get_key(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config key '") + key + "': " + e.what());
  }
}

WeightKind parse_weight(const std::string& text) {
  if (text == "std_phi") return WeightKind::std_phi;
  if (text == "ray_psi") return WeightKind::ray_psi;
  throw std::invalid_argument("unknown weight '" + text + "'");
}

std::optional<GraphMode> parse_graph_mode(const std::string& text) {
  if (text == "complete") return GraphMode::complete;
  if (text == "structured") return GraphMode::structured;
  if (text == "auto") return std::nullopt;
  throw std::invalid_argument("unknown graph mode '" + text + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::invalid_argument("cannot write " + path);
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot write " + path);
  body(file);
}

std::shared_ptr<const IdentificationWeight> make_weight(const RunConfig& config) {
  if (config.weight_kind == WeightKind::ray_psi) return std::make_shared<RayWeight>(ConeParam(config.delta));
  return std::make_shared<StdWeight>();
}

// Fixes the working dimension from the points and checks it against the config.
std::size_t settle_dimension(RunConfig& config, std::initializer_list<const Point*> points) {
  const std::size_t s = (*points.begin())->size();
  for (const Point* p : points) {
    if (p->size() != s) throw std::invalid_argument("points have different dimensions");
  }
  if (config.dimension && static_cast<std::size_t>(*config.dimension) != s) {
    throw std::invalid_argument("point dimension does not match the configured dimension");
  }
  if (s < 2) throw std::invalid_argument("points must have dimension >= 2");
  config.sampler.dimension = static_cast<int>(s);
  return s;
}

EuclideanLinkCost make_cost(const RunConfig& config, std::size_t s) {
  return EuclideanLinkCost(make_weight(config), Point(s, 0.0));
}

int cmd_dist(RunConfig config, const std::string& xs, const std::string& ys, std::ostream& out) {
  const Point x = parse_point(xs);
  const Point y = parse_point(ys);
  const std::size_t s = settle_dimension(config, {&x, &y});
  config.sampler.validate();
  const EuclideanLinkCost cost = make_cost(config, s);

  json j;
  j["weight"] = cost.weight().name();
  j["x"] = point_json(x);
  j["y"] = point_json(y);
  bool ok = true;
  if (x == y) {
    j["lower"] = 0.0;
    j["upper"] = 0.0;
    j["delta"] = 0.0;
    j["witness"] = json::array({point_json(x), point_json(y)});
  } else {
    const SampledDphi solver(cost, config.sampler);
    const Approximation approx = solver.approx(x, y);
    const MetricContext<Point> ctx = cost.context();
    const BoundCertificate<Point> cert = certify(ctx, x, y);
    const double witness_cost = chain_cost(ctx, approx.witness);
    j["lower"] = cert.lower;
    j["upper"] = approx.upper_bound;
    j["delta"] = cert.upper;
    json witness = json::array();
    for (const Point& p : approx.witness.points) witness.push_back(point_json(p));
    j["witness"] = witness;
    j["witness_cost"] = witness_cost;
    ok = cert.lower <= approx.upper_bound + 1e-12 && approx.upper_bound <= cert.upper + 1e-12 &&
         std::abs(witness_cost - approx.upper_bound) <= 1e-9;
  }
  j["certified"] = ok;
  Sink sink(config.output, out);
  sink.stream() << j.dump(2) << '\n';
  return ok ? kExitOk : kExitCertificate;
}

int cmd_oracle(const RunConfig& config, const std::string& path, std::size_t anchor, const std::string& weights,
               std::ostream& out) {
  std::istringstream text(read_file(path));
  const FiniteSpace space = FiniteSpace::from_matrix(read_distance_matrix(text), anchor);
  FiniteContext ctx = finite_context(space);
  if (!weights.empty()) {
    std::istringstream wtext(read_file(weights));
    ctx = finite_context(space, read_distance_matrix(wtext));
  }
  const DistanceMatrix result = dphi_exact(ctx, space);
  bool ok = verify_metric_axioms(result, 1e-12).ok();
  for (std::size_t i = 0; i < result.size(); ++i) {
    for (std::size_t j = 0; j < result.size(); ++j) {
      const double lower = lower_bound_certificate(ctx, i, j);
      const double upper = delta(ctx, i, j);
      ok = ok && lower <= result(i, j) + 1e-12 && result(i, j) <= upper + 1e-12 &&
           upper <= space.distances(i, j) + 1e-12;
    }
  }
  Sink sink(config.output, out);
  write_distance_matrix(sink.stream(), result);
  return ok ? kExitOk : kExitCertificate;
}

int cmd_net(RunConfig config, double epsilon, std::size_t samples, const std::string& csv, std::ostream& out) {
  if (config.weight_kind != WeightKind::std_phi) throw std::invalid_argument("net supports the std_phi weight only");
  const int s = config.dimension.value_or(2);
  const int k = net_index(epsilon);
  config.sampler.dimension = s;
  config.sampler.max_sphere_index = std::max(config.sampler.max_sphere_index, k + 1);
  config.sampler.validate();
  const EuclideanLinkCost cost = make_cost(config, static_cast<std::size_t>(s));
  NetVerifyOptions options;
  options.samples = samples;
  options.seed = config.seed;
  const EpsilonNet net = epsilon_net(epsilon, s, make_coverage_solver(cost, config.sampler), options);
  if (!csv.empty()) write_file(csv, [&](std::ostream& file) { write_net_csv(file, net); });

  const NetVerification& v = net.verification;
  json j;
  j["epsilon"] = net.epsilon;
  j["dimension"] = net.dimension;
  j["k"] = net.k;
  j["center_count"] = net.centers.size();
  j["sphere_centers"] = net.sphere_centers;
  j["samples"] = v.samples;
  j["max_norm"] = v.max_norm;
  j["max_min_distance"] = v.max_min_distance;
  j["uncovered"] = v.uncovered;
  j["passed"] = v.passed;
  Sink sink(config.output, out);
  sink.stream() << j.dump(2) << '\n';
  return v.passed ? kExitOk : kExitCertificate;
}

int cmd_converge(RunConfig config, const std::string& xs, const std::string& ys, int levels, std::ostream& out) {
  const Point x = parse_point(xs);
  const Point y = parse_point(ys);
  const std::size_t s = settle_dimension(config, {&x, &y});
  config.sampler.validate();
  const std::vector<ConvergenceRow> rows = convergence_run(make_cost(config, s), x, y, levels, config.sampler);
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].upper_bound <= rows[i - 1].upper_bound + 1e-12;
  Sink sink(config.output, out);
  write_convergence_csv(sink.stream(), rows);
  return ok ? kExitOk : kExitCertificate;
}

int cmd_noneq(RunConfig config, int horizon, const std::string& csv, std::ostream& out) {
  config.sampler.dimension = config.dimension.value_or(2);
  const NonequivalenceReport report = nonequivalence_experiment(config.delta, horizon, config.sampler);
  if (!csv.empty()) write_file(csv, [&](std::ostream& file) { write_nonequivalence_csv(file, report); });
  json j;
  j["delta"] = report.delta;
  j["N"] = report.horizon;
  j["floor"] = report.floor;
  j["min_psi"] = report.min_psi;
  j["max_phi_cap_at_N"] = report.max_phi_cap_at_N;
  j["floor_holds"] = report.floor_holds;
  j["caps_hold"] = report.caps_hold;
  j["caps_decreasing"] = report.caps_decreasing;
  j["verdict"] = report.verdict();
  Sink sink(config.output, out);
  sink.stream() << j.dump(2) << '\n';
  return report.ok() ? kExitOk : kExitCertificate;
}

json image_json(const BoundaryImage& image) {
  json j;
  if (const auto* in = std::get_if<Interior>(&image.rep)) {
    j["kind"] = "interior";
    j["point"] = point_json(in->point);
  } else {
    j["kind"] = "at-infinity";
    j["direction"] = point_json(std::get<AtInfinity>(image.rep).direction);
    json terms = json::array();
    for (int i = 1; i <= 5; ++i) terms.push_back(point_json(image.representative(i)));
    j["representative"] = terms;
  }
  return j;
}

int cmd_boundary(RunConfig config, const std::string& map, const std::string& text, bool at_infinity,
                 std::ostream& out) {
  const Point p = parse_point(text);
  settle_dimension(config, {&p});
  json j;
  bool ok = true;
  if (map == "h") {
    const BoundaryImage image = boundary_map_h_std(p);
    j = image_json(image);
    ok = euclidean_distance(boundary_map_k_std(image.rep), p) <= 1e-12;
  } else if (map == "k") {
    const BoundaryRep rep = at_infinity ? BoundaryRep{AtInfinity{p}} : BoundaryRep{Interior{p}};
    const Point x = boundary_map_k_std(rep);
    j["point"] = point_json(x);
    const BoundaryRep back = boundary_map_h_std(x).rep;
    if (at_infinity) {
      ok = std::holds_alternative<AtInfinity>(back) &&
           euclidean_distance(std::get<AtInfinity>(back).direction, p) <= 1e-12;
    } else {
      ok = std::holds_alternative<Interior>(back) &&
           euclidean_distance(std::get<Interior>(back).point, p) <= 1e-9 * (1.0 + norm(p));
    }
  } else {
    j = image_json(boundary_map_h_ray(p, ConeParam(config.delta)));
  }
  j["certified"] = ok;
  Sink sink(config.output, out);
  sink.stream() << j.dump(2) << '\n';
  return ok ? kExitOk : kExitCertificate;
}

int cmd_rays(const RunConfig& config, std::size_t samples, std::ostream& out) {
  const int s = config.dimension.value_or(3);
  if (s < 2) throw std::invalid_argument("dimension must be >= 2");
  const ConeParam cone(config.delta);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto unit = [&] {
    Point p(static_cast<std::size_t>(s));
    double r = 0.0;
    while (r < 1e-12) {
      for (double& c : p) c = gauss(rng);
      r = norm(p);
    }
    return scaled(p, 1.0 / r);
  };
  Sink sink(config.output, out);
  std::ostream& csv = sink.stream();
  csv << "sample,d_euclid,ray_distance,bound\n";
  bool ok = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = unit();
    const Point y = unit();
    const double d = euclidean_distance(x, y);
    const double rd = ray_distance(ray_of(x, cone), ray_of(y, cone));
    const double bound = d / (2.0 * std::numbers::sqrt2);
    ok = ok && rd >= bound - 1e-9;
    csv << i << ',' << format_real(d) << ',' << format_real(rd) << ',' << format_real(bound) << '\n';
  }
  return ok ? kExitOk : kExitCertificate;
}

}  // namespace

RunConfig load_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::vector<std::string> known = {"dimension", "weight", "delta", "max_sphere_index",
                                                 "angular_resolution", "radial_steps", "graph_mode",
                                                 "neighbours", "seed", "output"};
  RunConfig config;
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (j.contains("dimension")) config.dimension = get_key<int>(j, "dimension");
  if (j.contains("weight")) config.weight_kind = parse_weight(get_key<std::string>(j, "weight"));
  if (j.contains("delta")) config.delta = get_key<double>(j, "delta");
  if (j.contains("max_sphere_index")) config.sampler.max_sphere_index = get_key<int>(j, "max_sphere_index");
  if (j.contains("angular_resolution")) {
    config.sampler.angular_resolution = get_key<double>(j, "angular_resolution");
  }
  if (j.contains("radial_steps")) config.sampler.radial_steps = get_key<int>(j, "radial_steps");
  if (j.contains("graph_mode")) config.sampler.graph_mode = parse_graph_mode(get_key<std::string>(j, "graph_mode"));
  if (j.contains("neighbours")) config.sampler.neighbours = get_key<int>(j, "neighbours");
  if (j.contains("seed")) config.seed = get_key<std::uint64_t>(j, "seed");
  if (j.contains("output")) config.output = get_key<std::string>(j, "output");
  return config;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chain metrics and compactifications of R^s", "chainmetric"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, weight, graph_mode, output;
  int dimension = 0, max_sphere = 0, radial_steps = 0, neighbours = 0;
  double delta = 0.0, angular = 0.0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON config file");
  auto* o_dimension = app.add_option("--dimension", dimension, "Dimension s");
  auto* o_weight = app.add_option("--weight", weight, "std_phi or ray_psi");
  auto* o_delta = app.add_option("--delta", delta, "Cone half-angle of the ray system");
  auto* o_max_sphere = app.add_option("--max-sphere", max_sphere, "Largest sphere index of the sampler");
  auto* o_angular = app.add_option("--angular-resolution", angular, "Angular spacing of the sphere nets");
  auto* o_radial = app.add_option("--radial-steps", radial_steps, "Interior radial subdivisions");
  auto* o_graph = app.add_option("--graph-mode", graph_mode, "complete, structured or auto");
  auto* o_neighbours = app.add_option("--neighbours", neighbours, "Nearest neighbours in structured mode");
  auto* o_seed = app.add_option("--seed", seed, "Seed for randomized sampling");
  auto* o_output = app.add_option("--output", output, "Write the main output here instead of stdout");

  std::string x, y, file, weights_file, csv, map, point;
  std::size_t anchor = 0, samples = 10'000;
  double epsilon = 0.0;
  int levels = 4, horizon = 20;
  bool at_infinity = false;

  auto* dist = app.add_subcommand("dist", "Certified bracket and witness chain for d^phi(x, y)");
  dist->add_option("x", x)->required();
  dist->add_option("y", y)->required();

  auto* oracle = app.add_subcommand("oracle", "Exact d^phi matrix of a finite metric space");
  oracle->add_option("file", file)->required();
  oracle->add_option("--anchor", anchor, "Anchor index");
  oracle->add_option("--weights", weights_file, "Weight matrix file (default: zero)");

  auto* net = app.add_subcommand("net", "Build and verify an epsilon-net");
  net->add_option("--epsilon", epsilon)->required();
  net->add_option("--samples", samples);
  net->add_option("--csv", csv, "Write the centers here");

  auto* converge = app.add_subcommand("converge", "Upper bounds under successive sample refinement");
  converge->add_option("x", x)->required();
  converge->add_option("y", y)->required();
  converge->add_option("--levels", levels);

  auto* noneq = app.add_subcommand("noneq", "Gap between the standard and ray compactifications");
  noneq->add_option("--horizon", horizon);
  noneq->add_option("--csv", csv, "Write the per-index table here");

  auto* boundary = app.add_subcommand("boundary", "Evaluate the boundary maps");
  boundary->add_option("--map", map)->required()->check(CLI::IsMember({"h", "k", "h-ray"}));
  boundary->add_option("point", point)->required();
  boundary->add_flag("--infinity", at_infinity, "Treat the input of k as a direction at infinity");

  auto* rays = app.add_subcommand("rays", "Sweep the ray separation bound on random sphere pairs");
  rays->add_option("--samples", samples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(read_file(config_path));
    if (o_dimension->count()) config.dimension = dimension;
    if (o_weight->count()) config.weight_kind = parse_weight(weight);
    if (o_delta->count()) config.delta = delta;
    if (o_max_sphere->count()) config.sampler.max_sphere_index = max_sphere;
    if (o_angular->count()) config.sampler.angular_resolution = angular;
    if (o_radial->count()) config.sampler.radial_steps = radial_steps;
    if (o_graph->count()) config.sampler.graph_mode = parse_graph_mode(graph_mode);
    if (o_neighbours->count()) config.sampler.neighbours = neighbours;
    if (o_seed->count()) config.seed = seed;
    if (o_output->count()) config.output = output;
    ConeParam{config.delta};

    if (dist->parsed()) return cmd_dist(config, x, y, out);
    if (oracle->parsed()) return cmd_oracle(config, file, anchor, weights_file, out);
    if (net->parsed()) return cmd_net(config, epsilon, samples, csv, out);
    if (converge->parsed()) return cmd_converge(config, x, y, levels, out);
    if (noneq->parsed()) return cmd_noneq(config, horizon, csv, out);
    if (boundary->parsed()) return cmd_boundary(config, map, point, at_infinity, out);
    if (rays->parsed()) return cmd_rays(config, samples, out);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCertificate;
  }
  return kExitConfig;
}

}  // namespace chainmetric::cli
