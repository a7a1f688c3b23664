#include "sptk/geometry.hpp"

#include <cmath>
#include <numbers>
#include <queue>

#include "sptk/errors.hpp"

namespace sptk {

namespace {

std::vector<double> dijkstra(int k, const std::vector<std::vector<std::pair<int, double>>>& adj, int src) {
  std::vector<double> dist(static_cast<std::size_t>(k), INFINITY);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(src)] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
      if (d + w < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = d + w;
        heap.emplace(d + w, v);
      }
    }
  }
  return dist;
}

std::vector<std::string> numbered(const std::string& prefix, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

DiscreteGeometry::DiscreteGeometry(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const int k = num_vertices();
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(k));
  for (const auto& e : edges_) {
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorCode::nonpositive_length, "edge lengths must be positive and finite");
    }
    if (e.tail < 0 || e.tail >= k || e.head < 0 || e.head >= k) {
      throw Error(ErrorCode::invalid_geometry, "edge endpoint out of range");
    }
    if (e.tail == e.head) throw Error(ErrorCode::invalid_geometry, "self-loops are not allowed");
    adj[static_cast<std::size_t>(e.tail)].emplace_back(e.head, e.length);
    adj[static_cast<std::size_t>(e.head)].emplace_back(e.tail, e.length);
  }
  for (int i = 0; i < k; ++i) metric_.push_back(dijkstra(k, adj, i));
}

DiscreteGeometry DiscreteGeometry::with_vertices(int k, std::vector<Edge> edges) {
  return DiscreteGeometry(numbered("v", k), std::move(edges));
}

std::vector<int> DiscreteGeometry::components() const {
  const int k = num_vertices();
  std::vector<int> out(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int i = 0; i < k; ++i) {
    if (out[static_cast<std::size_t>(i)] >= 0) continue;
    for (int j = i; j < k; ++j) {
      if (std::isfinite(distance(i, j))) out[static_cast<std::size_t>(j)] = next;
    }
    ++next;
  }
  return out;
}

GeometryMap GeometryMap::identity(const DiscreteGeometry& g) {
  std::vector<int> m(static_cast<std::size_t>(g.num_vertices()));
  for (int i = 0; i < g.num_vertices(); ++i) m[static_cast<std::size_t>(i)] = i;
  return {g, g, std::move(m)};
}

GeometryMap compose(const GeometryMap& first, const GeometryMap& second) {
  if (!(first.target == second.source)) {
    throw Error(ErrorCode::endpoint_mismatch, "geometry maps are not composable");
  }
  std::vector<int> m;
  for (int v : first.vertex_map) m.push_back(second.vertex_map.at(static_cast<std::size_t>(v)));
  return {first.source, second.target, std::move(m)};
}

DiscreteGeometry disjoint_union(const DiscreteGeometry& g1, const DiscreteGeometry& g2) {
  auto labels = g1.labels();
  labels.insert(labels.end(), g2.labels().begin(), g2.labels().end());
  auto edges = g1.edges();
  for (auto e : g2.edges()) {
    e.tail += g1.num_vertices();
    e.head += g1.num_vertices();
    edges.push_back(e);
  }
  return DiscreteGeometry(std::move(labels), std::move(edges));
}

SpectralTriple graph_triple(const DiscreteGeometry& g) {
  const int k = g.num_vertices();
  std::vector<char> isolated(static_cast<std::size_t>(k), 1);
  for (const auto& e : g.edges()) isolated[static_cast<std::size_t>(e.tail)] = isolated[static_cast<std::size_t>(e.head)] = 0;

  std::vector<int> owner;
  std::vector<double> sign;
  for (const auto& e : g.edges()) {
    owner.push_back(e.tail), sign.push_back(1.0);
    owner.push_back(e.head), sign.push_back(-1.0);
  }
  for (int v = 0; v < k; ++v) {
    if (isolated[static_cast<std::size_t>(v)]) owner.push_back(v), sign.push_back(1.0);
  }
  const auto n = static_cast<Eigen::Index>(owner.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n), gamma = ComplexMatrix::Zero(n, n);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto a = static_cast<Eigen::Index>(2 * e);
    d(a, a + 1) = d(a + 1, a) = 1.0 / g.edges()[e].length;
  }
  for (Eigen::Index i = 0; i < n; ++i) gamma(i, i) = sign[static_cast<std::size_t>(i)];
  auto base = function_algebra(k, static_cast<int>(n), owner);
  FiniteCommutativeAlgebra algebra(base.projections(), g.labels());
  return SpectralTriple(std::move(algebra), std::move(d), std::move(gamma),
                        AntiunitaryOperator(identity(n)), Parity::even);
}

GeometricTriple two_point_geometry(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::nonpositive_length, "length must be positive");
  }
  DiscreteGeometry g = DiscreteGeometry::with_vertices(2, {{0, 1, length}});
  auto t = graph_triple(g);
  return {std::move(g), std::move(t)};
}

GeometricTriple lattice_circle(int n, double radius) {
  if (n < 3) throw Error(ErrorCode::too_few_points, "a lattice circle needs at least 3 points");
  if (!(radius > 0.0)) throw Error(ErrorCode::nonpositive_length, "radius must be positive");
  const double eps = 2.0 * std::numbers::pi * radius / n;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, eps});
  DiscreteGeometry g = DiscreteGeometry::with_vertices(n, std::move(edges));
  auto t = graph_triple(g);
  return {std::move(g), std::move(t)};
}

GeometricTriple lattice_interval(int n, double length) {
  if (n < 2) throw Error(ErrorCode::too_few_points, "a lattice interval needs at least 2 points");
  if (!(length > 0.0)) throw Error(ErrorCode::nonpositive_length, "length must be positive");
  const double eps = length / (n - 1);
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, eps});
  DiscreteGeometry g = DiscreteGeometry::with_vertices(n, std::move(edges));
  auto t = graph_triple(g);
  return {std::move(g), std::move(t)};
}

std::vector<std::vector<double>> geodesic_matrix(const DiscreteGeometry& g) { return g.metric(); }

ComparisonReport compare_metrics(const DiscreteGeometry& g, const SpectralTriple& t,
                                 const SolverOptions& options, double tolerance) {
  const int k = g.num_vertices();
  if (t.num_characters() != k) {
    throw Error(ErrorCode::shape_mismatch, "triple and geometry have different numbers of points");
  }
  ComparisonReport rep;
  rep.tolerance = tolerance;
  rep.spectral = distance_matrix(t, options).values();
  rep.geodesic = geodesic_matrix(g);
  rep.ratio.assign(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 1.0));
  rep.infinity_pattern_agrees = true;
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const double s = rep.spectral[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double d = rep.geodesic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto& ratio = rep.ratio[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (std::isinf(s) || std::isinf(d)) {
        if (std::isinf(s) != std::isinf(d)) {
          rep.infinity_pattern_agrees = false;
          ratio = std::isinf(s) ? INFINITY : 0.0;
        }
        continue;
      }
      ratio = s / d;
      const double dev = std::abs(ratio - 1.0);
      rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
      sum += dev;
      ++count;
    }
  }
  rep.mean_relative_deviation = count > 0 ? sum / count : 0.0;
  return rep;
}

SpectralTriple ko_example(int n, std::uint64_t seed) {
  if (n < 0 || n > 7) throw Error(ErrorCode::invalid_argument, "KO-dimension must be in 0..7");
  ComplexMatrix sx(2, 2), isy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  isy << 0.0, 1.0, -1.0, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const ComplexMatrix id2 = identity(2);
  auto kron = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
  };

  // Columns of the sign table: unitary part of J, grading, sign of J D J^-1.
  ComplexMatrix u;
  std::optional<ComplexMatrix> gamma;
  double jd = 1.0;
  switch (n) {
    case 0: u = identity(4), gamma = kron(sz, id2); break;
    case 1: u = identity(4), jd = -1.0; break;
    case 2: u = kron(isy, id2), gamma = kron(sz, id2); break;
    case 3: u = kron(isy, id2); break;
    case 4: u = kron(isy, id2), gamma = kron(id2, sz); break;
    case 5: u = kron(isy, id2), jd = -1.0; break;
    case 6: u = kron(sx, id2), gamma = kron(sz, id2); break;
    default: u = identity(4); break;
  }
  std::mt19937_64 rng(seed + 0x5eedULL * static_cast<std::uint64_t>(n + 1));
  ComplexMatrix d = random_hermitian(4, rng);
  if (gamma) d = (d - *gamma * d * *gamma) / 2.0;
  d = (d + jd * u * d.conjugate() * u.adjoint()) / 2.0;
  d = (d + d.adjoint()).eval() / 2.0;

  const std::vector<int> assignment{0, 0, 1, 1};
  auto base = function_algebra(2, 4, assignment);
  FiniteCommutativeAlgebra algebra(base.projections(), {"p1", "p2"});
  const Parity parity = gamma ? Parity::even : Parity::odd;
  return SpectralTriple(std::move(algebra), std::move(d), std::move(gamma), AntiunitaryOperator(std::move(u)), parity);
}

}  // namespace sptk
