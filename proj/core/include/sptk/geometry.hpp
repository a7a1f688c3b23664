#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sptk/metric.hpp"
#include "sptk/triple.hpp"

namespace sptk {

struct Edge {
  int tail = 0;
  int head = 0;
  double length = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted undirected graph with its shortest-path metric.
class DiscreteGeometry {
 public:
  DiscreteGeometry() = default;
  /// Throws nonpositive_length for lengths <= 0 and invalid_geometry for
  /// out-of-range endpoints or self-loops.
  DiscreteGeometry(std::vector<std::string> labels, std::vector<Edge> edges);
  /// Vertices labelled v1..vk.
  static DiscreteGeometry with_vertices(int k, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// All-pairs shortest paths; +inf across components.
  const std::vector<std::vector<double>>& metric() const { return metric_; }
  double distance(int i, int j) const {
    return metric_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  }
  /// Component of each vertex, numbered by smallest vertex.
  std::vector<int> components() const;

  bool operator==(const DiscreteGeometry& o) const { return labels_ == o.labels_ && edges_ == o.edges_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<double>> metric_;
};

/// Vertex map f: source -> target.
struct GeometryMap {
  DiscreteGeometry source;
  DiscreteGeometry target;
  std::vector<int> vertex_map;

  static GeometryMap identity(const DiscreteGeometry& g);
};

/// second ∘ first. Throws endpoint_mismatch unless first.target == second.source.
GeometryMap compose(const GeometryMap& first, const GeometryMap& second);

/// Vertices of g1 first, then g2.
DiscreteGeometry disjoint_union(const DiscreteGeometry& g1, const DiscreteGeometry& g2);

struct GeometricTriple {
  DiscreteGeometry geometry;
  SpectralTriple triple;
};

/// Half-edge Dirac triple: every edge e = (u, v, l) contributes C^2 spanned by
/// a half at u and a half at v with D_e = [[0, 1/l], [1/l, 0]] and grading
/// diag(1, -1); an isolated vertex contributes C with D = 0 and grading 1.
/// Even, J = complex conjugation.
SpectralTriple graph_triple(const DiscreteGeometry& g);

/// Throws nonpositive_length.
GeometricTriple two_point_geometry(double length);
/// Cycle Z_N with edge length 2 pi r / N. Throws too_few_points for N < 3.
GeometricTriple lattice_circle(int n, double radius = 1.0);
/// Path with N vertices and edge length L / (N - 1). Throws too_few_points for N < 2.
GeometricTriple lattice_interval(int n, double length = 1.0);

std::vector<std::vector<double>> geodesic_matrix(const DiscreteGeometry& g);

struct ComparisonReport {
  std::vector<std::vector<double>> spectral;
  std::vector<std::vector<double>> geodesic;
  std::vector<std::vector<double>> ratio;  // spectral / geodesic; 1 on the diagonal and on matching infinities
  double max_relative_deviation = 0.0;
  double mean_relative_deviation = 0.0;
  bool infinity_pattern_agrees = false;
  double tolerance = 1e-6;

  bool pass() const { return infinity_pattern_agrees && max_relative_deviation <= tolerance; }
};

/// Throws shape_mismatch if the triple has a different number of characters.
ComparisonReport compare_metrics(const DiscreteGeometry& g, const SpectralTriple& t,
                                 const SolverOptions& options = {}, double tolerance = 1e-6);

/// A triple of KO-dimension n (0..7) on C^4 over C^2; D is drawn from the seed.
SpectralTriple ko_example(int n, std::uint64_t seed = 0);

}  // namespace sptk
