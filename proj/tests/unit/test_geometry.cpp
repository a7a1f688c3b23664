#include <doctest.h>

#include <numbers>
#include <random>

#include "harness.hpp"
#include "sptk/category.hpp"
#include "sptk/errors.hpp"
#include "sptk/geometry.hpp"

using namespace sptk;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_argument;
}

std::vector<std::vector<double>> floyd_warshall(const DiscreteGeometry& g) {
  const auto k = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<double>> d(k, std::vector<double>(k, INFINITY));
  for (std::size_t i = 0; i < k; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges()) {
    auto& x = d[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)];
    x = std::min(x, e.length);
    d[static_cast<std::size_t>(e.head)][static_cast<std::size_t>(e.tail)] = x;
  }
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  return d;
}

DiscreteGeometry scaled(const DiscreteGeometry& g, double s) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.length *= s;
  return DiscreteGeometry(g.labels(), std::move(edges));
}

}  // namespace

TEST_CASE("geodesic_matrix closed forms") {
  const auto tp = two_point_geometry(0.5).geometry;
  CHECK(geodesic_matrix(tp) == std::vector<std::vector<double>>{{0.0, 0.5}, {0.5, 0.0}});

  const auto path = DiscreteGeometry::with_vertices(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  CHECK(path.distance(0, 2) == 3.0);

  const auto c4 = lattice_circle(4).geometry;
  const double eps = std::numbers::pi / 2.0;
  CHECK(c4.distance(0, 2) == doctest::Approx(2.0 * eps));
  CHECK(c4.distance(1, 3) == doctest::Approx(2.0 * eps));
}

TEST_CASE("geodesic_matrix matches Floyd-Warshall") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = harness::random_graph(rng, 2 + trial % 6, 0.4);
    const auto fw = floyd_warshall(g);
    const auto dj = geodesic_matrix(g);
    for (std::size_t i = 0; i < fw.size(); ++i) {
      for (std::size_t j = 0; j < fw.size(); ++j) {
        if (std::isinf(fw[i][j])) {
          CHECK(std::isinf(dj[i][j]));
        } else {
          CHECK(std::abs(fw[i][j] - dj[i][j]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("DiscreteGeometry validates edges") {
  CHECK(code_of([] { (void)DiscreteGeometry::with_vertices(2, {{0, 1, 0.0}}); }) == ErrorCode::nonpositive_length);
  CHECK(code_of([] { (void)DiscreteGeometry::with_vertices(2, {{0, 1, -1.0}}); }) == ErrorCode::nonpositive_length);
  CHECK(code_of([] { (void)DiscreteGeometry::with_vertices(2, {{0, 2, 1.0}}); }) == ErrorCode::invalid_geometry);
  CHECK(code_of([] { (void)DiscreteGeometry::with_vertices(2, {{1, 1, 1.0}}); }) == ErrorCode::invalid_geometry);
}

TEST_CASE("builders") {
  const auto tp = two_point_geometry(0.5);
  CHECK(std::abs(tp.triple.dirac()(0, 1) - Complex(2.0)) <= 1e-15);
  CHECK(connes_distance(tp.triple, State::pure(2, 0), State::pure(2, 1)).value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(connes_distance(two_point_geometry(1.0).triple, State::pure(2, 0), State::pure(2, 1)).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(code_of([] { (void)two_point_geometry(0.0); }) == ErrorCode::nonpositive_length);
  CHECK(code_of([] { (void)lattice_circle(2); }) == ErrorCode::too_few_points);
  CHECK(code_of([] { (void)lattice_interval(1); }) == ErrorCode::too_few_points);

  const auto i2 = lattice_interval(2, 1.0).triple;
  CHECK(check_unitary_equivalence(i2, two_point_geometry(1.0).triple, AlgebraHom::identity(2), identity(2)).pass());
}

TEST_CASE("lattice circle symmetry and oracle") {
  const auto m3 = distance_matrix(lattice_circle(3).triple).values();
  CHECK(std::abs(m3[0][1] - m3[1][2]) <= 1e-8);
  CHECK(std::abs(m3[0][1] - m3[0][2]) <= 1e-8);

  const auto t4 = lattice_circle(4).triple;
  const auto a = State::pure(4, 0), b = State::pure(4, 1);
  const auto d = connes_distance(t4, a, b);
  // pi/2 falls between points of the default grid, so the grid bound dominates 1e-3.
  const double bf = brute_force_distance(t4, a, b);
  CHECK(bf <= d.value + 1e-9);
  CHECK(d.value - bf <= std::max(1e-3, oracle_gap_bound(t4, a, b, d)));

  const double d8 = distance_matrix(lattice_circle(8).triple)(0, 1).value;
  const double d16 = distance_matrix(lattice_circle(16).triple)(0, 1).value;
  const double ratio = (d8 / (2 * std::numbers::pi / 8)) / (d16 / (2 * std::numbers::pi / 16));
  CHECK(std::abs(ratio - 1.0) <= 0.1);
}

TEST_CASE("lattice interval") {
  const auto t2 = lattice_interval(2, 1.0).triple;
  CHECK(connes_distance(t2, State::pure(2, 0), State::pure(2, 1)).value == doctest::Approx(1.0).epsilon(1e-9));

  const auto t3 = lattice_interval(3, 2.0).triple;
  const auto m = distance_matrix(t3).values();
  CHECK(std::abs(m[0][1] - m[1][2]) <= 1e-8);
  CHECK(m[0][2] <= m[0][1] + m[1][2] + 1e-9);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      CHECK(std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                     brute_force_distance(t3, State::pure(3, i), State::pure(3, j))) <= 1e-3);
    }
  }
}

TEST_CASE("graph_triple on small graphs") {
  const auto two_edges = DiscreteGeometry::with_vertices(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const auto t = graph_triple(two_edges);
  CHECK(decompose(t).components.size() == 2);
  const auto m = distance_matrix(t);
  CHECK(m(0, 2).infinite);
  CHECK(m(1, 3).infinite);

  const auto tri = DiscreteGeometry::with_vertices(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
  const auto mt = distance_matrix(graph_triple(tri)).values();
  CHECK(std::abs(mt[0][1] - mt[1][2]) <= 1e-8);
  CHECK(std::abs(mt[0][1] - mt[0][2]) <= 1e-8);

  const auto iso = DiscreteGeometry::with_vertices(3, {{0, 1, 2.0}});
  const auto ti = graph_triple(iso);
  CHECK(validate_triple(ti).pass());
  CHECK(ti.rep_dim() == 3);
  CHECK(distance_matrix(ti)(0, 2).infinite);
}

TEST_CASE("random trees: metric and scale covariant") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = harness::random_connected_graph(rng, 5, 0.0);
    const auto m1 = distance_matrix(graph_triple(g)).values();
    auto m2 = distance_matrix(graph_triple(scaled(g, 2.0))).values();
    for (auto& row : m2) {
      for (double& x : row) x /= 2.0;
    }
    CHECK(harness::matrix_deviation(m2, m1) <= 1e-6);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t l = 0; l < 5; ++l) CHECK(m1[i][l] <= m1[i][j] + m1[j][l] + 1e-6);
      }
    }
  }
}

TEST_CASE("compare_metrics") {
  const auto tp = two_point_geometry(0.5);
  const auto r = compare_metrics(tp.geometry, tp.triple);
  CHECK(r.pass());
  CHECK(std::abs(r.ratio[0][1] - 1.0) <= 1e-6);

  const auto g = DiscreteGeometry::with_vertices(4, {{0, 1, 1.0}, {2, 3, 0.5}});
  const auto rd = compare_metrics(g, graph_triple(g));
  CHECK(rd.infinity_pattern_agrees);
  CHECK(rd.pass());

  CHECK(code_of([&] { (void)compare_metrics(g, tp.triple); }) == ErrorCode::shape_mismatch);

  // A triple of a different graph on the same vertices disagrees.
  const auto other = DiscreteGeometry::with_vertices(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 0.5}});
  CHECK_FALSE(compare_metrics(g, graph_triple(other)).infinity_pattern_agrees);
}

TEST_CASE("compare_metrics trend on lattice circles") {
  for (int n : {8, 16, 32}) {
    const auto c = lattice_circle(n);
    const auto r = compare_metrics(c.geometry, c.triple);
    MESSAGE("circle N=" << n << " max relative deviation " << r.max_relative_deviation << " mean "
                        << r.mean_relative_deviation);
    CHECK(std::isfinite(r.max_relative_deviation));
    CHECK(r.infinity_pattern_agrees);
  }
}

TEST_CASE("builder outputs validate and match the component pattern") {
  for (const auto& [name, t] : harness::builtin_triples()) {
    CAPTURE(name);
    CHECK(validate_triple(t).pass());
  }
  std::vector<DiscreteGeometry> gs{two_point_geometry(1.0).geometry, lattice_interval(4).geometry,
                                   lattice_circle(5).geometry};
  gs.push_back(disjoint_union(gs[0], gs[2]));
  for (const auto& g : gs) {
    const auto m = distance_matrix(graph_triple(g)).values();
    const auto geo = geodesic_matrix(g);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) CHECK(std::isinf(m[i][j]) == std::isinf(geo[i][j]));
    }
  }
}

TEST_CASE("rotation invariance on lattice circles") {
  const int n = 6;
  const auto t = lattice_circle(n).triple;
  // Shift v -> v + 1 moves edge e to e + 1, keeping halves in place.
  std::vector<int> dims(2 * n);
  for (int e = 0; e < n; ++e) {
    for (int s = 0; s < 2; ++s) dims[static_cast<std::size_t>(2 * e + s)] = 2 * ((e + 1) % n) + s;
  }
  const ComplexMatrix w = permutation_matrix(dims);
  std::vector<int> back(n);
  for (int j = 0; j < n; ++j) back[static_cast<std::size_t>(j)] = (j + n - 1) % n;
  CHECK(check_unitary_equivalence(t, t, AlgebraHom(n, back), w).pass());

  const auto m = distance_matrix(t).values();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                     m[0][static_cast<std::size_t>((j - i + n) % n)]) <= 1e-6);
    }
  }
}

TEST_CASE("scale covariance of both metrics") {
  const auto g = lattice_circle(5).geometry;
  const double s = 1.7;
  const auto gs = scaled(g, s);
  auto geo = geodesic_matrix(g), geo_s = geodesic_matrix(gs);
  auto sp = distance_matrix(graph_triple(g)).values(), sp_s = distance_matrix(graph_triple(gs)).values();
  for (auto* m : {&geo, &sp}) {
    for (auto& row : *m) {
      for (double& x : row) x *= s;
    }
  }
  CHECK(harness::matrix_deviation(geo_s, geo) <= 1e-6);
  CHECK(harness::matrix_deviation(sp_s, sp) <= 1e-6);
}

TEST_CASE("GeometryMap composition") {
  const auto a = lattice_interval(2).geometry;
  const auto b = disjoint_union(a, lattice_circle(3).geometry);
  const GeometryMap f{a, b, {0, 1}};
  const auto id = GeometryMap::identity(b);
  const auto h = compose(f, id);
  CHECK(h.vertex_map == f.vertex_map);
  CHECK(code_of([&] { (void)compose(id, f); }) == ErrorCode::endpoint_mismatch);
}

TEST_CASE("crv_pullback of a component inclusion is a valid metric morphism") {
  const auto c = lattice_circle(4).geometry;
  const auto u = disjoint_union(c, lattice_circle(3).geometry);
  const GeometryMap inc{c, u, {0, 1, 2, 3}};
  const auto m = crv_pullback(inc);
  CHECK(m.kind == MorphismKind::metric);
  CHECK(check_metric_morphism(graph_triple(u), graph_triple(c), m.phi).pass());

  const auto id = crv_pullback(GeometryMap::identity(c));
  CHECK(id == identity_morphism(graph_triple(c), MorphismKind::metric));
}

TEST_CASE("crv_pullback rejections") {
  const auto path = lattice_interval(3, 2.0).geometry;
  const auto circle = lattice_circle(4).geometry;
  CHECK(code_of([&] { (void)crv_pullback({path, path, {0, 0, 1}}); }) == ErrorCode::invalid_morphism);
  CHECK(code_of([&] { (void)crv_pullback({path, path, {0, 1, 5}}); }) == ErrorCode::invalid_morphism);
  CHECK(code_of([&] { (void)crv_pullback({path, path, {1, 0, 2}}); }) == ErrorCode::not_isometric);
  const auto edge = two_point_geometry(std::numbers::pi / 2.0).geometry;
  CHECK(code_of([&] { (void)crv_pullback({edge, circle, {0, 1}}); }) == ErrorCode::not_onto_components);
}

TEST_CASE("ko_example validates") {
  for (int n = 0; n < 8; ++n) {
    CAPTURE(n);
    CHECK(validate_triple(ko_example(n, 42)).pass());
  }
  CHECK(code_of([] { (void)ko_example(8); }) == ErrorCode::invalid_argument);
}
