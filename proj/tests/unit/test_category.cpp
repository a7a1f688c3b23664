#include <doctest.h>

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

std::vector<int> iota(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("metric morphism checks") {
  const auto t = lattice_circle(4).triple;
  CHECK(check_metric_morphism(t, t, AlgebraHom::identity(4)).pass());

  const auto t1 = lattice_interval(3, 2.0).triple;
  const auto t2 = two_point_geometry(1.0).triple;
  const auto s = direct_sum(t1, t2);
  CHECK(check_metric_morphism(s, t1, AlgebraHom(5, iota(0, 3))).pass());

  // Endpoints of the path are 2 apart, the target pair only 1.5.
  const auto r = check_metric_morphism(t1, two_point_geometry(1.5).triple, AlgebraHom(3, {0, 2}));
  CHECK_FALSE(r.pass());
  CHECK(r.find("pullback_isometry")->residual == doctest::Approx(0.5 / 1.5).epsilon(1e-6));

  CHECK(code_of([&] { (void)check_metric_morphism(t1, t, AlgebraHom(3, {0, 2})); }) == ErrorCode::algebra_mismatch);
}

TEST_CASE("metric morphism must preserve infinities") {
  const auto tp = two_point_geometry(1.0).triple;
  const auto s = direct_sum(tp, tp);
  // Sending the two points of one summand into different summands of s.
  const auto r = check_metric_morphism(s, tp, AlgebraHom(4, {0, 2}));
  CHECK_FALSE(r.find("infinity_pattern")->pass);
}

TEST_CASE("sf morphism checks") {
  const auto t = lattice_circle(3).triple;
  const auto id = identity_morphism(t);
  CHECK(id.flags == SfFlags{true, true, true});
  CHECK(check_sf_morphism(t, t, id).pass());

  const auto s = direct_sum(lattice_interval(3).triple, t);
  const auto chars = iota(0, 3);
  const auto r = restriction_morphism(s, chars);
  CHECK(r.morphism.flags == SfFlags{true, true, true});
  CHECK(check_sf_morphism(s, r.target, r.morphism).pass());

  auto doubled = r.morphism;
  *doubled.intertwiner *= 2.0;
  const auto bad = check_sf_morphism(s, r.target, doubled);
  CHECK_FALSE(bad.find("coisometry")->pass);

  Morphism missing{MorphismKind::sf, AlgebraHom::identity(3), std::nullopt, {}};
  CHECK(code_of([&] { (void)check_sf_morphism(t, t, missing); }) == ErrorCode::shape_mismatch);
  Morphism wrong{MorphismKind::sf, AlgebraHom::identity(3), identity(2), {}};
  CHECK(code_of([&] { (void)check_sf_morphism(t, t, wrong); }) == ErrorCode::shape_mismatch);
}

TEST_CASE("sf flags demand matching structure") {
  const auto even = lattice_interval(2).triple;
  const std::vector<int> assign{0, 1};
  ComplexMatrix d(2, 2);
  d << 0, 1, 1, 0;
  const SpectralTriple odd(function_algebra(2, 2, assign), d);
  Morphism m{MorphismKind::sf, AlgebraHom::identity(2), identity(2), {true, true, false}};
  const auto r = check_sf_morphism(odd, even, m);
  CHECK_FALSE(r.find("real_structures_present")->pass);
  CHECK_FALSE(r.find("gradings_present")->pass);
  m.flags = {};
  CHECK(check_sf_morphism(odd, even, m).pass());
}

TEST_CASE("composition with identities") {
  const auto s = direct_sum(lattice_interval(3).triple, two_point_geometry(1.0).triple);
  const auto r = restriction_morphism(s, iota(0, 3));
  const auto& m = r.morphism;
  CHECK(compose(identity_morphism(s), m) == m);
  CHECK(compose(m, identity_morphism(r.target)) == m);

  const Morphism mm{MorphismKind::metric, AlgebraHom(5, iota(0, 3)), std::nullopt, {}};
  CHECK(compose(identity_morphism(s, MorphismKind::metric), mm) == mm);
  CHECK(code_of([&] { (void)compose(mm, m); }) == ErrorCode::kind_mismatch);
  CHECK(code_of([&] { (void)compose(m, m); }) == ErrorCode::endpoint_mismatch);
}

TEST_CASE("composites of valid morphisms are valid") {
  const auto a = lattice_interval(3).triple;
  const auto b = two_point_geometry(1.0).triple;
  const auto c = lattice_circle(3).triple;
  const auto abc = direct_sum(std::vector<SpectralTriple>{a, b, c});
  const auto ab = direct_sum(a, b);
  const auto r1 = restriction_morphism(abc, iota(0, 5));
  const auto r2 = restriction_morphism(r1.target, iota(0, 3));
  CHECK(check_unitary_equivalence(r1.target, ab, AlgebraHom::identity(5), identity(ab.rep_dim())).pass());
  const auto comp = compose(abc, r1.target, r2.target, r1.morphism, r2.morphism);
  CHECK(comp.report.pass());
  CHECK(comp.report.find("coisometry")->residual <= 1e-12);

  const Morphism m1{MorphismKind::metric, AlgebraHom(8, iota(0, 5)), std::nullopt, {}};
  const Morphism m2{MorphismKind::metric, AlgebraHom(5, iota(0, 3)), std::nullopt, {}};
  const auto mc = compose(abc, ab, a, m1, m2);
  CHECK(mc.report.pass());
  CHECK(code_of([&] { (void)compose(abc, a, ab, m1, m2); }) == ErrorCode::endpoint_mismatch);
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 4;
    auto hom = [&] {
      std::vector<int> m(k);
      for (auto& x : m) x = static_cast<int>(rng() % k);
      return AlgebraHom(k, m);
    };
    const ComplexMatrix u1 = random_unitary(3, rng), u2 = random_unitary(3, rng), u3 = random_unitary(3, rng);
    const Morphism f{MorphismKind::sf, hom(), u1, {true, false, true}};
    const Morphism g{MorphismKind::sf, hom(), u2, {true, true, true}};
    const Morphism h{MorphismKind::sf, hom(), u3, {false, true, true}};
    const auto left = compose(compose(f, g), h);
    const auto right = compose(f, compose(g, h));
    CHECK(left.phi == right.phi);
    CHECK(left.flags == right.flags);
    CHECK(max_abs(*left.intertwiner - *right.intertwiner) <= 1e-12);
  }
}

TEST_CASE("pullback contraction") {
  const auto t = lattice_circle(4).triple;
  const auto id = check_pullback_contraction(t, t, identity_morphism(t), 8);
  CHECK(id.pass());
  CHECK(std::abs(id.max_violation) <= 1e-9);
  CHECK(id.pure_pairs == 6);
  CHECK(id.mixed_pairs == 8);

  const auto s = direct_sum(lattice_interval(3, 2.0).triple, t);
  const auto r = restriction_morphism(s, iota(0, 3));
  const auto rc = check_pullback_contraction(s, r.target, r.morphism, 8);
  CHECK(rc.pass());
  CHECK(std::abs(rc.max_violation) <= 1e-9);

  const Morphism metric{MorphismKind::metric, AlgebraHom::identity(4), std::nullopt, {}};
  CHECK(code_of([&] { (void)check_pullback_contraction(t, t, metric); }) == ErrorCode::invalid_morphism);
  auto doubled = identity_morphism(t);
  *doubled.intertwiner *= 2.0;
  CHECK(code_of([&] { (void)check_pullback_contraction(t, t, doubled); }) == ErrorCode::invalid_morphism);
}

TEST_CASE("random coisometric morphisms contract distances") {
  std::mt19937_64 rng(55);
  for (int draw = 0; draw < 6; ++draw) {
    const auto c = harness::random_coisometry(rng, draw);
    CAPTURE(c.family);
    REQUIRE(check_sf_morphism(c.source, c.target, c.morphism).pass());
    CHECK(check_pullback_contraction(c.source, c.target, c.morphism, 8, static_cast<std::uint64_t>(draw)).pass());
  }
}

TEST_CASE("equivalence witnesses give morphisms both ways") {
  std::mt19937_64 rng(8);
  const auto t = lattice_circle(4).triple;
  const auto sc = harness::scramble(t, rng);
  const AlgebraHom phi(4, sc.perm);
  const auto [fwd, bwd] = equivalence_morphisms(t, sc.triple, phi, sc.unitary);
  CHECK(check_sf_morphism(t, sc.triple, fwd).pass());
  CHECK(check_sf_morphism(sc.triple, t, bwd).pass());
  const auto loop = compose(fwd, bwd);
  CHECK(loop.phi == AlgebraHom::identity(4));
  CHECK(max_abs(*loop.intertwiner - identity(t.rep_dim())) <= 1e-9);
  CHECK(check_metric_morphism(t, sc.triple, phi).pass());
  CHECK(check_metric_morphism(sc.triple, t, phi.inverse()).pass());
}

TEST_CASE("crv_pullback is contravariant") {
  const auto c = lattice_circle(3).geometry;
  const auto e = two_point_geometry(0.5).geometry;
  const auto ce = disjoint_union(c, e);
  const auto cee = disjoint_union(ce, e);
  const GeometryMap f{c, ce, {0, 1, 2}};
  const GeometryMap g{ce, cee, {0, 1, 2, 3, 4}};
  const auto gf = compose(f, g);
  CHECK(crv_pullback(gf) == compose(crv_pullback(g), crv_pullback(f)));
  CHECK(check_metric_morphism(graph_triple(cee), graph_triple(c), crv_pullback(gf).phi).pass());
}

TEST_CASE("bijective isometries pull back to isomorphisms") {
  const auto c = lattice_circle(5).geometry;
  // Reflection v -> -v is an isometry of the cycle.
  std::vector<int> refl(5);
  for (int v = 0; v < 5; ++v) refl[static_cast<std::size_t>(v)] = (5 - v) % 5;
  const auto reflected = harness::permuted(c, refl);
  const GeometryMap f{c, reflected, refl};
  const auto m = crv_pullback(f);
  const auto inv = Morphism{MorphismKind::metric, m.phi.inverse(), std::nullopt, {}};
  CHECK(compose(m, inv) == identity_morphism(graph_triple(reflected), MorphismKind::metric));
  CHECK(compose(inv, m) == identity_morphism(graph_triple(c), MorphismKind::metric));
  CHECK(check_metric_morphism(graph_triple(reflected), graph_triple(c), m.phi).pass());
  CHECK(check_metric_morphism(graph_triple(c), graph_triple(reflected), inv.phi).pass());
}
