#include <doctest.h>

#include <random>

#include "harness.hpp"
#include "sptk/errors.hpp"
#include "sptk/io.hpp"

using namespace sptk;

namespace {

bool parse_fails(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::parse_error;
  }
  return false;
}

}  // namespace

TEST_CASE("numbers encode infinities as strings") {
  CHECK(io::number(INFINITY) == "inf");
  CHECK(io::number(-INFINITY) == "-inf");
  CHECK(io::number(1.5) == 1.5);
  CHECK(std::isinf(io::number_from_json("inf")));
  CHECK(io::number_from_json(2) == 2.0);
  CHECK(parse_fails([] { (void)io::number_from_json("huge"); }));
}

TEST_CASE("matrices round-trip") {
  std::mt19937_64 rng(1);
  const ComplexMatrix u = random_unitary(3, rng);
  CHECK(io::matrix_from_json(io::to_json(u)) == u);
  ComplexMatrix r(2, 3);
  r << 1, 2, 3, 4, 5, Complex(0, 6);
  const auto j = io::to_json(r);
  CHECK(j.contains("rows"));
  CHECK(io::matrix_from_json(j) == r);
  CHECK(io::matrix_from_json(io::parse(R"({"dim": 2, "entries": [[1, 0], [0, [0, 1]]]})"))(1, 1) == Complex(0, 1));
  CHECK(parse_fails([] { (void)io::matrix_from_json(io::parse(R"({"dim": 2, "entries": [[1, 0]]})")); }));
}

TEST_CASE("triples round-trip") {
  for (const auto& [name, t] : harness::builtin_triples()) {
    CAPTURE(name);
    const auto back = io::triple_from_json(io::parse(io::dump(io::to_json(t))));
    CHECK(back.num_characters() == t.num_characters());
    CHECK(back.labels() == t.labels());
    CHECK(back.parity() == t.parity());
    CHECK(max_abs(back.dirac() - t.dirac()) == 0.0);
    CHECK(back.real_structure().has_value() == t.real_structure().has_value());
    for (int i = 0; i < t.num_characters(); ++i) {
      CHECK(max_abs(back.algebra().projection(i) - t.algebra().projection(i)) == 0.0);
    }
  }
  io::Json wrapped;
  wrapped["triple"] = io::to_json(two_point_geometry(1.0).triple);
  CHECK(io::triple_from_json(wrapped).num_characters() == 2);
}

TEST_CASE("geometry, morphism, state and chain round-trip") {
  const auto g = lattice_circle(5).geometry;
  CHECK(io::geometry_from_json(io::to_json(g)) == g);
  const auto g2 = io::geometry_from_json(io::parse(R"({"vertices": 3, "edges": [[1, 2, 0.5], [2, 3, 1]]})"));
  CHECK(g2.distance(0, 2) == 1.5);
  CHECK(parse_fails([] { (void)io::geometry_from_json(io::parse(R"({"vertices": 3, "edges": [[1, 2]]})")); }));

  const auto t = lattice_circle(3).triple;
  const auto m = identity_morphism(t);
  CHECK(io::morphism_from_json(io::to_json(m), 3) == m);
  const Morphism metric{MorphismKind::metric, AlgebraHom(4, {3, 0}), std::nullopt, {}};
  CHECK(io::morphism_from_json(io::to_json(metric), 4) == metric);
  CHECK(io::to_json(metric)["character_map"] == io::parse("[4, 1]"));

  const auto s = State::from_weights({0.25, 0.75});
  CHECK(io::state_from_json(io::to_json(s)) == s);

  HochschildChain c;
  c.degree = 1;
  c.terms.push_back({AlgebraElement::unit(2), AlgebraElement::basis(2, 1)});
  const auto back = io::chain_from_json(io::to_json(c));
  CHECK(back.degree == 1);
  CHECK(chain_coefficients(back) == chain_coefficients(c));
}

TEST_CASE("distance values serialize infinity") {
  const auto j = io::to_json(DistanceValue::infinity());
  CHECK(j["value"] == "inf");
  const auto tp = direct_sum(two_point_geometry(1.0).triple, two_point_geometry(1.0).triple);
  const auto mj = io::to_json(distance_matrix(tp));
  CHECK(mj["matrix"][0][2] == "inf");
  CHECK(mj["labels"].size() == 4);
}

TEST_CASE("malformed JSON is a parse error") {
  CHECK(parse_fails([] { (void)io::parse("{not json"); }));
  CHECK(parse_fails([] { (void)io::triple_from_json(io::parse("{}")); }));
  CHECK(parse_fails([] { (void)io::triple_from_json(io::parse("[1, 2]")); }));
}

TEST_CASE("reports carry a pass flag") {
  const auto r = validate_triple(two_point_geometry(1.0).triple);
  const auto j = io::to_json(r);
  CHECK(j["pass"] == true);
  CHECK(j["checks"][0].contains("residual"));
}
