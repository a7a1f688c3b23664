#include "sptk/io.hpp"

#include <algorithm>
#include <cmath>

#include "sptk/errors.hpp"

namespace sptk::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

Complex scalar_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail("scalar must be a number or [re, im]");
}

Json scalar_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::vector<int> indices_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    const int i = as_int(v, what);
    if (i < 1) fail(std::string(what) + " entries are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

Json indices_to_json(const std::vector<int>& v) {
  Json out = Json::array();
  for (int i : v) out.push_back(i + 1);
  return out;
}

AlgebraElement element_from_json(const Json& j) {
  if (!j.is_array()) fail("algebra element must be an array of values");
  AlgebraElement e{ComplexVector(static_cast<Eigen::Index>(j.size()))};
  for (std::size_t i = 0; i < j.size(); ++i) e.values(static_cast<Eigen::Index>(i)) = scalar_from_json(j[i]);
  return e;
}

Json element_to_json(const AlgebraElement& e) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const Complex z = e.values(i);
    out.push_back(z.imag() == 0.0 ? Json(z.real()) : scalar_to_json(z));
  }
  return out;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(e.what());
  }
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  fail("expected a number or \"inf\"");
}

Json to_json(const ComplexMatrix& m) {
  Json out;
  if (m.rows() == m.cols()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  return guarded([&] {
    Eigen::Index rows = 0, cols = 0;
    if (j.is_object() && j.contains("dim")) {
      rows = cols = as_int(j.at("dim"), "dim");
    } else {
      rows = as_int(field(j, "rows"), "rows");
      cols = as_int(field(j, "cols"), "cols");
    }
    if (rows < 0 || cols < 0) fail("matrix dimensions must be nonnegative");
    const auto& e = field(j, "entries");
    if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != rows) fail("entries must have one array per row");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = e[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("matrix row has the wrong length");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  });
}

Json to_json(const FiniteCommutativeAlgebra& a) {
  Json out;
  out["k"] = a.num_characters();
  out["rep_dim"] = a.rep_dim();
  Json ps = Json::array();
  for (const auto& p : a.projections()) ps.push_back(to_json(p));
  out["projections"] = std::move(ps);
  out["labels"] = a.labels();
  return out;
}

FiniteCommutativeAlgebra algebra_from_json(const Json& j) {
  return guarded([&] {
    if (j.is_object() && j.contains("assignment") && !j.contains("projections")) {
      // Coordinate shorthand: basis direction d belongs to character assignment[d] (1-based).
      auto assign = indices_from_json(j.at("assignment"), "assignment");
      if (assign.empty()) fail("assignment must be nonempty");
      const int k = j.contains("k") ? as_int(j.at("k"), "k")
                                    : 1 + *std::max_element(assign.begin(), assign.end());
      auto a = function_algebra(k, static_cast<int>(assign.size()), assign);
      std::vector<std::string> labels;
      if (j.contains("labels") && !j.at("labels").is_null()) labels = j.at("labels").get<std::vector<std::string>>();
      return FiniteCommutativeAlgebra(a.projections(), std::move(labels));
    }
    const auto& ps = field(j, "projections");
    if (!ps.is_array() || ps.empty()) fail("projections must be a nonempty array");
    std::vector<ComplexMatrix> projections;
    for (const auto& p : ps) projections.push_back(matrix_from_json(p));
    if (j.contains("k") && as_int(j.at("k"), "k") != static_cast<int>(projections.size())) {
      fail("k does not match the number of projections");
    }
    for (const auto& p : projections) {
      if (p.rows() != p.cols() || p.rows() != projections[0].rows()) fail("projections must be square of equal size");
    }
    if (j.contains("rep_dim") && as_int(j.at("rep_dim"), "rep_dim") != projections[0].rows()) {
      fail("rep_dim does not match the projections");
    }
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null()) {
      labels = j.at("labels").get<std::vector<std::string>>();
      if (labels.size() != projections.size()) fail("labels must have one entry per character");
    }
    return FiniteCommutativeAlgebra(std::move(projections), std::move(labels));
  });
}

Json to_json(const State& s) { return Json{{"weights", s.weights()}}; }

State state_from_json(const Json& j) {
  return guarded([&] { return State::from_weights(field(j, "weights").get<std::vector<double>>()); });
}

Json to_json(const AlgebraHom& phi) { return Json{{"character_map", indices_to_json(phi.character_map())}}; }

AlgebraHom hom_from_json(const Json& j, int source_characters) {
  return guarded([&] {
    auto map = indices_from_json(field(j, "character_map"), "character_map");
    return AlgebraHom(source_characters, std::move(map));
  });
}

Json to_json(const SpectralTriple& t) {
  Json out;
  out["algebra"] = to_json(t.algebra());
  out["dirac"] = to_json(t.dirac());
  out["grading"] = t.grading() ? to_json(*t.grading()) : Json(nullptr);
  out["real_unitary_part"] = t.real_structure() ? to_json(t.real_structure()->unitary_part()) : Json(nullptr);
  out["parity"] = t.is_even() ? "even" : "odd";
  return out;
}

SpectralTriple triple_from_json(const Json& j) {
  if (j.is_object() && j.contains("triple")) return triple_from_json(j.at("triple"));
  return guarded([&] {
    auto algebra = algebra_from_json(field(j, "algebra"));
    auto dirac = matrix_from_json(field(j, "dirac"));
    std::optional<ComplexMatrix> grading;
    if (j.contains("grading") && !j.at("grading").is_null()) grading = matrix_from_json(j.at("grading"));
    std::optional<AntiunitaryOperator> real;
    if (j.contains("real_unitary_part") && !j.at("real_unitary_part").is_null()) {
      real = AntiunitaryOperator(matrix_from_json(j.at("real_unitary_part")));
    }
    Parity parity = grading ? Parity::even : Parity::odd;
    if (j.contains("parity")) {
      const auto p = j.at("parity").get<std::string>();
      if (p == "even") {
        parity = Parity::even;
      } else if (p == "odd") {
        parity = Parity::odd;
      } else {
        fail("parity must be \"even\" or \"odd\"");
      }
    }
    return SpectralTriple(std::move(algebra), std::move(dirac), std::move(grading), std::move(real), parity);
  });
}

Json to_json(const HochschildChain& c) {
  Json terms = Json::array();
  for (const auto& term : c.terms) {
    Json t = Json::array();
    for (const auto& e : term) t.push_back(element_to_json(e));
    terms.push_back(std::move(t));
  }
  return Json{{"degree", c.degree}, {"terms", std::move(terms)}};
}

HochschildChain chain_from_json(const Json& j) {
  return guarded([&] {
    HochschildChain c;
    c.degree = as_int(field(j, "degree"), "degree");
    if (c.degree < 0) fail("degree must be nonnegative");
    const auto& terms = field(j, "terms");
    if (!terms.is_array()) fail("terms must be an array");
    for (const auto& t : terms) {
      if (!t.is_array() || static_cast<int>(t.size()) != c.degree + 1) fail("each term needs degree + 1 elements");
      std::vector<AlgebraElement> term;
      for (const auto& e : t) term.push_back(element_from_json(e));
      c.terms.push_back(std::move(term));
    }
    return c;
  });
}

Json to_json(const DiscreteGeometry& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.tail + 1, e.head + 1, e.length}));
  return Json{{"vertices", g.labels()}, {"edges", std::move(edges)}};
}

DiscreteGeometry geometry_from_json(const Json& j) {
  if (j.is_object() && j.contains("geometry")) return geometry_from_json(j.at("geometry"));
  return guarded([&] {
    const auto& v = field(j, "vertices");
    std::vector<std::string> labels;
    if (v.is_number_integer()) {
      for (int i = 1; i <= v.get<int>(); ++i) labels.push_back("v" + std::to_string(i));
    } else {
      labels = v.get<std::vector<std::string>>();
    }
    std::vector<Edge> edges;
    const auto& es = field(j, "edges");
    if (!es.is_array()) fail("edges must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() != 3) fail("each edge is [i, j, length]");
      const int a = as_int(e[0], "edge endpoint"), b = as_int(e[1], "edge endpoint");
      if (!e[2].is_number()) fail("edge length must be a number");
      edges.push_back({a - 1, b - 1, e[2].get<double>()});
    }
    return DiscreteGeometry(std::move(labels), std::move(edges));
  });
}

Json to_json(const Morphism& m) {
  Json out;
  out["kind"] = to_string(m.kind);
  out["character_map"] = indices_to_json(m.phi.character_map());
  out["phi_matrix"] = m.intertwiner ? to_json(*m.intertwiner) : Json(nullptr);
  out["flags"] = Json{{"real", m.flags.real}, {"even", m.flags.even}, {"isometric", m.flags.isometric}};
  return out;
}

Morphism morphism_from_json(const Json& j, int source_characters) {
  return guarded([&] {
    Morphism m;
    const auto kind = j.contains("kind") ? j.at("kind").get<std::string>() : std::string("metric");
    if (kind == "metric") {
      m.kind = MorphismKind::metric;
    } else if (kind == "sf") {
      m.kind = MorphismKind::sf;
    } else {
      fail("kind must be \"metric\" or \"sf\"");
    }
    m.phi = hom_from_json(j, source_characters);
    if (j.contains("phi_matrix") && !j.at("phi_matrix").is_null()) m.intertwiner = matrix_from_json(j.at("phi_matrix"));
    if (j.contains("flags") && !j.at("flags").is_null()) {
      const auto& f = j.at("flags");
      m.flags.real = f.value("real", false);
      m.flags.even = f.value("even", false);
      m.flags.isometric = f.value("isometric", false);
    }
    return m;
  });
}

Json to_json(const DistanceValue& d, bool with_certificate) {
  Json out;
  out["value"] = d.infinite ? Json("inf") : Json(d.value);
  if (!d.infinite) {
    out["solver_residual"] = d.solver_residual;
    if (with_certificate) out["certificate"] = d.certificate;
  }
  return out;
}

Json to_json(const DistanceMatrix& m, bool with_certificates) {
  Json out;
  out["labels"] = m.labels;
  Json rows = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.infinite ? Json("inf") : Json(e.value));
    rows.push_back(std::move(r));
  }
  out["matrix"] = std::move(rows);
  if (with_certificates) {
    Json certs = Json::array();
    for (const auto& row : m.entries) {
      Json r = Json::array();
      for (const auto& e : row) r.push_back(e.infinite ? Json(nullptr) : Json(e.certificate));
      certs.push_back(std::move(r));
    }
    out["certificates"] = std::move(certs);
  }
  return out;
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", number(c.residual)},
                          {"tolerance", number(c.tolerance)}});
  }
  return Json{{"pass", r.pass()}, {"checks", std::move(checks)}};
}

Json to_json(const RealStructureReport& r) {
  Json out = to_json(r.checks);
  Json signs;
  signs["j_squared"] = r.signs.j_squared;
  signs["jd"] = to_string(r.signs.jd);
  signs["jgamma"] = r.signs.jgamma ? Json(to_string(*r.signs.jgamma)) : Json(nullptr);
  out["signs"] = std::move(signs);
  out["ko_dimension"] = ko_dimension(r.signs);
  return out;
}

Json to_json(const OrientabilityReport& r) {
  Json out;
  out["pass"] = r.pass();
  out["is_cycle"] = r.is_cycle;
  out["cycle_residual"] = number(r.cycle_residual);
  out["represented_boundary_norm"] = number(r.represented_boundary_norm);
  out["antisymmetric_last_n"] = r.antisymmetric;
  out["antisymmetry_residual"] = number(r.antisymmetry_residual);
  out["matches_grading"] = r.matches_grading;
  out["grading_residual"] = number(r.grading_residual);
  return out;
}

namespace {

Json matrix_of_numbers(const std::vector<std::vector<double>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (double x : row) r.push_back(number(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Json to_json(const ComparisonReport& r) {
  Json out;
  out["pass"] = r.pass();
  out["infinity_pattern_agrees"] = r.infinity_pattern_agrees;
  out["max_relative_deviation"] = number(r.max_relative_deviation);
  out["mean_relative_deviation"] = number(r.mean_relative_deviation);
  out["tolerance"] = r.tolerance;
  out["spectral"] = matrix_of_numbers(r.spectral);
  out["geodesic"] = matrix_of_numbers(r.geodesic);
  out["ratio"] = matrix_of_numbers(r.ratio);
  return out;
}

Json to_json(const ContractionReport& r) {
  return Json{{"pass", r.pass()},
              {"max_violation", number(r.max_violation)},
              {"tolerance", r.tolerance},
              {"pure_pairs", r.pure_pairs},
              {"mixed_pairs", r.mixed_pairs}};
}

}  // namespace sptk::io
