#include "sptk/category.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sptk/errors.hpp"

namespace sptk {

const char* to_string(MorphismKind k) noexcept { return k == MorphismKind::metric ? "metric" : "sf"; }

bool Morphism::operator==(const Morphism& o) const {
  if (kind != o.kind || !(phi == o.phi) || !(flags == o.flags)) return false;
  if (intertwiner.has_value() != o.intertwiner.has_value()) return false;
  if (!intertwiner) return true;
  return intertwiner->rows() == o.intertwiner->rows() && intertwiner->cols() == o.intertwiner->cols() &&
         *intertwiner == *o.intertwiner;
}

namespace {

void require_endpoints(const SpectralTriple& t1, const SpectralTriple& t2, const AlgebraHom& phi) {
  if (phi.source_characters() != t1.num_characters() || phi.target_characters() != t2.num_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "homomorphism does not map the first algebra to the second");
  }
}

}  // namespace

Report check_metric_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const AlgebraHom& phi,
                             double tol, const SolverOptions& options) {
  require_endpoints(t1, t2, phi);
  Report r;
  r.add_flag("epimorphism", check_epimorphism(phi));
  const DistanceSolver s1(t1, options), s2(t2, options);
  const int k2 = t2.num_characters();
  bool pattern = true;
  double worst = 0.0;
  for (int i = 0; i < k2; ++i) {
    for (int j = i + 1; j < k2; ++j) {
      const auto d2 = s2.distance(i, j);
      const auto d1 = phi(i) == phi(j) ? DistanceValue::zero(t1.num_characters()) : s1.distance(phi(i), phi(j));
      if (d1.infinite || d2.infinite) {
        pattern = pattern && d1.infinite == d2.infinite;
        continue;
      }
      worst = std::max(worst, std::abs(d1.value - d2.value) / std::max(1.0, d2.value));
    }
  }
  r.add_flag("infinity_pattern", pattern);
  r.add("pullback_isometry", worst, tol);
  return r;
}

Report check_sf_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m, double tol) {
  if (!m.intertwiner) throw Error(ErrorCode::shape_mismatch, "sf morphism needs an intertwiner");
  const auto& f = *m.intertwiner;
  if (f.rows() != t2.rep_dim() || f.cols() != t1.rep_dim()) {
    throw Error(ErrorCode::shape_mismatch, "intertwiner must map H1 to H2");
  }
  require_endpoints(t1, t2, m.phi);

  Report r;
  const auto& a1 = t1.algebra();
  const auto& a2 = t2.algebra();
  double alg = 0.0;
  for (int i = 0; i < t1.num_characters(); ++i) {
    const ComplexMatrix image = a2.represent(m.phi.apply(AlgebraElement::basis(t1.num_characters(), i)));
    alg = std::max(alg, max_abs(image * f - f * a1.projection(i)));
  }
  r.add("intertwines_algebra", alg, tol);
  const ComplexMatrix dd = f * t1.dirac() - t2.dirac() * f;
  r.add("intertwines_dirac", max_abs(dd), tol * std::max({1.0, max_abs(t1.dirac()), max_abs(t2.dirac())}));

  if (m.flags.real) {
    const bool both = t1.real_structure() && t2.real_structure();
    r.add_flag("real_structures_present", both);
    if (both) {
      const ComplexMatrix res = f * t1.real_structure()->unitary_part() - t2.real_structure()->unitary_part() * f.conjugate();
      r.add("intertwines_real_structure", max_abs(res), tol);
    }
  }
  if (m.flags.even) {
    const bool both = t1.is_even() && t2.is_even();
    r.add_flag("gradings_present", both);
    if (both) r.add("intertwines_grading", max_abs(f * *t1.grading() - *t2.grading() * f), tol);
  }
  if (m.flags.isometric) {
    r.add_flag("epimorphism", check_epimorphism(m.phi));
    r.add("coisometry", max_abs(f * f.adjoint() - identity(f.rows())), tol);
  }
  return r;
}

Report check_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m,
                      const SolverOptions& options) {
  if (m.kind == MorphismKind::metric) return check_metric_morphism(t1, t2, m.phi, 1e-6, options);
  return check_sf_morphism(t1, t2, m);
}

Morphism compose(const Morphism& first, const Morphism& second) {
  if (first.kind != second.kind) throw Error(ErrorCode::kind_mismatch, "cannot compose morphisms of different kinds");
  if (first.phi.target_characters() != second.phi.source_characters()) {
    throw Error(ErrorCode::endpoint_mismatch, "morphisms are not composable");
  }
  Morphism out;
  out.kind = first.kind;
  out.phi = compose(first.phi, second.phi);
  if (first.kind == MorphismKind::sf) {
    if (!first.intertwiner || !second.intertwiner || second.intertwiner->cols() != first.intertwiner->rows()) {
      throw Error(ErrorCode::endpoint_mismatch, "intertwiners are not composable");
    }
    out.intertwiner = (*second.intertwiner) * (*first.intertwiner);
    out.flags = {first.flags.real && second.flags.real, first.flags.even && second.flags.even,
                 first.flags.isometric && second.flags.isometric};
  }
  return out;
}

ComposedMorphism compose(const SpectralTriple& t1, const SpectralTriple& t2, const SpectralTriple& t3,
                         const Morphism& first, const Morphism& second, const SolverOptions& options) {
  auto matches = [](const SpectralTriple& a, const SpectralTriple& b, const Morphism& m) {
    if (m.phi.source_characters() != a.num_characters() || m.phi.target_characters() != b.num_characters()) return false;
    if (m.intertwiner && (m.intertwiner->cols() != a.rep_dim() || m.intertwiner->rows() != b.rep_dim())) return false;
    return true;
  };
  if (!matches(t1, t2, first) || !matches(t2, t3, second)) {
    throw Error(ErrorCode::endpoint_mismatch, "morphism endpoints do not match the triples");
  }
  ComposedMorphism out;
  out.morphism = compose(first, second);
  out.report = check_morphism(t1, t3, out.morphism, options);
  return out;
}

Morphism identity_morphism(const SpectralTriple& t, MorphismKind kind) {
  Morphism m;
  m.kind = kind;
  m.phi = AlgebraHom::identity(t.num_characters());
  if (kind == MorphismKind::sf) {
    m.intertwiner = identity(t.rep_dim());
    m.flags = {t.real_structure().has_value(), t.is_even(), true};
  }
  return m;
}

ContractionReport check_pullback_contraction(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m,
                                             int mixed_samples, std::uint64_t seed, const SolverOptions& options,
                                             double tol) {
  if (m.kind != MorphismKind::sf || !m.flags.isometric) {
    throw Error(ErrorCode::invalid_morphism, "contraction needs an isometric sf morphism");
  }
  const Report valid = check_sf_morphism(t1, t2, m);
  if (!valid.pass()) {
    throw Error(ErrorCode::invalid_morphism, "morphism fails: " + valid.failures().front());
  }
  ContractionReport rep;
  rep.tolerance = tol;
  rep.max_violation = -INFINITY;
  const DistanceSolver s1(t1, options), s2(t2, options);
  auto visit = [&](const State& w1, const State& w2) {
    const auto d2 = s2.distance(w1, w2);
    if (d2.infinite) return;
    const auto d1 = s1.distance(pullback_state(m.phi, w1), pullback_state(m.phi, w2));
    const double v = d1.infinite ? INFINITY : (d1.value - d2.value) / std::max(1.0, d2.value);
    rep.max_violation = std::max(rep.max_violation, v);
  };
  const int k2 = t2.num_characters();
  for (int i = 0; i < k2; ++i) {
    for (int j = i + 1; j < k2; ++j) {
      visit(State::pure(k2, i), State::pure(k2, j));
      ++rep.pure_pairs;
    }
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  auto random_state = [&] {
    std::vector<double> w(static_cast<std::size_t>(k2));
    double sum = 0.0;
    for (double& x : w) sum += (x = expo(rng));
    for (double& x : w) x /= sum;
    // Renormalise so the weights sum to 1 to the last bit.
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) rest -= w[i];
    w.back() = std::max(0.0, rest);
    return State::from_weights(std::move(w));
  };
  for (int s = 0; s < mixed_samples && k2 > 1; ++s) {
    visit(random_state(), random_state());
    ++rep.mixed_pairs;
  }
  if (rep.max_violation == -INFINITY) rep.max_violation = 0.0;
  return rep;
}

Restriction restriction_morphism(const SpectralTriple& t, std::span<const int> chars) {
  auto c = compress(t, chars);
  Morphism m;
  m.kind = MorphismKind::sf;
  m.phi = AlgebraHom(t.num_characters(), std::vector<int>(chars.begin(), chars.end()));
  m.intertwiner = c.isometry.adjoint();
  m.flags = {t.real_structure().has_value(), t.is_even(), true};
  return {std::move(c.triple), std::move(m)};
}

std::pair<Morphism, Morphism> equivalence_morphisms(const SpectralTriple& t1, const SpectralTriple& t2,
                                                    const AlgebraHom& phi, const ComplexMatrix& unitary) {
  const SfFlags flags{t1.real_structure() && t2.real_structure(), t1.is_even() && t2.is_even(), true};
  Morphism forward{MorphismKind::sf, phi, unitary, flags};
  Morphism backward{MorphismKind::sf, phi.inverse(), ComplexMatrix(unitary.adjoint()), flags};
  return {std::move(forward), std::move(backward)};
}

Morphism crv_pullback(const GeometryMap& f) {
  const auto& g1 = f.source;
  const auto& g2 = f.target;
  const int k1 = g1.num_vertices(), k2 = g2.num_vertices();
  if (static_cast<int>(f.vertex_map.size()) != k1) {
    throw Error(ErrorCode::invalid_morphism, "vertex map size does not match the source");
  }
  std::vector<char> hit(static_cast<std::size_t>(k2), 0);
  for (int v : f.vertex_map) {
    if (v < 0 || v >= k2) throw Error(ErrorCode::invalid_morphism, "vertex map leaves the target");
    if (hit[static_cast<std::size_t>(v)]) throw Error(ErrorCode::invalid_morphism, "vertex map is not injective");
    hit[static_cast<std::size_t>(v)] = 1;
  }
  for (int i = 0; i < k1; ++i) {
    for (int j = 0; j < k1; ++j) {
      const double a = g1.distance(i, j);
      const double b = g2.distance(f.vertex_map[static_cast<std::size_t>(i)], f.vertex_map[static_cast<std::size_t>(j)]);
      const bool ok = std::isinf(a) || std::isinf(b) ? std::isinf(a) && std::isinf(b) : std::abs(a - b) <= 1e-9;
      if (!ok) throw Error(ErrorCode::not_isometric, "vertex map distorts a distance");
    }
  }
  const auto comp = g2.components();
  for (int u = 0; u < k2; ++u) {
    if (!hit[static_cast<std::size_t>(u)]) continue;
    for (int v = 0; v < k2; ++v) {
      if (comp[static_cast<std::size_t>(v)] == comp[static_cast<std::size_t>(u)] && !hit[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::not_onto_components, "image is not a union of connected components");
      }
    }
  }
  Morphism m;
  m.kind = MorphismKind::metric;
  m.phi = AlgebraHom(k2, f.vertex_map);
  return m;
}

}  // namespace sptk
