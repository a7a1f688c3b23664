#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "sptk/algebra.hpp"
#include "sptk/geometry.hpp"
#include "sptk/metric.hpp"
#include "sptk/report.hpp"
#include "sptk/triple.hpp"

namespace sptk {

enum class MorphismKind { metric, sf };
const char* to_string(MorphismKind k) noexcept;

struct SfFlags {
  bool real = false;
  bool even = false;
  bool isometric = false;

  bool operator==(const SfFlags&) const = default;
};

/// A morphism T1 -> T2: phi: A1 -> A2 and, for the sf kind, Phi: H1 -> H2
/// (a dim H2 x dim H1 matrix).
struct Morphism {
  MorphismKind kind = MorphismKind::metric;
  AlgebraHom phi;
  std::optional<ComplexMatrix> intertwiner;
  SfFlags flags;

  bool operator==(const Morphism& o) const;
};

/// Checks epimorphism and |d1(phi* w, phi* w') - d2(w, w')| <= tol * max(1, d2)
/// over all pure pairs of A2, with infinities matched exactly.
/// Throws algebra_mismatch if phi does not go from A1 to A2.
Report check_metric_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const AlgebraHom& phi,
                             double tol = 1e-6, const SolverOptions& options = {});

/// Intertwining checks for an sf morphism, gated by its flags. Throws
/// shape_mismatch if Phi is absent or has the wrong shape.
Report check_sf_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m,
                         double tol = kEquivalenceTol);

/// Dispatches on the kind.
Report check_morphism(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m,
                      const SolverOptions& options = {});

/// second ∘ first, field by field. Throws kind_mismatch or endpoint_mismatch.
Morphism compose(const Morphism& first, const Morphism& second);

struct ComposedMorphism {
  Morphism morphism;
  Report report;
};

/// second ∘ first for first: t1 -> t2 and second: t2 -> t3, re-validated on (t1, t3).
ComposedMorphism compose(const SpectralTriple& t1, const SpectralTriple& t2, const SpectralTriple& t3,
                         const Morphism& first, const Morphism& second, const SolverOptions& options = {});

/// Identity on t; the sf kind carries Phi = I and every flag t supports.
Morphism identity_morphism(const SpectralTriple& t, MorphismKind kind = MorphismKind::sf);

struct ContractionReport {
  double max_violation = 0.0;  // max of d1 - d2 over checked pairs (may be negative)
  int pure_pairs = 0;
  int mixed_pairs = 0;
  double tolerance = 1e-6;

  bool pass() const { return max_violation <= tolerance; }
};

/// d1(w o phi, w' o phi) <= d2(w, w') over all pure pairs of A2 and
/// mixed_samples seeded random pairs. Throws invalid_morphism unless m is a
/// valid isometric sf morphism.
ContractionReport check_pullback_contraction(const SpectralTriple& t1, const SpectralTriple& t2, const Morphism& m,
                                             int mixed_samples = 32, std::uint64_t seed = 0,
                                             const SolverOptions& options = {}, double tol = 1e-6);

struct Restriction {
  SpectralTriple target;
  Morphism morphism;  // (rho, P): t -> target
};

/// Restriction of t onto the listed characters, which must span a union of
/// coupling components. Throws not_invariant otherwise.
Restriction restriction_morphism(const SpectralTriple& t, std::span<const int> chars);

/// (phi, W) and (phi^-1, W*) for a unitary equivalence t1 ~ t2.
std::pair<Morphism, Morphism> equivalence_morphisms(const SpectralTriple& t1, const SpectralTriple& t2,
                                                    const AlgebraHom& phi, const ComplexMatrix& unitary);

/// The pullback f*: T(G2) -> T(G1) of a graph map f: G1 -> G2, as a metric
/// morphism with character map = vertex map. Throws invalid_morphism if f is
/// not injective, not_isometric if it distorts a distance by more than 1e-9,
/// and not_onto_components if its image is not a union of components.
Morphism crv_pullback(const GeometryMap& f);

}  // namespace sptk
