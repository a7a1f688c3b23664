#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptk/algebra.hpp"
#include "sptk/numerics.hpp"
#include "sptk/report.hpp"

namespace sptk {

enum class Parity { even, odd };

/// Antilinear J acting as v -> U conj(v).
class AntiunitaryOperator {
 public:
  AntiunitaryOperator() = default;
  explicit AntiunitaryOperator(ComplexMatrix unitary_part) : u_(std::move(unitary_part)) {}

  const ComplexMatrix& unitary_part() const { return u_; }
  ComplexVector apply(const ComplexVector& v) const { return u_ * v.conjugate(); }
  /// J op J^{-1} = U conj(op) U*.
  ComplexMatrix conjugate(const ComplexMatrix& op) const { return u_ * op.conjugate() * u_.adjoint(); }
  /// J^2 = U conj(U).
  ComplexMatrix squared() const { return u_ * u_.conjugate(); }

 private:
  ComplexMatrix u_;
};

/// (A, H, D) with optional grading and real structure. H = C^rep_dim.
class SpectralTriple {
 public:
  SpectralTriple() = default;
  /// Checks shapes only; the axioms are checked by validate_triple.
  /// Even triples must carry a grading and odd triples must not.
  SpectralTriple(FiniteCommutativeAlgebra algebra, ComplexMatrix dirac,
                 std::optional<ComplexMatrix> grading = std::nullopt,
                 std::optional<AntiunitaryOperator> real_structure = std::nullopt,
                 Parity parity = Parity::odd);

  const FiniteCommutativeAlgebra& algebra() const { return algebra_; }
  const ComplexMatrix& dirac() const { return dirac_; }
  const std::optional<ComplexMatrix>& grading() const { return grading_; }
  const std::optional<AntiunitaryOperator>& real_structure() const { return real_; }
  Parity parity() const { return parity_; }
  bool is_even() const { return parity_ == Parity::even; }

  int num_characters() const { return algebra_.num_characters(); }
  int rep_dim() const { return algebra_.rep_dim(); }
  const std::vector<std::string>& labels() const { return algebra_.labels(); }

  /// The grading when even; the identity when odd.
  ComplexMatrix grading_or_identity() const;
  ComplexMatrix represent(const AlgebraElement& x) const { return algebra_.represent(x); }

 private:
  FiniteCommutativeAlgebra algebra_;
  ComplexMatrix dirac_;
  std::optional<ComplexMatrix> grading_;
  std::optional<AntiunitaryOperator> real_;
  Parity parity_ = Parity::odd;
};

/// Checks: dirac_selfadjoint, projections_selfadjoint_idempotent,
/// projections_orthogonal, representation_unital, bounded_commutators and,
/// when even, grading_involution, grading_selfadjoint,
/// grading_commutes_algebra, grading_anticommutes_D.
Report validate_triple(const SpectralTriple& t, double tol = kAlgebraTol);

/// How J relates to an operator X: J X = X J, J X = -X J, both (X = 0) or neither.
enum class SignRelation { commute, anticommute, both, neither };
const char* to_string(SignRelation s) noexcept;

struct KoSigns {
  int j_squared = 0;  // +1, -1, or 0 when J^2 is not +-1
  SignRelation jd = SignRelation::neither;
  std::optional<SignRelation> jgamma;  // absent for odd triples
};

struct RealStructureReport {
  Report checks;  // j_unitary, j_squared_sign, commutant, first_order
  KoSigns signs;

  /// Everything except the first-order condition.
  bool structure_ok() const;
  bool pass() const { return checks.pass(); }
};

/// Throws no_real_structure if the triple has no J or its unitary part is not unitary.
RealStructureReport check_real_structure(const SpectralTriple& t, double tol = kAlgebraTol);

/// All n mod 8 whose sign-table column matches.
std::vector<int> ko_dimension(const KoSigns& signs);

/// Linear basis of span{pi(a0)[D,pi(a1)]...[D,pi(an)] : n <= max_degree}.
std::vector<ComplexMatrix> omega_basis(const SpectralTriple& t, int max_degree);

// ---- Hochschild chains ---------------------------------------------------

/// sum_j a0^(j) (x) a1^(j) (x) ... (x) an^(j)
struct HochschildChain {
  int degree = 0;
  std::vector<std::vector<AlgebraElement>> terms;

  int num_characters() const;
};

/// Standard boundary with cyclic last term. Throws degree_zero for degree 0.
HochschildChain hochschild_boundary(const HochschildChain& c);

/// Coefficients of c in (C^k)^{(x)(degree+1)}, row-major over character tuples.
std::vector<Complex> chain_coefficients(const HochschildChain& c);
double chain_max_coefficient(const HochschildChain& c);

/// Distance between c and its antisymmetrization over slots 1..degree.
double antisymmetry_residual(const HochschildChain& c);

ComplexMatrix represent_chain(const SpectralTriple& t, const HochschildChain& c);

struct OrientabilityReport {
  bool is_cycle = false;
  double cycle_residual = 0.0;             // max |coefficient of b(c)|
  double represented_boundary_norm = 0.0;  // ||pi(b(c))||
  bool antisymmetric = false;
  double antisymmetry_residual = 0.0;
  bool matches_grading = false;
  double grading_residual = 0.0;  // max |pi(c) - Gamma|

  bool pass() const { return is_cycle && antisymmetric && matches_grading; }
};

OrientabilityReport check_orientability(const SpectralTriple& t, const HochschildChain& c, int degree);

// ---- sums, components, equivalence ---------------------------------------

/// Block-diagonal sum; characters of t1 come first.
SpectralTriple direct_sum(const SpectralTriple& t1, const SpectralTriple& t2);
SpectralTriple direct_sum(std::span<const SpectralTriple> ts);

/// Same characters, representation pi1 (+) pi2, operators block-diagonal.
SpectralTriple representation_sum(const SpectralTriple& t1, const SpectralTriple& t2);

/// Connected components of the character-coupling graph (i ~ j iff
/// ||P_i X P_j|| > tol for X in {D, Gamma, J}). Entry i is the component of
/// character i; components are numbered by their smallest character.
std::vector<int> coupling_components(const SpectralTriple& t, double tol = kAlgebraTol);
int count_components(std::span<const int> component_of);

/// Components of the graph i ~ j iff ||P_i D P_j|| > tol. These decide which
/// distances are finite.
std::vector<int> dirac_components(const SpectralTriple& t, double tol = kAlgebraTol);

/// Orthonormal basis (columns) of the range of sum_{i in chars} P_i.
ComplexMatrix character_isometry(const FiniteCommutativeAlgebra& a, std::span<const int> chars);

struct Compression {
  SpectralTriple triple;
  ComplexMatrix isometry;  // V: H_sub -> H, so operators compress as V* X V
};

/// Restriction of t to the characters listed (in that order). Throws
/// not_invariant if their subspace is not invariant under D, Gamma, J.
Compression compress(const SpectralTriple& t, std::span<const int> chars);

struct Decomposition {
  std::vector<SpectralTriple> components;
  std::vector<std::vector<int>> characters;  // original character indices per component
  std::vector<ComplexMatrix> isometries;

  /// Witness (phi, Phi) from the original triple to direct_sum(components).
  AlgebraHom reassembly_hom() const;
  ComplexMatrix reassembly_unitary() const;
};

Decomposition decompose(const SpectralTriple& t);

/// Checks phi bijective, Phi unitary, pi2(phi(x)) Phi = Phi pi1(x) on a basis,
/// Phi D1 = D2 Phi and, when present, Phi Gamma1 = Gamma2 Phi, Phi U1 = U2 conj(Phi).
Report check_unitary_equivalence(const SpectralTriple& t1, const SpectralTriple& t2,
                                 const AlgebraHom& phi, const ComplexMatrix& unitary,
                                 double tol = kEquivalenceTol);

/// The triple W T W* with characters relabelled: P'_j = W P_{perm[j]} W*.
/// (AlgebraHom(k, perm), W) witnesses t ~ transport(t, W, perm).
SpectralTriple transport(const SpectralTriple& t, const ComplexMatrix& unitary, std::span<const int> perm);

}  // namespace sptk
