#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptk/numerics.hpp"

namespace sptk {

/// A function on the k characters; represented as pi(x) = sum_i x_i P_i.
struct AlgebraElement {
  ComplexVector values;

  static AlgebraElement unit(int k) { return {ComplexVector::Ones(k)}; }
  static AlgebraElement basis(int k, int i) {
    AlgebraElement e{ComplexVector::Zero(k)};
    e.values(i) = 1.0;
    return e;
  }
  static AlgebraElement from_real(std::span<const double> xs) {
    AlgebraElement e{ComplexVector(static_cast<Eigen::Index>(xs.size()))};
    for (std::size_t i = 0; i < xs.size(); ++i) e.values(static_cast<Eigen::Index>(i)) = xs[i];
    return e;
  }

  int size() const { return static_cast<int>(values.size()); }
  AlgebraElement operator*(const AlgebraElement& o) const { return {values.cwiseProduct(o.values)}; }
  AlgebraElement adjoint() const { return {values.conjugate()}; }
};

/// C^k presented by its characters: mutually orthogonal projections P_1..P_k
/// summing to the identity on the representation space.
class FiniteCommutativeAlgebra {
 public:
  FiniteCommutativeAlgebra() = default;
  /// Throws invalid_algebra if the projection identities fail beyond kAlgebraTol.
  explicit FiniteCommutativeAlgebra(std::vector<ComplexMatrix> projections,
                                    std::vector<std::string> labels = {});

  int num_characters() const { return static_cast<int>(projections_.size()); }
  int rep_dim() const { return projections_.empty() ? 0 : static_cast<int>(projections_[0].rows()); }

  const ComplexMatrix& projection(int i) const { return projections_.at(static_cast<std::size_t>(i)); }
  const std::vector<ComplexMatrix>& projections() const { return projections_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// True when every projection is a diagonal 0/1 matrix.
  bool is_coordinate() const { return coordinate_; }
  /// Basis directions of character i; valid only for coordinate algebras.
  std::vector<int> fiber(int i) const;
  int fiber_rank(int i) const;

  ComplexMatrix represent(const AlgebraElement& x) const;
  ComplexMatrix represent_real(std::span<const double> x) const;

  /// Largest violation of P_i^2 = P_i = P_i*, P_i P_j = 0, sum P_i = I.
  double invariant_residual() const;

 private:
  std::vector<ComplexMatrix> projections_;
  std::vector<std::string> labels_;
  bool coordinate_ = false;
};

/// Probability weights over characters.
class State {
 public:
  /// Throws invalid_state unless weights are nonnegative and sum to 1 within 1e-12.
  static State from_weights(std::vector<double> weights);
  static State pure(int k, int i);

  int size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
  std::optional<int> pure_index() const;
  bool is_pure() const { return pure_index().has_value(); }

  Complex evaluate(const AlgebraElement& x) const;

  bool operator==(const State&) const = default;

 private:
  std::vector<double> weights_;
};

/// Unital *-homomorphism phi: C^{k_source} -> C^{k_target} presented dually:
/// phi(x)_j = x_{m(j)} with m = character_map (0-based).
class AlgebraHom {
 public:
  AlgebraHom() = default;
  AlgebraHom(int source_characters, std::vector<int> character_map);
  static AlgebraHom identity(int k);

  int source_characters() const { return source_k_; }
  int target_characters() const { return static_cast<int>(map_.size()); }
  const std::vector<int>& character_map() const { return map_; }
  int operator()(int target_character) const { return map_.at(static_cast<std::size_t>(target_character)); }

  AlgebraElement apply(const AlgebraElement& x) const;
  /// Inverse of a bijective hom; throws invalid_homomorphism otherwise.
  AlgebraHom inverse() const;

  bool operator==(const AlgebraHom&) const = default;

 private:
  int source_k_ = 0;
  std::vector<int> map_;
};

/// second ∘ first, for first: A1 -> A2 and second: A2 -> A3.
AlgebraHom compose(const AlgebraHom& first, const AlgebraHom& second);

/// Surjective on function values, i.e. the character map is injective.
bool check_epimorphism(const AlgebraHom& phi);

/// omega ∘ phi as a state on phi's source.
State pullback_state(const AlgebraHom& phi, const State& omega);

/// C^k acting on C^rep_dim with coordinate projections; assignment[d] is the
/// character owning basis direction d. Throws empty_fiber if some character
/// owns no direction.
FiniteCommutativeAlgebra function_algebra(int k, int rep_dim, std::span<const int> assignment);

/// The algebra generated by a commuting family of normal matrices, presented
/// by its joint eigenprojections (characters sorted by joint eigenvalue).
FiniteCommutativeAlgebra gelfand_spectrum(std::span<const ComplexMatrix> generators);

}  // namespace sptk
