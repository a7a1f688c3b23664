#include "sptk/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sptk/errors.hpp"

namespace sptk {

namespace {

bool is_coordinate_projection(const ComplexMatrix& p) {
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const Complex v = p(i, j);
      if (i != j && v != Complex(0.0)) return false;
      if (i == j && v != Complex(0.0) && v != Complex(1.0)) return false;
    }
  }
  return true;
}

}  // namespace

FiniteCommutativeAlgebra::FiniteCommutativeAlgebra(std::vector<ComplexMatrix> projections,
                                                   std::vector<std::string> labels)
    : projections_(std::move(projections)), labels_(std::move(labels)) {
  if (projections_.empty()) {
    throw Error(ErrorCode::invalid_algebra, "an algebra needs at least one character");
  }
  const auto n = projections_[0].rows();
  for (const auto& p : projections_) {
    if (p.rows() != n || p.cols() != n || n == 0) {
      throw Error(ErrorCode::shape_mismatch, "projections must be square of equal positive size");
    }
  }
  if (labels_.empty()) {
    for (int i = 0; i < num_characters(); ++i) labels_.push_back("p" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels_.size()) != num_characters()) {
    throw Error(ErrorCode::invalid_algebra, "one label per character required");
  }
  const double residual = invariant_residual();
  if (residual > kAlgebraTol) {
    throw Error(ErrorCode::invalid_algebra,
                "projection identities violated (residual " + std::to_string(residual) + ")");
  }
  coordinate_ = std::all_of(projections_.begin(), projections_.end(), is_coordinate_projection);
}

double FiniteCommutativeAlgebra::invariant_residual() const {
  const auto n = rep_dim();
  double r = 0.0;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projections_.size(); ++i) {
    const auto& p = projections_[i];
    r = std::max(r, projection_residual(p));
    for (std::size_t j = i + 1; j < projections_.size(); ++j) {
      r = std::max(r, max_abs(p * projections_[j]));
    }
    sum += p;
  }
  r = std::max(r, max_abs(sum - identity(n)));
  // A zero projection would be a character with an empty fiber.
  for (const auto& p : projections_) {
    if (std::abs(p.trace()) < 0.5) r = std::max(r, 1.0);
  }
  return r;
}

std::vector<int> FiniteCommutativeAlgebra::fiber(int i) const {
  if (!coordinate_) throw Error(ErrorCode::invalid_argument, "fiber() needs a coordinate algebra");
  std::vector<int> out;
  const auto& p = projection(i);
  for (Eigen::Index d = 0; d < p.rows(); ++d) {
    if (p(d, d) == Complex(1.0)) out.push_back(static_cast<int>(d));
  }
  return out;
}

int FiniteCommutativeAlgebra::fiber_rank(int i) const {
  return static_cast<int>(std::lround(projection(i).trace().real()));
}

ComplexMatrix FiniteCommutativeAlgebra::represent(const AlgebraElement& x) const {
  if (x.size() != num_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "element has wrong number of values");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rep_dim(), rep_dim());
  for (int i = 0; i < num_characters(); ++i) {
    if (x.values(i) != Complex(0.0)) out += x.values(i) * projection(i);
  }
  return out;
}

ComplexMatrix FiniteCommutativeAlgebra::represent_real(std::span<const double> x) const {
  return represent(AlgebraElement::from_real(x));
}

State State::from_weights(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::invalid_state, "empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::invalid_state, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_state, "weights sum to " + std::to_string(total));
  }
  State s;
  s.weights_ = std::move(weights);
  return s;
}

State State::pure(int k, int i) {
  if (i < 0 || i >= k) throw Error(ErrorCode::invalid_state, "pure state index out of range");
  std::vector<double> w(static_cast<std::size_t>(k), 0.0);
  w[static_cast<std::size_t>(i)] = 1.0;
  return from_weights(std::move(w));
}

std::optional<int> State::pure_index() const {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 1.0) return static_cast<int>(i);
  }
  return std::nullopt;
}

Complex State::evaluate(const AlgebraElement& x) const {
  if (x.size() != size()) throw Error(ErrorCode::algebra_mismatch, "state/element size mismatch");
  Complex acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += weights_[static_cast<std::size_t>(i)] * x.values(i);
  return acc;
}

AlgebraHom::AlgebraHom(int source_characters, std::vector<int> character_map)
    : source_k_(source_characters), map_(std::move(character_map)) {
  if (source_k_ <= 0 || map_.empty()) {
    throw Error(ErrorCode::invalid_homomorphism, "both algebras need at least one character");
  }
  for (int m : map_) {
    if (m < 0 || m >= source_k_) {
      throw Error(ErrorCode::invalid_homomorphism, "character map entry out of range");
    }
  }
}

AlgebraHom AlgebraHom::identity(int k) {
  std::vector<int> m(static_cast<std::size_t>(k));
  std::iota(m.begin(), m.end(), 0);
  return AlgebraHom(k, std::move(m));
}

AlgebraElement AlgebraHom::apply(const AlgebraElement& x) const {
  if (x.size() != source_k_) throw Error(ErrorCode::algebra_mismatch, "element not in hom source");
  AlgebraElement out{ComplexVector(target_characters())};
  for (int j = 0; j < target_characters(); ++j) out.values(j) = x.values((*this)(j));
  return out;
}

AlgebraHom AlgebraHom::inverse() const {
  if (target_characters() != source_k_ || !check_epimorphism(*this)) {
    throw Error(ErrorCode::invalid_homomorphism, "only bijective homs are invertible");
  }
  std::vector<int> inv(map_.size());
  for (std::size_t j = 0; j < map_.size(); ++j) inv[static_cast<std::size_t>(map_[j])] = static_cast<int>(j);
  return AlgebraHom(target_characters(), std::move(inv));
}

AlgebraHom compose(const AlgebraHom& first, const AlgebraHom& second) {
  if (first.target_characters() != second.source_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "homs are not composable");
  }
  std::vector<int> m;
  m.reserve(static_cast<std::size_t>(second.target_characters()));
  for (int j : second.character_map()) m.push_back(first(j));
  return AlgebraHom(first.source_characters(), std::move(m));
}

bool check_epimorphism(const AlgebraHom& phi) {
  std::vector<bool> hit(static_cast<std::size_t>(phi.source_characters()), false);
  for (int m : phi.character_map()) {
    if (hit[static_cast<std::size_t>(m)]) return false;
    hit[static_cast<std::size_t>(m)] = true;
  }
  return true;
}

State pullback_state(const AlgebraHom& phi, const State& omega) {
  if (omega.size() != phi.target_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "state does not live on the hom target");
  }
  std::vector<double> w(static_cast<std::size_t>(phi.source_characters()), 0.0);
  for (int j = 0; j < phi.target_characters(); ++j) {
    w[static_cast<std::size_t>(phi(j))] += omega.weight(j);
  }
  return State::from_weights(std::move(w));
}

FiniteCommutativeAlgebra function_algebra(int k, int rep_dim, std::span<const int> assignment) {
  if (k <= 0 || rep_dim <= 0) throw Error(ErrorCode::invalid_argument, "k and rep_dim must be positive");
  if (static_cast<int>(assignment.size()) != rep_dim) {
    throw Error(ErrorCode::invalid_argument, "assignment must cover every basis direction");
  }
  std::vector<ComplexMatrix> ps(static_cast<std::size_t>(k), ComplexMatrix::Zero(rep_dim, rep_dim));
  for (int d = 0; d < rep_dim; ++d) {
    const int c = assignment[static_cast<std::size_t>(d)];
    if (c < 0 || c >= k) throw Error(ErrorCode::invalid_argument, "assignment entry out of range");
    ps[static_cast<std::size_t>(c)](d, d) = 1.0;
  }
  for (int c = 0; c < k; ++c) {
    if (ps[static_cast<std::size_t>(c)].trace() == Complex(0.0)) {
      throw Error(ErrorCode::empty_fiber, "character " + std::to_string(c + 1) + " owns no basis direction");
    }
  }
  return FiniteCommutativeAlgebra(std::move(ps));
}

FiniteCommutativeAlgebra gelfand_spectrum(std::span<const ComplexMatrix> generators) {
  const auto joint = simultaneous_diagonalize(generators, kEquivalenceTol);
  const auto n = joint.basis.rows();
  double scale = 1.0;
  for (const auto& g : generators) scale = std::max(scale, operator_norm(g));
  const double same = kDegeneracyTol * scale;

  // Group basis columns by joint eigenvalue tuple.
  std::vector<std::vector<Complex>> tuples;
  std::vector<std::vector<Eigen::Index>> columns;
  for (Eigen::Index c = 0; c < n; ++c) {
    std::vector<Complex> t;
    for (const auto& d : joint.diagonals) t.push_back(d(c));
    auto it = std::find_if(tuples.begin(), tuples.end(), [&](const std::vector<Complex>& u) {
      for (std::size_t g = 0; g < t.size(); ++g) {
        if (std::abs(t[g] - u[g]) > same) return false;
      }
      return true;
    });
    if (it == tuples.end()) {
      tuples.push_back(t);
      columns.push_back({c});
    } else {
      columns[static_cast<std::size_t>(it - tuples.begin())].push_back(c);
    }
  }

  std::vector<std::size_t> order(tuples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t g = 0; g < tuples[a].size(); ++g) {
      const Complex x = tuples[a][g], y = tuples[b][g];
      if (std::abs(x.real() - y.real()) > same) return x.real() < y.real();
      if (std::abs(x.imag() - y.imag()) > same) return x.imag() < y.imag();
    }
    return false;
  });

  std::vector<ComplexMatrix> projections;
  for (std::size_t idx : order) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (auto c : columns[idx]) p += joint.basis.col(c) * joint.basis.col(c).adjoint();
    projections.push_back(std::move(p));
  }
  return FiniteCommutativeAlgebra(std::move(projections));
}

}  // namespace sptk
