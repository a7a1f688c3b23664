#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sptk/algebra.hpp"
#include "sptk/triple.hpp"

namespace sptk {

/// A Connes distance, possibly +inf.
struct DistanceValue {
  bool infinite = false;
  double value = 0.0;
  /// Real x with ||[D,pi(x)]|| <= 1 attaining value; empty when infinite.
  std::vector<double> certificate;
  /// Estimated relative optimality gap of value.
  double solver_residual = 0.0;

  static DistanceValue infinity() { return {true, INFINITY, {}, 0.0}; }
  static DistanceValue zero(int k) { return {false, 0.0, std::vector<double>(static_cast<std::size_t>(k), 0.0), 0.0}; }
  double as_double() const { return infinite ? INFINITY : value; }
};

struct SolverOptions {
  /// Stop once the barrier's duality gap is below this, relative to the optimum.
  double gap_tolerance = 1e-10;
  int max_newton_steps = 4000;
  /// ||P_i D P_j|| above this couples characters i and j.
  double coupling_tolerance = kAlgebraTol;
  /// distance_matrix worker count; results do not depend on it.
  unsigned max_threads = 1;
  std::uint64_t seed = 0;
};

/// Precomputes per-component data of a triple so that many distances can be
/// evaluated cheaply. Thread-safe after construction.
class DistanceSolver {
 public:
  explicit DistanceSolver(const SpectralTriple& t, SolverOptions options = {});
  ~DistanceSolver();
  DistanceSolver(DistanceSolver&&) noexcept;
  DistanceSolver& operator=(DistanceSolver&&) noexcept;

  /// Throws algebra_mismatch if a state has the wrong number of characters.
  DistanceValue distance(const State& a, const State& b) const;
  DistanceValue distance(int i, int j) const;

  int num_characters() const { return k_; }
  /// Dirac-coupling component of each character.
  const std::vector<int>& components() const { return component_of_; }
  const SolverOptions& options() const { return options_; }

 private:
  struct Block;
  int k_ = 0;
  SolverOptions options_;
  std::vector<int> component_of_;
  std::vector<Block> blocks_;
};

DistanceValue connes_distance(const SpectralTriple& t, const State& a, const State& b,
                              const SolverOptions& options = {});

/// ||[D, pi(x)]|| for real x.
double lipschitz_seminorm(const SpectralTriple& t, std::span<const double> x);

struct BruteForceOptions {
  double box = 4.0;
  int grid = 201;
  /// Search complex x (real and imaginary grids) instead of real x.
  bool complex_search = false;
  /// Guard on the number of grid points visited by the complex search.
  std::int64_t max_points = 60'000'000;
};

/// Best |(a - b)(x)| over grid points x in [-box, box]^k (one coordinate
/// pinned to 0) with ||[D,pi(x)]|| <= 1. A lower bound on the distance.
/// Throws too_many_characters for k > 4, too_many_grid_points past the guard.
double brute_force_distance(const SpectralTriple& t, const State& a, const State& b,
                            const BruteForceOptions& options = {});

/// Upper bound on distance - brute_force_distance derived from the solver's
/// certificate: delta * d + ||a - b||_1 * h / 2 with h the grid step and
/// delta = h/2 * sum_i ||[D, P_i]||. +inf when the certificate does not fit
/// in the box or the distance is infinite.
double oracle_gap_bound(const SpectralTriple& t, const State& a, const State& b,
                        const DistanceValue& d, const BruteForceOptions& options = {});

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<DistanceValue>> entries;

  int size() const { return static_cast<int>(entries.size()); }
  const DistanceValue& operator()(int i, int j) const {
    return entries.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  }
  std::vector<std::vector<double>> values() const;
};

/// Pairwise distances between pure states. Symmetric with a zero diagonal.
DistanceMatrix distance_matrix(const SpectralTriple& t, const SolverOptions& options = {});

/// True iff characters i and j lie in different Dirac-coupling components.
bool detect_infinite(const SpectralTriple& t, int i, int j, double tol = kAlgebraTol);

}  // namespace sptk
