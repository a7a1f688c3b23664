#include <algorithm>
#include <cmath>
#include <numeric>

#include "sptk/errors.hpp"
#include "sptk/triple.hpp"

namespace sptk {

int HochschildChain::num_characters() const {
  for (const auto& term : terms) {
    if (!term.empty()) return term.front().size();
  }
  return 0;
}

namespace {

void check_shape(const HochschildChain& c) {
  const int k = c.num_characters();
  for (const auto& term : c.terms) {
    if (static_cast<int>(term.size()) != c.degree + 1) {
      throw Error(ErrorCode::invalid_argument, "every term needs degree+1 tensor factors");
    }
    for (const auto& a : term) {
      if (a.size() != k) throw Error(ErrorCode::algebra_mismatch, "chain mixes algebras");
    }
  }
}

std::size_t power(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

HochschildChain hochschild_boundary(const HochschildChain& c) {
  if (c.degree < 1) throw Error(ErrorCode::degree_zero, "the boundary needs degree >= 1");
  check_shape(c);
  const int n = c.degree;
  HochschildChain out{n - 1, {}};
  for (const auto& term : c.terms) {
    for (int i = 0; i < n; ++i) {
      std::vector<AlgebraElement> t;
      for (int s = 0; s < i; ++s) t.push_back(term[static_cast<std::size_t>(s)]);
      t.push_back(term[static_cast<std::size_t>(i)] * term[static_cast<std::size_t>(i + 1)]);
      for (int s = i + 2; s <= n; ++s) t.push_back(term[static_cast<std::size_t>(s)]);
      if (i % 2 == 1) t.front().values = -t.front().values;
      out.terms.push_back(std::move(t));
    }
    std::vector<AlgebraElement> last;
    last.push_back(term[static_cast<std::size_t>(n)] * term.front());
    for (int s = 1; s < n; ++s) last.push_back(term[static_cast<std::size_t>(s)]);
    if (n % 2 == 1) last.front().values = -last.front().values;
    out.terms.push_back(std::move(last));
  }
  return out;
}

std::vector<Complex> chain_coefficients(const HochschildChain& c) {
  check_shape(c);
  const int k = c.num_characters();
  const auto k_sz = static_cast<std::size_t>(std::max(k, 1));
  std::vector<Complex> out(power(k_sz, c.degree + 1), Complex(0.0));
  if (k == 0) return out;
  for (const auto& term : c.terms) {
    // Outer product of the factors, slot 0 most significant.
    std::vector<Complex> acc{Complex(1.0)};
    for (const auto& a : term) {
      std::vector<Complex> next;
      next.reserve(acc.size() * k_sz);
      for (Complex v : acc) {
        for (int i = 0; i < k; ++i) next.push_back(v * a.values(i));
      }
      acc = std::move(next);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] += acc[i];
  }
  return out;
}

double chain_max_coefficient(const HochschildChain& c) {
  double m = 0.0;
  for (Complex v : chain_coefficients(c)) m = std::max(m, std::abs(v));
  return m;
}

double antisymmetry_residual(const HochschildChain& c) {
  const auto coeffs = chain_coefficients(c);
  const int n = c.degree;
  if (n < 2) return 0.0;
  const auto k = static_cast<std::size_t>(c.num_characters());

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
    }
    perms.emplace_back(perm, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double residual = 0.0;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n + 1));
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    std::size_t rest = idx;
    for (int s = n; s >= 0; --s) {
      digits[static_cast<std::size_t>(s)] = rest % k;
      rest /= k;
    }
    Complex sym = 0.0;
    for (const auto& [p, sign] : perms) {
      std::size_t j = digits[0];
      for (int s = 1; s <= n; ++s) j = j * k + digits[static_cast<std::size_t>(1 + p[static_cast<std::size_t>(s - 1)])];
      sym += static_cast<double>(sign) * coeffs[j];
    }
    sym /= static_cast<double>(perms.size());
    residual = std::max(residual, std::abs(coeffs[idx] - sym));
  }
  return residual;
}

ComplexMatrix represent_chain(const SpectralTriple& t, const HochschildChain& c) {
  check_shape(c);
  if (!c.terms.empty() && c.num_characters() != t.num_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "chain is not over the triple's algebra");
  }
  ComplexMatrix out = ComplexMatrix::Zero(t.rep_dim(), t.rep_dim());
  for (const auto& term : c.terms) {
    ComplexMatrix acc = t.represent(term.front());
    for (std::size_t s = 1; s < term.size(); ++s) acc = acc * commutator(t.dirac(), t.represent(term[s]));
    out += acc;
  }
  return out;
}

OrientabilityReport check_orientability(const SpectralTriple& t, const HochschildChain& c, int degree) {
  if (c.degree != degree) throw Error(ErrorCode::invalid_argument, "chain degree differs from n");
  OrientabilityReport r;
  if (degree == 0) {
    r.is_cycle = true;
  } else {
    const auto b = hochschild_boundary(c);
    r.cycle_residual = chain_max_coefficient(b);
    r.represented_boundary_norm = operator_norm(represent_chain(t, b));
    r.is_cycle = r.cycle_residual <= kAlgebraTol;
  }
  r.antisymmetry_residual = antisymmetry_residual(c);
  r.antisymmetric = r.antisymmetry_residual <= kAlgebraTol;
  r.grading_residual = operator_norm(represent_chain(t, c) - t.grading_or_identity());
  r.matches_grading = r.grading_residual <= kEquivalenceTol;
  return r;
}

}  // namespace sptk
