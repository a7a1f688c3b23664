#include "sptk/triple.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sptk/errors.hpp"

namespace sptk {

namespace {

ComplexMatrix block_diagonal(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double scaled(double tol, const ComplexMatrix& m) { return tol * std::max(1.0, max_abs(m)); }

// Union-find over characters.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Marks i ~ j whenever the (i, j) block of x has norm above tol.
void couple_through(const FiniteCommutativeAlgebra& a, const ComplexMatrix& x, double tol, Components& uf) {
  const int k = a.num_characters();
  if (a.is_coordinate()) {
    std::vector<int> owner(static_cast<std::size_t>(a.rep_dim()));
    std::vector<std::vector<int>> fibers;
    for (int i = 0; i < k; ++i) {
      fibers.push_back(a.fiber(i));
      for (int d : fibers.back()) owner[static_cast<std::size_t>(d)] = i;
    }
    std::vector<char> touched(static_cast<std::size_t>(k * k), 0);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (x(r, c) == Complex(0.0)) continue;
        const int i = owner[static_cast<std::size_t>(r)], j = owner[static_cast<std::size_t>(c)];
        if (i != j) touched[static_cast<std::size_t>(i * k + j)] = 1;
      }
    }
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (!touched[static_cast<std::size_t>(i * k + j)]) continue;
        const auto& fi = fibers[static_cast<std::size_t>(i)];
        const auto& fj = fibers[static_cast<std::size_t>(j)];
        ComplexMatrix block(static_cast<Eigen::Index>(fi.size()), static_cast<Eigen::Index>(fj.size()));
        for (std::size_t r = 0; r < fi.size(); ++r) {
          for (std::size_t c = 0; c < fj.size(); ++c) {
            block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x(fi[r], fj[c]);
          }
        }
        if (operator_norm(block) > tol) uf.join(i, j);
      }
    }
    return;
  }
  for (int j = 0; j < k; ++j) {
    const ComplexMatrix xp = x * a.projection(j);
    for (int i = 0; i < k; ++i) {
      if (i != j && operator_norm(a.projection(i) * xp) > tol) uf.join(i, j);
    }
  }
}

}  // namespace

SpectralTriple::SpectralTriple(FiniteCommutativeAlgebra algebra, ComplexMatrix dirac,
                               std::optional<ComplexMatrix> grading,
                               std::optional<AntiunitaryOperator> real_structure, Parity parity)
    : algebra_(std::move(algebra)),
      dirac_(std::move(dirac)),
      grading_(std::move(grading)),
      real_(std::move(real_structure)),
      parity_(parity) {
  const auto n = algebra_.rep_dim();
  if (n == 0) throw Error(ErrorCode::invalid_algebra, "triple needs a nonempty algebra");
  if (dirac_.rows() != n || dirac_.cols() != n) {
    throw Error(ErrorCode::shape_mismatch, "Dirac operator must act on the representation space");
  }
  if (parity_ == Parity::even && !grading_) {
    throw Error(ErrorCode::invalid_argument, "even triple needs a grading operator");
  }
  if (parity_ == Parity::odd && grading_) {
    throw Error(ErrorCode::invalid_argument, "odd triple carries no grading operator");
  }
  if (grading_ && (grading_->rows() != n || grading_->cols() != n)) {
    throw Error(ErrorCode::shape_mismatch, "grading must act on the representation space");
  }
  if (real_ && (real_->unitary_part().rows() != n || real_->unitary_part().cols() != n)) {
    throw Error(ErrorCode::shape_mismatch, "real structure must act on the representation space");
  }
}

ComplexMatrix SpectralTriple::grading_or_identity() const {
  return grading_ ? *grading_ : identity(rep_dim());
}

Report validate_triple(const SpectralTriple& t, double tol) {
  Report r;
  const auto& d = t.dirac();
  const auto& a = t.algebra();
  r.add("dirac_selfadjoint", hermitian_residual(d), scaled(tol, d));

  double proj = 0.0, orth = 0.0;
  ComplexMatrix sum = ComplexMatrix::Zero(t.rep_dim(), t.rep_dim());
  double commutators = 0.0;
  for (int i = 0; i < t.num_characters(); ++i) {
    const auto& p = a.projection(i);
    proj = std::max(proj, projection_residual(p));
    for (int j = i + 1; j < t.num_characters(); ++j) orth = std::max(orth, max_abs(p * a.projection(j)));
    sum += p;
    commutators = std::max(commutators, operator_norm(commutator(d, p)));
  }
  r.add("projections_selfadjoint_idempotent", proj, tol);
  r.add("projections_orthogonal", orth, tol);
  r.add("representation_unital", max_abs(sum - identity(t.rep_dim())), tol);
  // Always bounded in finite dimension; the residual is the largest ||[D, P_i]||.
  r.add_flag("bounded_commutators", std::isfinite(commutators), commutators, INFINITY);

  if (t.is_even()) {
    const auto& g = *t.grading();
    r.add("grading_involution", max_abs(g * g - identity(t.rep_dim())), tol);
    r.add("grading_selfadjoint", hermitian_residual(g), tol);
    double gc = 0.0;
    for (const auto& p : a.projections()) gc = std::max(gc, max_abs(commutator(g, p)));
    r.add("grading_commutes_algebra", gc, tol);
    r.add("grading_anticommutes_D", max_abs(anticommutator(g, d)), scaled(tol, d));
  }
  return r;
}

const char* to_string(SignRelation s) noexcept {
  switch (s) {
    case SignRelation::commute: return "commute";
    case SignRelation::anticommute: return "anticommute";
    case SignRelation::both: return "both";
    case SignRelation::neither: return "neither";
  }
  return "neither";
}

bool RealStructureReport::structure_ok() const {
  for (const auto& c : checks.checks()) {
    if (c.name != "first_order" && !c.pass) return false;
  }
  return true;
}

namespace {

SignRelation relation(const AntiunitaryOperator& j, const ComplexMatrix& x, double tol, double& residual) {
  const ComplexMatrix y = j.conjugate(x);
  const double tc = scaled(tol, x);
  const double rc = max_abs(y - x), ra = max_abs(y + x);
  residual = std::min(rc, ra);
  if (rc <= tc && ra <= tc) return SignRelation::both;
  if (rc <= tc) return SignRelation::commute;
  if (ra <= tc) return SignRelation::anticommute;
  return SignRelation::neither;
}

}  // namespace

RealStructureReport check_real_structure(const SpectralTriple& t, double tol) {
  if (!t.real_structure()) throw Error(ErrorCode::no_real_structure, "triple carries no J");
  const auto& j = *t.real_structure();
  const double ur = unitary_residual(j.unitary_part());
  if (ur > tol) {
    throw Error(ErrorCode::no_real_structure, "unitary part of J is not unitary (residual " +
                                                  std::to_string(ur) + ")");
  }
  RealStructureReport rep;
  rep.checks.add("j_unitary", ur, tol);

  const ComplexMatrix sq = j.squared();
  const auto n = t.rep_dim();
  const double plus = max_abs(sq - identity(n)), minus = max_abs(sq + identity(n));
  rep.signs.j_squared = plus <= tol ? 1 : (minus <= tol ? -1 : 0);
  rep.checks.add("j_squared_sign", std::min(plus, minus), tol);

  double jd_res = 0.0;
  rep.signs.jd = relation(j, t.dirac(), tol, jd_res);
  rep.checks.add_flag("j_dirac_sign", rep.signs.jd != SignRelation::neither, jd_res, scaled(tol, t.dirac()));
  if (t.is_even()) {
    double jg_res = 0.0;
    rep.signs.jgamma = relation(j, *t.grading(), tol, jg_res);
    rep.checks.add_flag("j_grading_sign", *rep.signs.jgamma != SignRelation::neither, jg_res, tol);
  }

  // Basis elements e_j are real, so J pi(e_j^*) J^-1 = U conj(P_j) U*.
  const auto& a = t.algebra();
  std::vector<ComplexMatrix> opposite;
  std::vector<ComplexMatrix> derivations;
  for (int i = 0; i < t.num_characters(); ++i) {
    opposite.push_back(j.conjugate(a.projection(i)));
    derivations.push_back(commutator(t.dirac(), a.projection(i)));
  }
  double commutant = 0.0, first_order = 0.0;
  for (int i = 0; i < t.num_characters(); ++i) {
    for (int k = 0; k < t.num_characters(); ++k) {
      const auto& o = opposite[static_cast<std::size_t>(k)];
      commutant = std::max(commutant, max_abs(commutator(a.projection(i), o)));
      first_order = std::max(first_order, max_abs(commutator(derivations[static_cast<std::size_t>(i)], o)));
    }
  }
  rep.checks.add("commutant", commutant, tol);
  rep.checks.add("first_order", first_order, scaled(tol, t.dirac()));
  return rep;
}

std::vector<int> ko_dimension(const KoSigns& signs) {
  using S = SignRelation;
  // Columns n = 0..7: sign of J^2, relation of J with D, relation with Gamma.
  static constexpr int kJSquared[8] = {+1, +1, -1, -1, -1, -1, +1, +1};
  static constexpr S kJD[8] = {S::commute, S::anticommute, S::commute, S::commute,
                               S::commute, S::anticommute, S::commute, S::commute};
  static constexpr S kJGamma[8] = {S::commute, S::neither, S::anticommute, S::neither,
                                   S::commute, S::neither, S::anticommute, S::neither};
  auto matches = [](S observed, S expected) { return observed == expected || observed == S::both; };

  std::vector<int> out;
  for (int n = 0; n < 8; ++n) {
    const bool even = n % 2 == 0;
    if (even != signs.jgamma.has_value()) continue;
    if (signs.j_squared != kJSquared[n]) continue;
    if (!matches(signs.jd, kJD[n])) continue;
    if (even && !matches(*signs.jgamma, kJGamma[n])) continue;
    out.push_back(n);
  }
  return out;
}

namespace {

// Incremental Gram-Schmidt on vectorized matrices (Frobenius inner product).
class SpanReducer {
 public:
  explicit SpanReducer(double tol) : tol_(tol) {}

  bool add(const ComplexMatrix& m) {
    ComplexMatrix r = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis_) r -= q.conjugate().cwiseProduct(r).sum() * q;
    }
    const double norm = r.norm();
    if (norm <= tol_ * std::max(1.0, m.norm())) return false;
    basis_.push_back(r / norm);
    return true;
  }

  const std::vector<ComplexMatrix>& basis() const { return basis_; }

 private:
  double tol_;
  std::vector<ComplexMatrix> basis_;
};

}  // namespace

std::vector<ComplexMatrix> omega_basis(const SpectralTriple& t, int max_degree) {
  if (max_degree < 0 || max_degree > 4) {
    throw Error(ErrorCode::invalid_argument, "max_degree must lie in 0..4");
  }
  const auto& a = t.algebra();
  std::vector<ComplexMatrix> derivations;
  for (const auto& p : a.projections()) derivations.push_back(commutator(t.dirac(), p));

  SpanReducer all(kAlgebraTol);
  // words = span{[D,a1]...[D,an]} for the current n, starting from {I}.
  std::vector<ComplexMatrix> words{identity(t.rep_dim())};
  for (int n = 0; n <= max_degree; ++n) {
    if (n > 0) {
      SpanReducer next(kAlgebraTol);
      for (const auto& dp : derivations) {
        for (const auto& w : words) next.add(dp * w);
      }
      words = next.basis();
    }
    for (const auto& p : a.projections()) {
      for (const auto& w : words) all.add(p * w);
    }
  }
  return all.basis();
}

SpectralTriple direct_sum(const SpectralTriple& t1, const SpectralTriple& t2) {
  if (t1.parity() != t2.parity()) throw Error(ErrorCode::parity_mismatch, "summands differ in parity");
  if (t1.real_structure().has_value() != t2.real_structure().has_value()) {
    throw Error(ErrorCode::real_structure_mismatch, "either both summands carry J or neither does");
  }
  const auto n1 = t1.rep_dim(), n2 = t2.rep_dim();
  std::vector<ComplexMatrix> ps;
  std::vector<std::string> labels;
  for (int i = 0; i < t1.num_characters(); ++i) {
    ps.push_back(block_diagonal(t1.algebra().projection(i), ComplexMatrix::Zero(n2, n2)));
    labels.push_back(t1.labels()[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < t2.num_characters(); ++i) {
    ps.push_back(block_diagonal(ComplexMatrix::Zero(n1, n1), t2.algebra().projection(i)));
    labels.push_back(t2.labels()[static_cast<std::size_t>(i)]);
  }
  std::optional<ComplexMatrix> g;
  if (t1.is_even()) g = block_diagonal(*t1.grading(), *t2.grading());
  std::optional<AntiunitaryOperator> j;
  if (t1.real_structure()) {
    j = AntiunitaryOperator(block_diagonal(t1.real_structure()->unitary_part(),
                                           t2.real_structure()->unitary_part()));
  }
  return SpectralTriple(FiniteCommutativeAlgebra(std::move(ps), std::move(labels)),
                        block_diagonal(t1.dirac(), t2.dirac()), std::move(g), std::move(j), t1.parity());
}

SpectralTriple direct_sum(std::span<const SpectralTriple> ts) {
  if (ts.empty()) throw Error(ErrorCode::invalid_argument, "direct sum of nothing");
  SpectralTriple acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = direct_sum(acc, ts[i]);
  return acc;
}

SpectralTriple representation_sum(const SpectralTriple& t1, const SpectralTriple& t2) {
  if (t1.num_characters() != t2.num_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "representation sum needs the same characters");
  }
  if (t1.parity() != t2.parity()) throw Error(ErrorCode::parity_mismatch, "summands differ in parity");
  if (t1.real_structure().has_value() != t2.real_structure().has_value()) {
    throw Error(ErrorCode::real_structure_mismatch, "either both summands carry J or neither does");
  }
  std::vector<ComplexMatrix> ps;
  for (int i = 0; i < t1.num_characters(); ++i) {
    ps.push_back(block_diagonal(t1.algebra().projection(i), t2.algebra().projection(i)));
  }
  std::optional<ComplexMatrix> g;
  if (t1.is_even()) g = block_diagonal(*t1.grading(), *t2.grading());
  std::optional<AntiunitaryOperator> j;
  if (t1.real_structure()) {
    j = AntiunitaryOperator(block_diagonal(t1.real_structure()->unitary_part(),
                                           t2.real_structure()->unitary_part()));
  }
  return SpectralTriple(FiniteCommutativeAlgebra(std::move(ps), t1.labels()),
                        block_diagonal(t1.dirac(), t2.dirac()), std::move(g), std::move(j), t1.parity());
}

namespace {

std::vector<int> number_components(Components& uf, int k) {
  std::vector<int> label(static_cast<std::size_t>(k), -1);
  std::vector<int> root_label(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int i = 0; i < k; ++i) {
    const int r = uf.find(i);
    if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = next++;
    label[static_cast<std::size_t>(i)] = root_label[static_cast<std::size_t>(r)];
  }
  return label;
}

}  // namespace

std::vector<int> dirac_components(const SpectralTriple& t, double tol) {
  Components uf(t.num_characters());
  couple_through(t.algebra(), t.dirac(), tol, uf);
  return number_components(uf, t.num_characters());
}

std::vector<int> coupling_components(const SpectralTriple& t, double tol) {
  const int k = t.num_characters();
  Components uf(k);
  const auto& a = t.algebra();
  couple_through(a, t.dirac(), tol, uf);
  if (t.grading()) couple_through(a, *t.grading(), tol, uf);
  if (t.real_structure()) {
    // J maps the fiber of j onto range(U conj(P_j)).
    const auto& u = t.real_structure()->unitary_part();
    if (a.is_coordinate()) {
      couple_through(a, u, tol, uf);
    } else {
      for (int j = 0; j < k; ++j) {
        const ComplexMatrix image = u * a.projection(j).conjugate();
        for (int i = 0; i < k; ++i) {
          if (i != j && operator_norm(a.projection(i) * image) > tol) uf.join(i, j);
        }
      }
    }
  }
  return number_components(uf, k);
}

int count_components(std::span<const int> component_of) {
  int m = -1;
  for (int c : component_of) m = std::max(m, c);
  return m + 1;
}

ComplexMatrix character_isometry(const FiniteCommutativeAlgebra& a, std::span<const int> chars) {
  std::vector<ComplexVector> cols;
  for (int c : chars) {
    if (a.is_coordinate()) {
      for (int d : a.fiber(c)) {
        ComplexVector e = ComplexVector::Zero(a.rep_dim());
        e(d) = 1.0;
        cols.push_back(e);
      }
    } else {
      const auto eig = hermitian_eig(a.projection(c));
      for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > 0.5) cols.push_back(eig.vectors.col(i));
      }
    }
  }
  ComplexMatrix v(a.rep_dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = cols[i];
  return v;
}

Compression compress(const SpectralTriple& t, std::span<const int> chars) {
  const auto& a = t.algebra();
  const ComplexMatrix v = character_isometry(a, chars);
  const ComplexMatrix outside = identity(t.rep_dim()) - v * v.adjoint();
  double leak = max_abs(outside * t.dirac() * v) / std::max(1.0, max_abs(t.dirac()));
  if (t.grading()) leak = std::max(leak, max_abs(outside * *t.grading() * v));
  if (t.real_structure()) {
    leak = std::max(leak, max_abs(outside * t.real_structure()->unitary_part() * v.conjugate()));
  }
  if (leak > kEquivalenceTol) {
    throw Error(ErrorCode::not_invariant, "character subspace is not invariant (leak " +
                                              std::to_string(leak) + ")");
  }

  std::vector<int> assignment;
  std::vector<std::string> labels;
  int local = 0;
  for (int c : chars) {
    for (int r = 0; r < a.fiber_rank(c); ++r) assignment.push_back(local);
    labels.push_back(a.labels()[static_cast<std::size_t>(c)]);
    ++local;
  }
  auto sub = function_algebra(local, static_cast<int>(v.cols()), assignment);
  FiniteCommutativeAlgebra algebra(sub.projections(), std::move(labels));

  ComplexMatrix d = v.adjoint() * t.dirac() * v;
  d = 0.5 * (d + d.adjoint());
  std::optional<ComplexMatrix> g;
  if (t.grading()) {
    ComplexMatrix gg = v.adjoint() * *t.grading() * v;
    g = 0.5 * (gg + gg.adjoint());
  }
  std::optional<AntiunitaryOperator> j;
  if (t.real_structure()) {
    j = AntiunitaryOperator(v.adjoint() * t.real_structure()->unitary_part() * v.conjugate());
  }
  return {SpectralTriple(std::move(algebra), std::move(d), std::move(g), std::move(j), t.parity()), v};
}

AlgebraHom Decomposition::reassembly_hom() const {
  std::vector<int> m;
  int total = 0;
  for (const auto& cs : characters) {
    m.insert(m.end(), cs.begin(), cs.end());
    total += static_cast<int>(cs.size());
  }
  return AlgebraHom(total, std::move(m));
}

ComplexMatrix Decomposition::reassembly_unitary() const {
  Eigen::Index rows = 0, cols = isometries.empty() ? 0 : isometries.front().rows();
  for (const auto& v : isometries) rows += v.cols();
  ComplexMatrix out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& v : isometries) {
    out.middleRows(r, v.cols()) = v.adjoint();
    r += v.cols();
  }
  return out;
}

Decomposition decompose(const SpectralTriple& t) {
  const auto comp = coupling_components(t);
  const int m = count_components(comp);
  Decomposition out;
  out.characters.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < t.num_characters(); ++i) {
    out.characters[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])].push_back(i);
  }
  for (const auto& cs : out.characters) {
    auto c = compress(t, cs);
    out.components.push_back(std::move(c.triple));
    out.isometries.push_back(std::move(c.isometry));
  }
  return out;
}

Report check_unitary_equivalence(const SpectralTriple& t1, const SpectralTriple& t2,
                                 const AlgebraHom& phi, const ComplexMatrix& unitary, double tol) {
  Report r;
  const bool hom_ok = phi.source_characters() == t1.num_characters() &&
                      phi.target_characters() == t2.num_characters() &&
                      t1.num_characters() == t2.num_characters() && check_epimorphism(phi);
  r.add_flag("hom_bijective", hom_ok);
  const bool shape_ok = unitary.rows() == t2.rep_dim() && unitary.cols() == t1.rep_dim();
  r.add_flag("witness_shape", shape_ok);
  r.add_flag("parity_matches", t1.parity() == t2.parity());
  r.add_flag("real_structure_presence_matches",
             t1.real_structure().has_value() == t2.real_structure().has_value());
  if (!hom_ok || !shape_ok) return r;

  r.add("witness_unitary", unitary_residual(unitary), tol);
  double alg = 0.0;
  for (int i = 0; i < t1.num_characters(); ++i) {
    const ComplexMatrix lhs = t2.represent(phi.apply(AlgebraElement::basis(t1.num_characters(), i))) * unitary;
    alg = std::max(alg, max_abs(lhs - unitary * t1.algebra().projection(i)));
  }
  r.add("intertwines_algebra", alg, tol);
  r.add("intertwines_dirac", max_abs(unitary * t1.dirac() - t2.dirac() * unitary),
        tol * std::max({1.0, max_abs(t1.dirac()), max_abs(t2.dirac())}));
  if (t1.is_even() && t2.is_even()) {
    r.add("intertwines_grading", max_abs(unitary * *t1.grading() - *t2.grading() * unitary), tol);
  }
  if (t1.real_structure() && t2.real_structure()) {
    r.add("intertwines_real_structure",
          max_abs(unitary * t1.real_structure()->unitary_part() -
                  t2.real_structure()->unitary_part() * unitary.conjugate()),
          tol);
  }
  return r;
}

SpectralTriple transport(const SpectralTriple& t, const ComplexMatrix& unitary, std::span<const int> perm) {
  const int k = t.num_characters();
  if (static_cast<int>(perm.size()) != k) throw Error(ErrorCode::invalid_argument, "permutation size");
  if (unitary.rows() != t.rep_dim() || unitary.cols() != t.rep_dim()) {
    throw Error(ErrorCode::shape_mismatch, "transport unitary must act on the representation space");
  }
  std::vector<ComplexMatrix> ps;
  std::vector<std::string> labels;
  for (int j = 0; j < k; ++j) {
    const int src = perm[static_cast<std::size_t>(j)];
    ComplexMatrix p = unitary * t.algebra().projection(src) * unitary.adjoint();
    ps.push_back(0.5 * (p + p.adjoint()));
    labels.push_back(t.labels()[static_cast<std::size_t>(src)]);
  }
  ComplexMatrix d = unitary * t.dirac() * unitary.adjoint();
  d = 0.5 * (d + d.adjoint());
  std::optional<ComplexMatrix> g;
  if (t.grading()) {
    ComplexMatrix gg = unitary * *t.grading() * unitary.adjoint();
    g = 0.5 * (gg + gg.adjoint());
  }
  std::optional<AntiunitaryOperator> j;
  if (t.real_structure()) {
    j = AntiunitaryOperator(unitary * t.real_structure()->unitary_part() * unitary.transpose());
  }
  return SpectralTriple(FiniteCommutativeAlgebra(std::move(ps), std::move(labels)), std::move(d),
                        std::move(g), std::move(j), t.parity());
}

}  // namespace sptk
