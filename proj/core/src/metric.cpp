#include "sptk/metric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "sptk/errors.hpp"

namespace sptk {

namespace {

// Nonzero entries of one K_i = i[D, P_i] in a coordinate basis.
struct Sparse {
  std::vector<Eigen::Index> row, col;
  std::vector<Complex> val;
  std::size_t nnz() const { return val.size(); }
};

// The operators K_i of one coupling component. K(x) = sum x_i K_i is block
// diagonal on `groups` for every x; indices outside all groups carry K = 0.
struct Structure {
  Eigen::Index dim = 0;
  std::vector<Sparse> ks;
  std::vector<std::vector<Eigen::Index>> groups;
  bool pairwise = true;  // Hessian by sparse pairs instead of dense products
};

void finish_structure(Structure& s) {
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(s.dim));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  };
  double nnz = 0.0;
  for (const auto& k : s.ks) {
    nnz += static_cast<double>(k.nnz());
    for (std::size_t e = 0; e < k.nnz(); ++e) parent[static_cast<std::size_t>(find(k.row[e]))] = find(k.col[e]);
  }
  std::vector<std::vector<Eigen::Index>> by_root(static_cast<std::size_t>(s.dim));
  for (Eigen::Index i = 0; i < s.dim; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(i);
  double dense = 0.0;
  for (auto& g : by_root) {
    if (g.size() < 2) continue;
    dense += static_cast<double>(g.size() * g.size());
    s.groups.push_back(std::move(g));
  }
  const double r = static_cast<double>(s.ks.size());
  s.pairwise = nnz * nnz <= nnz * static_cast<double>(s.dim) + r * r * dense;
}

// Re tr(A K) = Re sum A(c, r) K(r, c).
double trace_with(const ComplexMatrix& a, const Sparse& k) {
  Complex s = 0.0;
  for (std::size_t e = 0; e < k.nnz(); ++e) s += a(k.col[e], k.row[e]) * k.val[e];
  return s.real();
}

// K(x) = sum_i x_i K_i / scale.
ComplexMatrix assemble(const std::vector<Sparse>& ks, const RealVector& x, Eigen::Index n, double scale) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double xi = x(static_cast<Eigen::Index>(i)) / scale;
    if (xi == 0.0) continue;
    const auto& k = ks[i];
    for (std::size_t e = 0; e < k.nnz(); ++e) m(k.row[e], k.col[e]) += xi * k.val[e];
  }
  return m;
}

struct BlockResult {
  RealVector x;  // minimizer of ||K(x)|| on c.x = 1
  double norm = 0.0;
  double residual = 0.0;
};

// Log-det barrier method for min t s.t. -tI <= K(x0 + N z) <= tI.
class BarrierSolver {
 public:
  BarrierSolver(const Structure& s, const SolverOptions& opt) : s_(s), ks_(s.ks), n_(s.dim), opt_(opt) {}

  BlockResult solve(const RealVector& c) {
    const auto r = c.size();
    BlockResult out;
    const RealVector x0 = c / c.squaredNorm();
    if (r == 1) {
      out.x = x0;
      out.norm = hermitian_norm(assemble(ks_, x0, n_, 1.0));
      return out;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(c)};
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
    nbasis_ = q.rightCols(r - 1);
    x0_ = x0;
    scale_ = hermitian_norm(assemble(ks_, x0, n_, 1.0));

    const Eigen::Index m = r - 1;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m + 1);  // (t, z)
    y(0) = 1.5;
    double barrier_dim = 0.0;
    for (const auto& g : s_.groups) barrier_dim += 2.0 * static_cast<double>(g.size());
    double tau = barrier_dim;
    int steps = 0;
    double gap = barrier_dim / tau;
    while (steps < opt_.max_newton_steps) {
      const bool stalled = center(y, tau, steps);
      gap = barrier_dim / tau;
      const double lower = y(0) - gap;
      if (stalled || gap <= opt_.gap_tolerance * std::max(lower, 1e-300)) break;
      tau *= 10.0;
    }
    out.x = x0_ + nbasis_ * y.tail(m);
    out.norm = hermitian_norm(assemble(ks_, out.x, n_, 1.0));
    out.residual = gap / std::max(y(0) - gap, 1e-300);
    return out;
  }

 private:
  using Factors = std::vector<Eigen::LLT<ComplexMatrix>>;

  RealVector x_of(const Eigen::VectorXd& y) const { return x0_ + nbasis_ * y.tail(y.size() - 1); }

  // Barrier value; false when (t, x) is outside the cone. Factors are stored
  // as (plus, minus) per group.
  bool value(const Eigen::VectorXd& y, double tau, double& f, Factors* factors = nullptr) const {
    const ComplexMatrix kx = assemble(ks_, x_of(y), n_, scale_);
    double logdet = 0.0;
    for (const auto& g : s_.groups) {
      const auto b = static_cast<Eigen::Index>(g.size());
      const ComplexMatrix sub = kx(g, g);
      const ComplexMatrix ti = y(0) * ComplexMatrix::Identity(b, b);
      Eigen::LLT<ComplexMatrix> plus(ti - sub), minus(ti + sub);
      if (plus.info() != Eigen::Success || minus.info() != Eigen::Success) return false;
      for (Eigen::Index i = 0; i < b; ++i) {
        const double p = plus.matrixLLT()(i, i).real(), q = minus.matrixLLT()(i, i).real();
        if (!(p > 0.0) || !(q > 0.0)) return false;
        logdet += 2.0 * (std::log(p) + std::log(q));
      }
      if (factors) {
        factors->push_back(std::move(plus));
        factors->push_back(std::move(minus));
      }
    }
    f = tau * y(0) - logdet;
    return std::isfinite(f);
  }

  // Newton centering at fixed tau. Returns true if the line search stalled.
  bool center(Eigen::VectorXd& y, double tau, int& steps) {
    const Eigen::Index m = y.size() - 1;
    const auto r = static_cast<Eigen::Index>(ks_.size());
    for (int it = 0; it < 100 && steps < opt_.max_newton_steps; ++it, ++steps) {
      double f = 0.0;
      Factors factors;
      if (!value(y, tau, f, &factors)) return true;
      // Block-diagonal inverses W+- = (tI -+ K)^-1 and their squares.
      ComplexMatrix wp = ComplexMatrix::Zero(n_, n_), wm = wp, wp2 = wp, wm2 = wp;
      for (std::size_t gi = 0; gi < s_.groups.size(); ++gi) {
        const auto& g = s_.groups[gi];
        const auto b = static_cast<Eigen::Index>(g.size());
        const ComplexMatrix ib = ComplexMatrix::Identity(b, b);
        const ComplexMatrix p = factors[2 * gi].solve(ib), q = factors[2 * gi + 1].solve(ib);
        wp(g, g) = p;
        wm(g, g) = q;
        wp2(g, g) = p * p;
        wm2(g, g) = q * q;
      }
      const ComplexMatrix wdiff = wp - wm;
      const ComplexMatrix w2diff = wm2 - wp2;

      RealVector gx(r), htx(r);
      Eigen::MatrixXd hxx(r, r);
      for (Eigen::Index i = 0; i < r; ++i) {
        gx(i) = trace_with(wdiff, ks_[static_cast<std::size_t>(i)]) / scale_;
        htx(i) = trace_with(w2diff, ks_[static_cast<std::size_t>(i)]) / scale_;
      }
      hessian(wp, wm, hxx);

      Eigen::VectorXd g(m + 1);
      Eigen::MatrixXd h(m + 1, m + 1);
      g(0) = tau - wp.trace().real() - wm.trace().real();
      g.tail(m) = nbasis_.transpose() * gx;
      h(0, 0) = wp.squaredNorm() + wm.squaredNorm();
      h.block(1, 0, m, 1) = nbasis_.transpose() * htx;
      h.block(0, 1, 1, m) = h.block(1, 0, m, 1).transpose();
      h.bottomRightCorner(m, m) = nbasis_.transpose() * hxx * nbasis_;

      const Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
      const Eigen::VectorXd dy = -ldlt.solve(g);
      const double decrement = -g.dot(dy);
      if (!(decrement >= 0.0) || !dy.allFinite()) return true;
      if (decrement < 1e-6) return false;

      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Eigen::VectorXd trial = y + alpha * dy;
        double ft = 0.0;
        if (value(trial, tau, ft) && ft <= f - 0.25 * alpha * decrement) {
          y = trial;
          moved = true;
          break;
        }
      }
      if (!moved) return true;
    }
    return false;
  }

  // H_il = Re tr(W+ K_i W+ K_l) + Re tr(W- K_i W- K_l), scaled by 1/scale^2.
  void hessian(const ComplexMatrix& wp, const ComplexMatrix& wm, Eigen::MatrixXd& h) const {
    const auto r = static_cast<Eigen::Index>(ks_.size());
    const double s2 = scale_ * scale_;
    if (s_.pairwise) {
      for (Eigen::Index i = 0; i < r; ++i) {
        const auto& ki = ks_[static_cast<std::size_t>(i)];
        for (Eigen::Index l = i; l < r; ++l) {
          const auto& kl = ks_[static_cast<std::size_t>(l)];
          Complex s = 0.0;
          for (std::size_t a = 0; a < ki.nnz(); ++a) {
            for (std::size_t b = 0; b < kl.nnz(); ++b) {
              // K_i(p,q) W(q,u) K_l(u,v) W(v,p)
              const auto p = ki.row[a], q = ki.col[a], u = kl.row[b], v = kl.col[b];
              s += ki.val[a] * kl.val[b] * (wp(q, u) * wp(v, p) + wm(q, u) * wm(v, p));
            }
          }
          h(i, l) = h(l, i) = s.real() / s2;
        }
      }
      return;
    }
    // Y_i = W K_i, then tr(Y_i Y_l) = sum Y_i .* Y_l^T.
    std::vector<ComplexMatrix> yp(static_cast<std::size_t>(r)), ym(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) {
      const auto& k = ks_[static_cast<std::size_t>(i)];
      auto& p = yp[static_cast<std::size_t>(i)];
      auto& q = ym[static_cast<std::size_t>(i)];
      p = ComplexMatrix::Zero(n_, n_);
      q = ComplexMatrix::Zero(n_, n_);
      for (std::size_t e = 0; e < k.nnz(); ++e) {
        p.col(k.col[e]) += wp.col(k.row[e]) * k.val[e];
        q.col(k.col[e]) += wm.col(k.row[e]) * k.val[e];
      }
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index l = i; l < r; ++l) {
        const auto si = static_cast<std::size_t>(i), sl = static_cast<std::size_t>(l);
        const Complex s = yp[si].cwiseProduct(yp[sl].transpose()).sum() +
                          ym[si].cwiseProduct(ym[sl].transpose()).sum();
        h(i, l) = h(l, i) = s.real() / s2;
      }
    }
  }

  const Structure& s_;
  const std::vector<Sparse>& ks_;
  Eigen::Index n_;
  const SolverOptions& opt_;
  Eigen::MatrixXd nbasis_;
  RealVector x0_;
  double scale_ = 1.0;
};

std::vector<double> state_difference(const State& a, const State& b) {
  std::vector<double> c(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) c[static_cast<std::size_t>(i)] = a.weight(i) - b.weight(i);
  return c;
}

void require_states(int k, const State& a, const State& b) {
  if (a.size() != k || b.size() != k) {
    throw Error(ErrorCode::algebra_mismatch, "state size does not match the number of characters");
  }
}

}  // namespace

struct DistanceSolver::Block {
  std::vector<int> chars;  // global indices; the last one is pinned to 0
  Structure structure;     // K_i for every character but the last
};

DistanceSolver::~DistanceSolver() = default;
DistanceSolver::DistanceSolver(DistanceSolver&&) noexcept = default;
DistanceSolver& DistanceSolver::operator=(DistanceSolver&&) noexcept = default;

DistanceSolver::DistanceSolver(const SpectralTriple& t, SolverOptions options)
    : k_(t.num_characters()), options_(options) {
  component_of_ = dirac_components(t, options_.coupling_tolerance);
  const int nc = count_components(component_of_);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(nc));
  for (int i = 0; i < k_; ++i) members[static_cast<std::size_t>(component_of_[static_cast<std::size_t>(i)])].push_back(i);

  const auto& a = t.algebra();
  for (auto& chars : members) {
    Block b;
    b.chars = chars;
    const ComplexMatrix v = character_isometry(a, chars);
    const ComplexMatrix d = v.adjoint() * t.dirac() * v;
    auto& st = b.structure;
    st.dim = d.rows();
    std::vector<int> owner;
    for (std::size_t c = 0; c < chars.size(); ++c) {
      for (int r = 0; r < a.fiber_rank(chars[c]); ++r) owner.push_back(static_cast<int>(c));
    }
    st.ks.resize(chars.size() - 1);
    for (Eigen::Index p = 0; p < st.dim; ++p) {
      for (Eigen::Index q = 0; q < st.dim; ++q) {
        const int op = owner[static_cast<std::size_t>(p)], oq = owner[static_cast<std::size_t>(q)];
        if (op == oq || d(p, q) == Complex(0.0)) continue;
        // i[D,P](p,q) = i D(p,q) (P(q) - P(p))
        const Complex idpq = Complex(0.0, 1.0) * d(p, q);
        if (static_cast<std::size_t>(oq) < st.ks.size()) {
          auto& k = st.ks[static_cast<std::size_t>(oq)];
          k.row.push_back(p), k.col.push_back(q), k.val.push_back(idpq);
        }
        if (static_cast<std::size_t>(op) < st.ks.size()) {
          auto& k = st.ks[static_cast<std::size_t>(op)];
          k.row.push_back(p), k.col.push_back(q), k.val.push_back(-idpq);
        }
      }
    }
    finish_structure(st);
    blocks_.push_back(std::move(b));
  }
}

DistanceValue DistanceSolver::distance(int i, int j) const {
  return distance(State::pure(k_, i), State::pure(k_, j));
}

DistanceValue DistanceSolver::distance(const State& a, const State& b) const {
  require_states(k_, a, b);
  if (a == b) return DistanceValue::zero(k_);
  const auto c = state_difference(a, b);

  for (const auto& blk : blocks_) {
    double mass = 0.0;
    for (int ch : blk.chars) mass += c[static_cast<std::size_t>(ch)];
    if (std::abs(mass) > 1e-12) return DistanceValue::infinity();
  }

  DistanceValue out;
  out.certificate.assign(static_cast<std::size_t>(k_), 0.0);
  for (const auto& blk : blocks_) {
    const auto r = static_cast<Eigen::Index>(blk.structure.ks.size());
    RealVector local(r);
    for (Eigen::Index i = 0; i < r; ++i) local(i) = c[static_cast<std::size_t>(blk.chars[static_cast<std::size_t>(i)])];
    if (r == 0 || local.cwiseAbs().maxCoeff() == 0.0) continue;

    BarrierSolver solver(blk.structure, options_);
    const BlockResult res = solver.solve(local);
    const double part = local.dot(res.x) / res.norm;
    out.value += part;
    out.solver_residual = std::max(out.solver_residual, res.residual);
    for (Eigen::Index i = 0; i < r; ++i) {
      out.certificate[static_cast<std::size_t>(blk.chars[static_cast<std::size_t>(i)])] = res.x(i) / res.norm;
    }
  }
  return out;
}

DistanceValue connes_distance(const SpectralTriple& t, const State& a, const State& b,
                              const SolverOptions& options) {
  require_states(t.num_characters(), a, b);
  if (a == b) return DistanceValue::zero(t.num_characters());
  return DistanceSolver(t, options).distance(a, b);
}

double lipschitz_seminorm(const SpectralTriple& t, std::span<const double> x) {
  if (static_cast<int>(x.size()) != t.num_characters()) {
    throw Error(ErrorCode::algebra_mismatch, "element size does not match the number of characters");
  }
  return operator_norm(commutator(t.dirac(), t.algebra().represent_real(x)));
}

namespace {

std::vector<ComplexMatrix> commutators(const SpectralTriple& t) {
  std::vector<ComplexMatrix> out;
  for (const auto& p : t.algebra().projections()) out.push_back(commutator(t.dirac(), p));
  return out;
}

// Scan axis (largest |c_i|) and gauge coordinate pinned to 0.
std::pair<int, int> grid_frame(const std::vector<double>& c) {
  int scan = 0;
  for (int i = 1; i < static_cast<int>(c.size()); ++i) {
    if (std::abs(c[static_cast<std::size_t>(i)]) > std::abs(c[static_cast<std::size_t>(scan)])) scan = i;
  }
  const int gauge = scan == 0 ? 1 : 0;
  return {scan, gauge};
}

constexpr double kFeasibleSlack = 1e-12;

// ||m|| <= 1 for a Hermitian m, with cheap entrywise shortcuts.
bool within_unit_ball(const ComplexMatrix& m) {
  if (max_abs(m) > 1.0 + kFeasibleSlack) return false;
  if (m.norm() <= 1.0) return true;
  return hermitian_norm(m) <= 1.0 + kFeasibleSlack;
}

void validate_grid(int k, const BruteForceOptions& o) {
  if (k > 4) throw Error(ErrorCode::too_many_characters, "brute force supports at most 4 characters");
  if (o.grid < 2 || !(o.box > 0.0)) throw Error(ErrorCode::invalid_argument, "grid needs box > 0 and at least 2 points");
}

double brute_force_real(const std::vector<ComplexMatrix>& ks, const std::vector<double>& c,
                        const BruteForceOptions& o) {
  const int k = static_cast<int>(c.size());
  const auto [scan, gauge] = grid_frame(c);
  std::vector<int> others;
  for (int i = 0; i < k; ++i) {
    if (i != scan && i != gauge) others.push_back(i);
  }
  const double h = 2.0 * o.box / (o.grid - 1);
  auto coord = [&](int g) { return -o.box + h * g; };
  const double cs = c[static_cast<std::size_t>(scan)];

  double best = 0.0;
  std::vector<int> idx(others.size(), 0);
  const Eigen::Index n = ks[0].rows();
  for (;;) {
    double base = 0.0;
    ComplexMatrix kbase = ComplexMatrix::Zero(n, n);
    for (std::size_t o2 = 0; o2 < others.size(); ++o2) {
      const double x = coord(idx[o2]);
      base += c[static_cast<std::size_t>(others[o2])] * x;
      kbase += x * ks[static_cast<std::size_t>(others[o2])];
    }
    // Objective increases along the scan direction from this end.
    for (int s = 0; s < o.grid; ++s) {
      const int g = cs > 0 ? o.grid - 1 - s : s;
      const double x = coord(g);
      const double obj = base + cs * x;
      if (obj <= best) break;
      if (within_unit_ball(kbase + x * ks[static_cast<std::size_t>(scan)])) {
        best = obj;
        break;
      }
    }
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == o.grid) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return best;
}

double brute_force_complex(const std::vector<ComplexMatrix>& cs, const std::vector<double>& c,
                           const BruteForceOptions& o) {
  const int k = static_cast<int>(c.size());
  const int gauge = grid_frame(c).second;
  std::vector<int> free;
  for (int i = 0; i < k; ++i) {
    if (i != gauge) free.push_back(i);
  }
  const std::size_t dims = 2 * free.size();
  double points = 1.0;
  for (std::size_t d = 0; d < dims; ++d) points *= o.grid;
  if (points > static_cast<double>(o.max_points)) {
    throw Error(ErrorCode::too_many_grid_points, "complex grid search exceeds the point guard");
  }
  const double h = 2.0 * o.box / (o.grid - 1);
  const Eigen::Index n = cs[0].rows();
  double best = 0.0;
  std::vector<int> idx(dims, 0);
  for (;;) {
    Complex obj = 0.0;
    std::vector<Complex> x(free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
      x[f] = Complex(-o.box + h * idx[2 * f], -o.box + h * idx[2 * f + 1]);
      obj += c[static_cast<std::size_t>(free[f])] * x[f];
    }
    if (std::abs(obj) > best) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      for (std::size_t f = 0; f < free.size(); ++f) m += x[f] * cs[static_cast<std::size_t>(free[f])];
      if (max_abs(m) <= 1.0 + kFeasibleSlack &&
          hermitian_norm(m.adjoint() * m) <= (1.0 + kFeasibleSlack) * (1.0 + kFeasibleSlack)) {
        best = std::abs(obj);
      }
    }
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == o.grid) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return best;
}

}  // namespace

double brute_force_distance(const SpectralTriple& t, const State& a, const State& b,
                            const BruteForceOptions& options) {
  const int k = t.num_characters();
  validate_grid(k, options);
  require_states(k, a, b);
  const auto c = state_difference(a, b);
  if (k == 1 || std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) return 0.0;
  auto cs = commutators(t);
  if (options.complex_search) return brute_force_complex(cs, c, options);
  for (auto& m : cs) m *= Complex(0.0, 1.0);
  return brute_force_real(cs, c, options);
}

double oracle_gap_bound(const SpectralTriple& t, const State& a, const State& b, const DistanceValue& d,
                        const BruteForceOptions& options) {
  const int k = t.num_characters();
  validate_grid(k, options);
  require_states(k, a, b);
  if (d.infinite) return INFINITY;
  if (d.value == 0.0) return 0.0;
  const auto c = state_difference(a, b);
  const double h = 2.0 * options.box / (options.grid - 1);
  double lip = 0.0;
  for (const auto& m : commutators(t)) lip += operator_norm(m);
  const double delta = lip * h / 2.0;
  if (delta >= 1.0) return d.value;
  const int gauge = grid_frame(c).second;
  const double pin = d.certificate.at(static_cast<std::size_t>(gauge));
  for (double x : d.certificate) {
    if ((1.0 - delta) * std::abs(x - pin) > options.box) return INFINITY;
  }
  double l1 = 0.0;
  for (double v : c) l1 += std::abs(v);
  return delta * d.value + l1 * h / 2.0;
}

std::vector<std::vector<double>> DistanceMatrix::values() const {
  std::vector<std::vector<double>> out;
  for (const auto& row : entries) {
    auto& r = out.emplace_back();
    for (const auto& e : row) r.push_back(e.as_double());
  }
  return out;
}

DistanceMatrix distance_matrix(const SpectralTriple& t, const SolverOptions& options) {
  const int k = t.num_characters();
  const DistanceSolver solver(t, options);
  DistanceMatrix out;
  out.labels = t.labels();
  out.entries.assign(static_cast<std::size_t>(k), std::vector<DistanceValue>(static_cast<std::size_t>(k)));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i) {
    out.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = DistanceValue::zero(k);
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t p; (p = next.fetch_add(1)) < pairs.size();) {
      const auto [i, j] = pairs[p];
      out.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = solver.distance(i, j);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.max_threads, static_cast<unsigned>(pairs.size())));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  for (const auto& [i, j] : pairs) {
    auto mirrored = out.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (double& x : mirrored.certificate) x = -x;
    out.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(mirrored);
  }
  return out;
}

bool detect_infinite(const SpectralTriple& t, int i, int j, double tol) {
  const auto comp = dirac_components(t, tol);
  return comp.at(static_cast<std::size_t>(i)) != comp.at(static_cast<std::size_t>(j));
}

}  // namespace sptk
