#include "pythlab/gram.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pythlab {

GramProblem::GramProblem(std::size_t n) : n_(n), slot_index_(n * n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      slot_index_[i * n + j] = slot_index_[j * n + i] = slots_.size();
      slots_.emplace_back(i, j);
    }
}

std::size_t GramProblem::slot(std::size_t i, std::size_t j) const { return slot_index_.at(i * n_ + j); }

bool GramProblem::satisfied_exactly(const RatMatrix& q) const {
  if (q.rows() != n_ || !q.is_symmetric()) return false;
  for (const auto& c : constraints_) {
    Rat s = 0;
    for (const auto& [slot, coef] : c.terms) {
      auto [i, j] = slots_[slot];
      s += coef * q(i, j);
    }
    if (s != c.rhs) return false;
  }
  return true;
}

AffineProjector::AffineProjector(const GramProblem& problem) : problem_(problem) {
  const std::size_t m = problem.constraints().size(), s = problem.slot_count();
  a_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(s));
  b_.resize(static_cast<Eigen::Index>(m));
  winv_.resize(static_cast<Eigen::Index>(s));
  for (std::size_t k = 0; k < s; ++k) winv_(static_cast<Eigen::Index>(k)) = 1.0 / problem.slot_weight(k);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = problem.constraints()[r];
    for (const auto& [slot, coef] : c.terms) a_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(slot)) += coef.get_d();
    b_(static_cast<Eigen::Index>(r)) = c.rhs.get_d();
  }
  Eigen::MatrixXd g = a_ * winv_.asDiagonal() * a_.transpose();
  gram_pinv_ = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(g).pseudoInverse();

  exact_gram_ = RatMatrix(m, m);
  std::vector<Rat> winv_exact(s);
  for (std::size_t k = 0; k < s; ++k) {
    auto [i, j] = problem.slot_position(k);
    winv_exact[k] = (i == j) ? Rat(1) : Rat(1, 2);
  }
  // Sparse rows: accumulate A W^-1 A^T through per-slot incidence lists.
  std::vector<std::vector<std::pair<std::size_t, Rat>>> by_slot(s);
  for (std::size_t r = 0; r < m; ++r)
    for (const auto& [slot, coef] : problem.constraints()[r].terms) by_slot[slot].emplace_back(r, coef);
  for (std::size_t k = 0; k < s; ++k)
    for (const auto& [r1, c1] : by_slot[k])
      for (const auto& [r2, c2] : by_slot[k]) exact_gram_(r1, r2) += c1 * c2 * winv_exact[k];
  diagonal_gram_ = true;
  for (std::size_t i = 0; i < m && diagonal_gram_; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && sgn(exact_gram_(i, j)) != 0) {
        diagonal_gram_ = false;
        break;
      }
}

Eigen::MatrixXd AffineProjector::project(const Eigen::MatrixXd& q) const {
  const std::size_t s = problem_.slot_count();
  Eigen::VectorXd x(static_cast<Eigen::Index>(s));
  for (std::size_t k = 0; k < s; ++k) {
    auto [i, j] = problem_.slot_position(k);
    x(static_cast<Eigen::Index>(k)) = 0.5 * (q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                                             q(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
  }
  if (a_.rows() > 0) {
    Eigen::VectorXd mu = gram_pinv_ * (a_ * x - b_);
    x -= winv_.asDiagonal() * (a_.transpose() * mu);
  }
  const auto n = static_cast<Eigen::Index>(problem_.dim());
  Eigen::MatrixXd out(n, n);
  for (std::size_t k = 0; k < s; ++k) {
    auto [i, j] = problem_.slot_position(k);
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
        x(static_cast<Eigen::Index>(k));
  }
  return out;
}

std::optional<RatMatrix> AffineProjector::project_exact(const RatMatrix& q) const {
  const std::size_t m = problem_.constraints().size(), s = problem_.slot_count();
  std::vector<Rat> x(s);
  for (std::size_t k = 0; k < s; ++k) {
    auto [i, j] = problem_.slot_position(k);
    x[k] = q(i, j);
  }
  std::vector<Rat> residual(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = problem_.constraints()[r];
    Rat v = -c.rhs;
    for (const auto& [slot, coef] : c.terms) v += coef * x[slot];
    residual[r] = v;
  }
  std::vector<Rat> mu;
  if (diagonal_gram_) {
    mu.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(exact_gram_(r, r)) == 0) {
        if (sgn(residual[r]) != 0) return std::nullopt;
        continue;
      }
      mu[r] = residual[r] / exact_gram_(r, r);
    }
  } else {
    auto sol = solve_linear(exact_gram_, residual);
    if (!sol) return std::nullopt;
    mu = std::move(*sol);
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (sgn(mu[r]) == 0) continue;
    for (const auto& [slot, coef] : problem_.constraints()[r].terms) {
      auto [i, j] = problem_.slot_position(slot);
      x[slot] -= (i == j ? Rat(1) : Rat(1, 2)) * coef * mu[r];
    }
  }
  RatMatrix out(problem_.dim(), problem_.dim());
  for (std::size_t k = 0; k < s; ++k) {
    auto [i, j] = problem_.slot_position(k);
    out(i, j) = out(j, i) = x[k];
  }
  return out;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& q, double floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

NumericResult alternating_projections(const GramProblem& problem, const AffineProjector& projector,
                                      const NumericOptions& opts, const Eigen::MatrixXd* start) {
  const auto n = static_cast<Eigen::Index>(problem.dim());
  NumericResult res;
  if (n == 0) {
    res.affine_point = Eigen::MatrixXd(0, 0);
    res.converged = true;
    return res;
  }
  Eigen::MatrixXd x = projector.project(start ? *start : Eigen::MatrixXd::Identity(n, n));
  double scale = std::max(1.0, x.norm());
  double previous_gap = std::numeric_limits<double>::infinity();
  long stall = 0;
  for (long it = 0; it < opts.max_iterations; ++it) {
    Eigen::MatrixXd y = project_psd(x, opts.eigen_floor);
    Eigen::MatrixXd next = projector.project(y);
    double gap = (next - y).norm();
    x = std::move(next);
    res.iterations = it + 1;
    res.gap = gap;
    if (gap <= opts.tolerance * scale) {
      res.converged = true;
      break;
    }
    // Stop once the gap has stopped shrinking.
    if (previous_gap - gap <= 1e-13 * scale) {
      if (++stall >= 200) break;
    } else {
      stall = 0;
    }
    previous_gap = gap;
  }
  res.affine_point = x;
  return res;
}

std::vector<Int> denominator_ladder(const Int& max_denominator) {
  std::vector<Int> out;
  for (unsigned bits : {0u, 1u, 2u, 3u, 4u, 6u, 8u, 10u, 12u, 16u, 20u, 24u, 28u, 32u, 40u, 48u}) {
    Int d = 1;
    d <<= bits;
    if (d > max_denominator) break;
    out.push_back(d);
  }
  if (out.empty() || out.back() != max_denominator) out.push_back(max_denominator);
  return out;
}

namespace {

RatMatrix round_matrix(const Eigen::MatrixXd& q, const Int& den) {
  const std::size_t n = static_cast<std::size_t>(q.rows());
  RatMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = 0.5 * (q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                        q(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
      r(i, j) = r(j, i) = approximate(v, den);
    }
  return r;
}

// Reduced echelon rows (complete pivoting) spanning the eigenvectors of the k smallest eigenvalues.
Eigen::MatrixXd kernel_rows(const Eigen::MatrixXd& vectors, Eigen::Index k) {
  Eigen::MatrixXd z = vectors.leftCols(k).transpose();
  std::vector<bool> used(static_cast<std::size_t>(z.cols()), false);
  for (Eigen::Index row = 0; row < z.rows(); ++row) {
    Eigen::Index pr = row, pc = -1;
    double best = 0;
    for (Eigen::Index r = row; r < z.rows(); ++r)
      for (Eigen::Index c = 0; c < z.cols(); ++c)
        if (!used[static_cast<std::size_t>(c)] && std::abs(z(r, c)) > best) {
          best = std::abs(z(r, c));
          pr = r;
          pc = c;
        }
    if (pc < 0 || best < 1e-8) return z.topRows(row);
    used[static_cast<std::size_t>(pc)] = true;
    z.row(row).swap(z.row(pr));
    z.row(row) /= z(row, pc);
    for (Eigen::Index r = 0; r < z.rows(); ++r)
      if (r != row) z.row(r) -= z(r, pc) * z.row(row);
  }
  return z;
}

// Kernel dimensions at which the spectrum has a clear gap, best gap first.
std::vector<Eigen::Index> kernel_candidates(const Eigen::VectorXd& ev) {
  const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::pair<double, Eigen::Index>> gaps;
  for (Eigen::Index k = 1; k < ev.size(); ++k) {
    double below = std::max(std::abs(ev(k - 1)), 1e-14 * top);
    if (ev(k - 1) < 1e-3 * top && ev(k) > 100 * below) gaps.emplace_back(ev(k) / below, k);
  }
  std::sort(gaps.rbegin(), gaps.rend());
  std::vector<Eigen::Index> out;
  for (const auto& g : gaps) out.push_back(g.second);
  return out;
}

GramProblem restrict_to_kernel(const GramProblem& problem, const Eigen::MatrixXd& z, const Int& den) {
  const std::size_t n = problem.dim();
  GramProblem face = problem;
  for (Eigen::Index k = 0; k < z.rows(); ++k) {
    std::vector<Rat> zr(n);
    for (std::size_t j = 0; j < n; ++j) zr[j] = approximate(z(k, static_cast<Eigen::Index>(j)), den);
    for (std::size_t i = 0; i < n; ++i) {
      GramProblem::Constraint c;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(zr[j]) != 0) c.terms.emplace_back(face.slot(i, j), zr[j]);
      if (!c.terms.empty()) face.add_constraint(std::move(c));
    }
  }
  return face;
}

std::optional<RatMatrix> round_plain(const AffineProjector& projector, const Eigen::MatrixXd& q, const Int& max_denominator) {
  for (const Int& den : denominator_ladder(max_denominator)) {
    auto exact = projector.project_exact(round_matrix(q, den));
    if (!exact) return std::nullopt;
    if (ldlt_psd(*exact).psd) return exact;
  }
  return std::nullopt;
}

// Restrict to the face {Q : Q z = 0} for rounded near-kernel rows z, search again
// inside it and round there.
std::optional<RatMatrix> round_on_face(const GramProblem& problem, const Eigen::MatrixXd& q, const Int& max_denominator) {
  if (problem.dim() > 10) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (q + q.transpose()));
  const double scale = std::max(1.0, q.norm());
  int tried = 0;
  for (Eigen::Index k : kernel_candidates(es.eigenvalues())) {
    if (++tried > 2) break;
    Eigen::MatrixXd z = kernel_rows(es.eigenvectors(), k);
    std::vector<Rat> previous;
    for (const Int& den : denominator_ladder(std::min<Int>(max_denominator, Int(256)))) {
      std::vector<Rat> rounded;
      for (Eigen::Index i = 0; i < z.size(); ++i) rounded.push_back(approximate(z.data()[i], den));
      if (rounded == previous) continue;
      previous = rounded;
      GramProblem face = restrict_to_kernel(problem, z, den);
      AffineProjector projector(face);
      if (!projector.project_exact(round_matrix(q, 1))) continue;
      const Int cap = std::min<Int>(max_denominator, Int(65536));
      if (auto exact = round_plain(projector, q, cap)) return exact;
      NumericOptions opts;
      opts.max_iterations = 2000;
      opts.eigen_floor = 1e-4 * scale / static_cast<double>(q.rows());
      NumericResult res = alternating_projections(face, projector, opts, &q);
      if (auto exact = round_plain(projector, res.affine_point, cap)) return exact;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RatMatrix> round_to_psd(const GramProblem& problem, const AffineProjector& projector,
                                      const Eigen::MatrixXd& q, const Int& max_denominator) {
  if (auto exact = round_plain(projector, q, max_denominator)) return exact;
  if (!projector.project_exact(round_matrix(q, 1))) return std::nullopt;
  return round_on_face(problem, q, max_denominator);
}

}  // namespace pythlab
