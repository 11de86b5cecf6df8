#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "pythlab/exact_linalg.hpp"
#include "pythlab/rational.hpp"

namespace pythlab {

// Symmetric n x n unknown Q, described by its upper-triangular slots, subject to
// exact linear equations over those slots.
class GramProblem {
 public:
  struct Constraint {
    std::vector<std::pair<std::size_t, Rat>> terms;  // (slot, coefficient)
    Rat rhs;
  };

  explicit GramProblem(std::size_t n);

  std::size_t dim() const { return n_; }
  std::size_t slot_count() const { return slots_.size(); }
  std::size_t slot(std::size_t i, std::size_t j) const;
  const std::pair<std::size_t, std::size_t>& slot_position(std::size_t s) const { return slots_[s]; }
  // Frobenius weight of a slot: 1 on the diagonal, 2 off it.
  double slot_weight(std::size_t s) const { return slots_[s].first == slots_[s].second ? 1.0 : 2.0; }

  void add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  bool satisfied_exactly(const RatMatrix& q) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
  std::vector<std::size_t> slot_index_;
  std::vector<Constraint> constraints_;
};

struct NumericOptions {
  double tolerance = 1e-9;
  long max_iterations = 100000;
  // Eigenvalues are clipped at this floor.
  double eigen_floor = 0.0;
};

struct NumericResult {
  Eigen::MatrixXd affine_point;  // last iterate on the affine set
  double gap = 0.0;              // Frobenius distance between the two sets at the end
  long iterations = 0;
  bool converged = false;
};

// Orthogonal projections (Frobenius metric) onto the affine constraint set.
class AffineProjector {
 public:
  explicit AffineProjector(const GramProblem& problem);
  Eigen::MatrixXd project(const Eigen::MatrixXd& q) const;
  // Exact projection of a rational point; nullopt when the constraints are inconsistent.
  std::optional<RatMatrix> project_exact(const RatMatrix& q) const;

 private:
  const GramProblem& problem_;
  Eigen::MatrixXd a_;        // constraints x slots
  Eigen::VectorXd b_;
  Eigen::VectorXd winv_;     // inverse slot weights
  Eigen::MatrixXd gram_pinv_;
  RatMatrix exact_gram_;     // A W^-1 A^T
  bool diagonal_gram_ = false;
};

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& q, double floor = 0.0);

// Alternating projections between the affine set and the PSD cone.
NumericResult alternating_projections(const GramProblem& problem, const AffineProjector& projector,
                                      const NumericOptions& opts, const Eigen::MatrixXd* start = nullptr);

// Rounds a numeric Gram point entrywise at increasing denominator bounds, projects
// exactly onto the constraints and keeps the first exactly-PSD result.
std::optional<RatMatrix> round_to_psd(const GramProblem& problem, const AffineProjector& projector,
                                      const Eigen::MatrixXd& q, const Int& max_denominator);

std::vector<Int> denominator_ladder(const Int& max_denominator);

}  // namespace pythlab
