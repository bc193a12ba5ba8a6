#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "coloc/indexing.hpp"

namespace coloc {

// Nonnegative descriptor per candidate box plus the frame each row belongs
// to. Frames double as images: rows of the same frame never contribute to the
// appearance similarity.
struct FeatureMatrix {
  Eigen::MatrixXd X;              // one row per box
  std::vector<int> frame_of_row;  // global frame index per row

  int dim() const { return static_cast<int>(X.cols()); }
  Eigen::Index rows() const { return X.rows(); }
};

// Normalized box centers and pixel areas, one row per candidate box.
struct BoxGeometry {
  Eigen::Matrix<double, Eigen::Dynamic, 2> centers;
  Eigen::VectorXd areas;
};

// Exponentiated chi-squared affinity between box descriptors:
//   S_ij = exp(-g * sum_k (x_ik - x_jk)^2 / (x_ik + x_jk)),  g = (10 d)^(-1/2)
// Terms with zero denominator contribute zero. Entries for rows of the same
// image and the diagonal are zero. Throws std::invalid_argument on negative
// features.
Eigen::MatrixXd chi2_similarity(const FeatureMatrix& f,
                                const std::function<bool(Eigen::Index, Eigen::Index)>& same_image);

// Same, with "same image" meaning "same frame" per f.frame_of_row.
Eigen::MatrixXd chi2_similarity(const FeatureMatrix& f);

// I - D^(-1/2) S D^(-1/2) for a symmetric nonnegative affinity with zero
// diagonal. Rows with zero degree stay identity rows. Throws
// std::invalid_argument when S is asymmetric beyond tolerance.
Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& S, double tol = 1e-10);
Eigen::MatrixXd normalized_laplacian(const Eigen::SparseMatrix<double>& S, double tol = 1e-10);

// Quadratic penalty of the ridge regression separating each box from the
// dataset mean:
//   (1/n) P (I - X (X'PX + n k I_d)^(-1) X') P,   P = I - (1/n) 1 1'
// Returned matrix is symmetrized and positive semidefinite, and annihilates
// the all ones vector. kappa must be positive.
Eigen::MatrixXd discriminative_term(const FeatureMatrix& f, double kappa = 0.01);

// Sparse affinity between boxes in adjacent frames of the same video:
//   s = exp(-||c_i - c_j|| - |a_i - a_j| / max(a_i, a_j))
// Throws std::invalid_argument on nonpositive areas.
Eigen::SparseMatrix<double> temporal_similarity(const BoxGeometry& g, const BoxIndexing& ix);

// Linear saliency prior c = -lambda * log(m_hat), with entries of m_hat
// clamped from below at `floor` first. Passing floor <= 0 disables clamping,
// in which case nonpositive priors throw std::invalid_argument.
Eigen::VectorXd saliency_prior_term(const Eigen::VectorXd& m_hat, double lambda,
                                    double floor = 1e-6);

struct Evaluation {
  double value;
  Eigen::VectorXd gradient;
  double curvature;  // d' Q d for the probe direction
};

// f(z) = z' Q z + c' z with symmetric Q; the gradient is 2 Q z + c.
// Immutable after construction; safe to share across threads.
class QuadraticProblem {
 public:
  QuadraticProblem(Eigen::MatrixXd Q, Eigen::VectorXd c);

  Eigen::Index n() const { return c_.size(); }
  const Eigen::MatrixXd& Q() const { return Q_; }
  const Eigen::VectorXd& c() const { return c_; }

  double value(const Eigen::VectorXd& z) const { return z.dot(Q_ * z) + c_.dot(z); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& z) const { return 2.0 * (Q_ * z) + c_; }
  double curvature(const Eigen::VectorXd& d) const { return d.dot(Q_ * d); }
  Evaluation value_grad_curv(const Eigen::VectorXd& z, const Eigen::VectorXd& d) const;

  // Q restricted to a set of columns, summed: sum_j Q.col(j). This is Q times
  // the indicator of the index set, useful because atoms are sparse.
  Eigen::VectorXd q_times_support(const std::vector<int>& idx) const;

 private:
  Eigen::MatrixXd Q_;
  Eigen::VectorXd c_;
};

inline constexpr double kDefaultMuImage = 0.4;
inline constexpr double kDefaultMuVideo = 0.6;
inline constexpr double kDefaultMuTemporal = 1.8;
inline constexpr double kDefaultLambda = 0.1;
inline constexpr double kDefaultKappa = 0.01;
inline constexpr double kDefaultSaliencyFloor = 1e-6;

// Q = (L + mu A + mu_t U), symmetrized; linear part c as given. Dimension
// mismatches throw std::invalid_argument.
QuadraticProblem assemble(const Eigen::MatrixXd& L, const Eigen::MatrixXd& A,
                          const Eigen::MatrixXd& U, const Eigen::VectorXd& c,
                          double mu = kDefaultMuVideo, double mu_t = kDefaultMuTemporal);

struct ObjectiveParams {
  double mu = kDefaultMuVideo;
  double mu_t = kDefaultMuTemporal;
  double lambda = kDefaultLambda;
  double kappa = kDefaultKappa;
  double saliency_floor = kDefaultSaliencyFloor;
};

// Full pipeline: appearance Laplacian + discriminative penalty + temporal
// Laplacian + saliency prior.
QuadraticProblem build_colocalization_problem(const FeatureMatrix& f, const BoxGeometry& g,
                                              const Eigen::VectorXd& saliency,
                                              const BoxIndexing& ix,
                                              const ObjectiveParams& params = {});

}  // namespace coloc
