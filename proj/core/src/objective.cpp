#include "coloc/objective.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace coloc {

Eigen::MatrixXd chi2_similarity(const FeatureMatrix& f,
                                const std::function<bool(Eigen::Index, Eigen::Index)>& same_image) {
  const Eigen::Index n = f.X.rows();
  if ((f.X.array() < 0.0).any())
    throw std::invalid_argument("chi2_similarity: features must be nonnegative");

  const double g = 1.0 / std::sqrt(10.0 * f.X.cols());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (same_image(i, j)) continue;
      double dist = 0.0;
      for (Eigen::Index k = 0; k < f.X.cols(); ++k) {
        const double sum = f.X(i, k) + f.X(j, k);
        if (sum > 0.0) {
          const double diff = f.X(i, k) - f.X(j, k);
          dist += diff * diff / sum;
        }
      }
      S(i, j) = S(j, i) = std::exp(-g * dist);
    }
  }
  return S;
}

Eigen::MatrixXd chi2_similarity(const FeatureMatrix& f) {
  if (f.frame_of_row.size() != static_cast<std::size_t>(f.X.rows()))
    throw std::invalid_argument("chi2_similarity: frame list does not match feature rows");
  return chi2_similarity(f, [&f](Eigen::Index i, Eigen::Index j) {
    return f.frame_of_row[i] == f.frame_of_row[j];
  });
}

namespace {

Eigen::MatrixXd laplacian_impl(const Eigen::MatrixXd& S) {
  const Eigen::Index n = S.rows();
  Eigen::VectorXd deg = S.rowwise().sum();
  Eigen::VectorXd dinv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (deg[i] > 0.0) dinv[i] = 1.0 / std::sqrt(deg[i]);
  Eigen::MatrixXd L = -(dinv.asDiagonal() * S * dinv.asDiagonal());
  L.diagonal().array() += 1.0;  // zero degree rows become identity rows
  return 0.5 * (L + L.transpose());
}

}  // namespace

Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& S, double tol) {
  if (S.rows() != S.cols())
    throw std::invalid_argument("normalized_laplacian: matrix must be square");
  if (((S - S.transpose()).array().abs() > tol).any())
    throw std::invalid_argument("normalized_laplacian: affinity must be symmetric");
  return laplacian_impl(S);
}

Eigen::MatrixXd normalized_laplacian(const Eigen::SparseMatrix<double>& S, double tol) {
  return normalized_laplacian(Eigen::MatrixXd(S), tol);
}

Eigen::MatrixXd discriminative_term(const FeatureMatrix& f, double kappa) {
  if (kappa <= 0.0) throw std::invalid_argument("discriminative_term: kappa must be positive");
  const Eigen::Index n = f.X.rows();
  const Eigen::Index d = f.X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  // P X with P = I - (1/n) 1 1' is plain column centering, and P (I - X M^-1 X') P
  // collapses to P - Xc M^-1 Xc'.
  Eigen::MatrixXd Xc = f.X.rowwise() - f.X.colwise().mean();
  Eigen::MatrixXd M = Xc.transpose() * Xc +
                      static_cast<double>(n) * kappa * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd B = M.llt().solve(Xc.transpose());  // d x n

  Eigen::MatrixXd A = -(Xc * B);
  A.diagonal().array() += 1.0;
  A.array() -= inv_n;  // subtract the rank one (1/n) 1 1' of P
  A *= inv_n;
  return 0.5 * (A + A.transpose()).eval();
}

Eigen::SparseMatrix<double> temporal_similarity(const BoxGeometry& g, const BoxIndexing& ix) {
  if (g.centers.rows() != ix.n_boxes || g.areas.size() != ix.n_boxes)
    throw std::invalid_argument("temporal_similarity: geometry size does not match box count");
  if ((g.areas.array() <= 0.0).any())
    throw std::invalid_argument("temporal_similarity: areas must be positive");

  const int m = ix.boxes_per_frame;
  std::vector<Eigen::Triplet<double>> trips;
  for (int v = 0; v < ix.n_videos; ++v) {
    for (int f = 0; f + 1 < ix.frames_per_video[v]; ++f) {
      for (int bi = 0; bi < m; ++bi) {
        const int i = ix.flat_index(v, f, bi);
        for (int bj = 0; bj < m; ++bj) {
          const int j = ix.flat_index(v, f + 1, bj);
          const double dc = (g.centers.row(i) - g.centers.row(j)).norm();
          const double da = std::abs(g.areas[i] - g.areas[j]) / std::max(g.areas[i], g.areas[j]);
          const double s = std::exp(-dc - da);
          trips.emplace_back(i, j, s);
          trips.emplace_back(j, i, s);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> S(ix.n_boxes, ix.n_boxes);
  S.setFromTriplets(trips.begin(), trips.end());
  return S;
}

Eigen::VectorXd saliency_prior_term(const Eigen::VectorXd& m_hat, double lambda, double floor) {
  Eigen::VectorXd c(m_hat.size());
  for (Eigen::Index i = 0; i < m_hat.size(); ++i) {
    double v = m_hat[i];
    if (floor > 0.0) v = std::max(v, floor);
    if (v <= 0.0)
      throw std::invalid_argument("saliency_prior_term: nonpositive prior with clamping disabled");
    c[i] = -lambda * std::log(v);
  }
  return c;
}

QuadraticProblem::QuadraticProblem(Eigen::MatrixXd Q, Eigen::VectorXd c)
    : Q_(std::move(Q)), c_(std::move(c)) {
  if (Q_.rows() != Q_.cols() || Q_.rows() != c_.size())
    throw std::invalid_argument("QuadraticProblem: dimension mismatch between Q and c");
}

Evaluation QuadraticProblem::value_grad_curv(const Eigen::VectorXd& z,
                                             const Eigen::VectorXd& d) const {
  Eigen::VectorXd Qz = Q_ * z;
  return Evaluation{z.dot(Qz) + c_.dot(z), 2.0 * Qz + c_, curvature(d)};
}

Eigen::VectorXd QuadraticProblem::q_times_support(const std::vector<int>& idx) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n());
  for (int j : idx) out += Q_.col(j);
  return out;
}

QuadraticProblem assemble(const Eigen::MatrixXd& L, const Eigen::MatrixXd& A,
                          const Eigen::MatrixXd& U, const Eigen::VectorXd& c, double mu,
                          double mu_t) {
  const Eigen::Index n = c.size();
  if (L.rows() != n || L.cols() != n || A.rows() != n || A.cols() != n || U.rows() != n ||
      U.cols() != n)
    throw std::invalid_argument("assemble: matrix dimensions do not match the linear term");
  Eigen::MatrixXd Q = L + mu * A + mu_t * U;
  Q = 0.5 * (Q + Q.transpose()).eval();
  return QuadraticProblem(std::move(Q), c);
}

QuadraticProblem build_colocalization_problem(const FeatureMatrix& f, const BoxGeometry& g,
                                              const Eigen::VectorXd& saliency,
                                              const BoxIndexing& ix,
                                              const ObjectiveParams& params) {
  if (f.X.rows() != ix.n_boxes)
    throw std::invalid_argument("build_colocalization_problem: feature rows != box count");
  Eigen::MatrixXd L = normalized_laplacian(chi2_similarity(f));
  Eigen::MatrixXd A = discriminative_term(f, params.kappa);
  Eigen::MatrixXd U = normalized_laplacian(temporal_similarity(g, ix));
  Eigen::VectorXd c = saliency_prior_term(saliency, params.lambda, params.saliency_floor);
  return assemble(L, A, U, c, params.mu, params.mu_t);
}

}  // namespace coloc
