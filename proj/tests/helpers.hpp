#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <vector>

#include "coloc/instance.hpp"
#include "coloc/objective.hpp"
#include "coloc/rng.hpp"
#include "coloc/solvers.hpp"
#include "coloc/trellis.hpp"

namespace testutil {

struct Edge {
  int i;
  int j;
  double value;
};

inline Eigen::SparseMatrix<double> sparse_symmetric(int n, const std::vector<Edge>& edges) {
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& e : edges) {
    trip.emplace_back(e.i, e.j, e.value);
    trip.emplace_back(e.j, e.i, e.value);
  }
  Eigen::SparseMatrix<double> s(n, n);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

// Every adjacent frame pair fully connected with the given similarity.
inline Eigen::SparseMatrix<double> complete_similarity(const coloc::BoxIndexing& ix,
                                                       double value = 1.0) {
  std::vector<Edge> edges;
  for (int v = 0; v < ix.n_videos; ++v) {
    for (int f = 0; f + 1 < ix.frames_per_video[v]; ++f) {
      for (int a = 0; a < ix.boxes_per_frame; ++a) {
        for (int b = 0; b < ix.boxes_per_frame; ++b) {
          edges.push_back({ix.flat_index(v, f, a), ix.flat_index(v, f + 1, b), value});
        }
      }
    }
  }
  return sparse_symmetric(ix.n_boxes, edges);
}

inline coloc::TrellisDomain complete_domain(const coloc::BoxIndexing& ix) {
  return coloc::TrellisDomain::build(ix, complete_similarity(ix), 0.0);
}

// Random similarities in [lo, hi]; edges below the returned threshold get
// pruned by the builder, so callers control sparsity via the threshold.
inline Eigen::SparseMatrix<double> random_similarity(const coloc::BoxIndexing& ix,
                                                     coloc::Rng& rng, double lo = 0.0,
                                                     double hi = 1.0) {
  std::vector<Edge> edges;
  for (int v = 0; v < ix.n_videos; ++v) {
    for (int f = 0; f + 1 < ix.frames_per_video[v]; ++f) {
      for (int a = 0; a < ix.boxes_per_frame; ++a) {
        for (int b = 0; b < ix.boxes_per_frame; ++b) {
          edges.push_back(
              {ix.flat_index(v, f, a), ix.flat_index(v, f + 1, b), rng.uniform(lo, hi)});
        }
      }
    }
  }
  return sparse_symmetric(ix.n_boxes, edges);
}

inline Eigen::VectorXd random_vector(coloc::Rng& rng, int n, double lo = -1.0,
                                     double hi = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

inline coloc::Atom random_feasible_atom(const coloc::TrellisDomain& d, coloc::Rng& rng) {
  return d.lmo(random_vector(rng, d.indexing().n_boxes));
}

// Random point of the polytope as a convex combination of random vertices.
inline Eigen::VectorXd random_polytope_point(const coloc::TrellisDomain& d, coloc::Rng& rng,
                                             int n_atoms = 4) {
  const auto& ix = d.indexing();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ix.n_boxes);
  double total = 0.0;
  std::vector<double> w(n_atoms);
  for (int i = 0; i < n_atoms; ++i) {
    w[i] = rng.uniform(0.05, 1.0);
    total += w[i];
  }
  for (int i = 0; i < n_atoms; ++i) {
    y += (w[i] / total) * random_feasible_atom(d, rng).to_dense(ix);
  }
  return y;
}

struct BuiltInstance {
  coloc::SyntheticInstance instance;
  coloc::TrellisDomain domain;
  coloc::QuadraticProblem problem;
};

inline BuiltInstance build_instance(const coloc::InstanceSpec& spec,
                                    const coloc::ObjectiveParams& params = {}) {
  auto inst = coloc::generate(spec);
  auto temporal = coloc::temporal_similarity(inst.geometry, inst.indexing);
  auto domain = coloc::TrellisDomain::build(inst.indexing, temporal, spec.edge_threshold);
  auto problem = coloc::build_colocalization_problem(inst.features, inst.geometry,
                                                     inst.saliency, inst.indexing, params);
  return BuiltInstance{std::move(inst), std::move(domain), std::move(problem)};
}

}  // namespace testutil
