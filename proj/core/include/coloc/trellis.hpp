#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "coloc/atom.hpp"
#include "coloc/indexing.hpp"

namespace coloc {

// Layered path graph over the candidate boxes of each video. Nodes are boxes,
// edges connect boxes in adjacent frames of the same video whose temporal
// similarity exceeds a threshold. Boxes that cannot lie on any full path are
// pruned at construction. Single frame videos degenerate to a bare argmin per
// frame, which is exactly the still image model.
//
// Immutable after construction; safe to share across threads.
class TrellisDomain {
 public:
  // Builds the trellis. temporal_similarity must only couple boxes in
  // adjacent frames of the same video; edges are kept when the similarity is
  // strictly greater than threshold. Throws TrellisError if some frame loses
  // all of its boxes, std::invalid_argument on malformed inputs.
  static TrellisDomain build(const BoxIndexing& ix,
                             const Eigen::SparseMatrix<double>& temporal_similarity,
                             double threshold);

  const BoxIndexing& indexing() const { return ix_; }

  bool alive(int video, int frame, int box) const {
    return alive_[ix_.global_frame(video, frame)][box];
  }
  const std::vector<int>& parents(int video, int frame, int box) const {
    return parents_[ix_.global_frame(video, frame)][box];
  }
  const std::vector<int>& children(int video, int frame, int box) const {
    return children_[ix_.global_frame(video, frame)][box];
  }
  bool has_edge(int video, int frame, int box_from, int box_to) const;

  // Cheapest path per video under per box costs, total cost = sum of chosen
  // node costs. Ties are broken toward the lowest box index in every dynamic
  // programming comparison. cost must have length n_boxes.
  Atom lmo(const Eigen::VectorXd& cost) const;

  // Nearest vertex to a relaxed solution y: the feasible atom maximizing
  // <y, z>, computed as lmo(-y).
  Atom round_to_atom(const Eigen::VectorXd& y) const;

  // True when the atom only uses surviving boxes and surviving edges. Throws
  // std::invalid_argument when the atom has the wrong frame count or a box
  // index out of range.
  bool is_feasible(const Atom& a) const;

  // Number of full paths, capped at `cap` to avoid overflow.
  std::uint64_t count_paths(std::uint64_t cap = UINT64_MAX) const;

 private:
  TrellisDomain() = default;

  BoxIndexing ix_;
  // All indexed by [global frame][box].
  std::vector<std::vector<char>> alive_;
  std::vector<std::vector<std::vector<int>>> parents_;   // boxes in previous frame
  std::vector<std::vector<std::vector<int>>> children_;  // boxes in next frame
};

}  // namespace coloc
