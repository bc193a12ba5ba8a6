#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "coloc/indexing.hpp"

namespace coloc {

// One box choice per frame, i.e. a vertex of the path polytope: the indicator
// vector has exactly one 1 in every frame's block. Only the per frame box
// indices are stored; edge indicators are implied by consecutive choices and
// never materialized.
struct Atom {
  std::vector<std::int32_t> boxes;  // indexed by global frame

  bool operator==(const Atom&) const = default;

  // Flat indices of the selected boxes, in frame order.
  std::vector<int> flat_indices(const BoxIndexing& ix) const {
    std::vector<int> out(boxes.size());
    for (std::size_t f = 0; f < boxes.size(); ++f)
      out[f] = ix.flat_index_of_global_frame(static_cast<int>(f), boxes[f]);
    return out;
  }

  Eigen::VectorXd to_dense(const BoxIndexing& ix) const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(ix.n_boxes);
    for (std::size_t f = 0; f < boxes.size(); ++f)
      z[ix.flat_index_of_global_frame(static_cast<int>(f), boxes[f])] = 1.0;
    return z;
  }
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int32_t b : a.boxes) {
      h ^= static_cast<std::size_t>(b) + 0x9e3779b9ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Reads an indicator vector back into an Atom. Throws std::invalid_argument
// if the length is wrong, an entry is not 0 or 1, or a frame does not contain
// exactly one selected box.
inline Atom atom_from_indicator(const BoxIndexing& ix, const Eigen::VectorXd& z,
                                double tol = 1e-9) {
  if (z.size() != ix.n_boxes)
    throw std::invalid_argument("atom_from_indicator: vector length does not match box count");
  Atom a;
  a.boxes.assign(ix.total_frames, -1);
  for (int f = 0; f < ix.total_frames; ++f) {
    for (int b = 0; b < ix.boxes_per_frame; ++b) {
      const double v = z[ix.flat_index_of_global_frame(f, b)];
      if (std::abs(v - 1.0) <= tol) {
        if (a.boxes[f] >= 0)
          throw std::invalid_argument("atom_from_indicator: frame selects more than one box");
        a.boxes[f] = b;
      } else if (std::abs(v) > tol) {
        throw std::invalid_argument("atom_from_indicator: entry is neither 0 nor 1");
      }
    }
    if (a.boxes[f] < 0)
      throw std::invalid_argument("atom_from_indicator: frame selects no box");
  }
  return a;
}

}  // namespace coloc
