#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "coloc/atom.hpp"
#include "coloc/indexing.hpp"
#include "coloc/objective.hpp"

namespace coloc {

// Parameters of the synthetic benchmark family: one planted object per
// frame that drifts smoothly through each video, surrounded by background
// clutter boxes.
struct InstanceSpec {
  int n_videos = 2;
  std::vector<int> frames_per_video = {5, 5};
  int boxes_per_frame = 4;
  int feature_dim = 8;
  double noise_level = 0.05;
  double edge_threshold = 0.0;
  std::uint64_t seed = 1;

  static InstanceSpec uniform(int videos, int frames_each, int boxes, int dim,
                              std::uint64_t seed);
};

struct SyntheticInstance {
  BoxIndexing indexing;
  FeatureMatrix features;
  BoxGeometry geometry;
  Eigen::VectorXd saliency;
  Atom planted_truth;  // per frame index of the planted box
};

// Deterministic in the seed: the same spec produces a bit identical instance.
// Throws std::invalid_argument on nonsensical counts or when the edge
// threshold would cut the planted track itself.
SyntheticInstance generate(const InstanceSpec& spec);

// Versioned text format with a trailing content checksum. Returns the
// checksum that was written. Throws InstanceIoError on IO failure.
std::string save_instance(const std::string& path, const SyntheticInstance& inst);

// Loads a file written by save_instance. Throws InstanceVersionError,
// InstanceFormatError or InstanceChecksumError as appropriate.
SyntheticInstance load_instance(const std::string& path);

}  // namespace coloc
