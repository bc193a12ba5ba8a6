#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace coloc {

// Flat layout of candidate boxes across a collection of videos. Frames are
// concatenated video by video; every frame carries the same number of boxes,
// so box b of global frame f sits at flat index f * boxes_per_frame + b.
// Still images are videos with a single frame.
struct BoxIndexing {
  int n_videos = 0;
  std::vector<int> frames_per_video;
  int boxes_per_frame = 0;

  std::vector<int> frame_offset;  // global index of each video's first frame
  int total_frames = 0;
  int n_boxes = 0;

  BoxIndexing() = default;

  BoxIndexing(int videos, std::vector<int> frames, int boxes)
      : n_videos(videos), frames_per_video(std::move(frames)), boxes_per_frame(boxes) {
    if (n_videos < 1) throw std::invalid_argument("BoxIndexing: need at least one video");
    if (static_cast<int>(frames_per_video.size()) != n_videos)
      throw std::invalid_argument("BoxIndexing: frame count list does not match video count");
    if (boxes_per_frame < 1) throw std::invalid_argument("BoxIndexing: need at least one box per frame");
    frame_offset.resize(n_videos);
    for (int v = 0; v < n_videos; ++v) {
      if (frames_per_video[v] < 1)
        throw std::invalid_argument("BoxIndexing: every video needs at least one frame");
      frame_offset[v] = total_frames;
      total_frames += frames_per_video[v];
    }
    n_boxes = total_frames * boxes_per_frame;
  }

  static BoxIndexing uniform(int videos, int frames_each, int boxes) {
    return BoxIndexing(videos, std::vector<int>(videos, frames_each), boxes);
  }

  int global_frame(int video, int frame) const { return frame_offset[video] + frame; }

  int flat_index(int video, int frame, int box) const {
    return global_frame(video, frame) * boxes_per_frame + box;
  }

  int flat_index_of_global_frame(int gframe, int box) const {
    return gframe * boxes_per_frame + box;
  }

  // Video owning a global frame index.
  int video_of_frame(int gframe) const {
    int v = 0;
    while (v + 1 < n_videos && frame_offset[v + 1] <= gframe) ++v;
    return v;
  }

  bool operator==(const BoxIndexing&) const = default;
};

}  // namespace coloc
