#include "coloc/trellis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "coloc/errors.hpp"

namespace coloc {

TrellisDomain TrellisDomain::build(const BoxIndexing& ix,
                                   const Eigen::SparseMatrix<double>& temporal_similarity,
                                   double threshold) {
  if (temporal_similarity.rows() != ix.n_boxes || temporal_similarity.cols() != ix.n_boxes)
    throw std::invalid_argument("build_trellis: similarity matrix size does not match box count");

  TrellisDomain d;
  d.ix_ = ix;
  const int m = ix.boxes_per_frame;
  d.alive_.assign(ix.total_frames, std::vector<char>(m, 1));
  d.parents_.assign(ix.total_frames, std::vector<std::vector<int>>(m));
  d.children_.assign(ix.total_frames, std::vector<std::vector<int>>(m));

  for (int col = 0; col < temporal_similarity.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(temporal_similarity, col); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = static_cast<int>(it.col());
      if (i >= j) continue;  // symmetric input, handle each pair once
      const int fi = i / m, fj = j / m;
      if (fj != fi + 1 || ix.video_of_frame(fi) != ix.video_of_frame(fj))
        throw std::invalid_argument(
            "build_trellis: similarity couples boxes that are not in adjacent frames of one video");
      if (it.value() > threshold) {
        d.children_[fi][i % m].push_back(j % m);
        d.parents_[fj][j % m].push_back(i % m);
      }
    }
  }
  for (auto& frame : d.children_)
    for (auto& lst : frame) std::sort(lst.begin(), lst.end());
  for (auto& frame : d.parents_)
    for (auto& lst : frame) std::sort(lst.begin(), lst.end());

  // Remove boxes that cannot lie on a full path: a box needs a parent unless
  // its frame starts the video and a child unless its frame ends it. Removal
  // can orphan neighbours, so iterate to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < ix.n_videos; ++v) {
      const int l = ix.frames_per_video[v];
      for (int f = 0; f < l; ++f) {
        const int gf = ix.global_frame(v, f);
        for (int b = 0; b < m; ++b) {
          if (!d.alive_[gf][b]) continue;
          const bool dead = (f > 0 && d.parents_[gf][b].empty()) ||
                            (f + 1 < l && d.children_[gf][b].empty());
          if (!dead) continue;
          d.alive_[gf][b] = 0;
          changed = true;
          for (int p : d.parents_[gf][b]) {
            auto& lst = d.children_[gf - 1][p];
            lst.erase(std::remove(lst.begin(), lst.end(), b), lst.end());
          }
          for (int c : d.children_[gf][b]) {
            auto& lst = d.parents_[gf + 1][c];
            lst.erase(std::remove(lst.begin(), lst.end(), b), lst.end());
          }
          d.parents_[gf][b].clear();
          d.children_[gf][b].clear();
        }
      }
    }
  }

  for (int gf = 0; gf < ix.total_frames; ++gf) {
    if (std::none_of(d.alive_[gf].begin(), d.alive_[gf].end(), [](char a) { return a != 0; }))
      throw TrellisError("build_trellis: frame " + std::to_string(gf) +
                         " has no box left after pruning");
  }
  return d;
}

bool TrellisDomain::has_edge(int video, int frame, int box_from, int box_to) const {
  const auto& c = children(video, frame, box_from);
  return std::binary_search(c.begin(), c.end(), box_to);
}

Atom TrellisDomain::lmo(const Eigen::VectorXd& cost) const {
  if (cost.size() != ix_.n_boxes)
    throw std::invalid_argument("lmo: cost length does not match box count");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int m = ix_.boxes_per_frame;
  Atom a;
  a.boxes.resize(ix_.total_frames);

  std::vector<std::vector<double>> dp;
  std::vector<std::vector<int>> back;
  for (int v = 0; v < ix_.n_videos; ++v) {
    const int l = ix_.frames_per_video[v];
    dp.assign(l, std::vector<double>(m, kInf));
    back.assign(l, std::vector<int>(m, -1));

    const int g0 = ix_.global_frame(v, 0);
    for (int b = 0; b < m; ++b)
      if (alive_[g0][b]) dp[0][b] = cost[ix_.flat_index_of_global_frame(g0, b)];

    for (int f = 1; f < l; ++f) {
      const int gf = ix_.global_frame(v, f);
      for (int b = 0; b < m; ++b) {
        if (!alive_[gf][b]) continue;
        double best = kInf;
        int arg = -1;
        for (int p : parents_[gf][b]) {  // ascending, so ties keep the lowest index
          if (dp[f - 1][p] < best) {
            best = dp[f - 1][p];
            arg = p;
          }
        }
        if (arg >= 0) {
          dp[f][b] = best + cost[ix_.flat_index_of_global_frame(gf, b)];
          back[f][b] = arg;
        }
      }
    }

    double best = kInf;
    int arg = -1;
    for (int b = 0; b < m; ++b) {
      if (dp[l - 1][b] < best) {
        best = dp[l - 1][b];
        arg = b;
      }
    }
    if (arg < 0) throw TrellisError("lmo: no full path in video " + std::to_string(v));

    for (int f = l - 1; f >= 0; --f) {
      a.boxes[ix_.global_frame(v, f)] = arg;
      if (f > 0) arg = back[f][arg];
    }
  }
  return a;
}

Atom TrellisDomain::round_to_atom(const Eigen::VectorXd& y) const { return lmo(-y); }

bool TrellisDomain::is_feasible(const Atom& a) const {
  if (static_cast<int>(a.boxes.size()) != ix_.total_frames)
    throw std::invalid_argument("is_feasible: atom frame count does not match domain");
  for (std::int32_t b : a.boxes)
    if (b < 0 || b >= ix_.boxes_per_frame)
      throw std::invalid_argument("is_feasible: box index out of range");

  for (int v = 0; v < ix_.n_videos; ++v) {
    const int l = ix_.frames_per_video[v];
    for (int f = 0; f < l; ++f) {
      const int gf = ix_.global_frame(v, f);
      if (!alive_[gf][a.boxes[gf]]) return false;
      if (f + 1 < l && !has_edge(v, f, a.boxes[gf], a.boxes[gf + 1])) return false;
    }
  }
  return true;
}

std::uint64_t TrellisDomain::count_paths(std::uint64_t cap) const {
  std::uint64_t total = 1;
  const int m = ix_.boxes_per_frame;
  for (int v = 0; v < ix_.n_videos; ++v) {
    const int l = ix_.frames_per_video[v];
    std::vector<std::uint64_t> n(m, 0);
    const int g0 = ix_.global_frame(v, 0);
    for (int b = 0; b < m; ++b) n[b] = alive_[g0][b] ? 1 : 0;
    for (int f = 1; f < l; ++f) {
      const int gf = ix_.global_frame(v, f);
      std::vector<std::uint64_t> next(m, 0);
      for (int b = 0; b < m; ++b) {
        if (!alive_[gf][b]) continue;
        for (int p : parents_[gf][b]) {
          next[b] += n[p];
          if (next[b] > cap) return cap;
        }
      }
      n.swap(next);
    }
    std::uint64_t video_total = 0;
    for (int b = 0; b < m; ++b) {
      video_total += n[b];
      if (video_total > cap) return cap;
    }
    if (total > cap / std::max<std::uint64_t>(video_total, 1)) return cap;
    total *= video_total;
  }
  return total;
}

}  // namespace coloc
