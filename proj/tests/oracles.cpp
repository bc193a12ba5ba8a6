#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

namespace {

void extend_path(const coloc::TrellisDomain& d, int video, std::vector<int>& prefix,
                 std::vector<std::vector<int>>& out) {
  const auto& ix = d.indexing();
  const int frames = ix.frames_per_video[video];
  const int frame = static_cast<int>(prefix.size());
  if (frame == frames) {
    out.push_back(prefix);
    return;
  }
  for (int b = 0; b < ix.boxes_per_frame; ++b) {
    if (!d.alive(video, frame, b)) continue;
    if (frame > 0 && !d.has_edge(video, frame - 1, prefix.back(), b)) continue;
    prefix.push_back(b);
    extend_path(d, video, prefix, out);
    prefix.pop_back();
  }
}

// True when lhs's reversed box sequence orders before rhs's.
bool reversed_less(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  for (std::size_t i = lhs.size(); i-- > 0;) {
    if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
  }
  return false;
}

}  // namespace

std::vector<std::vector<int>> enumerate_paths(const coloc::TrellisDomain& d, int video) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  extend_path(d, video, prefix, out);
  return out;
}

std::vector<coloc::Atom> enumerate_atoms(const coloc::TrellisDomain& d, std::size_t cap) {
  const auto& ix = d.indexing();
  std::vector<coloc::Atom> out;
  out.push_back(coloc::Atom{});
  for (int v = 0; v < ix.n_videos; ++v) {
    const auto paths = enumerate_paths(d, v);
    std::vector<coloc::Atom> next;
    if (out.size() * paths.size() > cap)
      throw std::runtime_error("enumerate_atoms: too many paths");
    next.reserve(out.size() * paths.size());
    for (const auto& partial : out) {
      for (const auto& path : paths) {
        coloc::Atom a = partial;
        for (int b : path) a.boxes.push_back(static_cast<std::int32_t>(b));
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

double atom_cost(const coloc::BoxIndexing& ix, const Eigen::VectorXd& cost,
                 const coloc::Atom& a) {
  double total = 0.0;
  for (std::size_t f = 0; f < a.boxes.size(); ++f) {
    total += cost[static_cast<int>(f) * ix.boxes_per_frame + a.boxes[f]];
  }
  return total;
}

coloc::Atom cheapest_atom(const coloc::TrellisDomain& d, const Eigen::VectorXd& cost) {
  const auto& ix = d.indexing();
  coloc::Atom result;
  for (int v = 0; v < ix.n_videos; ++v) {
    const auto paths = enumerate_paths(d, v);
    if (paths.empty()) throw std::runtime_error("cheapest_atom: video has no paths");
    const int offset = ix.frame_offset[v];
    const std::vector<int>* best = nullptr;
    double best_cost = 0.0;
    for (const auto& path : paths) {
      double c = 0.0;
      for (std::size_t f = 0; f < path.size(); ++f) {
        c += cost[(offset + static_cast<int>(f)) * ix.boxes_per_frame + path[f]];
      }
      if (!best || c < best_cost || (c == best_cost && reversed_less(path, *best))) {
        best = &path;
        best_cost = c;
      }
    }
    for (int b : *best) result.boxes.push_back(static_cast<std::int32_t>(b));
  }
  return result;
}

double atom_objective(const coloc::BoxIndexing& ix, const Eigen::MatrixXd& Q,
                      const Eigen::VectorXd& c, const coloc::Atom& a) {
  std::vector<int> idx;
  for (std::size_t f = 0; f < a.boxes.size(); ++f) {
    idx.push_back(static_cast<int>(f) * ix.boxes_per_frame + a.boxes[f]);
  }
  double total = 0.0;
  for (int i : idx) {
    for (int j : idx) total += Q(i, j);
  }
  for (int i : idx) total += c[i];
  return total;
}

std::pair<coloc::Atom, double> integer_minimum(const coloc::TrellisDomain& d,
                                               const Eigen::MatrixXd& Q,
                                               const Eigen::VectorXd& c, std::size_t cap) {
  const auto atoms = enumerate_atoms(d, cap);
  const coloc::Atom* best = nullptr;
  double best_value = 0.0;
  for (const auto& a : atoms) {
    const double v = atom_objective(d.indexing(), Q, c, a);
    if (!best || v < best_value) {
      best = &a;
      best_value = v;
    }
  }
  if (!best) throw std::runtime_error("integer_minimum: empty domain");
  return {*best, best_value};
}

Eigen::VectorXd fd_gradient(const coloc::QuadraticProblem& p, const Eigen::VectorXd& z,
                            double h) {
  Eigen::VectorXd g(z.size());
  Eigen::VectorXd probe = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    probe[i] = z[i] + h;
    const double fp = p.value(probe);
    probe[i] = z[i] - h;
    const double fm = p.value(probe);
    probe[i] = z[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double grid_line_min(const coloc::QuadraticProblem& p, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& d, double gamma_max, int points) {
  double best = p.value(y);
  for (int i = 0; i < points; ++i) {
    const double gamma = gamma_max * static_cast<double>(i) / (points - 1);
    best = std::min(best, p.value(y + gamma * d));
  }
  return best;
}

}  // namespace oracle
