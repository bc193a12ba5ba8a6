#include "coloc/instance.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coloc/errors.hpp"
#include "coloc/rng.hpp"

namespace coloc {

namespace {

constexpr const char* kFormatTag = "COLOC-INSTANCE";
constexpr const char* kFormatVersion = "v1";

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double planted_track_similarity(double cx0, double cy0, double a0, double cx1, double cy1,
                                double a1) {
  const double dc = std::hypot(cx0 - cx1, cy0 - cy1);
  const double da = std::abs(a0 - a1) / std::max(a0, a1);
  return std::exp(-dc - da);
}

}  // namespace

InstanceSpec InstanceSpec::uniform(int videos, int frames_each, int boxes, int dim,
                                   std::uint64_t seed) {
  InstanceSpec s;
  s.n_videos = videos;
  s.frames_per_video.assign(videos > 0 ? videos : 0, frames_each);
  s.boxes_per_frame = boxes;
  s.feature_dim = dim;
  s.seed = seed;
  return s;
}

SyntheticInstance generate(const InstanceSpec& spec) {
  if (spec.feature_dim < 1) throw std::invalid_argument("generate: feature_dim must be positive");
  if (spec.noise_level < 0.0)
    throw std::invalid_argument("generate: noise_level must be nonnegative");
  BoxIndexing ix(spec.n_videos, spec.frames_per_video, spec.boxes_per_frame);

  const int d = spec.feature_dim;
  const int m = ix.boxes_per_frame;

  Rng root(spec.seed);
  Rng r_place = root.split(1);
  Rng r_walk = root.split(2);
  Rng r_bg_geom = root.split(3);
  Rng r_feat = root.split(4);
  Rng r_sal = root.split(5);
  Rng r_cluster = root.split(6);

  Eigen::VectorXd cluster(d);
  for (int k = 0; k < d; ++k) cluster[k] = r_cluster.uniform(0.5, 1.5);

  std::vector<int> slot(ix.total_frames);
  for (int f = 0; f < ix.total_frames; ++f) slot[f] = r_place.uniform_int(m);

  // The planted box drifts slowly: bounded center motion and bounded area
  // ratio keep its temporal similarity high along the whole track.
  std::vector<double> pcx(ix.total_frames), pcy(ix.total_frames), parea(ix.total_frames);
  for (int v = 0; v < ix.n_videos; ++v) {
    double cx = r_walk.uniform(0.3, 0.7);
    double cy = r_walk.uniform(0.3, 0.7);
    double area = r_walk.uniform(5000.0, 40000.0);
    for (int f = 0; f < ix.frames_per_video[v]; ++f) {
      if (f > 0) {
        cx = std::clamp(cx + r_walk.uniform(-0.02, 0.02), 0.0, 1.0);
        cy = std::clamp(cy + r_walk.uniform(-0.02, 0.02), 0.0, 1.0);
        area *= r_walk.uniform(0.95, 1.05);
      }
      const int gf = ix.global_frame(v, f);
      pcx[gf] = cx;
      pcy[gf] = cy;
      parea[gf] = area;
    }
  }

  SyntheticInstance inst;
  inst.indexing = ix;
  inst.features.X.resize(ix.n_boxes, d);
  inst.features.frame_of_row.resize(ix.n_boxes);
  inst.geometry.centers.resize(ix.n_boxes, 2);
  inst.geometry.areas.resize(ix.n_boxes);
  inst.saliency.resize(ix.n_boxes);
  inst.planted_truth.boxes.resize(ix.total_frames);

  for (int f = 0; f < ix.total_frames; ++f) {
    inst.planted_truth.boxes[f] = slot[f];
    for (int b = 0; b < m; ++b) {
      const int row = ix.flat_index_of_global_frame(f, b);
      inst.features.frame_of_row[row] = f;
      if (b == slot[f]) {
        for (int k = 0; k < d; ++k)
          inst.features.X(row, k) =
              std::max(0.0, cluster[k] + spec.noise_level * r_feat.uniform(-1.0, 1.0));
        inst.geometry.centers(row, 0) = pcx[f];
        inst.geometry.centers(row, 1) = pcy[f];
        inst.geometry.areas[row] = parea[f];
        inst.saliency[row] = r_sal.uniform(0.6, 1.0);
      } else {
        for (int k = 0; k < d; ++k) inst.features.X(row, k) = r_feat.uniform(0.0, 1.0);
        inst.geometry.centers(row, 0) = r_bg_geom.uniform(0.0, 1.0);
        inst.geometry.centers(row, 1) = r_bg_geom.uniform(0.0, 1.0);
        inst.geometry.areas[row] = r_bg_geom.uniform(2000.0, 60000.0);
        inst.saliency[row] = r_sal.uniform(0.05, 0.5);
      }
    }
  }

  for (int v = 0; v < ix.n_videos; ++v) {
    for (int f = 0; f + 1 < ix.frames_per_video[v]; ++f) {
      const int g0 = ix.global_frame(v, f);
      const int g1 = g0 + 1;
      const double s = planted_track_similarity(pcx[g0], pcy[g0], parea[g0], pcx[g1], pcy[g1],
                                                parea[g1]);
      if (s <= spec.edge_threshold)
        throw std::invalid_argument(
            "generate: edge_threshold would disconnect the planted track");
    }
  }
  return inst;
}

std::string save_instance(const std::string& path, const SyntheticInstance& inst) {
  const BoxIndexing& ix = inst.indexing;
  std::ostringstream out;
  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << "counts " << ix.n_videos;
  for (int l : ix.frames_per_video) out << ' ' << l;
  out << ' ' << ix.boxes_per_frame << ' ' << inst.features.X.cols() << '\n';

  out << "FEATURES\n";
  for (Eigen::Index r = 0; r < inst.features.X.rows(); ++r) {
    for (Eigen::Index k = 0; k < inst.features.X.cols(); ++k)
      out << (k ? " " : "") << fmt(inst.features.X(r, k));
    out << '\n';
  }
  out << "GEOMETRY\n";
  for (Eigen::Index r = 0; r < inst.geometry.centers.rows(); ++r)
    out << fmt(inst.geometry.centers(r, 0)) << ' ' << fmt(inst.geometry.centers(r, 1)) << ' '
        << fmt(inst.geometry.areas[r]) << '\n';
  out << "SALIENCY\n";
  for (Eigen::Index r = 0; r < inst.saliency.size(); ++r) out << fmt(inst.saliency[r]) << '\n';
  out << "TRUTH\n";
  for (int v = 0; v < ix.n_videos; ++v) {
    for (int f = 0; f < ix.frames_per_video[v]; ++f)
      out << (f ? " " : "") << inst.planted_truth.boxes[ix.global_frame(v, f)];
    out << '\n';
  }

  const std::string payload = out.str();
  const std::string checksum = hex64(fnv1a64(payload));

  std::ofstream file(path, std::ios::binary);
  if (!file) throw InstanceIoError("save_instance: cannot open " + path);
  file << payload << "CHECKSUM " << checksum << '\n';
  if (!file) throw InstanceIoError("save_instance: write failed for " + path);
  return checksum;
}

SyntheticInstance load_instance(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InstanceIoError("load_instance: cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  const std::string all = buf.str();

  // Version line first: refuse foreign formats before anything else.
  const std::size_t first_nl = all.find('\n');
  if (first_nl == std::string::npos)
    throw InstanceFormatError("load_instance: missing header line");
  const std::string header = all.substr(0, first_nl);
  std::istringstream hs(header);
  std::string tag, version;
  hs >> tag >> version;
  if (tag != kFormatTag)
    throw InstanceFormatError("load_instance: not an instance file");
  if (version != kFormatVersion)
    throw InstanceVersionError("load_instance: unsupported format version '" + version + "'");

  // Find the checksum trailer and verify the payload bytes before parsing.
  const std::string marker = "CHECKSUM ";
  const std::size_t pos = all.rfind(marker);
  if (pos == std::string::npos || (pos != 0 && all[pos - 1] != '\n'))
    throw InstanceFormatError("load_instance: missing checksum trailer");
  const std::string payload = all.substr(0, pos);
  std::string recorded = all.substr(pos + marker.size());
  while (!recorded.empty() && (recorded.back() == '\n' || recorded.back() == '\r'))
    recorded.pop_back();
  const std::string actual = hex64(fnv1a64(payload));
  if (recorded != actual)
    throw InstanceChecksumError("load_instance: checksum mismatch (file " + recorded +
                                ", content " + actual + ")");

  std::istringstream in(payload);
  std::string line;
  std::getline(in, line);  // header, already validated

  auto fail = [](const std::string& what) {
    return InstanceFormatError("load_instance: " + what);
  };

  std::string word;
  if (!(in >> word) || word != "counts") throw fail("expected counts line");
  int n_videos = 0;
  if (!(in >> n_videos) || n_videos < 1) throw fail("bad video count");
  std::vector<int> frames(n_videos);
  for (int v = 0; v < n_videos; ++v)
    if (!(in >> frames[v])) throw fail("bad frame count");
  int m = 0, d = 0;
  if (!(in >> m >> d)) throw fail("bad box or feature count");

  SyntheticInstance inst;
  try {
    inst.indexing = BoxIndexing(n_videos, frames, m);
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  if (d < 1) throw fail("bad feature dimension");
  const BoxIndexing& ix = inst.indexing;

  auto expect_label = [&](const char* label) {
    if (!(in >> word) || word != label) throw fail(std::string("expected ") + label + " section");
  };
  auto read_double = [&](const char* what) {
    double v;
    if (!(in >> v)) throw fail(std::string("unreadable value in ") + what);
    return v;
  };

  expect_label("FEATURES");
  inst.features.X.resize(ix.n_boxes, d);
  inst.features.frame_of_row.resize(ix.n_boxes);
  for (int r = 0; r < ix.n_boxes; ++r) {
    inst.features.frame_of_row[r] = r / m;
    for (int k = 0; k < d; ++k) inst.features.X(r, k) = read_double("FEATURES");
  }

  expect_label("GEOMETRY");
  inst.geometry.centers.resize(ix.n_boxes, 2);
  inst.geometry.areas.resize(ix.n_boxes);
  for (int r = 0; r < ix.n_boxes; ++r) {
    inst.geometry.centers(r, 0) = read_double("GEOMETRY");
    inst.geometry.centers(r, 1) = read_double("GEOMETRY");
    inst.geometry.areas[r] = read_double("GEOMETRY");
  }

  expect_label("SALIENCY");
  inst.saliency.resize(ix.n_boxes);
  for (int r = 0; r < ix.n_boxes; ++r) inst.saliency[r] = read_double("SALIENCY");

  expect_label("TRUTH");
  inst.planted_truth.boxes.resize(ix.total_frames);
  for (int f = 0; f < ix.total_frames; ++f) {
    int b;
    if (!(in >> b) || b < 0 || b >= m) throw fail("bad planted box index");
    inst.planted_truth.boxes[f] = b;
  }
  return inst;
}

}  // namespace coloc
