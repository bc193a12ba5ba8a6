#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "coloc/errors.hpp"
#include "coloc/instance.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace coloc;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("coloc_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& leaf) const { return (path / leaf).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

bool same_instance(const SyntheticInstance& a, const SyntheticInstance& b) {
  return a.indexing.n_videos == b.indexing.n_videos &&
         a.indexing.frames_per_video == b.indexing.frames_per_video &&
         a.indexing.boxes_per_frame == b.indexing.boxes_per_frame &&
         a.features.X == b.features.X && a.geometry.centers == b.geometry.centers &&
         a.geometry.areas == b.geometry.areas && a.saliency == b.saliency &&
         a.planted_truth.boxes == b.planted_truth.boxes;
}

}  // namespace

TEST_SUITE_BEGIN("instance");

TEST_CASE("generation is a pure function of the spec") {
  auto spec = InstanceSpec::uniform(3, 5, 4, 6, 99);
  spec.noise_level = 0.3;
  auto a = generate(spec);
  auto b = generate(spec);
  CHECK(same_instance(a, b));

  spec.seed = 100;
  auto c = generate(spec);
  CHECK_FALSE(a.features.X == c.features.X);
}

TEST_CASE("the noise level only perturbs planted features") {
  auto quiet_spec = InstanceSpec::uniform(2, 4, 3, 8, 7);
  quiet_spec.noise_level = 0.0;
  auto noisy_spec = quiet_spec;
  noisy_spec.noise_level = 0.5;
  auto quiet = generate(quiet_spec);
  auto noisy = generate(noisy_spec);

  CHECK(quiet.planted_truth.boxes == noisy.planted_truth.boxes);
  CHECK(quiet.geometry.centers == noisy.geometry.centers);
  CHECK(quiet.saliency == noisy.saliency);
  const auto& ix = quiet.indexing;
  bool planted_differ = false;
  for (int f = 0; f < ix.total_frames; ++f) {
    for (int b = 0; b < ix.boxes_per_frame; ++b) {
      const int row = ix.flat_index_of_global_frame(f, b);
      if (b == quiet.planted_truth.boxes[f]) {
        planted_differ = planted_differ || quiet.features.X.row(row) != noisy.features.X.row(row);
      } else {
        CHECK(quiet.features.X.row(row) == noisy.features.X.row(row));
      }
    }
  }
  CHECK(planted_differ);
}

TEST_CASE("planted track is feasible and salient") {
  for (std::uint64_t seed : {1ull, 5ull, 23ull}) {
    auto spec = InstanceSpec::uniform(2, 6, 5, 8, seed);
    auto inst = generate(spec);
    auto temporal = temporal_similarity(inst.geometry, inst.indexing);
    auto domain = TrellisDomain::build(inst.indexing, temporal, spec.edge_threshold);
    CHECK(domain.is_feasible(inst.planted_truth));
    const auto& ix = inst.indexing;
    for (int f = 0; f < ix.total_frames; ++f) {
      const double planted =
          inst.saliency[ix.flat_index_of_global_frame(f, inst.planted_truth.boxes[f])];
      CHECK(planted >= 0.6);
      CHECK(planted <= 1.0);
      for (int b = 0; b < ix.boxes_per_frame; ++b) {
        const double s = inst.saliency[ix.flat_index_of_global_frame(f, b)];
        CHECK(s > 0.0);
        CHECK(s <= 1.0);
      }
    }
  }
}

TEST_CASE("nonsense specs are rejected") {
  CHECK_THROWS_AS(generate(InstanceSpec::uniform(0, 5, 4, 6, 1)), std::invalid_argument);
  CHECK_THROWS_AS(generate(InstanceSpec::uniform(2, 0, 4, 6, 1)), std::invalid_argument);
  CHECK_THROWS_AS(generate(InstanceSpec::uniform(2, 5, 0, 6, 1)), std::invalid_argument);
  CHECK_THROWS_AS(generate(InstanceSpec::uniform(2, 5, 4, 0, 1)), std::invalid_argument);
  auto spec = InstanceSpec::uniform(2, 5, 4, 6, 1);
  spec.noise_level = -0.1;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec = InstanceSpec::uniform(2, 5, 4, 6, 1);
  spec.edge_threshold = 1.1;  // would sever the planted track
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("save and load round-trip bit exactly") {
  TempDir tmp;
  auto spec = InstanceSpec::uniform(2, 5, 4, 6, 42);
  spec.noise_level = 0.2;
  auto inst = generate(spec);
  const auto checksum = save_instance(tmp.file("a.inst"), inst);
  CHECK(checksum.size() == 16);
  auto loaded = load_instance(tmp.file("a.inst"));
  CHECK(same_instance(inst, loaded));

  // Saving the loaded copy reproduces the same bytes and checksum.
  CHECK(save_instance(tmp.file("b.inst"), loaded) == checksum);
  CHECK(slurp(tmp.file("a.inst")) == slurp(tmp.file("b.inst")));
}

TEST_CASE("the checksum covers every payload byte") {
  TempDir tmp;
  auto inst = generate(InstanceSpec::uniform(1, 3, 2, 4, 8));
  save_instance(tmp.file("x.inst"), inst);
  const std::string text = slurp(tmp.file("x.inst"));

  // Flip one digit somewhere in the middle of the payload.
  auto broken = text;
  const auto pos = broken.find("0.");
  REQUIRE(pos != std::string::npos);
  broken[pos + 2] = broken[pos + 2] == '1' ? '2' : '1';
  spit(tmp.file("x.inst"), broken);
  CHECK_THROWS_AS(load_instance(tmp.file("x.inst")), InstanceChecksumError);
}

TEST_CASE("io failures and foreign files raise the right errors") {
  TempDir tmp;
  CHECK_THROWS_AS(load_instance(tmp.file("missing.inst")), InstanceIoError);

  spit(tmp.file("foreign.inst"), "definitely not an instance\n");
  CHECK_THROWS_AS(load_instance(tmp.file("foreign.inst")), InstanceFormatError);

  spit(tmp.file("empty.inst"), "");
  CHECK_THROWS_AS(load_instance(tmp.file("empty.inst")), InstanceFormatError);

  auto inst = generate(InstanceSpec::uniform(1, 3, 2, 4, 8));
  save_instance(tmp.file("ok.inst"), inst);
  const std::string text = slurp(tmp.file("ok.inst"));

  auto future = text;
  future.replace(future.find(" v1\n"), 4, " v9\n");
  spit(tmp.file("future.inst"), future);
  CHECK_THROWS_AS(load_instance(tmp.file("future.inst")), InstanceVersionError);

  auto truncated = text.substr(0, text.size() / 2);
  spit(tmp.file("trunc.inst"), truncated);
  CHECK_THROWS_AS(load_instance(tmp.file("trunc.inst")), InstanceIoError);

  // Version errors are a kind of io error, so one catch handles them all.
  try {
    load_instance(tmp.file("future.inst"));
    CHECK(false);
  } catch (const InstanceIoError&) {
    CHECK(true);
  }
}

TEST_CASE("saving to an unwritable path reports an io error") {
  auto inst = generate(InstanceSpec::uniform(1, 3, 2, 4, 8));
  CHECK_THROWS_AS(save_instance("/nonexistent_dir_zz/x.inst", inst), InstanceIoError);
}

TEST_CASE("with quiet features the planted track wins the integer problem") {
  // Low noise and clear saliency separation make the planted atom the best
  // integer solution for most seeds; demand a strong majority.
  int wins = 0;
  const int trials = 12;
  for (int seed = 0; seed < trials; ++seed) {
    auto spec = InstanceSpec::uniform(2, 4, 3, 8, 1000 + seed);
    spec.noise_level = 0.01;
    auto b = testutil::build_instance(spec);
    auto [atom, value] =
        oracle::integer_minimum(b.domain, b.problem.Q(), b.problem.c(), 100000);
    if (atom == b.instance.planted_truth) ++wins;
  }
  CHECK(wins >= trials * 3 / 4);
}

TEST_SUITE_END();
