#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coloc/errors.hpp"
#include "coloc/instance.hpp"
#include "coloc/objective.hpp"
#include "coloc/solvers.hpp"
#include "coloc/trace_io.hpp"
#include "coloc/trellis.hpp"

namespace {

struct GenerateArgs {
  coloc::InstanceSpec spec;
  std::string output;
};

struct RunArgs {
  std::string instance_path;
  coloc::InstanceSpec spec;
  bool spec_touched = false;
  std::string out_dir;
  std::string solvers = "fw,afw,pairfw,cgs,acgs,pcgs";
  std::string schedule = "3k2";
  coloc::ObjectiveParams params;
  double edge_threshold = 0.0;
  coloc::SolverConfig config;
  bool parallel = false;
  bool plot_data = false;
};

struct RoundArgs {
  std::string instance_path;
  std::string solution_path;
  std::string output = "-";
  double edge_threshold = 0.0;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct BuiltProblem {
  coloc::SyntheticInstance instance;
  coloc::TrellisDomain domain;
  coloc::QuadraticProblem problem;
};

BuiltProblem build_problem(coloc::SyntheticInstance instance,
                           const coloc::ObjectiveParams& params,
                           double edge_threshold) {
  auto temporal = coloc::temporal_similarity(instance.geometry, instance.indexing);
  auto domain = coloc::TrellisDomain::build(instance.indexing, temporal, edge_threshold);
  auto problem = coloc::build_colocalization_problem(
      instance.features, instance.geometry, instance.saliency, instance.indexing, params);
  return BuiltProblem{std::move(instance), std::move(domain), std::move(problem)};
}

int do_generate(const GenerateArgs& args) {
  auto instance = coloc::generate(args.spec);
  auto dir = std::filesystem::path(args.output).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto checksum = coloc::save_instance(args.output, instance);
  std::printf("wrote %s\n", args.output.c_str());
  std::printf("checksum %s\n", checksum.c_str());
  return 0;
}

void write_solution(const std::string& path, const Eigen::VectorXd& y) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[64];
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", y[i]);
    out << buf;
  }
}

void write_plot_data(const std::string& path, const coloc::SolverTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[96];
  out << "# iter gap\n";
  for (const auto& row : trace.iterations) {
    std::snprintf(buf, sizeof(buf), "%d %.17g\n", row.iter, row.gap);
    out << buf;
  }
}

int do_run(const RunArgs& args) {
  if (!args.instance_path.empty() && args.spec_touched) {
    throw std::runtime_error("pass either --instance or generation options, not both");
  }
  auto solver_names = split_csv(args.solvers);
  if (solver_names.empty()) throw std::runtime_error("no solvers selected");
  for (const auto& name : solver_names) {
    bool known = false;
    for (const auto& candidate : coloc::kSolverNames) {
      if (name == candidate) known = true;
    }
    if (!known) throw std::runtime_error("unknown solver: " + name);
  }

  coloc::SolverConfig config = args.config;
  if (args.schedule == "3k2") {
    config.gamma_schedule = coloc::GammaSchedule::kThreeOverKPlusTwo;
  } else if (args.schedule == "2k1") {
    config.gamma_schedule = coloc::GammaSchedule::kTwoOverKPlusOne;
  } else {
    throw std::runtime_error("unknown gamma schedule: " + args.schedule);
  }

  coloc::SyntheticInstance instance = args.instance_path.empty()
      ? coloc::generate(args.spec)
      : coloc::load_instance(args.instance_path);
  auto built = build_problem(std::move(instance), args.params, args.edge_threshold);

  std::filesystem::create_directories(args.out_dir);

  std::vector<coloc::SolverTrace> traces(solver_names.size());
  auto run_one = [&](std::size_t i) {
    traces[i] = coloc::solve(solver_names[i], built.problem, built.domain, config);
  };
  if (args.parallel && solver_names.size() > 1) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < solver_names.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& job : jobs) job.get();
  } else {
    for (std::size_t i = 0; i < solver_names.size(); ++i) run_one(i);
  }

  auto out = [&](const std::string& leaf) {
    return (std::filesystem::path(args.out_dir) / leaf).string();
  };
  for (const auto& trace : traces) {
    std::ofstream csv(out("trace_" + trace.solver + ".csv"));
    if (!csv) throw std::runtime_error("cannot write trace for " + trace.solver);
    coloc::write_trace_csv(csv, trace);
    write_solution(out("solution_" + trace.solver + ".txt"), trace.final_iterate);
    if (args.plot_data) write_plot_data(out("plot_" + trace.solver + ".dat"), trace);
  }
  std::ostringstream summary;
  coloc::write_summary(summary, traces, config.epsilon);
  std::ofstream(out("summary.txt")) << summary.str();
  std::fputs(summary.str().c_str(), stdout);
  return 0;
}

int do_round(const RoundArgs& args) {
  auto instance = coloc::load_instance(args.instance_path);
  std::ifstream in(args.solution_path);
  if (!in) throw std::runtime_error("cannot read " + args.solution_path);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  const auto& ix = instance.indexing;
  if (values.size() != static_cast<std::size_t>(ix.n_boxes)) {
    std::ostringstream msg;
    msg << "solution has " << values.size() << " entries, instance needs " << ix.n_boxes;
    throw std::runtime_error(msg.str());
  }
  Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(values.data(), values.size());

  auto temporal = coloc::temporal_similarity(instance.geometry, instance.indexing);
  auto domain = coloc::TrellisDomain::build(instance.indexing, temporal, args.edge_threshold);
  auto atom = domain.round_to_atom(y);

  nlohmann::json doc;
  doc["feasible"] = domain.is_feasible(atom);
  doc["videos"] = nlohmann::json::array();
  for (int video = 0; video < ix.n_videos; ++video) {
    nlohmann::json entry;
    entry["video"] = video;
    auto boxes = nlohmann::json::array();
    for (int frame = 0; frame < ix.frames_per_video[video]; ++frame) {
      boxes.push_back(atom.boxes[ix.global_frame(video, frame)]);
    }
    entry["boxes"] = boxes;
    doc["videos"].push_back(entry);
  }
  auto text = doc.dump(2) + "\n";
  if (args.output == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(args.output);
    if (!out) throw std::runtime_error("cannot write " + args.output);
    out << text;
  }
  return 0;
}

void add_spec_options(CLI::App* cmd, coloc::InstanceSpec& spec, int& frames) {
  cmd->add_option("--videos", spec.n_videos, "number of videos");
  cmd->add_option("--frames", frames, "frames per video");
  cmd->add_option("--boxes", spec.boxes_per_frame, "candidate boxes per frame");
  cmd->add_option("--dim", spec.feature_dim, "feature dimension");
  cmd->add_option("--noise", spec.noise_level, "feature noise level");
  cmd->add_option("--seed", spec.seed, "generator seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"box co-localization over path polytopes"};
  app.require_subcommand(1);

  const char* env_dir = std::getenv("COLOC_OUT_DIR");
  std::string default_dir = env_dir ? env_dir : ".";

  GenerateArgs gen;
  int gen_frames = 5;
  auto* generate = app.add_subcommand("generate", "write a synthetic instance file");
  add_spec_options(generate, gen.spec, gen_frames);
  generate->add_option("--edge-threshold", gen.spec.edge_threshold, "minimum kept edge similarity");
  generate->add_option("-o,--output", gen.output, "instance file path")->required();

  RunArgs run;
  run.out_dir = default_dir;
  int run_frames = 5;
  auto* run_cmd = app.add_subcommand("run", "solve an instance and write traces");
  run_cmd->add_option("--instance", run.instance_path, "instance file to load");
  add_spec_options(run_cmd, run.spec, run_frames);
  run_cmd->add_option("-o,--out-dir", run.out_dir, "output directory");
  run_cmd->add_option("--solvers", run.solvers, "comma separated solver list");
  run_cmd->add_option("--epsilon", run.config.epsilon, "target duality gap");
  run_cmd->add_option("--max-iters", run.config.max_iters, "outer iteration cap");
  run_cmd->add_option("--inner-max-iters", run.config.inner_max_iters, "subproblem iteration cap");
  run_cmd->add_option("--gamma-schedule", run.schedule, "step schedule, 3k2 or 2k1")
      ->check(CLI::IsMember({"3k2", "2k1"}));
  run_cmd->add_option("--beta-scale", run.config.beta_scale, "proximal weight scale");
  run_cmd->add_option("--eta-scale", run.config.eta_scale, "subproblem tolerance scale");
  run_cmd->add_flag("--relative-gap", run.config.relative_gap, "scale epsilon by objective size");
  run_cmd->add_option("--mu", run.params.mu, "appearance coupling weight");
  run_cmd->add_option("--mu-t", run.params.mu_t, "temporal coupling weight");
  run_cmd->add_option("--lambda", run.params.lambda, "saliency weight");
  run_cmd->add_option("--kappa", run.params.kappa, "ridge regularizer");
  run_cmd->add_option("--saliency-floor", run.params.saliency_floor, "saliency clamp floor");
  run_cmd->add_option("--edge-threshold", run.edge_threshold, "minimum kept edge similarity");
  run_cmd->add_flag("--parallel", run.parallel, "run solvers concurrently");
  run_cmd->add_flag("--plot-data", run.plot_data, "also write gap-vs-iteration files");

  RoundArgs round;
  auto* round_cmd = app.add_subcommand("round", "snap a relaxed solution to one box per frame");
  round_cmd->add_option("--instance", round.instance_path, "instance file")->required();
  round_cmd->add_option("--solution", round.solution_path, "relaxed solution file")->required();
  round_cmd->add_option("--edge-threshold", round.edge_threshold, "minimum kept edge similarity");
  round_cmd->add_option("-o,--output", round.output, "json output path, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      gen.spec.frames_per_video.assign(gen.spec.n_videos, gen_frames);
      return do_generate(gen);
    }
    if (*run_cmd) {
      for (const char* opt : {"--videos", "--frames", "--boxes", "--dim", "--noise", "--seed"}) {
        if (run_cmd->count(opt) > 0) run.spec_touched = true;
      }
      run.spec.frames_per_video.assign(run.spec.n_videos, run_frames);
      return do_run(run);
    }
    if (*round_cmd) return do_round(round);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
