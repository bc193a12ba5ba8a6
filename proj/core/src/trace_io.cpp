#include "coloc/trace_io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace coloc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& os, const SolverTrace& t) {
  os << "iter,gap,objective,step_kind,gamma,active_set_size,lmo_calls,elapsed_s\n";
  for (const auto& r : t.iterations) {
    os << r.iter << ',' << fmt(r.gap) << ',' << fmt(r.objective) << ','
       << step_kind_name(r.kind) << ',' << fmt(r.gamma) << ',' << r.active_set_size << ','
       << r.lmo_calls << ',' << fmt(r.elapsed_s) << '\n';
  }
}

int iterations_to_gap(const SolverTrace& t, double epsilon) {
  for (const auto& r : t.iterations)
    if (r.gap <= epsilon) return r.iter;
  return -1;
}

void write_summary(std::ostream& os, const std::vector<SolverTrace>& traces, double epsilon) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %12s %14s %18s %18s %10s %12s %s\n", "solver",
                "iters_to_eps", "final_gap", "final_objective", "rounded_obj", "lmo_calls",
                "time_s", "termination");
  os << line;
  for (const auto& t : traces) {
    const int it = iterations_to_gap(t, epsilon);
    const std::string its = it < 0 ? "-" : std::to_string(it);
    std::snprintf(line, sizeof line, "%-8s %12s %14s %18s %18s %10lld %12.3f %s\n",
                  t.solver.c_str(), its.c_str(), fmt6(t.final_gap).c_str(),
                  fmt6(t.final_objective).c_str(), fmt6(t.rounded_objective).c_str(),
                  t.total_lmo_calls, t.total_time_s,
                  t.termination == Termination::kConverged ? "converged" : "iteration_cap");
    os << line;
  }
}

}  // namespace coloc
