#pragma once

#include <iosfwd>
#include <vector>

#include "coloc/solvers.hpp"

namespace coloc {

// One CSV row per iteration:
//   iter,gap,objective,step_kind,gamma,active_set_size,lmo_calls,elapsed_s
// Floats carry 17 significant digits so reruns are byte identical except for
// the elapsed time column.
void write_trace_csv(std::ostream& os, const SolverTrace& t);

// First recorded iteration whose gap is at or below epsilon, or -1.
int iterations_to_gap(const SolverTrace& t, double epsilon);

// Human readable comparison across solvers.
void write_summary(std::ostream& os, const std::vector<SolverTrace>& traces, double epsilon);

}  // namespace coloc
