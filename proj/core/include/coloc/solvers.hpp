#pragma once

#include <Eigen/Core>
#include <limits>
#include <string>
#include <vector>

#include "coloc/active_set.hpp"
#include "coloc/atom.hpp"
#include "coloc/objective.hpp"
#include "coloc/trellis.hpp"

namespace coloc {

enum class GammaSchedule { kThreeOverKPlusTwo, kTwoOverKPlusOne };

struct SolverConfig {
  double epsilon = 1e-5;  // stop once the Wolfe gap falls to this
  int max_iters = 2000;
  GammaSchedule gamma_schedule = GammaSchedule::kThreeOverKPlusTwo;

  // Sliding subproblem controls: beta_k = beta_scale * L / (k + 1),
  // eta_k = eta_scale * L * diam^2 / (inner_max_iters * k), with L estimated
  // from the problem and diam^2 = 2 * total frame count.
  double beta_scale = 2.0;
  double eta_scale = 1.0;
  int inner_max_iters = 100;

  // Stop on gap / |dual bound| <= epsilon instead of the absolute gap.
  bool relative_gap = false;
};

enum class StepKind { kFw, kAway, kPairwise, kCgs, kDrop, kNull, kNone };

const char* step_kind_name(StepKind k);

struct IterationRecord {
  int iter = 0;                // 1-based
  double gap = 0.0;            // Wolfe gap at the iterate this row describes
  double objective = 0.0;      // f at that same iterate
  StepKind kind = StepKind::kNone;
  double gamma = 0.0;
  int active_set_size = 0;     // after the step; 0 when the solver keeps no set
  int lmo_calls = 0;           // calls made during this iteration
  double elapsed_s = 0.0;      // cumulative wall clock
  // Sliding solvers also track <-grad f(y), x_k - y>, which equals the Wolfe
  // gap only when the subproblem is solved exactly. NaN elsewhere.
  double sliding_gap = std::numeric_limits<double>::quiet_NaN();
};

enum class Termination { kConverged, kIterationCap };

struct SolverTrace {
  std::string solver;
  std::vector<IterationRecord> iterations;
  Eigen::VectorXd final_iterate;
  double final_objective = 0.0;
  double final_gap = 0.0;
  Atom rounded;
  double rounded_objective = 0.0;
  Termination termination = Termination::kIterationCap;
  double total_time_s = 0.0;
  long long total_lmo_calls = 0;
};

// Wolfe gap <-grad f(y), s - y> with s the LMO minimizer of the gradient.
struct GapResult {
  double gap;
  Atom minimizer;
};
GapResult wolfe_gap(const QuadraticProblem& p, const Eigen::VectorXd& y,
                    const TrellisDomain& domain);

// Minimizer of the quadratic f along y + gamma d over [0, gamma_max]:
// gamma* = clamp(-d'grad f(y) / (2 d'Qd), 0, gamma_max). A flat direction
// (d'Qd = 0) gives gamma_max when the slope is negative, else 0. gamma_max
// must be nonnegative.
double exact_line_search(const QuadraticProblem& p, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& d, double gamma_max);

struct FwProcedureResult {
  Eigen::VectorXd point;
  int iterations = 0;       // update steps performed
  int lmo_calls = 0;
  bool reached_tolerance = false;  // true when the V test passed, false at the cap
  double last_v = 0.0;
};

// Frank-Wolfe on the sliding subproblem phi(x) = <g, x> + (beta/2)||x - u||^2,
// started at u, terminating when V(x) = max_s <grad phi(x), x - s> drops to
// eta or after inner_cap steps.
FwProcedureResult fw_procedure(const Eigen::VectorXd& g, const Eigen::VectorXd& u, double beta,
                               double eta, const TrellisDomain& domain, int inner_cap);

// Twice the spectral norm of Q, the Lipschitz constant of the gradient,
// estimated by power iteration with a deterministic start.
double estimate_gradient_lipschitz(const QuadraticProblem& p);

SolverTrace solve_fw(const QuadraticProblem& p, const TrellisDomain& domain,
                     const SolverConfig& cfg);
SolverTrace solve_afw(const QuadraticProblem& p, const TrellisDomain& domain,
                      const SolverConfig& cfg);
SolverTrace solve_pairfw(const QuadraticProblem& p, const TrellisDomain& domain,
                         const SolverConfig& cfg);
SolverTrace solve_cgs(const QuadraticProblem& p, const TrellisDomain& domain,
                      const SolverConfig& cfg);
SolverTrace solve_acgs(const QuadraticProblem& p, const TrellisDomain& domain,
                       const SolverConfig& cfg);
SolverTrace solve_pcgs(const QuadraticProblem& p, const TrellisDomain& domain,
                       const SolverConfig& cfg);

inline const std::vector<std::string> kSolverNames = {"fw",  "afw",  "pairfw",
                                                      "cgs", "acgs", "pcgs"};

// Dispatch by name; throws std::invalid_argument for unknown names.
SolverTrace solve(const std::string& solver, const QuadraticProblem& p,
                  const TrellisDomain& domain, const SolverConfig& cfg);

}  // namespace coloc
