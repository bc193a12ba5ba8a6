#include "coloc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace coloc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double schedule_gamma(GammaSchedule s, int k) {
  switch (s) {
    case GammaSchedule::kThreeOverKPlusTwo:
      return 3.0 / (k + 2);
    case GammaSchedule::kTwoOverKPlusOne:
      return 2.0 / (k + 1);
  }
  return 0.0;
}

double dot_support(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  double s = 0.0;
  for (int i : idx) s += v[i];
  return s;
}

// Minimizer of the 1-d quadratic slope * t + curv * t^2 over [0, gmax].
double line_search_core(double slope, double curv, double gmax) {
  if (curv > 0.0) {
    const double t = -slope / (2.0 * curv);
    return std::clamp(t, 0.0, gmax);
  }
  return slope < 0.0 ? gmax : 0.0;
}

// Per solve bookkeeping: trace rows, LMO accounting, wall clock.
struct Run {
  const QuadraticProblem& p;
  const TrellisDomain& dom;
  const SolverConfig& cfg;
  SolverTrace trace;
  Clock::time_point t0 = Clock::now();
  int iter_lmo = 0;

  Run(const char* name, const QuadraticProblem& p_, const TrellisDomain& dom_,
      const SolverConfig& cfg_)
      : p(p_), dom(dom_), cfg(cfg_) {
    if (cfg.epsilon <= 0.0) throw std::invalid_argument("SolverConfig: epsilon must be positive");
    if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be positive");
    if (cfg.inner_max_iters < 1)
      throw std::invalid_argument("SolverConfig: inner_max_iters must be positive");
    trace.solver = name;
  }

  Atom lmo(const Eigen::VectorXd& cost) {
    ++iter_lmo;
    return dom.lmo(cost);
  }

  bool stop(double gap, double f) const {
    if (!cfg.relative_gap) return gap <= cfg.epsilon;
    return gap <= cfg.epsilon * std::max(std::abs(f - gap), 1e-300);
  }

  void record(int k, double gap, double f, StepKind kind, double gamma, int set_size,
              double sliding = std::numeric_limits<double>::quiet_NaN()) {
    trace.iterations.push_back(IterationRecord{k, gap, f, kind, gamma, set_size, iter_lmo,
                                               seconds_since(t0), sliding});
    iter_lmo = 0;
  }

  void finalize(const Eigen::VectorXd& y, Termination why) {
    trace.final_iterate = y;
    trace.final_objective = p.value(y);
    trace.final_gap = wolfe_gap(p, y, dom).gap;
    trace.rounded = dom.round_to_atom(y);
    trace.rounded_objective = p.value(trace.rounded.to_dense(dom.indexing()));
    trace.termination = why;
    trace.total_time_s = seconds_since(t0);
    trace.total_lmo_calls = 0;
    for (const auto& row : trace.iterations) trace.total_lmo_calls += row.lmo_calls;
  }
};

// Sequences for the sliding solvers.
struct SlidingSchedule {
  double lipschitz;
  double diam_sq;
  const SolverConfig& cfg;

  SlidingSchedule(const QuadraticProblem& p, const TrellisDomain& dom, const SolverConfig& c)
      : lipschitz(estimate_gradient_lipschitz(p)),
        diam_sq(2.0 * dom.indexing().total_frames),
        cfg(c) {}

  double beta(int k) const {
    return std::max(cfg.beta_scale * lipschitz / (k + 1), 1e-12);
  }
  double eta(int k) const {
    return cfg.eta_scale * lipschitz * diam_sq / (static_cast<double>(cfg.inner_max_iters) * k);
  }
};

}  // namespace

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::kFw: return "fw";
    case StepKind::kAway: return "away";
    case StepKind::kPairwise: return "pairwise";
    case StepKind::kCgs: return "cgs";
    case StepKind::kDrop: return "drop";
    case StepKind::kNull: return "null";
    case StepKind::kNone: return "none";
  }
  return "unknown";
}

GapResult wolfe_gap(const QuadraticProblem& p, const Eigen::VectorXd& y,
                    const TrellisDomain& domain) {
  const Eigen::VectorXd g = p.gradient(y);
  Atom s = domain.lmo(g);
  const double gap = g.dot(y) - dot_support(g, s.flat_indices(domain.indexing()));
  return GapResult{gap, std::move(s)};
}

double exact_line_search(const QuadraticProblem& p, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& d, double gamma_max) {
  if (gamma_max < 0.0)
    throw std::invalid_argument("exact_line_search: gamma_max must be nonnegative");
  const double slope = d.dot(p.gradient(y));
  const double curv = p.curvature(d);
  return line_search_core(slope, curv, gamma_max);
}

namespace {

// Weight ledger behind the sliding solvers. Iterates are kept as exact dense
// vectors; this records which atoms carry the bulk of the weight so away and
// pairwise moves have workable candidates. Only the heaviest atoms stay
// listed, lighter ones surrender their mass to an untracked residual bucket.
// A listed weight never exceeds the atom's true coefficient, so a step capped
// by it keeps the iterate inside the hull.
struct TrackedMixture {
  static constexpr double kDropTol = 1e-12;

  std::map<std::vector<int>, double> raw;  // true weight = scale * raw value
  std::size_t cap;
  double floor_w;
  double scale = 1.0;
  double residual = 0.0;

  TrackedMixture(const Atom& a, std::size_t cap_atoms, double min_weight = kDropTol)
      : cap(cap_atoms), floor_w(min_weight) {
    raw[a.boxes] = 1.0;
  }

  std::size_t size() const { return raw.size(); }

  void rescale(double factor) {
    scale *= factor;
    residual *= factor;
  }

  void add(const std::vector<int>& key, double w) { raw[key] += w / scale; }

  // Toward step of the inner procedure: u <- (1 - alpha) u + alpha * vertex.
  void toward_vertex(const std::vector<int>& key, double alpha) {
    if (alpha >= 1.0) {
      raw.clear();
      scale = 1.0;
      residual = 0.0;
      raw[key] = 1.0;
      return;
    }
    rescale(1.0 - alpha);
    if (scale < 1e-150) compact();
    add(key, alpha);
  }

  // y <- (1 - gamma) y + gamma x.
  void blend_top(const TrackedMixture& x, double gamma, std::size_t take) {
    if (gamma >= 1.0) {
      raw.clear();
      scale = 1.0;
      residual = 0.0;
      absorb_top(x, 1.0, take);
      return;
    }
    rescale(1.0 - gamma);
    if (scale < 1e-150) compact();
    absorb_top(x, gamma, take);
  }

  // Adds gamma * x without touching existing weights. Only x's heaviest
  // `take` atoms enter the ledger, the rest of the mass lands on the
  // residual, which keeps dust from the inner procedure out of the record.
  void absorb_top(const TrackedMixture& x, double gamma, std::size_t take) {
    std::vector<std::pair<const std::vector<int>*, double>> entries;
    entries.reserve(x.raw.size());
    for (const auto& [key, w] : x.raw) entries.emplace_back(&key, x.scale * w);
    if (entries.size() > take) {
      std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return *a.first < *b.first;
      });
    }
    const std::size_t keep = std::min(take, entries.size());
    for (std::size_t i = 0; i < keep; ++i) add(*entries[i].first, gamma * entries[i].second);
    double rest = x.residual;
    for (std::size_t i = keep; i < entries.size(); ++i) rest += entries[i].second;
    residual += gamma * rest;
  }

  // y <- y + gamma (y - v). Returns true when v drops out.
  bool step_away(const std::vector<int>& v, double gamma) {
    const auto it = raw.find(v);
    const double before = scale * it->second;
    rescale(1.0 + gamma);
    const double after = (1.0 + gamma) * before - gamma;
    if (after <= kDropTol) {
      residual += std::max(after, 0.0);
      raw.erase(it);
      return true;
    }
    it->second = after / scale;
    return false;
  }

  // Removes gamma of v's weight (pairwise transfer source). True on drop.
  bool take_from(const std::vector<int>& v, double gamma) {
    const auto it = raw.find(v);
    const double after = scale * it->second - gamma;
    if (after <= kDropTol) {
      residual += std::max(after, 0.0);
      raw.erase(it);
      return true;
    }
    it->second = after / scale;
    return false;
  }

  // The tracked atom maximizing <g, v>, or nullptr when nothing is tracked.
  std::pair<const std::vector<int>*, double> worst(const Eigen::VectorXd& g,
                                                   const BoxIndexing& ix) const {
    const std::vector<int>* best = nullptr;
    double best_score = -std::numeric_limits<double>::infinity();
    double best_weight = 0.0;
    for (const auto& [key, w] : raw) {
      double s = 0.0;
      for (int f = 0; f < ix.total_frames; ++f)
        s += g[ix.flat_index_of_global_frame(f, key[f])];
      if (s > best_score) {
        best_score = s;
        best = &key;
        best_weight = scale * w;
      }
    }
    return {best, best_weight};
  }

  // Caps the ledger, folds atoms lighter than the floor and everything beyond
  // the cap into the residual, resets the lazy scale, and renormalizes the
  // bookkeeping total back to one. The heaviest atom survives even below the
  // floor so the record never goes empty while mass remains. Never touches
  // the dense iterate.
  void compact() {
    std::vector<std::pair<std::vector<int>, double>> entries;
    entries.reserve(raw.size());
    const std::vector<int>* heaviest = nullptr;
    double heaviest_w = 0.0;
    for (const auto& [key, w] : raw) {
      const double tw = scale * w;
      if (tw > heaviest_w) {
        heaviest_w = tw;
        heaviest = &key;
      }
    }
    for (const auto& [key, w] : raw) {
      const double tw = scale * w;
      if ((tw < floor_w || tw <= kDropTol) && &key != heaviest)
        residual += std::max(tw, 0.0);
      else
        entries.emplace_back(key, tw);
    }
    if (entries.size() > cap) {
      std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
      for (std::size_t i = cap; i < entries.size(); ++i) residual += entries[i].second;
      entries.resize(cap);
    }
    double total = residual;
    for (const auto& e : entries) total += e.second;
    const double inv = total > 0.0 ? 1.0 / total : 1.0;
    raw.clear();
    for (auto& e : entries) raw[std::move(e.first)] = e.second * inv;
    residual *= inv;
    scale = 1.0;
  }
};

FwProcedureResult fw_procedure_impl(const Eigen::VectorXd& g, const Eigen::VectorXd& u,
                                    double beta, double eta, const TrellisDomain& domain,
                                    int inner_cap, TrackedMixture* mix) {
  if (beta <= 0.0) throw std::invalid_argument("fw_procedure: beta must be positive");
  if (eta < 0.0) throw std::invalid_argument("fw_procedure: eta must be nonnegative");
  if (inner_cap < 1) throw std::invalid_argument("fw_procedure: inner_cap must be positive");

  const BoxIndexing& ix = domain.indexing();
  FwProcedureResult res;
  Eigen::VectorXd ut = u;

  for (;;) {
    const Eigen::VectorXd grad_phi = g + beta * (ut - u);
    const Atom w = domain.lmo(grad_phi);
    ++res.lmo_calls;
    const std::vector<int> widx = w.flat_indices(ix);
    const double v_gap = grad_phi.dot(ut) - dot_support(grad_phi, widx);
    res.last_v = v_gap;
    if (v_gap <= eta) {
      res.reached_tolerance = true;
      break;
    }
    if (res.iterations >= inner_cap) break;

    Eigen::VectorXd dir = -ut;
    for (int i : widx) dir[i] += 1.0;
    const double denom = beta * dir.squaredNorm();
    const double alpha = denom > 0.0 ? std::min(1.0, v_gap / denom) : 1.0;
    ut += alpha * dir;
    if (mix) mix->toward_vertex(w.boxes, alpha);
    ++res.iterations;
  }
  if (mix) mix->compact();
  res.point = std::move(ut);
  return res;
}

}  // namespace

FwProcedureResult fw_procedure(const Eigen::VectorXd& g, const Eigen::VectorXd& u, double beta,
                               double eta, const TrellisDomain& domain, int inner_cap) {
  return fw_procedure_impl(g, u, beta, eta, domain, inner_cap, nullptr);
}

double estimate_gradient_lipschitz(const QuadraticProblem& p) {
  const Eigen::Index n = p.n();
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / (n + 1.0);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = p.Q() * v;
    const double next = w.norm();
    if (next <= 0.0) return 0.0;
    w /= next;
    const bool settled = std::abs(next - lambda) <= 1e-9 * std::max(1.0, next);
    lambda = next;
    v = std::move(w);
    if (settled) break;
  }
  return 2.0 * lambda;
}

namespace {

// Neutral deterministic start shared by every solver: the first box in each
// frame. A cost-aware start would hand the greedy methods a head start that
// depends on the instance.
Atom initial_atom(Run& r) {
  Atom a;
  a.boxes.assign(r.dom.indexing().total_frames, 0);
  return a;
}

SolverTrace fw_family(const char* name, const QuadraticProblem& p, const TrellisDomain& dom,
                      const SolverConfig& cfg) {
  const bool away_steps = std::string(name) == "afw";
  const bool pairwise_steps = std::string(name) == "pairfw";
  const BoxIndexing& ix = dom.indexing();

  Run r(name, p, dom, cfg);
  ActiveSet set(ix, initial_atom(r));

  // Track the best vertex seen at LMO calls; the away-steps variant returns
  // the better of this and the rounded final iterate.
  Atom best_vertex;
  double best_vertex_val = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Eigen::VectorXd& y = set.iterate();
    const Eigen::VectorXd Qy = p.Q() * y;
    const double f = y.dot(Qy) + p.c().dot(y);
    const Eigen::VectorXd g = 2.0 * Qy + p.c();

    const Atom s = r.lmo(g);
    const std::vector<int> sidx = s.flat_indices(ix);
    const double gap = g.dot(y) - dot_support(g, sidx);

    if (away_steps) {
      const Eigen::VectorXd Qs = p.q_times_support(sidx);
      const double fs = dot_support(Qs, sidx) + dot_support(p.c(), sidx);
      if (fs < best_vertex_val) {
        best_vertex_val = fs;
        best_vertex = s;
      }
    }

    if (r.stop(gap, f)) {
      r.record(k, gap, f, StepKind::kNone, 0.0, static_cast<int>(set.size()));
      r.finalize(y, Termination::kConverged);
      break;
    }

    double gamma = 0.0;
    StepKind kind = StepKind::kNull;

    if (pairwise_steps) {
      const auto [v, alpha_v] = set.worst_atom(g);
      const std::vector<int> vidx = v.flat_indices(ix);
      Eigen::VectorXd d = Eigen::VectorXd::Zero(ix.n_boxes);
      for (int i : sidx) d[i] += 1.0;
      for (int i : vidx) d[i] -= 1.0;
      const Eigen::VectorXd Qd = p.q_times_support(sidx) - p.q_times_support(vidx);
      gamma = line_search_core(d.dot(g), d.dot(Qd), alpha_v);
      if (gamma > 0.0) {
        set.step_pairwise(v, s, gamma);
        kind = StepKind::kPairwise;
      }
    } else if (away_steps) {
      const auto [v, alpha_v] = set.worst_atom(g);
      const std::vector<int> vidx = v.flat_indices(ix);
      const Eigen::VectorXd d_fw = s.to_dense(ix) - y;
      Eigen::VectorXd d_away = y;
      for (int i : vidx) d_away[i] -= 1.0;
      // Toward step unless the away direction is strictly more aligned with
      // the descent direction.
      if (d_fw.dot(g) <= d_away.dot(g)) {
        const Eigen::VectorXd Qd = p.q_times_support(sidx) - Qy;
        gamma = line_search_core(d_fw.dot(g), d_fw.dot(Qd), 1.0);
        if (gamma > 0.0) {
          set.step_toward(s, gamma);
          kind = StepKind::kFw;
        }
      } else {
        const Eigen::VectorXd Qd = Qy - p.q_times_support(vidx);
        const double gmax = set.max_away_step(v);
        gamma = line_search_core(d_away.dot(g), d_away.dot(Qd), gmax);
        if (gamma > 0.0) {
          const std::size_t before = set.size();
          set.step_away(v, gamma);
          kind = set.size() < before ? StepKind::kDrop : StepKind::kAway;
        }
      }
    } else {
      const Eigen::VectorXd d = s.to_dense(ix) - y;
      const Eigen::VectorXd Qd = p.q_times_support(sidx) - Qy;
      gamma = line_search_core(d.dot(g), d.dot(Qd), 1.0);
      if (gamma > 0.0) {
        set.step_toward(s, gamma);
        kind = StepKind::kFw;
      }
    }

    r.record(k, gap, f, kind, gamma, static_cast<int>(set.size()));
    if (k == cfg.max_iters) r.finalize(set.iterate(), Termination::kIterationCap);
  }

  if (r.trace.iterations.empty()) r.finalize(set.iterate(), Termination::kIterationCap);

  if (away_steps && best_vertex_val < r.trace.rounded_objective) {
    r.trace.rounded = best_vertex;
    r.trace.rounded_objective = best_vertex_val;
  }
  return std::move(r.trace);
}

}  // namespace

SolverTrace solve_fw(const QuadraticProblem& p, const TrellisDomain& dom,
                     const SolverConfig& cfg) {
  return fw_family("fw", p, dom, cfg);
}

SolverTrace solve_afw(const QuadraticProblem& p, const TrellisDomain& dom,
                      const SolverConfig& cfg) {
  return fw_family("afw", p, dom, cfg);
}

SolverTrace solve_pairfw(const QuadraticProblem& p, const TrellisDomain& dom,
                         const SolverConfig& cfg) {
  return fw_family("pairfw", p, dom, cfg);
}

SolverTrace solve_cgs(const QuadraticProblem& p, const TrellisDomain& dom,
                      const SolverConfig& cfg) {
  const BoxIndexing& ix = dom.indexing();
  Run r("cgs", p, dom, cfg);
  SlidingSchedule sched(p, dom, cfg);

  const Atom a0 = initial_atom(r);
  Eigen::VectorXd x = a0.to_dense(ix);
  Eigen::VectorXd y = x;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Eigen::VectorXd Qy = p.Q() * y;
    const double f = y.dot(Qy) + p.c().dot(y);
    const Eigen::VectorXd g = 2.0 * Qy + p.c();
    const Atom s = r.lmo(g);
    const double gap = g.dot(y) - dot_support(g, s.flat_indices(ix));

    if (r.stop(gap, f)) {
      r.record(k, gap, f, StepKind::kNone, 0.0, 0);
      r.finalize(y, Termination::kConverged);
      return std::move(r.trace);
    }

    const double gamma = schedule_gamma(cfg.gamma_schedule, k);
    const Eigen::VectorXd z = y + gamma * (x - y);
    const Eigen::VectorXd gz = p.gradient(z);
    const FwProcedureResult inner =
        fw_procedure(gz, x, sched.beta(k), sched.eta(k), dom, cfg.inner_max_iters);
    r.iter_lmo += inner.lmo_calls;
    x = inner.point;

    const double sliding = -g.dot(x - y);
    y += gamma * (x - y);
    r.record(k, gap, f, StepKind::kCgs, gamma, 0, sliding);
  }
  r.finalize(y, Termination::kIterationCap);
  return std::move(r.trace);
}

namespace {

SolverTrace sliding_with_away(const char* name, const QuadraticProblem& p,
                              const TrellisDomain& dom, const SolverConfig& cfg) {
  const bool pairwise = std::string(name) == "pcgs";

  // Pairwise transfers are capped by recorded weights, so that variant keeps
  // as faithful a ledger as the cap allows. The away variant instead wants a
  // short ledger of consequential atoms: a long dusty record makes the away
  // branch win the direction test with near-zero step room.
  const std::size_t kXTracked = 512;
  const std::size_t kYTracked = pairwise ? kXTracked : 32;
  const std::size_t kAdopt = pairwise ? kXTracked : 2;
  const double kYFloor = pairwise ? 1e-12 : 1e-2;
  const BoxIndexing& ix = dom.indexing();
  Run r(name, p, dom, cfg);
  SlidingSchedule sched(p, dom, cfg);

  const Atom a0 = initial_atom(r);
  Eigen::VectorXd y = a0.to_dense(ix);
  Eigen::VectorXd x = y;
  TrackedMixture ymix(a0, kYTracked, kYFloor);
  TrackedMixture xmix(a0, kXTracked);

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Eigen::VectorXd Qy = p.Q() * y;
    const double f = y.dot(Qy) + p.c().dot(y);
    const Eigen::VectorXd g = 2.0 * Qy + p.c();
    const Atom s = r.lmo(g);
    const double gap = g.dot(y) - dot_support(g, s.flat_indices(ix));

    if (r.stop(gap, f)) {
      r.record(k, gap, f, StepKind::kNone, 0.0, static_cast<int>(ymix.size()));
      r.finalize(y, Termination::kConverged);
      return std::move(r.trace);
    }

    const double gamma_k = schedule_gamma(cfg.gamma_schedule, k);
    const Eigen::VectorXd z = y + gamma_k * (x - y);
    const Eigen::VectorXd gz = p.gradient(z);
    const FwProcedureResult inner =
        fw_procedure_impl(gz, x, sched.beta(k), sched.eta(k), dom, cfg.inner_max_iters, &xmix);
    r.iter_lmo += inner.lmo_calls;
    x = inner.point;

    const Eigen::VectorXd d_cgs = x - y;
    const double sliding = -g.dot(d_cgs);

    double gamma = 0.0;
    StepKind kind = StepKind::kNull;

    const auto [v_key, alpha_v] = ymix.worst(g, ix);

    if (pairwise) {
      if (v_key) {
        Eigen::VectorXd d = x;  // x - v
        for (int f2 = 0; f2 < ix.total_frames; ++f2)
          d[ix.flat_index_of_global_frame(f2, (*v_key)[f2])] -= 1.0;
        gamma = line_search_core(d.dot(g), p.curvature(d), alpha_v);
        if (gamma > 0.0) {
          const std::vector<int> v = *v_key;  // step invalidates the pointer
          y += gamma * d;
          const bool dropped = ymix.take_from(v, gamma);
          ymix.absorb_top(xmix, gamma, kAdopt);
          ymix.compact();
          kind = dropped ? StepKind::kDrop : StepKind::kPairwise;
        }
      }
    } else {
      Eigen::VectorXd d_away = y;
      if (v_key)
        for (int f2 = 0; f2 < ix.total_frames; ++f2)
          d_away[ix.flat_index_of_global_frame(f2, (*v_key)[f2])] -= 1.0;
      else
        d_away.setZero();
      if (!v_key || -g.dot(d_cgs) >= -g.dot(d_away)) {
        // Capping the forward branch at the outer schedule keeps y from
        // overtaking x in one jump; an uncapped step stalls on null steps
        // once x itself is still mid-flight.
        gamma = line_search_core(d_cgs.dot(g), p.curvature(d_cgs), gamma_k);
        if (gamma > 0.0) {
          y += gamma * d_cgs;
          ymix.blend_top(xmix, gamma, kAdopt);
          ymix.compact();
          kind = StepKind::kCgs;
        }
      } else {
        const double gmax =
            alpha_v >= 1.0 ? std::numeric_limits<double>::infinity() : alpha_v / (1.0 - alpha_v);
        gamma = line_search_core(d_away.dot(g), p.curvature(d_away), gmax);
        if (gamma > 0.0) {
          const std::vector<int> v = *v_key;
          y += gamma * d_away;
          const bool dropped = ymix.step_away(v, gamma);
          ymix.compact();
          kind = dropped ? StepKind::kDrop : StepKind::kAway;
        }
      }
    }

    r.record(k, gap, f, kind, gamma, static_cast<int>(ymix.size()), sliding);
  }
  r.finalize(y, Termination::kIterationCap);
  return std::move(r.trace);
}

}  // namespace

SolverTrace solve_acgs(const QuadraticProblem& p, const TrellisDomain& dom,
                       const SolverConfig& cfg) {
  return sliding_with_away("acgs", p, dom, cfg);
}

SolverTrace solve_pcgs(const QuadraticProblem& p, const TrellisDomain& dom,
                       const SolverConfig& cfg) {
  return sliding_with_away("pcgs", p, dom, cfg);
}

SolverTrace solve(const std::string& solver, const QuadraticProblem& p, const TrellisDomain& dom,
                  const SolverConfig& cfg) {
  if (solver == "fw") return solve_fw(p, dom, cfg);
  if (solver == "afw") return solve_afw(p, dom, cfg);
  if (solver == "pairfw") return solve_pairfw(p, dom, cfg);
  if (solver == "cgs") return solve_cgs(p, dom, cfg);
  if (solver == "acgs") return solve_acgs(p, dom, cfg);
  if (solver == "pcgs") return solve_pcgs(p, dom, cfg);
  throw std::invalid_argument("unknown solver: " + solver);
}

}  // namespace coloc
