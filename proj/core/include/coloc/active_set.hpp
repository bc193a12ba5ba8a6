#pragma once

#include <Eigen/Core>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coloc/atom.hpp"
#include "coloc/indexing.hpp"

namespace coloc {

// Convex combination of atoms together with the cached dense iterate
// y = sum_v alpha_v * v. Atoms are keyed by content, weights stay
// nonnegative and sum to one, and weights that fall below 1e-12 after an
// update are pruned. Pruning folds the lost mass back by renormalizing both
// the weights and the cached iterate, so the two stay consistent to machine
// precision.
//
// Single owner object: not safe for concurrent mutation.
class ActiveSet {
 public:
  ActiveSet(const BoxIndexing& ix, const Atom& initial);

  const Eigen::VectorXd& iterate() const { return y_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::optional<double> weight_of(const Atom& a) const;

  // y <- y + gamma (target - y). All weights scale by (1 - gamma), the
  // target gains gamma; gamma = 1 collapses the set to {target}.
  void step_toward(const Atom& target, double gamma);

  // Same semantics with a weighted combination as the target.
  void step_toward_mixture(const ActiveSet& mixture, double gamma);

  // y <- y + gamma (y - away). All weights scale by (1 + gamma), the away
  // atom's becomes (1 + gamma) alpha - gamma. gamma may not exceed
  // max_away_step(away); hitting it drops the atom.
  void step_away(const Atom& away, double gamma);

  // Moves gamma units of weight from one atom to another; gamma may not
  // exceed the source weight. Every other weight is left untouched.
  void step_pairwise(const Atom& from, const Atom& to, double gamma);

  // Pairwise step whose destination is a weighted combination.
  void step_pairwise_mixture(const Atom& from, const ActiveSet& mixture, double gamma);

  // Active atom maximizing <gradient, v>, ties broken toward the atom
  // inserted earliest. Returns the atom and its weight.
  std::pair<Atom, double> worst_atom(const Eigen::VectorXd& gradient) const;

  // Largest admissible away step alpha / (1 - alpha); infinity for a
  // singleton set.
  double max_away_step(const Atom& away) const;

  // Verifies sum of weights == 1, weights >= 0 and the cached iterate
  // against a from scratch recomputation. Throws std::logic_error on
  // violation. Meant for tests and debug builds.
  void check_consistency(double tol = 1e-9) const;

 private:
  std::size_t position_of(const Atom& a) const;  // npos when absent
  void add_weight(const Atom& a, double w);
  void prune_and_renormalize();
  void remove_at(std::size_t pos);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static constexpr double kWeightTol = 1e-12;

  BoxIndexing ix_;
  std::vector<Atom> atoms_;  // insertion order
  std::vector<double> weights_;
  std::unordered_map<Atom, std::size_t, AtomHash> index_;
  Eigen::VectorXd y_;
};

}  // namespace coloc
