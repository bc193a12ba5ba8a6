#include "coloc/active_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace coloc {

namespace {

void validate_atom(const BoxIndexing& ix, const Atom& a, const char* where) {
  if (static_cast<int>(a.boxes.size()) != ix.total_frames)
    throw std::invalid_argument(std::string(where) + ": atom frame count does not match");
  for (std::int32_t b : a.boxes)
    if (b < 0 || b >= ix.boxes_per_frame)
      throw std::invalid_argument(std::string(where) + ": box index out of range");
}

}  // namespace

ActiveSet::ActiveSet(const BoxIndexing& ix, const Atom& initial) : ix_(ix) {
  validate_atom(ix_, initial, "ActiveSet");
  atoms_.push_back(initial);
  weights_.push_back(1.0);
  index_.emplace(initial, 0);
  y_ = initial.to_dense(ix_);
}

std::optional<double> ActiveSet::weight_of(const Atom& a) const {
  const std::size_t pos = position_of(a);
  if (pos == npos) return std::nullopt;
  return weights_[pos];
}

std::size_t ActiveSet::position_of(const Atom& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? npos : it->second;
}

void ActiveSet::add_weight(const Atom& a, double w) {
  const std::size_t pos = position_of(a);
  if (pos == npos) {
    atoms_.push_back(a);
    weights_.push_back(w);
    index_.emplace(a, atoms_.size() - 1);
  } else {
    weights_[pos] += w;
  }
}

void ActiveSet::remove_at(std::size_t pos) {
  index_.erase(atoms_[pos]);
  atoms_.erase(atoms_.begin() + pos);
  weights_.erase(weights_.begin() + pos);
  for (auto& [atom, idx] : index_)
    if (idx > pos) --idx;
}

void ActiveSet::prune_and_renormalize() {
  bool pruned = false;
  for (std::size_t pos = atoms_.size(); pos-- > 0;) {
    if (weights_[pos] < kWeightTol) {
      const double w = weights_[pos];
      if (w != 0.0) {
        for (int i : atoms_[pos].flat_indices(ix_)) y_[i] -= w;
      }
      remove_at(pos);
      pruned = true;
    }
  }
  if (!pruned) return;
  double s = 0.0;
  for (double w : weights_) s += w;
  if (s <= 0.0) throw std::logic_error("ActiveSet: all weight pruned");
  if (s != 1.0) {
    for (double& w : weights_) w /= s;
    y_ /= s;
  }
}

void ActiveSet::step_toward(const Atom& target, double gamma) {
  validate_atom(ix_, target, "step_toward");
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("step_toward: gamma must be in [0, 1]");
  if (gamma == 1.0) {
    atoms_.assign(1, target);
    weights_.assign(1, 1.0);
    index_.clear();
    index_.emplace(target, 0);
    y_ = target.to_dense(ix_);
    return;
  }
  for (double& w : weights_) w *= 1.0 - gamma;
  add_weight(target, gamma);
  y_ *= 1.0 - gamma;
  for (int i : target.flat_indices(ix_)) y_[i] += gamma;
  prune_and_renormalize();
}

void ActiveSet::step_toward_mixture(const ActiveSet& mixture, double gamma) {
  if (&mixture == this) return;  // moving toward the current point changes nothing
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("step_toward_mixture: gamma must be in [0, 1]");
  if (gamma == 1.0) {
    atoms_ = mixture.atoms_;
    weights_ = mixture.weights_;
    index_ = mixture.index_;
    y_ = mixture.y_;
    return;
  }
  for (double& w : weights_) w *= 1.0 - gamma;
  for (std::size_t i = 0; i < mixture.atoms_.size(); ++i)
    add_weight(mixture.atoms_[i], gamma * mixture.weights_[i]);
  y_ = (1.0 - gamma) * y_ + gamma * mixture.y_;
  prune_and_renormalize();
}

double ActiveSet::max_away_step(const Atom& away) const {
  const std::size_t pos = position_of(away);
  if (pos == npos) throw std::invalid_argument("max_away_step: atom is not active");
  const double a = weights_[pos];
  if (a >= 1.0) return std::numeric_limits<double>::infinity();
  return a / (1.0 - a);
}

void ActiveSet::step_away(const Atom& away, double gamma) {
  validate_atom(ix_, away, "step_away");
  const std::size_t pos = position_of(away);
  if (pos == npos) throw std::invalid_argument("step_away: atom is not active");
  if (gamma < 0.0) throw std::invalid_argument("step_away: gamma must be nonnegative");
  const double gmax = max_away_step(away);
  if (gamma > gmax * (1.0 + 1e-12))
    throw std::invalid_argument("step_away: gamma exceeds the maximum away step");

  for (double& w : weights_) w *= 1.0 + gamma;
  weights_[pos] -= gamma;
  y_ *= 1.0 + gamma;
  for (int i : away.flat_indices(ix_)) y_[i] -= gamma;
  prune_and_renormalize();
}

void ActiveSet::step_pairwise(const Atom& from, const Atom& to, double gamma) {
  validate_atom(ix_, from, "step_pairwise");
  validate_atom(ix_, to, "step_pairwise");
  if (from == to) return;  // weight would move onto itself
  const std::size_t pos = position_of(from);
  if (pos == npos) throw std::invalid_argument("step_pairwise: source atom is not active");
  if (gamma < 0.0) throw std::invalid_argument("step_pairwise: gamma must be nonnegative");
  const double limit = weights_[pos];
  if (gamma > limit * (1.0 + 1e-12) + 1e-300)
    throw std::invalid_argument("step_pairwise: gamma exceeds the source weight");
  // Snap a transfer that would leave dust to a clean full transfer.
  if (limit - gamma < kWeightTol) gamma = limit;
  // A transfer too small to clear the weight floor would register a
  // dust atom; treat it as the null step it effectively is.
  if (gamma < kWeightTol && position_of(to) == npos) return;

  weights_[pos] -= gamma;
  const bool drop = weights_[pos] == 0.0;
  for (int i : from.flat_indices(ix_)) y_[i] -= gamma;
  for (int i : to.flat_indices(ix_)) y_[i] += gamma;
  add_weight(to, gamma);
  if (drop) remove_at(position_of(from));
}

void ActiveSet::step_pairwise_mixture(const Atom& from, const ActiveSet& mixture, double gamma) {
  validate_atom(ix_, from, "step_pairwise_mixture");
  if (&mixture == this)
    throw std::invalid_argument("step_pairwise_mixture: mixture must be a distinct set");
  const std::size_t pos = position_of(from);
  if (pos == npos) throw std::invalid_argument("step_pairwise_mixture: source atom is not active");
  if (gamma < 0.0) throw std::invalid_argument("step_pairwise_mixture: gamma must be nonnegative");
  const double limit = weights_[pos];
  if (gamma > limit * (1.0 + 1e-12) + 1e-300)
    throw std::invalid_argument("step_pairwise_mixture: gamma exceeds the source weight");
  if (limit - gamma < kWeightTol) gamma = limit;

  weights_[pos] -= gamma;
  for (int i : from.flat_indices(ix_)) y_[i] -= gamma;
  y_ += gamma * mixture.y_;
  for (std::size_t i = 0; i < mixture.atoms_.size(); ++i)
    add_weight(mixture.atoms_[i], gamma * mixture.weights_[i]);
  prune_and_renormalize();
}

std::pair<Atom, double> ActiveSet::worst_atom(const Eigen::VectorXd& gradient) const {
  if (gradient.size() != ix_.n_boxes)
    throw std::invalid_argument("worst_atom: gradient length does not match box count");
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    double s = 0.0;
    for (int idx : atoms_[i].flat_indices(ix_)) s += gradient[idx];
    if (s > best) {  // strict, so ties keep the earliest inserted atom
      best = s;
      arg = i;
    }
  }
  return {atoms_[arg], weights_[arg]};
}

void ActiveSet::check_consistency(double tol) const {
  double s = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::logic_error("ActiveSet: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > tol) throw std::logic_error("ActiveSet: weights do not sum to one");
  Eigen::VectorXd again = Eigen::VectorXd::Zero(ix_.n_boxes);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (int idx : atoms_[i].flat_indices(ix_)) again[idx] += weights_[i];
  }
  if ((again - y_).cwiseAbs().maxCoeff() > tol)
    throw std::logic_error("ActiveSet: cached iterate out of sync with the weights");
}

}  // namespace coloc
