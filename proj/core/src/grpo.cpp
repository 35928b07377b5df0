#include "batchcot/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

Policy::Policy(std::size_t feature_dim)
    : feature_dim_(feature_dim), weights_(kNumActions * feature_dim, 0.0) {}

Policy::Policy(std::size_t feature_dim, std::vector<double> weights)
    : feature_dim_(feature_dim), weights_(std::move(weights)) {
  if (weights_.size() != kNumActions * feature_dim_) {
    throw InvalidInput(fmt::format("policy expects {} weights, got {}", kNumActions * feature_dim_,
                                   weights_.size()));
  }
}

Distribution Policy::logits(std::span<const double> features) const {
  if (features.size() != feature_dim_) {
    throw InvalidInput(fmt::format("feature vector has {} entries, policy expects {}",
                                   features.size(), feature_dim_));
  }
  Distribution z{};
  for (std::size_t a = 0; a < kNumActions; ++a) {
    const double* row = weights_.data() + a * feature_dim_;
    z[a] = std::inner_product(features.begin(), features.end(), row, 0.0);
  }
  return z;
}

Distribution Policy::log_probs(std::span<const double> features) const {
  Distribution z = logits(features);
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - top);
  const double log_norm = top + std::log(sum);
  for (double& v : z) v -= log_norm;
  return z;
}

Distribution Policy::distribution(std::span<const double> features) const {
  Distribution p = log_probs(features);
  for (double& v : p) v = std::exp(v);
  return p;
}

Label Policy::greedy(std::span<const double> features) const {
  const Distribution z = logits(features);
  return kAllLabels[static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin())];
}

int reward(Label action, Label gold) { return action == gold ? 1 : 0; }

std::string to_string(AdvantageMode mode) {
  return mode == AdvantageMode::MeanStd ? "mean-std" : "mean-only";
}

std::string to_string(ObjectiveMode mode) {
  return mode == ObjectiveMode::Sampled ? "sampled" : "all-labels";
}

AdvantageMode advantage_mode_from_string(const std::string& name) {
  if (name == "mean-std") return AdvantageMode::MeanStd;
  if (name == "mean-only") return AdvantageMode::MeanOnly;
  throw InvalidInput("unknown advantage mode: " + name);
}

ObjectiveMode objective_mode_from_string(const std::string& name) {
  if (name == "sampled") return ObjectiveMode::Sampled;
  if (name == "all-labels") return ObjectiveMode::AllLabels;
  throw InvalidInput("unknown objective mode: " + name);
}

std::vector<double> group_advantages(std::span<const double> rewards, AdvantageMode mode) {
  if (rewards.size() < 2) throw InvalidInput("group advantages need at least 2 rewards");
  const auto n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  if (std::all_of(rewards.begin(), rewards.end(), [&](double r) { return r == rewards[0]; })) {
    return std::vector<double>(rewards.size(), 0.0);
  }
  std::vector<double> adv(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) adv[i] = rewards[i] - mean;
  if (mode == AdvantageMode::MeanOnly) {
    // Close the group so the left-to-right sum is exactly zero; the last
    // entry moves by at most a few ulp.
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < adv.size(); ++i) head += adv[i];
    adv.back() = -head;
    return adv;
  }
  double var = 0.0;
  for (double d : adv) var += d * d;
  const double std_dev = std::sqrt(var / n);
  for (double& d : adv) d /= std_dev;
  return adv;
}

Distribution literal_advantages(Label gold) {
  Distribution adv{-0.5, -0.5, -0.5};
  adv[index_of(gold)] = 1.0;
  return adv;
}

double kl_categorical(const Distribution& p, const Distribution& q) {
  auto check = [](const Distribution& d, const char* name) {
    double sum = 0.0;
    for (double v : d) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidInput(fmt::format("{} is not strictly positive", name));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput(fmt::format("{} does not sum to 1", name));
  };
  check(p, "p");
  check(q, "q");
  double kl = 0.0;
  for (std::size_t i = 0; i < kNumActions; ++i) kl += p[i] * std::log(p[i] / q[i]);
  return kl;
}

void GrpoConfig::validate() const {
  if (!(beta >= 0.0)) throw InvalidInput("beta must be >= 0");
  if (group_size < 2) throw InvalidInput("group size must be >= 2");
  if (!(learning_rate > 0.0)) throw InvalidInput("learning rate must be > 0");
  if (batch_size < 1) throw InvalidInput("batch size must be >= 1");
}

Json to_json(const GrpoConfig& cfg) {
  return Json{{"beta", cfg.beta},
              {"group_size", cfg.group_size},
              {"learning_rate", cfg.learning_rate},
              {"steps", cfg.steps},
              {"batch_size", cfg.batch_size},
              {"advantage_mode", to_string(cfg.advantage_mode)},
              {"objective_mode", to_string(cfg.objective_mode)}};
}

RolloutGroup make_group(std::vector<double> features, std::vector<Label> actions, Label gold,
                        AdvantageMode mode) {
  RolloutGroup group;
  group.features = std::move(features);
  group.actions = std::move(actions);
  group.gold = gold;
  for (Label a : group.actions) group.rewards.push_back(reward(a, gold));
  group.advantages = group_advantages(group.rewards, mode);
  return group;
}

RolloutGroup sample_group(const Policy& policy, std::vector<double> features, Label gold,
                          std::size_t group_size, AdvantageMode mode, Rng& rng) {
  const Distribution p = policy.distribution(features);
  std::vector<Label> actions;
  actions.reserve(group_size);
  for (std::size_t i = 0; i < group_size; ++i) {
    const double u = rng.uniform();
    std::size_t a = 0;
    double cumulative = p[0];
    while (a + 1 < kNumActions && u >= cumulative) cumulative += p[++a];
    actions.push_back(kAllLabels[a]);
  }
  return make_group(std::move(features), std::move(actions), gold, mode);
}

LossAndGradient grpo_loss(const Policy& policy, const Policy& old_policy, const RolloutGroup& group,
                          const GrpoConfig& cfg) {
  cfg.validate();
  if (policy.feature_dim() != old_policy.feature_dim()) {
    throw InvalidInput("policy and old policy have different feature dimensions");
  }
  const auto& x = group.features;
  const Distribution logp = policy.log_probs(x);
  const Distribution logq = old_policy.log_probs(x);
  Distribution p{};
  for (std::size_t a = 0; a < kNumActions; ++a) p[a] = std::exp(logp[a]);

  // Policy-gradient weights per action: c_a such that the surrogate term is
  // -sum_a c_a log pi(a); d/dz_m = -(c_m - pi_m * sum_a c_a).
  Distribution c{};
  if (cfg.objective_mode == ObjectiveMode::Sampled) {
    if (group.actions.size() != group.advantages.size() || group.actions.size() < 2) {
      throw InvalidInput("rollout group needs matching actions and advantages (G >= 2)");
    }
    const double inv_g = 1.0 / static_cast<double>(group.actions.size());
    for (std::size_t i = 0; i < group.actions.size(); ++i) {
      c[index_of(group.actions[i])] += group.advantages[i] * inv_g;
    }
  } else {
    c = literal_advantages(group.gold);
  }

  LossAndGradient out;
  const double c_sum = c[0] + c[1] + c[2];
  Distribution dz{};
  for (std::size_t a = 0; a < kNumActions; ++a) {
    out.loss -= c[a] * logp[a];
    dz[a] = -(c[a] - p[a] * c_sum);
  }

  // KL(pi || pi_old) = sum_j p_j l_j with l_j = log p_j - log q_j;
  // d/dz_m = p_m (l_m - sum_j p_j l_j).
  Distribution l{};
  for (std::size_t a = 0; a < kNumActions; ++a) {
    l[a] = logp[a] - logq[a];
    out.kl += p[a] * l[a];
  }
  if (cfg.beta > 0.0) {
    out.loss += cfg.beta * out.kl;
    for (std::size_t a = 0; a < kNumActions; ++a) dz[a] += cfg.beta * p[a] * (l[a] - out.kl);
  }

  const std::size_t d = policy.feature_dim();
  out.gradient.assign(kNumActions * d, 0.0);
  for (std::size_t a = 0; a < kNumActions; ++a) {
    for (std::size_t k = 0; k < d; ++k) out.gradient[a * d + k] = dz[a] * x[k];
  }
  return out;
}

}  // namespace batchcot
