#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "batchcot/preference.hpp"
#include "batchcot/rng.hpp"

namespace batchcot {

inline constexpr std::size_t kNumActions = 3;
using Distribution = std::array<double, kNumActions>;

/// Linear softmax policy over {A, B, C}: logits = W x, W is 3 x feature_dim
/// stored row-major (one row per label).
class Policy {
 public:
  explicit Policy(std::size_t feature_dim);
  Policy(std::size_t feature_dim, std::vector<double> weights);

  std::size_t feature_dim() const noexcept { return feature_dim_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> weights() noexcept { return weights_; }

  Distribution logits(std::span<const double> features) const;
  Distribution log_probs(std::span<const double> features) const;
  Distribution distribution(std::span<const double> features) const;
  /// Most probable label; ties go to the earlier label (A < B < C).
  Label greedy(std::span<const double> features) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::size_t feature_dim_;
  std::vector<double> weights_;
};

/// 1 iff action == gold.
int reward(Label action, Label gold);

enum class AdvantageMode { MeanStd, MeanOnly };
enum class ObjectiveMode { Sampled, AllLabels };

std::string to_string(AdvantageMode mode);
std::string to_string(ObjectiveMode mode);
AdvantageMode advantage_mode_from_string(const std::string& name);
ObjectiveMode objective_mode_from_string(const std::string& name);

/// MeanOnly: r_i - mean(r). MeanStd: (r_i - mean) / population std, or all
/// zeros when every reward is equal. Throws InvalidInput for fewer than 2.
std::vector<double> group_advantages(std::span<const double> rewards, AdvantageMode mode);

/// Fixed full-action-set advantages: +1 for the gold label, -1/2 otherwise.
Distribution literal_advantages(Label gold);

/// sum_i p_i ln(p_i / q_i). Both inputs must be strictly positive and sum to
/// 1 within 1e-12.
double kl_categorical(const Distribution& p, const Distribution& q);

struct GrpoConfig {
  double beta = 0.01;  // declared default; not a published value
  std::size_t group_size = 16;
  double learning_rate = 0.5;
  std::size_t steps = 500;
  std::size_t batch_size = 32;  // states per update
  AdvantageMode advantage_mode = AdvantageMode::MeanStd;
  ObjectiveMode objective_mode = ObjectiveMode::Sampled;

  void validate() const;
};

Json to_json(const GrpoConfig& cfg);

/// G sampled labels for one state together with rewards and advantages.
struct RolloutGroup {
  std::vector<double> features;
  std::vector<Label> actions;
  std::vector<double> rewards;
  std::vector<double> advantages;
  Label gold = Label::A;
};

RolloutGroup make_group(std::vector<double> features, std::vector<Label> actions, Label gold,
                        AdvantageMode mode);

/// Draws G actions from the policy's distribution at the given state.
RolloutGroup sample_group(const Policy& policy, std::vector<double> features, Label gold,
                          std::size_t group_size, AdvantageMode mode, Rng& rng);

struct LossAndGradient {
  double loss = 0.0;
  double kl = 0.0;
  std::vector<double> gradient;  // same layout as Policy::weights
};

/// Sampled:      -(1/G) sum_i A_i log pi(a_i|s) + beta KL(pi || pi_old)
/// AllLabels: -sum_{a in {A,B,C}} A(a) log pi(a|s) + beta KL(pi || pi_old)
/// with the gradient computed analytically.
LossAndGradient grpo_loss(const Policy& policy, const Policy& old_policy, const RolloutGroup& group,
                          const GrpoConfig& cfg);

}  // namespace batchcot
