#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "batchcot/features.hpp"
#include "batchcot/grpo.hpp"

namespace batchcot {

struct TrainStep {
  std::size_t step = 0;
  double loss = 0.0;            // mean over the step's states
  double mean_gold_prob = 0.0;  // over the whole dataset, after the update

  friend bool operator==(const TrainStep&, const TrainStep&) = default;
};

struct TrainResult {
  Policy policy;
  std::vector<TrainStep> curve;
};

/// Plain SGD on the GRPO objective. Each step snapshots the old policy,
/// draws cfg.batch_size states with replacement, samples a group of
/// cfg.group_size labels per state from the old policy and applies the mean
/// gradient. The policy starts at zero weights (uniform). Deterministic in
/// `seed`. Throws InvalidInput on an empty dataset.
TrainResult train_toy(const std::vector<PreferenceSample>& dataset, const FeatureMap& features,
                      const GrpoConfig& cfg, std::uint64_t seed);

/// Mean probability the policy assigns to each sample's gold label.
double mean_gold_probability(const Policy& policy, const std::vector<std::vector<double>>& features,
                             const std::vector<Label>& gold);

void write_curve_csv(std::ostream& out, const std::vector<TrainStep>& curve);

/// Text checkpoint: a header block (format tag, feature_dim, seed, config)
/// followed by one line of weights per label.
void write_checkpoint(std::ostream& out, const Policy& policy, std::uint64_t seed,
                      const GrpoConfig& cfg);
Policy read_checkpoint(std::istream& in);

/// Synthetic labelled samples for the toy trainer: origins and verdicts
/// cycle so all three labels appear, vanilla chains run longer than batch
/// chains. Deterministic in `seed`.
std::vector<PreferenceSample> make_toy_dataset(std::size_t n, std::uint64_t seed);

}  // namespace batchcot
