#pragma once

#include <cstdint>
#include <vector>

#include "batchcot/preference.hpp"

namespace batchcot {

/// Fixed feature map for the toy judge policy:
///   [1, token_count / corpus mean, 1 if vanilla else 0, verdict channel]
/// The verdict channel is +signal for correct chains and -signal otherwise,
/// plus uniform noise in [-noise, noise] derived from a hash of the sample's
/// identity. noise < signal keeps the three labels linearly separable.
struct FeatureMap {
  static constexpr std::size_t kDim = 4;

  double mean_tokens = 1.0;
  double signal = 1.0;
  double noise = 0.5;
  std::uint64_t seed = 0;

  std::vector<double> operator()(const PreferenceSample& sample) const;
};

/// Uses the dataset's mean token count (1 when empty or all zero).
FeatureMap fit_feature_map(const std::vector<PreferenceSample>& dataset, std::uint64_t seed,
                           double signal = 1.0, double noise = 0.5);

}  // namespace batchcot
