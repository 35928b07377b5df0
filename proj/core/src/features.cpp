#include "batchcot/features.hpp"

#include "batchcot/fingerprint.hpp"
#include "batchcot/rng.hpp"

namespace batchcot {

std::vector<double> FeatureMap::operator()(const PreferenceSample& sample) const {
  const std::string identity = sample.question_id + "|" + to_string(sample.origin.kind) + "|" +
                               std::to_string(sample.origin.size) + "|" +
                               std::to_string(sample.origin.position);
  Rng rng(mix_seed(seed, fnv1a64(identity)));
  const double jitter = noise * (2.0 * rng.uniform() - 1.0);
  const double channel = (sample.verdict == Verdict::Correct ? signal : -signal) + jitter;
  return {1.0, static_cast<double>(sample.token_count) / mean_tokens,
          sample.origin.is_batch() ? 0.0 : 1.0, channel};
}

FeatureMap fit_feature_map(const std::vector<PreferenceSample>& dataset, std::uint64_t seed,
                           double signal, double noise) {
  FeatureMap map;
  map.seed = seed;
  map.signal = signal;
  map.noise = noise;
  double total = 0.0;
  for (const auto& s : dataset) total += static_cast<double>(s.token_count);
  if (!dataset.empty() && total > 0.0) map.mean_tokens = total / static_cast<double>(dataset.size());
  return map;
}

}  // namespace batchcot
