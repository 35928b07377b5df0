#include "batchcot/grpo_train.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

double mean_gold_probability(const Policy& policy, const std::vector<std::vector<double>>& features,
                             const std::vector<Label>& gold) {
  if (features.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    total += policy.distribution(features[i])[index_of(gold[i])];
  }
  return total / static_cast<double>(features.size());
}

TrainResult train_toy(const std::vector<PreferenceSample>& dataset, const FeatureMap& feature_map,
                      const GrpoConfig& cfg, std::uint64_t seed) {
  if (dataset.empty()) throw InvalidInput("toy training needs a non-empty dataset");
  cfg.validate();

  std::vector<std::vector<double>> features;
  std::vector<Label> gold;
  features.reserve(dataset.size());
  for (const auto& s : dataset) {
    features.push_back(feature_map(s));
    gold.push_back(s.gold_label);
  }

  TrainResult result{Policy(FeatureMap::kDim), {}};
  Policy& policy = result.policy;
  Rng rng(seed);
  const double scale = cfg.learning_rate / static_cast<double>(cfg.batch_size);

  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    const Policy old_policy = policy;
    std::vector<double> gradient(policy.weights().size(), 0.0);
    double loss = 0.0;
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      const auto index = static_cast<std::size_t>(rng.below(dataset.size()));
      RolloutGroup group;
      if (cfg.objective_mode == ObjectiveMode::Sampled) {
        group = sample_group(old_policy, features[index], gold[index], cfg.group_size,
                             cfg.advantage_mode, rng);
      } else {
        group.features = features[index];
        group.gold = gold[index];
      }
      const auto lg = grpo_loss(policy, old_policy, group, cfg);
      loss += lg.loss;
      for (std::size_t k = 0; k < gradient.size(); ++k) gradient[k] += lg.gradient[k];
    }
    auto weights = policy.weights();
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] -= scale * gradient[k];
    result.curve.push_back({step, loss / static_cast<double>(cfg.batch_size),
                            mean_gold_probability(policy, features, gold)});
  }
  return result;
}

void write_curve_csv(std::ostream& out, const std::vector<TrainStep>& curve) {
  out << "step,loss,mean_gold_prob\n";
  for (const auto& s : curve) out << fmt::format("{},{:.17g},{:.17g}\n", s.step, s.loss, s.mean_gold_prob);
}

void write_checkpoint(std::ostream& out, const Policy& policy, std::uint64_t seed,
                      const GrpoConfig& cfg) {
  out << "batchcot-policy 1\n";
  out << "feature_dim " << policy.feature_dim() << '\n';
  out << "seed " << seed << '\n';
  out << "config " << to_json(cfg).dump() << '\n';
  const auto w = policy.weights();
  for (std::size_t a = 0; a < kNumActions; ++a) {
    out << to_char(kAllLabels[a]);
    for (std::size_t k = 0; k < policy.feature_dim(); ++k) {
      out << fmt::format(" {:.17g}", w[a * policy.feature_dim() + k]);
    }
    out << '\n';
  }
}

Policy read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "batchcot-policy 1") {
    throw InvalidInput("not a batchcot policy checkpoint");
  }
  std::size_t feature_dim = 0;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "feature_dim") {
      fields >> feature_dim;
    } else if (key == "A" || key == "B" || key == "C") {
      if (feature_dim == 0) throw InvalidInput("checkpoint weights before feature_dim");
      for (std::size_t k = 0; k < feature_dim; ++k) {
        double v = 0.0;
        if (!(fields >> v)) throw InvalidInput("truncated checkpoint weight row " + key);
        weights.push_back(v);
      }
    }
  }
  return Policy(feature_dim, std::move(weights));
}

}  // namespace batchcot

namespace batchcot {

std::vector<PreferenceSample> make_toy_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PreferenceSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PreferenceSample s;
    s.question_id = fmt::format("toy-{:04}", i / 2);
    s.question_text = fmt::format("Toy question {}", i / 2);
    const bool vanilla = i % 2 == 0;
    s.origin = vanilla ? ChainOrigin{ChainOrigin::Kind::Vanilla, 1, 1}
                       : ChainOrigin{ChainOrigin::Kind::Batch, 2, 1 + (i / 2) % 2};
    s.verdict = rng.uniform() < 0.7 ? Verdict::Correct : Verdict::Incorrect;
    const auto base = vanilla ? 400 : 250;
    s.token_count = base + static_cast<std::int64_t>(rng.below(101)) - 50;
    s.cot_text = fmt::format("toy chain {} ({} tokens)", i, s.token_count);
    s.gold_label = label_sample(s.origin.kind, s.verdict);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace batchcot
