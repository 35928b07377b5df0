#include "batchcot/grpo_selfcheck.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace batchcot {

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double h) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + h;
    const double up = f(point);
    point[i] = saved - h;
    const double down = f(point);
    point[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double relative_error(std::span<const double> a, std::span<const double> b, double floor) {
  double diff = 0.0;
  double scale = floor;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return diff / scale;
}

namespace {

constexpr std::size_t kDim = 4;

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

}  // namespace

GradientCheckStats check_grpo_gradient(ObjectiveMode mode, std::size_t configurations,
                                       std::uint64_t seed, double h, double tolerance) {
  static constexpr double kBetas[] = {0.0, 0.01, 0.1};
  Rng rng(seed);
  GradientCheckStats stats;
  for (std::size_t n = 0; n < configurations; ++n) {
    GrpoConfig cfg;
    cfg.beta = kBetas[n % 3];
    cfg.objective_mode = mode;
    cfg.advantage_mode = rng.below(2) == 0 ? AdvantageMode::MeanStd : AdvantageMode::MeanOnly;
    cfg.group_size = 2 + static_cast<std::size_t>(rng.below(15));

    const Policy policy(kDim, random_vector(rng, kNumActions * kDim, 0.7));
    std::vector<double> old_weights(policy.weights().begin(), policy.weights().end());
    for (double& w : old_weights) w += 0.3 * rng.normal();
    const Policy old_policy(kDim, std::move(old_weights));
    const Label gold = kAllLabels[rng.below(3)];
    const RolloutGroup group = sample_group(old_policy, random_vector(rng, kDim, 1.0), gold,
                                            cfg.group_size, cfg.advantage_mode, rng);

    const auto analytic = grpo_loss(policy, old_policy, group, cfg).gradient;
    const auto numeric = central_difference(
        [&](std::span<const double> w) {
          return grpo_loss(Policy(kDim, std::vector<double>(w.begin(), w.end())), old_policy, group, cfg)
              .loss;
        },
        policy.weights(), h);
    const double err = relative_error(analytic, numeric);
    stats.worst_relative_error = std::max(stats.worst_relative_error, err);
    ++stats.configurations;
    if (!(err < tolerance)) ++stats.failures;
  }
  return stats;
}

std::vector<CheckResult> run_grpo_selfcheck(std::uint64_t seed) {
  std::vector<CheckResult> results;

  for (ObjectiveMode mode : {ObjectiveMode::Sampled, ObjectiveMode::AllLabels}) {
    const auto stats = check_grpo_gradient(mode, 100, mix_seed(seed, 1));
    results.push_back({"gradient-fd-" + to_string(mode), stats.failures == 0,
                       fmt::format("{} configs, worst rel err {:.3e}", stats.configurations,
                                   stats.worst_relative_error)});
  }

  {
    bool ok = true;
    std::size_t patterns = 0;
    for (std::size_t len = 2; len <= 6; ++len) {
      for (std::size_t bits = 0; bits < (1u << len); ++bits) {
        std::vector<double> r(len);
        for (std::size_t i = 0; i < len; ++i) r[i] = (bits >> i) & 1u;
        ++patterns;
        const auto mean_only = group_advantages(r, AdvantageMode::MeanOnly);
        const auto mean_std = group_advantages(r, AdvantageMode::MeanStd);
        double sum = 0.0;
        for (double a : mean_only) sum += a;
        ok = ok && sum == 0.0;
        const bool mixed = bits != 0 && bits != (1u << len) - 1;
        for (std::size_t i = 0; i < len && mixed; ++i) {
          const bool hit = r[i] == 1.0;
          ok = ok && ((mean_only[i] > 0) == hit) && ((mean_std[i] > 0) == hit);
        }
      }
    }
    results.push_back({"advantage-sign-and-zero-sum", ok, fmt::format("{} reward patterns", patterns)});
  }

  {
    Rng rng(mix_seed(seed, 2));
    bool ok = true;
    double worst_self = 0.0;
    for (int n = 0; n < 1000; ++n) {
      auto draw = [&] {
        Distribution d{};
        double total = 0.0;
        for (double& v : d) total += (v = 1e-3 + rng.uniform());
        for (double& v : d) v /= total;
        d[2] = 1.0 - d[0] - d[1];
        return d;
      };
      const Distribution p = draw();
      const Distribution q = draw();
      worst_self = std::max(worst_self, std::abs(kl_categorical(p, p)));
      ok = ok && kl_categorical(p, q) >= 0.0;
    }
    ok = ok && worst_self <= 1e-12;
    results.push_back({"kl-nonnegative-and-self-zero", ok,
                       fmt::format("1000 pairs, max |KL(p,p)| {:.3e}", worst_self)});
  }

  {
    Rng rng(mix_seed(seed, 3));
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const Policy policy(kDim, random_vector(rng, kNumActions * kDim, 1.0));
      RolloutGroup group;
      group.features = random_vector(rng, kDim, 1.0);
      group.gold = kAllLabels[rng.below(3)];
      GrpoConfig cfg;
      cfg.beta = 1.0;
      cfg.objective_mode = ObjectiveMode::AllLabels;
      GrpoConfig no_kl = cfg;
      no_kl.beta = 0.0;
      const auto with = grpo_loss(policy, policy, group, cfg).gradient;
      const auto without = grpo_loss(policy, policy, group, no_kl).gradient;
      for (std::size_t k = 0; k < with.size(); ++k) worst = std::max(worst, std::abs(with[k] - without[k]));
    }
    results.push_back({"kl-gradient-zero-at-old-policy", worst <= 1e-10,
                       fmt::format("max |grad KL| {:.3e}", worst)});
  }

  {
    Rng rng(mix_seed(seed, 4));
    bool ok = true;
    for (int n = 0; n < 200; ++n) {
      Policy policy(kDim, random_vector(rng, kNumActions * kDim, 0.5));
      const Label gold = kAllLabels[rng.below(3)];
      GrpoConfig cfg;
      cfg.beta = 0.0;
      cfg.objective_mode = n % 2 == 0 ? ObjectiveMode::Sampled : ObjectiveMode::AllLabels;
      cfg.advantage_mode = AdvantageMode::MeanStd;
      RolloutGroup group;
      do {
        group = sample_group(policy, random_vector(rng, kDim, 1.0), gold, 8, cfg.advantage_mode, rng);
      } while (std::all_of(group.rewards.begin(), group.rewards.end(),
                           [&](double r) { return r == group.rewards[0]; }));
      const double before = policy.distribution(group.features)[index_of(gold)];
      const auto g = grpo_loss(policy, policy, group, cfg).gradient;
      auto w = policy.weights();
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= 1e-3 * g[k];
      const double after = policy.distribution(group.features)[index_of(gold)];
      ok = ok && after >= before;
    }
    results.push_back({"small-step-improves-gold-prob", ok, "200 mixed groups, lr 1e-3, beta 0"});
  }
  return results;
}

}  // namespace batchcot
