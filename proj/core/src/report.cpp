#include "batchcot/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace batchcot {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

OverallRow overall_mean(const std::vector<EvalAggregate>& aggregates) {
  OverallRow row;
  if (aggregates.empty()) return row;
  for (const auto& a : aggregates) {
    row.accuracy += a.accuracy;
    row.mean_tokens += a.mean_tokens;
  }
  const auto n = static_cast<double>(aggregates.size());
  row.accuracy /= n;
  row.mean_tokens /= n;
  row.available = true;
  return row;
}

OverallRow overall_weighted(const std::vector<EvalAggregate>& aggregates) {
  OverallRow row;
  double samples = 0.0;
  for (const auto& a : aggregates) {
    const auto w = static_cast<double>(a.n_samples);
    samples += w;
    row.accuracy += a.accuracy * w;
    row.mean_tokens += a.mean_tokens * w;
  }
  if (samples == 0.0) return row;
  row.accuracy /= samples;
  row.mean_tokens /= samples;
  row.available = true;
  return row;
}

double token_delta_percent(double baseline_tokens, double tokens) {
  const double base = round2(baseline_tokens);
  if (base == 0.0) return 0.0;
  return (round2(tokens) - base) / base * 100.0;
}

double accuracy_delta_points(double baseline_accuracy, double accuracy) {
  return round2(accuracy * 100.0) - round2(baseline_accuracy * 100.0);
}

std::string format_accuracy_delta(double points) {
  const double r = round2(points);
  return fmt::format("{}{:.2f}", r < 0.0 ? '-' : '+', std::fabs(r));
}

std::string format_token_delta(double percent) {
  const double r = round2(percent);
  return fmt::format("{}{:.2f}%", r > 0.0 ? '+' : '-', std::fabs(r));
}

namespace {

struct Line {
  std::string name, acc, tokens, acc_delta, token_delta;
};

std::vector<Line> build_lines(const std::vector<EvalAggregate>& aggregates,
                              const std::optional<std::vector<EvalAggregate>>& baseline) {
  std::vector<Line> lines;
  for (const auto& a : aggregates) {
    lines.push_back({a.benchmark, fmt::format("{:.2f}%", round2(a.accuracy * 100.0)),
                     fmt::format("{:.2f}", round2(a.mean_tokens)), "", ""});
  }
  auto overall = [&](const char* name, OverallRow (*fn)(const std::vector<EvalAggregate>&)) {
    const auto row = fn(aggregates);
    if (!row.available) return;
    Line line{name, fmt::format("{:.2f}%", round2(row.accuracy * 100.0)),
              fmt::format("{:.2f}", round2(row.mean_tokens)), "", ""};
    if (baseline) {
      const auto base = fn(*baseline);
      if (base.available) {
        line.acc_delta = format_accuracy_delta(accuracy_delta_points(base.accuracy, row.accuracy));
        line.token_delta = format_token_delta(token_delta_percent(base.mean_tokens, row.mean_tokens));
      }
    }
    lines.push_back(std::move(line));
  };
  overall("Overall (mean)", overall_mean);
  overall("Overall (weighted)", overall_weighted);
  return lines;
}

}  // namespace

std::string render_report(const std::vector<EvalAggregate>& aggregates,
                          const std::optional<std::vector<EvalAggregate>>& baseline) {
  const auto lines = build_lines(aggregates, baseline);
  std::size_t w_name = 9, w_acc = 3, w_tok = 6;
  for (const auto& l : lines) {
    w_name = std::max(w_name, l.name.size());
    w_acc = std::max(w_acc, l.acc.size());
    w_tok = std::max(w_tok, l.tokens.size());
  }
  std::string out = fmt::format("{:<{}} {:>{}} {:>{}}", "Benchmark", w_name, "Acc", w_acc, "Tokens", w_tok);
  if (baseline) out += "  dAcc    dTokens";
  out += '\n';
  for (const auto& l : lines) {
    std::string row = fmt::format("{:<{}} {:>{}} {:>{}}", l.name, w_name, l.acc, w_acc, l.tokens, w_tok);
    if (!l.acc_delta.empty()) row += fmt::format("  {:<6} {}", l.acc_delta, l.token_delta);
    out += row;
    out += '\n';
  }
  return out;
}

std::string render_report_csv(const std::vector<EvalAggregate>& aggregates,
                              const std::optional<std::vector<EvalAggregate>>& baseline) {
  std::string out = "benchmark,accuracy_pct,mean_tokens,n_questions,n_samples,exclusions,acc_delta,token_delta\n";
  for (const auto& a : aggregates) {
    out += fmt::format("{},{:.2f},{:.2f},{},{},{},,\n", a.benchmark, round2(a.accuracy * 100.0),
                       round2(a.mean_tokens), a.n_questions, a.n_samples, a.exclusions);
  }
  for (const auto& l : build_lines(aggregates, baseline)) {
    if (l.name.rfind("Overall", 0) != 0) continue;
    std::string acc = l.acc.substr(0, l.acc.size() - 1);
    out += fmt::format("{},{},{},,,,{},{}\n", l.name, acc, l.tokens, l.acc_delta, l.token_delta);
  }
  return out;
}

}  // namespace batchcot
