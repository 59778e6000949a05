#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sentilens/linalg.hpp"

namespace sentilens {

// "paper" keeps the published evaluation convention, whose recall is the
// correctly-labelled share of the negative class: TN/(TN+FN). "standard"
// is the usual TP/(TP+FN).
enum class MetricsMode { Paper, Standard };

std::string metrics_mode_name(MetricsMode mode);
MetricsMode parse_metrics_mode(const std::string& name);

struct ConfusionCounts {
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
};

// Ratios with a zero denominator stay unset; they are never reported as 0.
struct MetricsReport {
    MetricsMode mode = MetricsMode::Paper;
    ConfusionCounts counts;
    std::optional<double> accuracy, precision, recall, f1;
};

ConfusionCounts counts_from_predictions(const std::vector<int>& labels, const Vec& p,
                                        double threshold = 0.5);

MetricsReport compute_metrics(const ConfusionCounts& counts, MetricsMode mode);

// "96.0"-style fixed one-decimal percentage; empty for an unset metric.
std::string format_percent(const std::optional<double>& fraction);

}  // namespace sentilens
