#include "sentilens/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "sentilens/util.hpp"

namespace sentilens {

std::string metrics_mode_name(MetricsMode mode) {
    return mode == MetricsMode::Paper ? "paper" : "standard";
}

MetricsMode parse_metrics_mode(const std::string& name) {
    if (name == "paper") return MetricsMode::Paper;
    if (name == "standard") return MetricsMode::Standard;
    throw UsageError("unknown metrics mode: " + name + " (expected paper or standard)");
}

ConfusionCounts counts_from_predictions(const std::vector<int>& labels, const Vec& p,
                                        double threshold) {
    if (labels.size() != p.size()) throw UsageError("label and prediction counts differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool predicted = p[i] >= threshold;
        const bool actual = labels[i] != 0;
        if (predicted && actual) ++c.tp;
        else if (predicted && !actual) ++c.fp;
        else if (!predicted && !actual) ++c.tn;
        else ++c.fn;
    }
    return c;
}

MetricsReport compute_metrics(const ConfusionCounts& counts, MetricsMode mode) {
    MetricsReport r;
    r.mode = mode;
    r.counts = counts;
    const auto ratio = [](std::int64_t num, std::int64_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    r.accuracy = ratio(counts.tp + counts.tn, counts.total());
    r.precision = ratio(counts.tp, counts.tp + counts.fp);
    r.recall = mode == MetricsMode::Paper ? ratio(counts.tn, counts.tn + counts.fn)
                                          : ratio(counts.tp, counts.tp + counts.fn);
    if (r.precision && r.recall && *r.precision + *r.recall > 0.0) {
        r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
    }
    return r;
}

std::string format_percent(const std::optional<double>& fraction) {
    if (!fraction) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", *fraction * 100.0);
    return buf;
}

}  // namespace sentilens
