#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace wisse {

enum class MetricKind { cosine, euclidean, manhattan };

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

MetricKind parse_metric(const std::string& name);
std::string metric_name(MetricKind kind);

/// Standard cosine in [-1, 1]; a zero-norm operand yields 0 and sets
/// *degenerate when provided.
double cosine(std::span<const double> u, std::span<const double> v, bool* degenerate = nullptr);

double euclidean(std::span<const double> u, std::span<const double> v);
double manhattan(std::span<const double> u, std::span<const double> v);

/// Common "higher = more similar" mapping: cosine as-is, distances
/// negated.
double score(std::span<const double> u, std::span<const double> v, MetricKind kind,
             bool* degenerate = nullptr);

}  // namespace wisse
