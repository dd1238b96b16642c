#include "wisse/metrics.hpp"

#include <cmath>

namespace wisse {

namespace {

void check_dims(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw DimensionMismatch("vector dimensions differ: " + std::to_string(u.size()) +
                                " vs " + std::to_string(v.size()));
}

}  // namespace

MetricKind parse_metric(const std::string& name) {
    if (name == "cosine") return MetricKind::cosine;
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "manhattan") return MetricKind::manhattan;
    throw std::invalid_argument("unknown metric \"" + name + "\"");
}

std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::cosine:
            return "cosine";
        case MetricKind::euclidean:
            return "euclidean";
        case MetricKind::manhattan:
            return "manhattan";
    }
    return "?";
}

double cosine(std::span<const double> u, std::span<const double> v, bool* degenerate) {
    check_dims(u, v);
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double euclidean(std::span<const double> u, std::span<const double> v) {
    check_dims(u, v);
    double sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - v[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double manhattan(std::span<const double> u, std::span<const double> v) {
    check_dims(u, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
    return sum;
}

double score(std::span<const double> u, std::span<const double> v, MetricKind kind,
             bool* degenerate) {
    switch (kind) {
        case MetricKind::cosine:
            return cosine(u, v, degenerate);
        case MetricKind::euclidean:
            return -euclidean(u, v);
        case MetricKind::manhattan:
            return -manhattan(u, v);
    }
    throw std::invalid_argument("unknown metric kind");
}

}  // namespace wisse
