#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biblio/types.hpp"

namespace biblio {

/// A sequence of statistics in [0,1]: an explicit finite prefix with a
/// zero tail, so the discounted sum over the implied infinite sequence
/// is exact and no truncation error enters the property checks.
struct AggregatorSample {
    std::vector<double> prefix;
};

enum class AggregatorKind { finite_sum, discounted_sum };

/// f(s) for the aggregation function under test: lambda * sum(s) in the
/// finite case, lambda * sum_k delta^(k-1) s_k in the discounted case.
double aggregate(AggregatorKind kind, double lambda, double delta,
                 std::span<const double> values);

struct AggregatorPropertyResult {
    std::string property;
    bool passed = true;
    double max_deviation = 0.0;
    int checks = 0;
};

struct AggregatorPropertyReport {
    AggregatorKind kind = AggregatorKind::finite_sum;
    double lambda = 1.0;
    double delta = 0.0;
    std::vector<AggregatorPropertyResult> properties;

    bool all_passed() const;
};

/// Verifies, on the given samples, the properties the aggregation
/// functions are built from: monotonicity, homogeneity and independence
/// for both kinds; symmetry for the finite sum; recursivity and the
/// long-run property (with epsilon grid 1e-2, 1e-4, 1e-6 and witnesses
/// z of the form "ones up to a cutoff, then zero") for the discounted
/// sum. Identities are held to 1e-12.
AggregatorPropertyReport check_aggregator_properties(
    AggregatorKind kind, double lambda, double delta,
    std::span<const AggregatorSample> samples, std::uint64_t seed);

} // namespace biblio
