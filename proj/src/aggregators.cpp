#include "biblio/aggregators.hpp"

#include <algorithm>
#include <cmath>

#include "biblio/rng.hpp"

namespace biblio {

double aggregate(AggregatorKind kind, double lambda, double delta,
                 std::span<const double> values) {
    double sum = 0.0;
    if (kind == AggregatorKind::finite_sum) {
        for (double v : values)
            sum += v;
    } else {
        double coeff = 1.0;
        for (double v : values) {
            sum += coeff * v;
            coeff *= delta;
        }
    }
    return lambda * sum;
}

bool AggregatorPropertyReport::all_passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const AggregatorPropertyResult& r) { return r.passed; });
}

namespace {

constexpr double kIdentityTol = 1e-12;

std::vector<double> padded(const AggregatorSample& s, std::size_t len) {
    std::vector<double> out(s.prefix);
    out.resize(len, 0.0);
    return out;
}

} // namespace

AggregatorPropertyReport check_aggregator_properties(
    AggregatorKind kind, double lambda, double delta,
    std::span<const AggregatorSample> samples, std::uint64_t seed) {
    if (!(lambda >= 0.0))
        throw DomainError("lambda must be nonnegative");
    if (!(delta >= 0.0) || delta >= 1.0)
        throw DomainError("delta must lie in [0, 1)");
    for (const auto& s : samples)
        for (double v : s.prefix)
            if (!(v >= 0.0) || v > 1.0)
                throw DomainError("sample values must lie in [0, 1]");

    AggregatorPropertyReport report;
    report.kind = kind;
    report.lambda = lambda;
    report.delta = delta;

    Rng rng(seed);
    auto f = [&](std::span<const double> v) {
        return aggregate(kind, lambda, delta, v);
    };

    auto record = [&](const std::string& name, auto&& body) {
        AggregatorPropertyResult r;
        r.property = name;
        body(r);
        report.properties.push_back(std::move(r));
    };

    // pairs (i, j) of samples feeding the binary properties
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < samples.size(); ++i)
        pairs.emplace_back(i, (i + 1) % samples.size());

    record("monotonicity", [&](AggregatorPropertyResult& r) {
        for (const auto& [i, j] : pairs) {
            const std::size_t len =
                std::max(samples[i].prefix.size(), samples[j].prefix.size());
            const auto lo = padded(samples[i], len);
            auto hi = padded(samples[j], len);
            for (std::size_t k = 0; k < len; ++k)
                hi[k] = std::max(hi[k], lo[k]);
            const double gap = f(lo) - f(hi); // must be <= 0
            r.max_deviation = std::max(r.max_deviation, gap);
            r.passed = r.passed && gap <= 0.0;
            ++r.checks;
        }
    });

    record("homogeneity", [&](AggregatorPropertyResult& r) {
        for (const auto& s : samples) {
            const double scale = rng.unit(); // stays inside [0,1]^L
            std::vector<double> scaled(s.prefix);
            for (double& v : scaled)
                v *= scale;
            const double gap = std::abs(f(scaled) - scale * f(s.prefix));
            r.max_deviation = std::max(r.max_deviation, gap);
            r.passed = r.passed && gap <= kIdentityTol;
            ++r.checks;
        }
    });

    record("independence", [&](AggregatorPropertyResult& r) {
        for (const auto& [i, j] : pairs) {
            const std::size_t len =
                std::max(samples[i].prefix.size(), samples[j].prefix.size());
            const auto s = padded(samples[i], len);
            const auto t = padded(samples[j], len);
            std::vector<bool> in_j(len);
            for (std::size_t k = 0; k < len; ++k)
                in_j[k] = rng.below(2) == 0;
            auto mix = [&](const std::vector<double>& on_j,
                           const std::vector<double>& on_k) {
                std::vector<double> out(len);
                for (std::size_t k = 0; k < len; ++k)
                    out[k] = in_j[k] ? on_j[k] : on_k[k];
                return out;
            };
            // f(sJ,sK) - f(sJ,tK) = f(tJ,sK) - f(tJ,tK)
            const double lhs = f(mix(s, s)) - f(mix(s, t));
            const double rhs = f(mix(t, s)) - f(mix(t, t));
            const double gap = std::abs(lhs - rhs);
            r.max_deviation = std::max(r.max_deviation, gap);
            r.passed = r.passed && gap <= kIdentityTol;
            ++r.checks;
        }
    });

    if (kind == AggregatorKind::finite_sum) {
        record("symmetry", [&](AggregatorPropertyResult& r) {
            for (const auto& s : samples) {
                std::vector<double> shuffled(s.prefix);
                rng.shuffle(shuffled);
                const double gap = std::abs(f(shuffled) - f(s.prefix));
                r.max_deviation = std::max(r.max_deviation, gap);
                r.passed = r.passed && gap <= kIdentityTol;
                ++r.checks;
            }
        });
    }

    if (kind == AggregatorKind::discounted_sum) {
        record("recursivity", [&](AggregatorPropertyResult& r) {
            auto shifted = [](const std::vector<double>& v) {
                std::vector<double> out;
                out.reserve(v.size() + 1);
                out.push_back(0.0);
                out.insert(out.end(), v.begin(), v.end());
                return out;
            };
            for (const auto& [i, j] : pairs) {
                const auto& s = samples[i].prefix;
                const auto& t = samples[j].prefix;
                // f(t) f(0,s) = f(s) f(0,t)
                const double lhs = f(t) * f(shifted(s));
                const double rhs = f(s) * f(shifted(t));
                const double gap = std::abs(lhs - rhs);
                r.max_deviation = std::max(r.max_deviation, gap);
                r.passed = r.passed && gap <= kIdentityTol;
                ++r.checks;
            }
        });

        record("long-run", [&](AggregatorPropertyResult& r) {
            for (const double eps : {1e-2, 1e-4, 1e-6}) {
                // cutoff from the tail bound lambda * delta^K / (1-delta)
                int cutoff = 1;
                if (lambda > 0.0 && delta > 0.0) {
                    while (lambda * std::pow(delta, cutoff) / (1.0 - delta) > eps &&
                           cutoff < 100000)
                        ++cutoff;
                }
                for (const auto& s : samples) {
                    std::vector<double> damped(s.prefix);
                    for (std::size_t k = static_cast<std::size_t>(cutoff);
                         k < damped.size(); ++k)
                        damped[k] = 0.0; // s * z with z = 1,...,1,0,0,...
                    const double drop = f(s.prefix) - f(damped); // must be <= eps
                    r.max_deviation = std::max(r.max_deviation, drop - eps);
                    r.passed = r.passed && drop <= eps;
                    ++r.checks;
                }
            }
        });
    }

    return report;
}

} // namespace biblio
