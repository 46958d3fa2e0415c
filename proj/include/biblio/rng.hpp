#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace biblio {

/// Deterministic random source. mt19937_64 output is pinned by the
/// standard and all derived draws below avoid the implementation-defined
/// std::*_distribution classes, so identical seeds give identical
/// results on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, n), unbiased via rejection. n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = gen_();
        while (v >= limit)
            v = gen_();
        return v % n;
    }

    /// Uniform in [lo, hi], inclusive.
    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 gen_;
};

} // namespace biblio
