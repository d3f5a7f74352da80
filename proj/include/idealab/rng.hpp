#ifndef IDEALAB_RNG_HPP
#define IDEALAB_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

namespace idealab {

/// Deterministic splitmix64 stream. All sampling in verification suites flows
/// from a single 64-bit seed so runs are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Random subset of [0, universe) with each point kept with probability
    /// num/den; returned sorted.
    std::vector<std::uint64_t> subset(std::uint64_t universe, std::uint64_t num, std::uint64_t den) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t i = 0; i < universe; ++i) {
            if (next() % den < num) out.push_back(i);
        }
        return out;
    }

    /// Random k distinct points of [0, universe), sorted.
    std::vector<std::uint64_t> pick(std::uint64_t universe, std::size_t k);

private:
    std::uint64_t state_;
};

inline std::vector<std::uint64_t> Rng::pick(std::uint64_t universe, std::size_t k) {
    std::vector<std::uint64_t> out;
    if (universe == 0) return out;
    if (k > universe) k = static_cast<std::size_t>(universe);
    while (out.size() < k) {
        std::uint64_t x = below(universe);
        bool dup = false;
        for (auto y : out) {
            if (y == x) { dup = true; break; }
        }
        if (!dup) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace idealab

#endif
