#pragma once

#include <cstdint>

#include "harmjet/rational.hpp"

namespace harmjet {

// Deterministic generator (splitmix64) so seeded reports and test fixtures
// reproduce bit-exactly across platforms and thread counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Small exact rational with |num| <= max_num, 1 <= den <= max_den.
    Rational next_rational(long max_num = 9, long max_den = 9) {
        const long num = static_cast<long>(next_below(2 * max_num + 1)) - max_num;
        const long den = static_cast<long>(next_below(max_den)) + 1;
        return rat(num, den);
    }

  private:
    std::uint64_t state_;
};

}  // namespace harmjet
