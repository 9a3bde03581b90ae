// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace txsched
{

// Seeded random source with platform-independent output. std::mt19937_64
// has a fully specified sequence, but the standard distributions and
// std::shuffle do not, so the derived draws are implemented here.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : mEngine(seed)
    {
    }

    std::uint64_t
    next()
    {
        return mEngine();
    }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t
    below(std::uint64_t bound)
    {
        std::uint64_t const threshold = (0 - bound) % bound;
        for (;;)
        {
            std::uint64_t const x = mEngine();
            if (x >= threshold)
            {
                return x % bound;
            }
        }
    }

    // Uniform integer in [lo, hi].
    std::int64_t
    between(std::int64_t lo, std::int64_t hi)
    {
        auto const span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(span == 0 ? next() : below(span));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double
    unit()
    {
        return static_cast<double>(mEngine() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void
    shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
        {
            std::size_t const j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 mEngine;
};

} // namespace txsched
