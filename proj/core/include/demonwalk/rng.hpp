#pragma once

#include <array>
#include <cstdint>

#include "demonwalk/geometry.hpp"

namespace demonwalk {

/// 64-bit reproducibility seed. One seed plus a stream index pins every
/// random draw of an experiment.
struct Seed {
    std::uint64_t value;
};

/// Deterministic, splittable random stream: xoshiro256** state seeded from
/// the splitmix64 sequence of the parent seed.
///
/// Derivation scheme (fixed so any implementation can reproduce the replica
/// partition): run splitmix64 from `seed`; stream k's four state words are
/// outputs 4k, 4k+1, 4k+2, 4k+3 of that sequence. Streams therefore depend
/// only on (seed, index), never on the order in which they are created.
///
/// Bit-to-value mappings, equally fixed:
///   - next_unit(): (next_u64() >> 11) * 2^-53, uniform on [0,1)
///   - flip_coin(): CW (heads) iff the top bit of next_u64() is set
///   - next_below(n): rejection-sampled unbiased integer in [0,n)
class RngStream {
public:
    RngStream(Seed seed, std::uint64_t index);

    std::uint64_t next_u64();
    /// Uniform double in [0,1) with 53 random bits.
    double next_unit();
    /// Unbiased uniform integer in [0, bound); bound must be positive.
    std::uint64_t next_below(std::uint64_t bound);
    bool next_bool();

    Seed seed() const { return seed_; }
    std::uint64_t index() const { return index_; }

    friend bool operator==(const RngStream& a, const RngStream& b) {
        return a.state_ == b.state_ && a.seed_.value == b.seed_.value && a.index_ == b.index_;
    }

private:
    std::array<std::uint64_t, 4> state_;
    Seed seed_;
    std::uint64_t index_;
};

/// Pure function of (seed, index); equal inputs give equal streams.
RngStream derive_stream(Seed seed, std::uint64_t index);

/// Fair coin: CW (heads) or CCW (tails) with probability 1/2 each.
Direction flip_coin(RngStream& stream);

/// Uniform random position on the unit-circumference track.
RealPosition uniform_position(RngStream& stream);

}  // namespace demonwalk
