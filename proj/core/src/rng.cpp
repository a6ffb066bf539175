#include "demonwalk/rng.hpp"

#include <bit>

#include "demonwalk/errors.hpp"

namespace demonwalk {

namespace {

// splitmix64 (Vigna 2015, public domain): fixed-increment mix generator,
// used here only to expand (seed, index) into xoshiro state words.
constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += kSplitmixGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(Seed seed, std::uint64_t index) : seed_(seed), index_(index) {
    // splitmix output word 4*index + j, j = 0..3
    std::uint64_t sm = seed.value + kSplitmixGamma * (4 * index);
    for (auto& word : state_) word = splitmix64_next(sm);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256** (Blackman & Vigna 2018, public domain)
    auto& s = state_;
    const std::uint64_t result = std::rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return result;
}

double RngStream::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) return x % bound;
    }
}

bool RngStream::next_bool() { return (next_u64() >> 63) != 0; }

RngStream derive_stream(Seed seed, std::uint64_t index) { return RngStream(seed, index); }

Direction flip_coin(RngStream& stream) {
    return stream.next_bool() ? Direction::CW : Direction::CCW;
}

RealPosition uniform_position(RngStream& stream) { return RealPosition(stream.next_unit()); }

}  // namespace demonwalk
