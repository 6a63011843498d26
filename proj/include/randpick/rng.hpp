#pragma once

#include <cstdint>
#include <vector>

namespace randpick::rng {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Keyed derivation for independent streams. Chaining mix64 between the
// inputs keeps structured (seed, a, b, ...) tuples from correlating.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a) {
    return mix64(mix64(seed ^ 0x5851f42d4c957f2dull) + a);
}
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix64(derive(seed, a) + b);
}
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) {
    return mix64(derive(seed, a, b) + c);
}

// Per-round base so one pick costs a single mix64 in the hot loop.
constexpr std::uint64_t round_key(std::uint64_t seed, std::uint64_t round) {
    return mix64(seed + round * 0x9e3779b97f4a7c15ull);
}

// The out-neighbor pick of node v in the given round is a pure function of
// (seed, round, v): simulations are reproducible independent of iteration
// order and worker count, and a sampled profile replays a run bit-for-bit.
constexpr std::uint64_t pick_bits(std::uint64_t round_key, std::uint32_t node) {
    return mix64(round_key ^ (std::uint64_t(node) * 0xd6e8feb86659fd93ull));
}

// Maps a 64-bit word to [0, n) via the multiply-shift trick (bias < n/2^64).
constexpr std::uint32_t bounded(std::uint64_t bits, std::uint32_t n) {
    return std::uint32_t((static_cast<unsigned __int128>(bits) * n) >> 64);
}

// [0, 1) with 53 random bits.
constexpr double unit(std::uint64_t bits) {
    return double(bits >> 11) * 0x1.0p-53;
}

// Small sequential generator for setup-time sampling (seed sets, shuffles).
// Plain splitmix64: identical output on every platform, unlike the
// std::uniform_* distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint32_t below(std::uint32_t n) { return bounded(next(), n); }
    double uniform() { return unit(next()); }

private:
    std::uint64_t state_;
};

// k distinct values from [0, n), returned sorted. Floyd's algorithm.
std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      SplitMix64& gen);

template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = gen.below(std::uint32_t(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace randpick::rng
