#include "uff/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace uff {

std::uint64_t hash_words(std::uint64_t seed, std::span<const std::uint64_t> words) {
    std::uint64_t h = mix64(seed ^ 0xA0761D6478BD642Full);
    std::uint64_t i = 1;
    for (std::uint64_t w : words) {
        h = mix64(h ^ (w + i * kGoldenGamma));
        ++i;
    }
    return mix64(h ^ (i * kGoldenGamma));
}

std::uint64_t hash_words(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    return hash_words(seed, std::span<const std::uint64_t>(words.begin(), words.size()));
}

std::uint64_t double_bits(double x) {
    return std::bit_cast<std::uint64_t>(x);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
    return hash_words(seed, labels);
}

Rng::Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the xoshiro state
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s += kGoldenGamma;
        word = mix64(s);
    }
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return word_to_unit(next());
}

double Rng::uniform_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Lemire's multiply-shift; slight bias is irrelevant here and the
    // output is a pure function of the stream.
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
}

Complex Rng::complex_gaussian() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

} // namespace uff
