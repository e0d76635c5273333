#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace uff {

using Complex = std::complex<double>;

// Fixed-point golden-ratio increment used by the splitmix64 stream.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Keyed mixing of a word sequence. This is the deterministic PRF core used
// by the seeded phi families: identical (seed, words) give identical output
// on every platform and run.
std::uint64_t hash_words(std::uint64_t seed, std::span<const std::uint64_t> words);
std::uint64_t hash_words(std::uint64_t seed, std::initializer_list<std::uint64_t> words);

// Bit pattern of a double, for hashing coordinates without arithmetic.
std::uint64_t double_bits(double x);

// Map a word to [0, 1): 53 uniform mantissa bits.
inline double word_to_unit(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Derive an independent stream seed from a base seed and labels.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that generated
// streams are identical across standard libraries and platforms; the
// std:: distributions make no such promise.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform in [0, 1).
    double uniform();
    // Uniform in (0, 1]; safe to feed to log().
    double uniform_open();
    // Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    // Complex with independent N(0,1) real and imaginary parts (Box-Muller).
    Complex complex_gaussian();

private:
    std::uint64_t state_[4];
};

} // namespace uff
