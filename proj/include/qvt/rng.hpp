// Deterministic seeding utilities. Every random draw in the library flows
// through a root seed split by (subcommand tag, run index, purpose), so a
// fixed config and seed reproduce byte-identical outputs.
#ifndef QVT_RNG_HPP
#define QVT_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace qvt::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Splits a root seed into an independent stream seed. `tag` names the
/// consumer (e.g. a CLI subcommand), `run` indexes repeated draws, `purpose`
/// separates uses inside one run (frame pixels vs measurement shots).
inline std::uint64_t derive(std::uint64_t root, std::string_view tag,
                            std::uint64_t run = 0, std::uint64_t purpose = 0) {
    std::uint64_t s = root ^ fnv1a64(tag);
    std::uint64_t a = splitmix64(s);
    s ^= run * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    s ^= purpose + 0x9e3779b97f4a7c15ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b << 1) ^ c;
}

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniform double in [0,1) from raw engine bits; stable across platforms,
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Uniform integer in [0, n).
inline std::uint64_t below(std::mt19937_64& eng, std::uint64_t n) {
    // rejection sampling to avoid modulo bias
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t v;
    do { v = eng(); } while (v >= limit);
    return v % n;
}

} // namespace qvt::rng

#endif
