#pragma once

#include <cstdint>

namespace potts {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that results are reproducible across platforms and standard
// library versions. Streams are derived from a base seed with derive(), which
// makes per-figure / per-rep substreams independent of call order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1); safe as input to logarithms
    double uniform01_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Independent substream addressed by a stream id.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        Rng mixer(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        return Rng(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

} // namespace potts
