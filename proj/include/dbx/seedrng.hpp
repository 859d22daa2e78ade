#pragma once

#include <cstdint>

namespace dbx {

// splitmix64: tiny, portable, deterministic generator. Used for all sampled
// data so that outputs are identical across platforms and stdlib versions.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// Counter-based derivation of per-instance seeds from a master seed, so that
// sweep results do not depend on scheduling or thread count.
inline uint64_t derive_stream_seed(uint64_t master, uint64_t index) {
    SplitMix64 g(master + (index + 1) * 0x9E3779B97F4A7C15ull);
    return g.next();
}

}  // namespace dbx
