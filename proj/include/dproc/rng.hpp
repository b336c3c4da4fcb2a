#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dproc {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seedable generator with independent streams: stream s of seed x is a
// mt19937_64 seeded from splitmix64(x, s), so parallel workers draw from
// disjoint deterministic streams. jump(z) skips z draws.
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t st = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
        uint64_t a = splitmix64(st), b = splitmix64(st), c = splitmix64(st), d = splitmix64(st);
        std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                          static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32),
                          static_cast<uint32_t>(c), static_cast<uint32_t>(c >> 32),
                          static_cast<uint32_t>(d), static_cast<uint32_t>(d >> 32)};
        engine_.seed(seq);
    }

    uint64_t next() { return engine_(); }

    void jump(uint64_t z) { engine_.discard(z); }

    // Unbiased uniform draw from {0,...,n-1} by rejection.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

    double unit() { return (engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace dproc
