#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace abl {

// Seeded generator used everywhere randomness is needed. Wraps a fixed
// 64-bit engine (splitmix64-seeded xorshift/rotate mix) so that identical
// seeds reproduce identical streams independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed)
    {
        // splitmix64 expansion of the seed into the 4-word state
        std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    // xoshiro256**
    std::uint64_t next()
    {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform integer in [0, bound), bound >= 1; rejection keeps it unbiased
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int index(std::size_t n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // uniform double in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // derived stream for sub-task k; independent of draws taken so far
    Rng fork(std::uint64_t k) const
    {
        Rng r;
        r.s_ = s_;
        std::uint64_t z = (k + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        r.s_[0] ^= z;
        r.s_[2] ^= z ^ (z >> 17);
        r.next();
        r.next();
        return r;
    }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0,n), sorted
    std::vector<int> sample_indices(int n, int k)
    {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + index(static_cast<std::size_t>(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

} // namespace abl
