#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mcc {

// Counter-based generator: the i-th output is a pure function of (key, i),
// using the splitmix64 finalizer as the mixer. Streams split by deriving a
// new key from (key, index); the harness gives each trial its own substream,
// so results do not depend on execution order or thread count.
class Rng {
public:
    explicit Rng(uint64_t seed) : key_(mix(seed ^ 0xd2b74407b1ce6e93ULL)) {}

    Rng substream(uint64_t idx) const {
        Rng r(0);
        r.key_ = mix(key_ ^ mix(idx + 0x9e3779b97f4a7c15ULL));
        r.ctr_ = 0;
        return r;
    }

    uint64_t next() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, bound), unbiased via rejection.
    uint64_t below(uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform in [0,1), 53-bit mantissa.
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), ascending order not guaranteed.
    std::vector<int> sample_distinct(int k, int n) {
        if (k < 0 || k > n) throw std::invalid_argument("Rng::sample_distinct: bad k");
        std::vector<int> pool(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pool[size_t(i)] = i;
        for (int i = 0; i < k; ++i) {
            size_t j = size_t(i) + size_t(below(uint64_t(n - i)));
            std::swap(pool[size_t(i)], pool[j]);
        }
        pool.resize(size_t(k));
        return pool;
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace mcc
