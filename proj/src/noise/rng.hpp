#pragma once

#include <cstdint>
#include <cmath>

namespace sldg::noise {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

/// Counter-based generator: the stream is a pure function of (key, counter),
/// so realizations are reproducible and independent across workers.
class CounterRng {
public:
    explicit CounterRng(uint64_t key) : key_(key) {}

    CounterRng(uint64_t seed, uint64_t stream) : key_(hash_combine(seed, stream)) {}

    double u01() {
        // (0,1]; never returns 0 so log() is safe.
        uint64_t r = splitmix64(key_ ^ splitmix64(ctr_++));
        return (static_cast<double>(r >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = u01(), u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double twopi = 6.283185307179586476925;
        spare_ = r * std::sin(twopi * u2);
        have_spare_ = true;
        return r * std::cos(twopi * u2);
    }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace sldg::noise
