#pragma once

#include <cstdint>
#include <cmath>

namespace fpsum {

// Counter-based generator: output k is mix(key + k*golden), so a stream is
// fully determined by (seed, stream) and the number of values drawn so far.
// Parallel trials get distinct stream ids and stay reproducible no matter
// how work is scheduled. The mixer is the splitmix64 finalizer.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(stream * 0xd1b54a32d192ed03ULL + 1)) {}

    std::uint64_t next() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ + counter_);
    }

    // uniform in [0,1) on the 2^-53 grid
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

    // standard normal via Box-Muller; second value of each pair is cached
    double next_gauss() {
        if (has_spare_) { has_spare_ = false; return spare_; }
        double u1 = next_unit(), u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace fpsum
