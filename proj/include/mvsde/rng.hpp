#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mvsde {

// Identifies one reproducible stream: same (master_seed, stream_id) pair
// always yields the same sequence, distinct stream_ids are independent.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// xoshiro256++ with the full state derived from (master_seed, stream_id)
// through a splitmix64 chain. Counter-style derivation: workers build
// their own stream from the path index, no shared state.
class RngStream {
public:
    explicit RngStream(SeedSpec seed) {
        std::uint64_t chain = seed.master_seed;
        chain ^= 0x6a09e667f3bcc909ULL;  // decorrelate all-zero seeds
        detail::splitmix64(chain);
        chain ^= seed.stream_id * 0x9e3779b97f4a7c15ULL;
        for (auto& word : state_) word = detail::splitmix64(chain);
    }

    std::uint64_t next_u64() {
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

    // uniform in the open interval (0,1); safe input to the inverse normal cdf
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal();

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Inverse standard normal cdf (Acklam's rational approximation with one
// Halley refinement; |error| < 1e-15 over (0,1)).
double inverse_normal_cdf(double p);

inline double RngStream::next_normal() { return inverse_normal_cdf(next_uniform()); }

// m i.i.d. N(0, T/m) Brownian increments on [0, T].
struct BrownianIncrements {
    int m = 0;
    double T = 0.0;
    std::vector<double> dW;
};

BrownianIncrements brownian_increments(SeedSpec seed, int m, double T);

// Block-sums fine increments into fine.m / factor coarse ones; left-to-right
// summation so sums are preserved exactly across levels.
BrownianIncrements coarsen_increments(const BrownianIncrements& fine, int factor);

// n_paths i.i.d. N(0,1) draws for the initial condition.
std::vector<double> sample_initial(SeedSpec seed, int n_paths);

}  // namespace mvsde
