#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sievetk {

// e^gamma, gamma = Euler-Mascheroni constant.
inline constexpr double kExpGamma = 1.7810724179901979852;
inline constexpr double kPi = 3.14159265358979323846;

// e(x) = exp(2*pi*i*x).
inline std::complex<double> unit_phase(double x) {
    return std::polar(1.0, 2.0 * kPi * x);
}

// Deterministic, implementation-independent random stream.  mt19937_64 is
// fully specified by the standard; the uniform double below uses the top 53
// bits so results do not depend on libstdc++'s distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    // Independent substream (stable under reordering of draws on the parent).
    Rng substream(std::uint64_t stream_id) const;

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a, used for compact input digests in reports.
std::uint64_t fnv1a(std::string_view data);

// Deterministic pairwise summation (reduction-tree order independent of
// chunking, depends only on the element order).
double pairwise_sum(std::span<const double> xs);

// In-place power-of-two FFT: a[t] <- sum_k a[k] e(sign * k t / n).
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

std::size_t next_pow2(std::size_t n);

}  // namespace sievetk
