#include "lram/rng.hpp"

#include <cmath>
#include <numbers>

namespace lram {

double Rng::normal() {
    // Box-Muller without caching the spare draw; keeps the stream
    // position independent of call parity.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::split(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    Rng h(state_ ^ 0x6a09e667f3bcc909ULL);
    h.state_ ^= h.next_u64() + a;
    h.state_ ^= h.next_u64() + b;
    h.state_ ^= h.next_u64() + c;
    h.next_u64();
    return h;
}

}  // namespace lram
