#include "danlab/gaussian.hpp"

namespace danlab {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

Rng Rng::substream(uint64_t tag) const {
    return Rng(splitmix64(seed_ ^ splitmix64(tag + 0x5851F42D4C957F2Dull)));
}

uint64_t Rng::next_u64() { return eng_(); }

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::gaussian() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    // modulo bias is irrelevant at the spans used here (<= a few thousand)
    return lo + static_cast<int64_t>(next_u64() % span);
}

}  // namespace danlab
