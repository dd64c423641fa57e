#ifndef DBR_RNG_HPP
#define DBR_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dbr/poly.hpp"

namespace dbr {

/// Seeded generator used by every randomized census. Draws are mapped from raw
/// mt19937_64 output so sequences are identical across platforms and standard
/// library implementations (std::uniform_real_distribution is not pinned).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Complex complex_in_box(double half_side) {
        const double re = uniform(-half_side, half_side);
        const double im = uniform(-half_side, half_side);
        return {re, im};
    }

    Complex complex_in_disk(double radius) {
        for (;;) {
            const Complex z = complex_in_box(radius);
            if (std::abs(z) < radius) return z;
        }
    }

    Complex unimodular() {
        const double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        return {std::cos(t), std::sin(t)};
    }

    /// Random polynomial of exact degree `deg` with coefficients in a box.
    ComplexPoly poly(int deg, double half_side = 1.0) {
        std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = complex_in_box(half_side);
        while (std::abs(c.back()) < 1e-3) c.back() = complex_in_box(half_side);
        return ComplexPoly{std::move(c)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace dbr

#endif  // DBR_RNG_HPP
