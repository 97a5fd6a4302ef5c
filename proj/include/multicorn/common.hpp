#pragma once
// Shared scalar types, pinned default tolerances, and small numeric helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace multicorn {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Central knob block. Every tolerance used by the acceptance experiments is
// pinned here, not scattered through call sites.
struct Defaults {
    static constexpr double convergence_tol = 1e-12;  // Newton / Aberth root tolerance
    static constexpr double dedup_radius = 1e-8;      // root clustering radius
    static constexpr double parabolic_window = 1e-6;  // |rho - 1| window for parabolic candidates
    static constexpr double cusp_guard_band = 1e-3;   // arc samples keep this distance from cusps
    static constexpr double fd_step_scale = 1e-7;     // finite-difference step = scale * max(1, |c|)
    static constexpr int contour_nodes = 1 << 12;     // trapezoidal nodes, doubled until stable
    static constexpr double contour_stable = 1e-10;   // node-doubling stop threshold
    static constexpr double contour_radius_cap = 1e-2;
    static constexpr long fatou_depth = 10000;        // telescope depth, doubled until stable
    static constexpr double ray_min_potential = 1e-8; // parameter rays stop here (accumulation)
    static constexpr int boundary_rays = 360;
    static constexpr int tile_size = 64;
};

// Escape radius for z |-> conj(z)^d + c; beyond it orbits grow monotonically.
inline double escapeRadius(int degree, Complex c) {
    return std::max(2.0, std::pow(std::abs(c), 1.0 / (degree - 1)) + 1.0);
}

// Seed disk radius for multistart searches; contains the connectedness locus.
inline double parameterSearchRadius(int degree) {
    return std::pow(2.0, 1.0 / (degree - 1)) + 0.5;
}

inline double fdStep(Complex at) { return Defaults::fd_step_scale * std::max(1.0, std::abs(at)); }

// Signed circle difference a - b wrapped into [-1/2, 1/2).
inline double circleDiff(double a, double b) {
    double d = a - b;
    d -= std::floor(d + 0.5);
    return d;
}

// Fractional part in [0, 1).
inline double frac(double x) {
    double f = x - std::floor(x);
    return (f >= 1.0) ? 0.0 : f;
}

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// xorshift-based deterministic generator; avoids platform variance in
// std:: distributions. Same seed, same sequence, everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed ? seed : 1) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state_ = x;
        return x;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform over the closed disk |z| <= radius.
    Complex inDisk(double radius) {
        double r = radius * std::sqrt(uniform());
        double a = kTwoPi * uniform();
        return {r * std::cos(a), r * std::sin(a)};
    }

  private:
    std::uint64_t state_;
};

struct MulticornError : std::runtime_error {
    explicit MulticornError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace multicorn
