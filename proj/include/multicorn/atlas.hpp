#pragma once

// Hyperbolic-component atlas of the degree-d multicorn: center enumeration,
// boundary sampling, cusp location, parameter-space symmetries, and the
// mu-parametrization demo.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "multicorn/angles.hpp"
#include "multicorn/common.hpp"
#include "multicorn/dynamics.hpp"
#include "multicorn/roots.hpp"

namespace multicorn {

enum class Parity { kOdd, kEven };

struct ComponentRecord {
    int period = 1;
    Complex center;
    Parity parity = Parity::kOdd;
    int symmetryClass = 0;               // index of its orbit under the omega rotation
    std::vector<Complex> boundarySamples; // ordered by ray angle about the center
    std::vector<Complex> cusps;           // odd parity only
};

struct CuspRecord {
    Complex c;
    int period = 1;                 // odd
    Complex parabolicPoint;         // orbit representative z0
    double firstDerivativeDefect = 0;  // |F'(z0) - 1|, F = f_c^(2k)
    double secondDerivativeDefect = 0; // |F''(z0)|
};

namespace detail {

inline bool lexLess(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Critical orbit value f_c^k(0) as a function of the parameter.
inline Complex criticalReturn(int degree, Complex c, int period) {
    Complex z = 0;
    for (int j = 0; j < period; ++j) {
        z = powInt(std::conj(z), degree) + c;
        if (!finite(z) || std::norm(z) > 1e100) return kEscapedSentinel;
    }
    return z;
}

// 2-real Newton on c -> f_c^k(0). The residual is polynomial in c and conj(c),
// so the Jacobian is a full 2x2 real matrix, differenced numerically.
inline std::optional<Complex> centerNewton(int degree, int period, Complex c, double tol,
                                           int maxIter) {
    for (int it = 0; it < maxIter; ++it) {
        Complex r = criticalReturn(degree, c, period);
        if (!finite(r)) return std::nullopt;
        if (std::abs(r) < tol) return c;
        double h = fdStep(c);
        Complex rx = criticalReturn(degree, c + Complex(h, 0), period);
        Complex ry = criticalReturn(degree, c + Complex(0, h), period);
        if (!finite(rx) || !finite(ry)) return std::nullopt;
        double a = (rx.real() - r.real()) / h, b = (ry.real() - r.real()) / h;
        double cc = (rx.imag() - r.imag()) / h, dd = (ry.imag() - r.imag()) / h;
        double det = a * dd - b * cc;
        if (std::abs(det) < 1e-300) return std::nullopt;
        double dx = (dd * r.real() - b * r.imag()) / det;
        double dy = (-cc * r.real() + a * r.imag()) / det;
        c -= Complex(dx, dy);
        if (!finite(c) || std::abs(c) > 8.0) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

struct CenterSearchResult {
    std::vector<Complex> centers;
    bool countMatched = true; // |centers| == multicornCount(degree, period)
};

// All parameters whose critical orbit is periodic of exact period k, by
// multistart Newton over a disk covering the connectedness locus. The count
// is cross-checked against the component census; a mismatch flags an
// exhausted budget rather than raising.
inline CenterSearchResult findCentersDetailed(int degree, int period, const SolveConfig& cfg = {}) {
    if (degree < 2 || period < 1) throw MulticornError("findCenters: need degree >= 2, period >= 1");
    double radius = parameterSearchRadius(degree);
    Rng rng(cfg.seed);
    std::vector<Complex> hits;
    for (int trial = 0; trial < cfg.multistartCount; ++trial) {
        Complex seed = trial == 0 ? Complex(0, 0) : rng.inDisk(radius);
        auto c = detail::centerNewton(degree, period, seed, cfg.convergenceTolerance,
                                      cfg.maxIterations);
        if (c) hits.push_back(*c);
    }
    std::vector<Complex> reps = detail::clusterPoints(std::move(hits), cfg.dedupRadius * 100.0);

    CenterSearchResult out;
    for (Complex c : reps) {
        // Exact-period filter: drop centers whose orbit closes at a proper divisor.
        bool proper = true;
        for (int j = 1; j < period; ++j) {
            if (period % j != 0) continue;
            if (std::abs(detail::criticalReturn(degree, c, j)) < 10.0 * cfg.dedupRadius) {
                proper = false;
                break;
            }
        }
        if (proper) out.centers.push_back(c);
    }
    std::sort(out.centers.begin(), out.centers.end(), detail::lexLess);
    out.countMatched = BigInt(out.centers.size()) == multicornCount(degree, period);
    return out;
}

inline std::vector<Complex> findCenters(int degree, int period, const SolveConfig& cfg = {}) {
    return findCentersDetailed(degree, period, cfg).centers;
}

// Orbit of c under multiplication by omega = e^(2 pi i/(d+1)), the rotation
// symmetry of the parameter plane. Exact duplicates collapse (only c = 0).
inline std::vector<Complex> symmetryOrbit(Complex c, int degree) {
    std::vector<Complex> orbit;
    for (int j = 0; j <= degree; ++j) {
        Complex w = std::polar(1.0, kTwoPi * j / (degree + 1)) * c;
        if (std::find(orbit.begin(), orbit.end(), w) == orbit.end()) orbit.push_back(w);
    }
    return orbit;
}

// lambda = d conj(c)^d / c, constant on symmetry orbits.
inline Complex toLambda(Complex c, int degree) {
    if (c == Complex(0, 0)) throw MulticornError("toLambda: zero-parameter");
    return double(degree) * powInt(std::conj(c), degree) / c;
}

// Closed-form period-1 boundary: c(theta) = r e^(i theta) - r^d e^(-i d theta)
// with r = d^(-1/(d-1)), the locus of parameters with an indifferent fixed point.
inline Complex period1Boundary(int degree, double theta) {
    double r = std::pow(double(degree), -1.0 / (degree - 1));
    return std::polar(r, theta) - std::polar(std::pow(r, degree), -degree * theta);
}

struct BoundaryConfig {
    double initialStep = 0.02;       // first outward march step from the center
    double maxRadius = 4.0;          // give up on a ray past this distance
    double multiplierTolerance = 1e-8; // accept when ||rho| - 1| falls below this
    double positionTolerance = 1e-13;  // or when the bisection bracket shrinks to this
    double cycleTolerance = 1e-12;
};

struct BoundarySampleResult {
    std::vector<Complex> samples; // one per successful ray, in ray order
    std::vector<int> skippedRays; // rays where the bracket or continuation failed
};

namespace detail {

// Value, first and second z-derivative of F = f_c^(2k) by chaining the
// holomorphic second-iterate step k times.
struct Jet2 {
    Complex f, d1, d2;
};

inline Jet2 returnMapJet(int degree, Complex c, Complex z, int period) {
    SecondIterateParams s{std::conj(c), c, degree};
    Complex v = z, d1 = 1, d2 = 0;
    for (int j = 0; j < period; ++j) {
        Complex u = powInt(v, degree) + s.a;
        Complex up = double(degree) * powInt(v, degree - 1);
        Complex upp = double(degree) * double(degree - 1) * powInt(v, degree - 2);
        Complex P = powInt(u, degree) + s.b;
        Complex Pp = double(degree) * powInt(u, degree - 1) * up;
        Complex Ppp = double(degree) * double(degree - 1) * powInt(u, degree - 2) * up * up +
                      double(degree) * powInt(u, degree - 1) * upp;
        d2 = Ppp * d1 * d1 + Pp * d2;
        d1 = Pp * d1;
        v = P;
        if (!finite(v) || std::norm(v) > 1e100) return {kEscapedSentinel, 0, 0};
    }
    return {v, d1, d2};
}

// |rho| - 1 of the attracting exact-period-k cycle at c together with one of
// its points, or nullopt when every exact-k cycle there is repelling or the
// cycle has died. Sweeping all degree^(2k) second-iterate roots keeps the
// verdict independent of any continuation seed: near an arc the attracting
// cycle and its repelling partner sit ~sqrt(dist) apart and seeded Newton can
// hop between them, which would corrupt a bisection on this predicate.
inline std::optional<std::pair<double, Complex>> attractingGap(int degree, Complex c, int k,
                                                               const SolveConfig& cfg) {
    auto found = findCycles(MapParams{degree, c}, k, cfg);
    std::optional<std::pair<double, Complex>> best;
    for (const auto& rec : found.cycles) {
        double gap = std::abs(rec.returnMultiplier) - 1.0;
        if (gap < 0.0 && (!best || gap < best->first)) best = std::make_pair(gap, rec.points[0]);
    }
    return best;
}

// Gauss-Newton polish of an odd-period boundary sample onto its parabolic arc.
// Odd-period arcs carry return multiplier exactly 1, so (t, z) solves the
// double-root system F(z) = z, F'(z) = 1 with c = base + t*dir. The system is
// regular at fold points (F'' != 0) and lands machine-accurate samples there;
// on a cusp axis F'' -> 0 makes the normal matrix singular and we report
// failure, where plain bisection is already sharp because the multiplier gap
// closes linearly along the axis. Returns the refined (t, z) or nullopt.
inline std::optional<std::pair<double, Complex>> polishOddArc(int degree, Complex base,
                                                              Complex dir, double t0, Complex z0,
                                                              int period, double wanderLimit) {
    double t = t0;
    Complex z = z0;
    for (int iter = 0; iter < 40; ++iter) {
        Complex c = base + t * dir;
        Jet2 jet = returnMapJet(degree, c, z, period);
        Complex r1 = jet.f - z;
        Complex r2 = jet.d1 - 1.0;
        if (!finite(r1) || !finite(r2)) return std::nullopt;
        if (std::sqrt(std::norm(r1) + std::norm(r2)) < 1e-13) return std::make_pair(t, z);

        // f depends on both c and conj(c), so take d/dt by centered difference;
        // the z-derivatives are analytic through the second-iterate chain.
        double h = 1e-7 * std::max(1.0, std::abs(t));
        Jet2 jp = returnMapJet(degree, base + (t + h) * dir, z, period);
        Jet2 jm = returnMapJet(degree, base + (t - h) * dir, z, period);
        Complex dr1dt = (jp.f - jm.f) / (2 * h);
        Complex dr2dt = (jp.d1 - jm.d1) / (2 * h);
        Complex dr1dz = jet.d1 - 1.0;
        Complex dr2dz = jet.d2;

        // Least squares on the 4x3 real system via normal equations.
        const double J[4][3] = {
            {dr1dt.real(), dr1dz.real(), -dr1dz.imag()},
            {dr1dt.imag(), dr1dz.imag(), dr1dz.real()},
            {dr2dt.real(), dr2dz.real(), -dr2dz.imag()},
            {dr2dt.imag(), dr2dz.imag(), dr2dz.real()},
        };
        const double r[4] = {r1.real(), r1.imag(), r2.real(), r2.imag()};
        double A[3][4] = {}; // [JtJ | -Jtr]
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j)
                for (int m = 0; m < 4; ++m) A[i][j] += J[m][i] * J[m][j];
            for (int m = 0; m < 4; ++m) A[i][3] -= J[m][i] * r[m];
        }
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int i = col + 1; i < 3; ++i)
                if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
            if (std::abs(A[piv][col]) < 1e-14) return std::nullopt;
            std::swap(A[piv], A[col]);
            for (int i = col + 1; i < 3; ++i) {
                double f = A[i][col] / A[col][col];
                for (int j = col; j < 4; ++j) A[i][j] -= f * A[col][j];
            }
        }
        double step[3];
        for (int i = 2; i >= 0; --i) {
            double s = A[i][3];
            for (int j = i + 1; j < 3; ++j) s -= A[i][j] * step[j];
            step[i] = s / A[i][i];
        }
        t += step[0];
        z += Complex(step[1], step[2]);
        if (std::abs(t - t0) > wanderLimit) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

// Sample the component boundary along n rays from the center by radial
// bisection on "an attracting cycle of exact period k exists". Crossing an
// odd-period arc the cycle dies together with its repelling partner, so cycle
// disappearance past the arc is itself the outside signal, not an error. Odd
// period samples are then polished onto the arc through the double-root
// system; failing that, the bisected inside endpoint is kept when its
// multiplier modulus approaches 1. Rays that never bracket are reported and
// skipped. Probes sweep all degree^(2k) second-iterate roots, so keep the
// period modest (degree^(2k) <= 4096) when sampling many rays.
inline BoundarySampleResult boundarySample(int degree, const ComponentRecord& component,
                                           int rayCount, const BoundaryConfig& cfg = {}) {
    if (rayCount < 1) throw MulticornError("boundarySample: need at least one ray");
    int k = component.period;
    BoundarySampleResult out;
    SolveConfig scfg;
    scfg.convergenceTolerance = cfg.cycleTolerance;
    for (int ray = 0; ray < rayCount; ++ray) {
        double phi = kTwoPi * ray / rayCount;
        Complex dir = std::polar(1.0, phi);
        auto probe = [&](double t) {
            return detail::attractingGap(degree, component.center + t * dir, k, scfg);
        };

        // March outward while an attracting cycle persists.
        double lo = 0.0, hi = -1.0;
        double innerGap = -1.0; // |rho| - 1 at lo; the center cycle is superattracting
        Complex zLo = 0;
        double stepSize = cfg.initialStep;
        while (hi < 0.0) {
            double t = lo + stepSize;
            if (t > cfg.maxRadius) break;
            if (auto pr = probe(t)) {
                lo = t;
                innerGap = pr->first;
                zLo = pr->second;
                stepSize = std::min(stepSize * 1.6, 0.1);
            } else {
                hi = t;
            }
        }
        if (hi < 0.0) {
            out.skippedRays.push_back(ray);
            continue;
        }

        while (hi - lo > cfg.positionTolerance && -innerGap > cfg.multiplierTolerance) {
            double mid = 0.5 * (lo + hi);
            if (auto pr = probe(mid)) {
                lo = mid;
                innerGap = pr->first;
                zLo = pr->second;
            } else {
                hi = mid;
            }
        }

        if (k % 2 == 1 && lo > 0.0) {
            double wander = std::max(1e-6, 1e3 * (hi - lo));
            if (auto t = detail::polishOddArc(degree, component.center, dir, lo, zLo, k, wander)) {
                out.samples.push_back(component.center + *t * dir);
                continue;
            }
        }
        // Fallback: the last verified inside point. Reject rays whose bracket
        // collapsed while the multiplier stayed away from 1.
        if (lo > 0.0 && -innerGap < 1e-5) {
            out.samples.push_back(component.center + lo * dir);
        } else {
            out.skippedRays.push_back(ray);
        }
    }
    return out;
}

namespace detail {

// Residual of the cusp system [F(z)-z, F'(z)-1, F''(z)] as six reals.
inline std::array<double, 6> cuspResidual(int degree, int period, Complex c, Complex z) {
    Jet2 jet = returnMapJet(degree, c, z, period);
    Complex r0 = jet.f - z, r1 = jet.d1 - 1.0, r2 = jet.d2;
    return {r0.real(), r0.imag(), r1.real(), r1.imag(), r2.real(), r2.imag()};
}

inline double norm6(const std::array<double, 6>& r) {
    double s = 0;
    for (double x : r) s += x * x;
    return std::sqrt(s);
}

// Levenberg-Marquardt on the overdetermined cusp system in (Re c, Im c,
// Re z, Im z). Consistent at genuine cusps, so the residual drives to zero.
inline std::optional<std::pair<Complex, Complex>> cuspSolve(int degree, int period, Complex c,
                                                            Complex z, int maxIter = 80) {
    double mu = 1e-3;
    auto r = cuspResidual(degree, period, c, z);
    double rn = norm6(r);
    for (int it = 0; it < maxIter; ++it) {
        if (!finite(c) || !finite(z) || !std::isfinite(rn)) return std::nullopt;
        if (rn < 1e-11) return std::make_pair(c, z);
        double hc = fdStep(c), hz = fdStep(z);
        std::array<std::array<double, 6>, 4> J{};
        const std::array<std::pair<Complex, Complex>, 4> bumps = {
            std::make_pair(Complex(hc, 0), Complex(0, 0)),
            std::make_pair(Complex(0, hc), Complex(0, 0)),
            std::make_pair(Complex(0, 0), Complex(hz, 0)),
            std::make_pair(Complex(0, 0), Complex(0, hz)),
        };
        for (int col = 0; col < 4; ++col) {
            auto rb = cuspResidual(degree, period, c + bumps[col].first, z + bumps[col].second);
            double h = col < 2 ? hc : hz;
            for (int row = 0; row < 6; ++row) J[col][row] = (rb[row] - r[row]) / h;
        }
        // Normal equations with damping: (J^T J + mu I) delta = -J^T r.
        double A[4][4], g[4];
        for (int i = 0; i < 4; ++i) {
            g[i] = 0;
            for (int row = 0; row < 6; ++row) g[i] += J[i][row] * r[row];
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int row = 0; row < 6; ++row) s += J[i][row] * J[j][row];
                A[i][j] = s;
            }
        }
        for (int i = 0; i < 4; ++i) A[i][i] += mu;
        // Gaussian elimination with partial pivoting.
        double M[4][5];
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) M[i][j] = A[i][j];
            M[i][4] = -g[i];
        }
        bool singular = false;
        for (int col = 0; col < 4 && !singular; ++col) {
            int piv = col;
            for (int rI = col + 1; rI < 4; ++rI)
                if (std::abs(M[rI][col]) > std::abs(M[piv][col])) piv = rI;
            if (std::abs(M[piv][col]) < 1e-300) {
                singular = true;
                break;
            }
            std::swap(M[col], M[piv]);
            for (int rI = col + 1; rI < 4; ++rI) {
                double f = M[rI][col] / M[col][col];
                for (int j = col; j < 5; ++j) M[rI][j] -= f * M[col][j];
            }
        }
        if (singular) {
            mu *= 10;
            if (mu > 1e8) return std::nullopt;
            continue;
        }
        double delta[4];
        for (int i = 3; i >= 0; --i) {
            double s = M[i][4];
            for (int j = i + 1; j < 4; ++j) s -= M[i][j] * delta[j];
            delta[i] = s / M[i][i];
        }
        Complex cNew = c + Complex(delta[0], delta[1]);
        Complex zNew = z + Complex(delta[2], delta[3]);
        auto rNew = cuspResidual(degree, period, cNew, zNew);
        double rnNew = norm6(rNew);
        if (rnNew < rn) {
            c = cNew;
            z = zNew;
            r = rNew;
            rn = rnNew;
            mu = std::max(mu * 0.3, 1e-12);
        } else {
            mu *= 10;
            if (mu > 1e8) return std::nullopt;
        }
        if (std::abs(c) > 8.0 || std::abs(z) > 16.0) return std::nullopt;
    }
    return rn < 1e-9 ? std::make_optional(std::make_pair(c, z)) : std::nullopt;
}

} // namespace detail

// Cusp parameters of odd period k: solutions of F(z) = z, F'(z) = 1,
// F''(z) = 0 with F = f_c^(2k), found by damped Gauss-Newton from cycle
// seeds at random parameters. Deduplicated by parameter (a map carries at
// most one non-repelling cycle) and sorted lexicographically.
inline std::vector<CuspRecord> findCusps(int degree, int period, const SolveConfig& cfg = {}) {
    if (period % 2 == 0) throw MulticornError("findCusps: period must be odd");
    double radius = parameterSearchRadius(degree);
    int seedCount = std::max(64, cfg.multistartCount / 16);
    bool cheapCycles = std::pow(double(degree), 2.0 * period) <= 256.0 + 0.5;
    Rng rng(cfg.seed + 1);

    std::vector<std::pair<Complex, Complex>> found;
    for (int trial = 0; trial < seedCount; ++trial) {
        Complex c = rng.inDisk(radius);
        std::vector<Complex> zSeeds;
        if (cheapCycles) {
            SolveConfig sub;
            sub.seed = cfg.seed + trial;
            for (const auto& rec : findCycles(MapParams{degree, c}, period, sub).cycles)
                zSeeds.push_back(rec.points[0]);
        } else {
            zSeeds.push_back(rng.inDisk(escapeRadius(degree, c)));
        }
        for (Complex z : zSeeds) {
            auto sol = detail::cuspSolve(degree, period, c, z);
            if (!sol) continue;
            // Validate exact parabolic period k at the solution.
            auto orbit = detail::regenerateOrbit(MapParams{degree, sol->first}, sol->second, period,
                                                 1e-6);
            if (!orbit) continue;
            found.push_back(*sol);
        }
    }

    // Dedup by parameter (a map carries at most one parabolic orbit), keeping
    // the lexicographically smallest orbit point. Conjugate-pair cusps can
    // interleave under a lexicographic sort, so compare against every record.
    std::vector<CuspRecord> out;
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return detail::lexLess(a.first, b.first); });
    for (const auto& [c, z] : found) {
        bool duplicate = false;
        for (const auto& rec : out)
            if (std::abs(rec.c - c) < 1e-6) duplicate = true;
        if (duplicate) continue;
        auto orbit = detail::regenerateOrbit(MapParams{degree, c}, z, period, 1e-6);
        if (!orbit) continue;
        Complex z0 = z;
        for (Complex w : *orbit)
            if (detail::lexLess(w, z0)) z0 = w;
        detail::Jet2 jet = detail::returnMapJet(degree, c, z0, period);
        CuspRecord rec;
        rec.c = c;
        rec.period = period;
        rec.parabolicPoint = z0;
        rec.firstDerivativeDefect = std::abs(jet.d1 - 1.0);
        rec.secondDerivativeDefect = std::abs(jet.d2);
        out.push_back(rec);
    }
    return out;
}

// Fixed points of P_mu(z) = mu conj(z) + conj(z)^2 via the holomorphic
// quartic obtained by substituting the conjugated fixed-point equation into
// itself; spurious 2-cycle roots are filtered by the defining equation.
inline std::vector<Complex> muFixedPoints(Complex mu) {
    Polynomial q({Complex(0, 0), std::conj(mu), Complex(1, 0)}); // conj side: z^2 + conj(mu) z
    Polynomial r = q * q + q * Polynomial::constant(mu) - Polynomial::identity();
    std::vector<Complex> out;
    for (Complex z : aberthRoots(r)) {
        Complex image = mu * std::conj(z) + powInt(std::conj(z), 2);
        if (std::abs(image - z) < 1e-6 * std::max(1.0, std::norm(z))) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), detail::lexLess);
    return out;
}

inline bool muHasNonRepellingFixedPoint(Complex mu, double tol = 1e-9) {
    for (Complex z : muFixedPoints(mu))
        if (std::abs(mu + 2.0 * std::conj(z)) <= 1.0 + tol) return true;
    return false;
}

// Fraction of a parameter grid near mu0 whose map has a non-repelling fixed
// point. Grid: samples x samples over the bounding square, masked to the disk.
inline double muFamilyDemo(Complex mu0, double radius, int samples, double tol = 1e-9) {
    if (samples < 1) throw MulticornError("muFamilyDemo: need at least one sample");
    long total = 0, good = 0;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            double x = samples == 1 ? 0.0 : -radius + 2.0 * radius * i / (samples - 1);
            double y = samples == 1 ? 0.0 : -radius + 2.0 * radius * j / (samples - 1);
            Complex mu = mu0 + Complex(x, y);
            if (std::abs(mu - mu0) > radius + 1e-15) continue;
            ++total;
            if (muHasNonRepellingFixedPoint(mu, tol)) ++good;
        }
    }
    return total == 0 ? 0.0 : double(good) / double(total);
}

// First point on the circle |mu| = modulus (by sample order) whose
// surrounding disk is entirely non-repelling, or entirely repelling when
// wantNonRepelling is false. Used to pick demo anchors deterministically.
inline std::optional<Complex> scanMuCircle(double modulus, int circleSamples, double probeRadius,
                                           int probeGrid, bool wantNonRepelling) {
    for (int j = 0; j < circleSamples; ++j) {
        Complex mu0 = std::polar(modulus, kTwoPi * j / circleSamples);
        double f = muFamilyDemo(mu0, probeRadius, probeGrid);
        if (wantNonRepelling && f == 1.0) return mu0;
        if (!wantNonRepelling && f == 0.0) return mu0;
    }
    return std::nullopt;
}

// Group centers into omega-rotation orbits and assemble component records.
// Cusps (odd periods, when requested) attach to the nearest center.
inline std::vector<ComponentRecord> assembleComponents(int degree, int period,
                                                       const SolveConfig& cfg = {},
                                                       int boundaryRays = 0,
                                                       bool withCusps = false) {
    std::vector<Complex> centers = findCenters(degree, period, cfg);
    std::vector<int> orbitOf(centers.size(), -1);
    int classes = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (orbitOf[i] >= 0) continue;
        orbitOf[i] = classes;
        for (int j = 1; j <= degree; ++j) {
            Complex w = std::polar(1.0, kTwoPi * j / (degree + 1)) * centers[i];
            for (std::size_t m = 0; m < centers.size(); ++m)
                if (orbitOf[m] < 0 && std::abs(centers[m] - w) < 1e-7) orbitOf[m] = classes;
        }
        ++classes;
    }

    std::vector<CuspRecord> cusps;
    if (withCusps && period % 2 == 1) cusps = findCusps(degree, period, cfg);

    std::vector<ComponentRecord> out;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        ComponentRecord rec;
        rec.period = period;
        rec.center = centers[i];
        rec.parity = period % 2 == 1 ? Parity::kOdd : Parity::kEven;
        rec.symmetryClass = orbitOf[i];
        if (boundaryRays > 0)
            rec.boundarySamples = boundarySample(degree, rec, boundaryRays).samples;
        out.push_back(std::move(rec));
    }
    for (const CuspRecord& cusp : cusps) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < out.size(); ++i)
            if (std::abs(out[i].center - cusp.c) < std::abs(out[best].center - cusp.c)) best = i;
        if (!out.empty()) out[best].cusps.push_back(cusp.c);
    }
    return out;
}

} // namespace multicorn
