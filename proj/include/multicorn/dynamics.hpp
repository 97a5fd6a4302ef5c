#pragma once
// The map f_c(z) = conj(z)^d + c, its holomorphic second iterate
// P_{a,b}(z) = (z^d + a)^d + b, cycle multipliers with the alternating
// conjugation chain rule, and periodic-orbit extraction.

#include <algorithm>
#include <optional>
#include <vector>

#include "common.hpp"
#include "roots.hpp"

namespace multicorn {

struct MapParams {
    int degree = 2;
    Complex c{0.0, 0.0};
};

struct SecondIterateParams {
    Complex a{0.0, 0.0}; // conj(c) on the antiholomorphic slice
    Complex b{0.0, 0.0}; // c
    int degree = 2;
};

enum class Stability {
    kSuperattracting,
    kAttracting,
    kRepelling,
    kIndifferent,
    kParabolicCandidate,
};

inline const char* stabilityName(Stability s) {
    switch (s) {
        case Stability::kSuperattracting: return "superattracting";
        case Stability::kAttracting: return "attracting";
        case Stability::kRepelling: return "repelling";
        case Stability::kIndifferent: return "indifferent";
        case Stability::kParabolicCandidate: return "parabolic-candidate";
    }
    return "unknown";
}

struct CycleRecord {
    std::vector<Complex> points;           // orbit order under f_c
    int period = 1;
    Complex antiDerivativeProduct{0, 0};   // lambda = prod d*conj(z_j)^(d-1)
    Complex returnMultiplier{0, 0};        // rho: f^(2p) for odd p, f^(p) for even p
    Stability stability = Stability::kIndifferent;
};

struct SolveConfig {
    int maxIterations = 400;
    double convergenceTolerance = Defaults::convergence_tol;
    double dedupRadius = Defaults::dedup_radius;
    int multistartCount = 4096;
    double escapeRadius = 0.0; // 0: derive from params
    std::uint64_t seed = 0x517cc1b727220a95ull;
};

inline Complex powInt(Complex z, int e) {
    Complex acc = 1;
    while (e > 0) {
        if (e & 1) acc *= z;
        z *= z;
        e >>= 1;
    }
    return acc;
}

inline Complex kEscapedSentinel{std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity()};

// One application of f_c.
inline Complex step(const MapParams& p, Complex z) {
    return powInt(std::conj(z), p.degree) + p.c;
}

// f_c^n(z); overflow collapses to the escaped-to-infinity sentinel.
inline Complex evaluate(const MapParams& p, Complex z, long n) {
    for (long i = 0; i < n; ++i) {
        if (std::norm(z) > 1e150) return kEscapedSentinel;
        z = step(p, z);
    }
    return z;
}

inline SecondIterateParams secondIterate(const MapParams& p) {
    return {std::conj(p.c), p.c, p.degree};
}

inline Complex evalSecond(const SecondIterateParams& s, Complex z) {
    return powInt(powInt(z, s.degree) + s.a, s.degree) + s.b;
}

// d/dz of P_{a,b} at z.
inline Complex evalSecondDerivative(const SecondIterateParams& s, Complex z) {
    Complex inner = powInt(z, s.degree) + s.a;
    return double(s.degree) * powInt(inner, s.degree - 1) * double(s.degree) *
           powInt(z, s.degree - 1);
}

// The antiholomorphic derivative d f_c / d conj(z) evaluated at z.
inline Complex antiDerivative(const MapParams& p, Complex z) {
    return double(p.degree) * powInt(std::conj(z), p.degree - 1);
}

// Holomorphic multiplier of f_c^n along an orbit starting at z, via the
// alternating chain rule A <- f'(z_m) * conj(A). Meaningful for even n.
inline Complex chainMultiplier(const MapParams& p, Complex z, long n) {
    Complex acc = 1;
    for (long m = 0; m < n; ++m) {
        acc = antiDerivative(p, z) * std::conj(acc);
        z = step(p, z);
    }
    return acc;
}

// (lambda, rho) for a cycle given in orbit order. lambda is the plain product
// of antiholomorphic derivatives; rho is the holomorphic first-return
// multiplier (of f^(2p) when p is odd, of f^(p) when p is even), computed
// with the conjugation at every other factor.
inline std::pair<Complex, Complex> cycleMultiplier(const MapParams& p,
                                                   const std::vector<Complex>& points,
                                                   double tol = 1e-8) {
    if (points.empty()) throw MulticornError("cycleMultiplier: empty cycle");
    int period = static_cast<int>(points.size());
    for (int j = 0; j < period; ++j) {
        Complex next = step(p, points[j]);
        if (std::abs(next - points[(j + 1) % period]) > tol * std::max(1.0, std::abs(next)))
            throw MulticornError("not-a-cycle: orbit drift exceeds tolerance");
    }
    Complex lambda = 1;
    for (const Complex& z : points) lambda *= antiDerivative(p, z);
    long returnLength = (period % 2 == 1) ? 2L * period : period;
    Complex rho = chainMultiplier(p, points[0], returnLength);
    return {lambda, rho};
}

// Nearest root of unity e^{2 pi i p/q} with q <= maxDen, or nullopt if none
// is within tol.
inline std::optional<std::pair<long, long>> nearestRootOfUnity(Complex rho, double tol,
                                                               long maxDen = 64) {
    double theta = std::arg(rho) / kTwoPi;
    for (long q = 1; q <= maxDen; ++q) {
        long pNum = std::lround(theta * double(q));
        double angle = kTwoPi * double(pNum) / double(q);
        if (std::abs(rho - std::polar(1.0, angle)) < tol) {
            long pp = ((pNum % q) + q) % q;
            return std::make_pair(pp, q);
        }
    }
    return std::nullopt;
}

inline Stability classify(const CycleRecord& rec, double tol = Defaults::parabolic_window) {
    double r = std::abs(rec.returnMultiplier);
    if (r < tol) return Stability::kSuperattracting;
    if (r < 1.0 - tol) return Stability::kAttracting;
    if (r > 1.0 + tol) return Stability::kRepelling;
    if (rec.period % 2 == 1) {
        if (std::abs(rec.returnMultiplier - Complex(1)) < tol)
            return Stability::kParabolicCandidate;
    } else {
        if (nearestRootOfUnity(rec.returnMultiplier, tol)) return Stability::kParabolicCandidate;
    }
    return Stability::kIndifferent;
}

inline CycleRecord makeCycleRecord(const MapParams& p, std::vector<Complex> points,
                                   double parabolicTol = Defaults::parabolic_window,
                                   double cycleTol = 1e-8) {
    CycleRecord rec;
    rec.period = static_cast<int>(points.size());
    rec.points = std::move(points);
    auto [lambda, rho] = cycleMultiplier(p, rec.points, cycleTol);
    rec.antiDerivativeProduct = lambda;
    rec.returnMultiplier = rho;
    rec.stability = classify(rec, parabolicTol);
    return rec;
}

// Coefficients of g^p(z) - z, g = f_c^2, as a dense polynomial. Degree d^(2p).
inline Polynomial secondIterateComposition(const MapParams& p, int period) {
    SecondIterateParams s = secondIterate(p);
    Polynomial h = Polynomial::identity();
    for (int i = 0; i < period; ++i) {
        h = h.pow(s.degree) + s.a;
        h = h.pow(s.degree) + s.b;
    }
    return h - Polynomial::identity();
}

struct FindCyclesResult {
    std::vector<CycleRecord> cycles;
    bool possiblyIncomplete = false; // multistart fallback engaged
};

namespace detail {

// Greedy radius clustering; returns cluster representatives (means).
inline std::vector<Complex> clusterPoints(std::vector<Complex> pts, double radius) {
    std::vector<Complex> reps;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Complex sum = pts[i];
        int count = 1;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(pts[j] - pts[i]) < radius) {
                used[j] = true;
                sum += pts[j];
                ++count;
            }
        }
        reps.push_back(sum / double(count));
    }
    return reps;
}

inline int nearestIndex(const std::vector<Complex>& pts, Complex z) {
    int best = -1;
    double bestDist = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = std::abs(pts[i] - z);
        if (d < bestDist) {
            bestDist = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

// H(z) = g^n(z) - z and H'(z) for g the second iterate, evaluated through the
// composition chain. Stable where the expanded coefficients of g^n overflow
// all precision (they grow like 4^degree for parameters of modulus ~2).
inline std::optional<std::pair<Complex, Complex>> chainFixedResidual(const SecondIterateParams& s,
                                                                     Complex z, int n) {
    Complex v = z, dv = 1;
    for (int m = 0; m < n; ++m) {
        dv *= evalSecondDerivative(s, v);
        v = evalSecond(s, v);
        if (!finite(v) || std::norm(v) > 1e100) return std::nullopt;
    }
    return std::make_pair(v - z, dv - 1.0);
}

// Simultaneous Aberth iteration on the fixed points of g^n with all Newton
// ratios chain-evaluated, so no dense polynomial is ever formed.
inline std::vector<Complex> chainAberthRoots(const MapParams& p, int n, const SolveConfig& cfg) {
    SecondIterateParams s = secondIterate(p);
    long count = 1;
    for (int m = 0; m < 2 * n; ++m) count *= p.degree;
    double radius = cfg.escapeRadius > 0 ? cfg.escapeRadius : escapeRadius(p.degree, p.c);

    std::vector<Complex> z(count);
    double golden = 0.7548776662466927; // irrational spacing avoids symmetric stalls
    for (long i = 0; i < count; ++i) {
        double r = radius * (0.35 + 0.6 * double(i + 1) / double(count + 1));
        z[i] = std::polar(r, kTwoPi * std::fmod(golden * double(i) + 0.07, 1.0));
    }

    std::vector<Complex> w(count);
    for (int sweep = 0; sweep < cfg.maxIterations; ++sweep) {
        double worst = 0;
        for (long i = 0; i < count; ++i) {
            auto res = chainFixedResidual(s, z[i], n);
            if (!res || std::abs(res->second) < 1e-300) {
                // Escaped or stationary estimate: respawn deterministically.
                z[i] = std::polar(radius * (0.4 + 0.55 * std::fmod(golden * sweep + 0.3, 1.0)),
                                  kTwoPi * std::fmod(golden * double(i + sweep) + 0.13, 1.0));
                worst = std::max(worst, 1.0);
                continue;
            }
            w[i] = res->first / res->second;
            Complex sum = 0;
            for (long j = 0; j < count; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (std::norm(diff) < 1e-300) continue;
                sum += 1.0 / diff;
            }
            Complex corr = w[i] / (1.0 - w[i] * sum);
            z[i] -= corr;
            if (!finite(z[i])) z[i] = std::polar(radius, kTwoPi * std::fmod(golden * i, 1.0));
            worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < cfg.convergenceTolerance) break;
    }
    return z;
}

} // namespace detail

// All cycles of exact period p under f_c. Core path solves g^p(z) = z on the
// holomorphic second iterate by simultaneous iteration and regroups roots
// into f_c-orbits; beyond degree 4096 it falls back to multistart Newton and
// flags possible incompleteness.
inline FindCyclesResult findCycles(const MapParams& p, int period, SolveConfig cfg = {}) {
    if (period < 1) throw MulticornError("findCycles: period must be >= 1");
    FindCyclesResult result;
    double degreeBound = std::pow(double(p.degree), 2.0 * period);

    std::vector<Complex> roots;
    if (degreeBound <= 4096.0 + 0.5) {
        SecondIterateParams s = secondIterate(p);
        for (Complex r : detail::chainAberthRoots(p, period, cfg)) {
            // Chain-Newton polish. Near-multiple roots stall at sqrt(eps), so a
            // small residual counts as converged too.
            bool ok = false;
            Complex best = r;
            double bestResidual = std::numeric_limits<double>::max();
            for (int it = 0; it < 60; ++it) {
                auto res = detail::chainFixedResidual(s, r, period);
                if (!res || std::abs(res->second) < 1e-300) break;
                if (std::abs(res->first) < bestResidual) {
                    bestResidual = std::abs(res->first);
                    best = r;
                }
                Complex delta = res->first / res->second;
                r -= delta;
                if (!finite(r)) break;
                if (std::abs(delta) < cfg.convergenceTolerance * std::max(1.0, std::abs(r))) {
                    ok = true;
                    best = r;
                    break;
                }
            }
            if (ok || bestResidual < 1e-9) roots.push_back(best);
        }
    } else {
        result.possiblyIncomplete = true;
        double radius = cfg.escapeRadius > 0 ? cfg.escapeRadius : escapeRadius(p.degree, p.c);
        SecondIterateParams s = secondIterate(p);
        Rng rng(cfg.seed);
        for (int trial = 0; trial < cfg.multistartCount; ++trial) {
            Complex z = rng.inDisk(radius);
            bool ok = false;
            for (int it = 0; it < cfg.maxIterations; ++it) {
                Complex v = z, dv = 1;
                for (int m = 0; m < period; ++m) {
                    dv *= evalSecondDerivative(s, v);
                    v = evalSecond(s, v);
                    if (!finite(v) || std::norm(v) > 1e100) break;
                }
                if (!finite(v) || std::norm(v) > 1e100) break;
                Complex g = v - z, dg = dv - 1.0;
                if (std::abs(dg) < 1e-300) break;
                Complex stepc = g / dg;
                z -= stepc;
                if (std::abs(stepc) < cfg.convergenceTolerance * std::max(1.0, std::abs(z))) {
                    ok = true;
                    break;
                }
            }
            if (ok && finite(z)) roots.push_back(z);
        }
    }

    // Near a parabolic parameter a collided root pair sits sqrt(residual) apart
    // (up to ~3e-7), and unmerged copies would regroup as a fake orbit of the
    // wrong period. The pair is symmetric about the parabolic point, so the
    // cluster mean stays accurate and the orbit regroups correctly.
    std::vector<Complex> reps =
        detail::clusterPoints(std::move(roots), std::max(cfg.dedupRadius, 1e-6));

    // Regroup the fixed points of g^p into f_c-orbits and keep exact period p.
    std::vector<bool> consumed(reps.size(), false);
    double matchRadius = std::max(cfg.dedupRadius * 100.0, 1e-7);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (consumed[i]) continue;
        std::vector<int> orbitIdx{static_cast<int>(i)};
        Complex z = reps[i];
        bool closed = false;
        for (int stepCount = 1; stepCount <= 2 * period; ++stepCount) {
            z = step(p, z);
            int j = detail::nearestIndex(reps, z);
            if (j < 0 || std::abs(reps[j] - z) > matchRadius) break;
            if (j == static_cast<int>(i)) {
                closed = true;
                break;
            }
            if (std::find(orbitIdx.begin(), orbitIdx.end(), j) != orbitIdx.end()) break;
            orbitIdx.push_back(j);
        }
        if (!closed) continue;
        for (int idx : orbitIdx) consumed[idx] = true;
        if (static_cast<int>(orbitIdx.size()) != period) continue;

        // Deterministic canonical rotation: start at the lexicographic minimum.
        int start = 0;
        for (std::size_t m = 1; m < orbitIdx.size(); ++m) {
            Complex a = reps[orbitIdx[m]], b = reps[orbitIdx[start]];
            if (a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()))
                start = static_cast<int>(m);
        }
        std::vector<Complex> pts;
        pts.reserve(period);
        for (int m = 0; m < period; ++m) pts.push_back(reps[orbitIdx[(start + m) % period]]);

        try {
            result.cycles.push_back(makeCycleRecord(p, std::move(pts), Defaults::parabolic_window,
                                                    std::max(1e-6, cfg.dedupRadius * 100.0)));
        } catch (const MulticornError&) {
            // Clustered near-multiple roots can fail re-validation; drop them.
        }
    }

    std::sort(result.cycles.begin(), result.cycles.end(),
              [](const CycleRecord& a, const CycleRecord& b) {
                  if (a.points[0].real() != b.points[0].real())
                      return a.points[0].real() < b.points[0].real();
                  return a.points[0].imag() < b.points[0].imag();
              });
    return result;
}

namespace detail {

// Newton on f^m(z) - z from a seed, where m is the even return length of the
// given period, so the iterate is holomorphic and plain Newton is sound.
inline std::optional<Complex> newtonPeriodicPoint(const MapParams& p, int period, Complex seed,
                                                  double tol = 1e-13, int maxIter = 60) {
    SecondIterateParams s = secondIterate(p);
    long half = (period % 2 == 0) ? period / 2 : period;
    Complex z = seed;
    for (int it = 0; it < maxIter; ++it) {
        Complex v = z, dv = 1;
        for (long m = 0; m < half; ++m) {
            dv *= evalSecondDerivative(s, v);
            v = evalSecond(s, v);
            if (!finite(v) || std::norm(v) > 1e100) return std::nullopt;
        }
        Complex g = v - z, dg = dv - 1.0;
        if (std::abs(dg) < 1e-300) return std::nullopt;
        Complex delta = g / dg;
        z -= delta;
        if (!finite(z)) return std::nullopt;
        if (std::abs(delta) < tol * std::max(1.0, std::abs(z))) return z;
    }
    return std::nullopt;
}

// Rebuild the f_c-orbit from z0 and confirm it has exact period `period`:
// closes after `period` steps and at no proper divisor.
inline std::optional<std::vector<Complex>> regenerateOrbit(const MapParams& p, Complex z0,
                                                           int period, double tol = 1e-7) {
    std::vector<Complex> pts;
    pts.reserve(period);
    Complex z = z0;
    for (int j = 0; j < period; ++j) {
        pts.push_back(z);
        z = step(p, z);
        if (!finite(z)) return std::nullopt;
    }
    double scale = std::max(1.0, std::abs(z0));
    if (std::abs(z - z0) > tol * scale) return std::nullopt;
    for (int j = 1; j < period; ++j) {
        if (period % j != 0) continue;
        if (std::abs(pts[j] - z0) < tol * scale) return std::nullopt;
    }
    return pts;
}

} // namespace detail

// Polish a period-p cycle from a seed near one of its points. Returns the
// orbit in f_c order starting at the polished point, or nullopt when Newton
// escapes or the limit does not have exact period p.
inline std::optional<std::vector<Complex>> refineCycle(const MapParams& p, int period,
                                                       Complex seed, double tol = 1e-13,
                                                       double orbitTol = 1e-7) {
    auto z = detail::newtonPeriodicPoint(p, period, seed, tol);
    if (!z) return std::nullopt;
    return detail::regenerateOrbit(p, *z, period, orbitTol);
}

// Follow the critical orbit until it settles on an attracting (or
// superattracting) cycle of period <= maxPeriod; nullopt when it escapes,
// exceeds the budget, or the detected cycle fails validation. Indifferent
// cycles attract too slowly to be seen within realistic budgets, so a
// nullopt here never certifies their absence.
inline std::optional<CycleRecord> detectAttractingCycle(const MapParams& p, int maxPeriod,
                                                        long budget = 200000,
                                                        double settleTol = 1e-9) {
    double escape = escapeRadius(p.degree, p.c);
    std::vector<Complex> ring(maxPeriod + 1);
    Complex z = p.c; // critical value, one step past the critical point
    for (long n = 0; n < budget; ++n) {
        ring[n % (maxPeriod + 1)] = z;
        z = step(p, z);
        if (!finite(z) || std::abs(z) > escape) return std::nullopt;
        if (n + 1 < maxPeriod) continue;
        for (int j = 1; j <= maxPeriod && j <= n + 1; ++j) {
            Complex prev = ring[(n + 1 - j) % (maxPeriod + 1)];
            if (std::abs(z - prev) > settleTol * std::max(1.0, std::abs(z))) continue;
            auto orbit = refineCycle(p, j, z);
            if (!orbit) continue;
            try {
                CycleRecord rec = makeCycleRecord(p, std::move(*orbit));
                if (rec.stability == Stability::kAttracting ||
                    rec.stability == Stability::kSuperattracting)
                    return rec;
            } catch (const MulticornError&) {
            }
        }
    }
    return std::nullopt;
}

} // namespace multicorn
