#pragma once
// Counting of periodic angles and hyperbolic components, orbit portraits,
// and the exact 2k-ray identity at root arcs.

#include <algorithm>
#include <set>
#include <vector>

#include "rational.hpp"

namespace multicorn {

enum class AngleSign { kPlusD, kMinusD };

namespace detail {

// Number of angles with period dividing j under multiplication by m:
// solutions of (m^j - 1) t = 0 mod 1, i.e. |m^j - 1|.
inline BigInt periodDividingCount(long long m, int j) {
    BigInt p = 1;
    for (int i = 0; i < j; ++i) p *= m;
    p -= 1;
    return p < 0 ? BigInt(-p) : p;
}

inline std::vector<int> divisors(int k) {
    std::vector<int> out;
    for (int j = 1; j <= k; ++j)
        if (k % j == 0) out.push_back(j);
    return out;
}

inline int moebius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

} // namespace detail

// Angles of exact period k under t |-> (sign d) * t, by Moebius inversion
// over the period-dividing counts.
inline BigInt countExactPeriodic(int degree, int k, AngleSign sign) {
    if (k < 1) throw MulticornError("countExactPeriodic: k must be >= 1");
    long long m = (sign == AngleSign::kMinusD) ? -static_cast<long long>(degree) : degree;
    BigInt total = 0;
    for (int j : detail::divisors(k)) {
        int mu = detail::moebius(k / j);
        if (mu == 0) continue;
        total += mu * detail::periodDividingCount(m, j);
    }
    return total;
}

// Period-k hyperbolic component count of the degree-d multibrot.
// phi(d,k)/d applies only for k > 2; k <= 2 uses direct center counts
// (k=1: the main component; k=2: roots of c^{d-1} = -1).
inline BigInt multibrotCount(int degree, int k) {
    if (k == 1) return 1;
    if (k == 2) return degree - 1;
    return countExactPeriodic(degree, k, AngleSign::kMinusD) / degree;
}

// Period-k hyperbolic component count of the degree-d multicorn. Differs
// from the multibrot count exactly when k is twice an odd integer.
inline BigInt multicornCount(int degree, int k) {
    BigInt s = multibrotCount(degree, k);
    if (k % 2 == 0 && (k / 2) % 2 == 1) s += 2 * multibrotCount(degree, k / 2);
    return s;
}

// Open arc (from, to) taken counterclockwise; length in [0, 1].
struct CircleArc {
    Angle from;
    Angle to;

    Rational length() const {
        Rational d = to.rational() - from.rational();
        Rational l = d.mod1();
        if (l == Rational(0)) return {1, 1}; // degenerate singleton boundary: full circle
        return l;
    }

    // Strict containment, endpoints excluded.
    bool containsOpen(const Angle& t) const {
        Rational offset = (t.rational() - from.rational()).mod1();
        if (offset == Rational(0)) return false;
        return offset < length();
    }
};

struct OrbitPortrait {
    int degree = 2;
    std::vector<std::vector<Angle>> angleSets; // A_1..A_p, each sorted by circle order
    int rayPeriod = 1;                         // common exact period of every angle
    CircleArc characteristicArc;               // unique shortest complementary arc
};

inline std::pair<Angle, Angle> characteristicAngles(const OrbitPortrait& p) {
    return {p.characteristicArc.from, p.characteristicArc.to};
}

namespace detail {

// Two finite circle sets are unlinked iff one lies inside a single
// complementary arc of the other.
inline bool setsUnlinked(const std::vector<Angle>& a, const std::vector<Angle>& b) {
    if (a.size() < 2) return true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CircleArc arc{a[i], a[(i + 1) % a.size()]};
        bool allInside = true;
        for (const Angle& t : b) {
            if (!arc.containsOpen(t)) {
                allInside = false;
                break;
            }
        }
        if (allInside) return true;
    }
    return false;
}

} // namespace detail

// Closes the seed set under t |-> -d*t and validates the portrait axioms
// used here: set-to-set bijectivity, one common ray period, pairwise
// unlinkedness. The characteristic arc is the shortest arc complementary to
// any A_j; for single-ray portraits every complementary arc is the full
// circle, and we pin both endpoints to the smallest seed angle.
inline OrbitPortrait buildPortrait(const std::vector<Angle>& seedAngles, int degree) {
    if (seedAngles.empty()) throw MulticornError("buildPortrait: empty seed");

    std::set<Angle> seed(seedAngles.begin(), seedAngles.end());
    int rayPeriod = 0;
    for (const Angle& t : seed) {
        auto [pre, per] = exactPeriod(t, degree);
        if (pre != 0) throw MulticornError("buildPortrait: seed angle " + t.str() + " not periodic");
        if (rayPeriod == 0) rayPeriod = per;
        if (per != rayPeriod)
            throw MulticornError("inconsistent-portrait: mixed ray periods in seed");
    }

    OrbitPortrait portrait;
    portrait.degree = degree;
    portrait.rayPeriod = rayPeriod;

    std::vector<Angle> current(seed.begin(), seed.end());
    for (;;) {
        portrait.angleSets.push_back(current);
        std::set<Angle> image;
        for (const Angle& t : current) image.insert(antiMultiply(t, degree));
        if (image.size() != current.size())
            throw MulticornError("inconsistent-portrait: forward images collide");
        std::vector<Angle> next(image.begin(), image.end());
        if (next == portrait.angleSets.front()) break;
        for (const auto& existing : portrait.angleSets)
            if (next == existing)
                throw MulticornError("inconsistent-portrait: set orbit re-enters off the seed");
        current = std::move(next);
    }

    for (std::size_t i = 0; i < portrait.angleSets.size(); ++i)
        for (std::size_t j = i + 1; j < portrait.angleSets.size(); ++j)
            if (!detail::setsUnlinked(portrait.angleSets[i], portrait.angleSets[j]) ||
                !detail::setsUnlinked(portrait.angleSets[j], portrait.angleSets[i]))
                throw MulticornError("inconsistent-portrait: linked angle sets");

    bool haveArc = false;
    Rational best(0);
    for (const auto& set : portrait.angleSets) {
        if (set.size() < 2) continue;
        for (std::size_t i = 0; i < set.size(); ++i) {
            CircleArc arc{set[i], set[(i + 1) % set.size()]};
            Rational len = arc.length();
            if (!haveArc || len < best) {
                best = len;
                portrait.characteristicArc = arc;
                haveArc = true;
            }
        }
    }
    if (!haveArc) {
        Angle anchor = *std::min_element(seed.begin(), seed.end());
        portrait.characteristicArc = CircleArc{anchor, anchor};
    }
    return portrait;
}

// Exact test of (1+d^k)(theta1-alpha1) = (alpha2-alpha1) = (1+d^k)(alpha2-theta2),
// the identity tying the two period-k co-root angles to the period-2k root
// angles of an odd-period component. Representatives must satisfy
// alpha1 < theta1 < theta2 < alpha2 in [0,1).
inline bool checkRootArcRelation(const Angle& theta1, const Angle& theta2, const Angle& alpha1,
                                 const Angle& alpha2, int degree, int k) {
    if (!(alpha1 < theta1 && theta1 < theta2 && theta2 < alpha2))
        throw MulticornError("ordering-violation: need alpha1 < theta1 < theta2 < alpha2");
    BigInt dk = 1;
    for (int i = 0; i < k; ++i) dk *= degree;
    Rational factor(BigInt(dk + 1), BigInt(1));
    Rational lhs = factor * (theta1.rational() - alpha1.rational());
    Rational mid = alpha2.rational() - alpha1.rational();
    Rational rhs = factor * (alpha2.rational() - theta2.rational());
    return lhs == mid && mid == rhs;
}

} // namespace multicorn
