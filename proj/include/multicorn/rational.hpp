#pragma once
// Exact rational arithmetic and circle angles for the antiholomorphic angle
// map t |-> -d*t (mod 1). All angle combinatorics in the library is exact;
// doubles appear only at the boundary (plotting, ray seeds).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace multicorn {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction with positive denominator. Not restricted to [0,1);
// circle normalization lives in Angle.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
    // NOLINTNEXTLINE(google-explicit-constructor) integers embed naturally
    Rational(long long v) : num_(v), den_(1) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
    }
    Rational operator-(const Rational& o) const {
        return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
    }
    Rational operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }

    // Representative shifted into [0, 1).
    Rational mod1() const {
        BigInt n = num_ % den_;
        if (n < 0) n += den_;
        return {n, den_};
    }

    double toDouble() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

  private:
    void reduce() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_ == 0) throw MulticornError("Rational: zero denominator");
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

// External angle: reduced p/q with 0 <= p < q. Ordering is circle order via
// the [0,1) representative.
class Angle {
  public:
    Angle() : value_(0, 1) {}
    explicit Angle(Rational r) : value_(r.mod1()) {}
    Angle(long long num, long long den) : value_(Rational(num, den).mod1()) {}

    const BigInt& num() const { return value_.num(); }
    const BigInt& den() const { return value_.den(); }
    const Rational& rational() const { return value_; }

    bool operator==(const Angle& o) const { return value_ == o.value_; }
    bool operator!=(const Angle& o) const { return !(*this == o); }
    bool operator<(const Angle& o) const { return value_ < o.value_; }

    double toDouble() const { return value_.toDouble(); }
    std::string str() const { return value_.str(); }

    // Parses "p/q" or a bare integer.
    static std::optional<Angle> parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Angle(Rational(BigInt(text), BigInt(1)));
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Angle(Rational(std::move(num), std::move(den)));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

  private:
    Rational value_;
};

// (-d * t) mod 1, exact.
inline Angle antiMultiply(const Angle& t, int degree) {
    return Angle(t.rational() * Rational(-degree));
}

// (m * t) mod 1 for any integer m (holomorphic counterpart used by oracles).
inline Angle multiplyAngle(const Angle& t, long long m) {
    return Angle(t.rational() * Rational(m));
}

struct AngleOrbit {
    std::vector<Angle> angles; // preperiodic tail then one full period
    int preperiod = 0;
    int period = 1;
};

// Orbit of t under t |-> -d*t until the first repeat. The first repeated
// entry occurs exactly at index preperiod + period.
inline AngleOrbit angleOrbit(const Angle& t, int degree) {
    AngleOrbit orbit;
    std::vector<Angle> seen;
    Angle cur = t;
    for (;;) {
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i] == cur) {
                orbit.preperiod = static_cast<int>(i);
                orbit.period = static_cast<int>(seen.size() - i);
                orbit.angles = std::move(seen);
                return orbit;
            }
        }
        seen.push_back(cur);
        cur = antiMultiply(cur, degree);
    }
}

// (preperiod, period) of t under t |-> -d*t.
inline std::pair<int, int> exactPeriod(const Angle& t, int degree) {
    AngleOrbit orbit = angleOrbit(t, degree);
    return {orbit.preperiod, orbit.period};
}

} // namespace multicorn
