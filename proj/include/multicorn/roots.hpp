#pragma once
// Dense complex polynomials and a simultaneous-iteration root finder
// (Aberth/Ehrlich). No deflation: all roots are refined together, which keeps
// clustered roots honest at the cost of O(n^2) per sweep.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "common.hpp"

namespace multicorn {

// coeffs[i] is the coefficient of z^i. Trailing zero coefficients trimmed.
class Polynomial {
  public:
    Polynomial() : coeffs_(1, Complex(0)) {}
    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial identity() { return Polynomial({Complex(0), Complex(1)}); }
    static Polynomial constant(Complex v) { return Polynomial({v}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex leading() const { return coeffs_.back(); }

    Complex operator()(Complex z) const {
        Complex acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
        return acc;
    }

    // Value and derivative in one Horner pass.
    std::pair<Complex, Complex> evalWithDerivative(Complex z) const {
        Complex p = coeffs_.back(), dp = 0;
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs_[i];
        }
        return {p, dp};
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial();
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * double(i);
        return Polynomial(std::move(d));
    }

    Polynomial operator*(const Polynomial& o) const {
        std::vector<Complex> out(coeffs_.size() + o.coeffs_.size() - 1, Complex(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == Complex(0)) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                out[i + j] += coeffs_[i] * o.coeffs_[j];
        }
        return Polynomial(std::move(out));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()), Complex(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
        return Polynomial(std::move(out));
    }

    Polynomial operator-(const Polynomial& o) const {
        std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()), Complex(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
        return Polynomial(std::move(out));
    }

    Polynomial operator+(Complex v) const {
        std::vector<Complex> out = coeffs_;
        out[0] += v;
        return Polynomial(std::move(out));
    }

    Polynomial pow(int e) const {
        Polynomial acc = Polynomial::constant(1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = (e >>= 1) ? base * base : base;
        }
        return acc;
    }

  private:
    void trim() {
        while (coeffs_.size() > 1 && std::abs(coeffs_.back()) == 0.0) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.assign(1, Complex(0));
    }

    std::vector<Complex> coeffs_;
};

struct AberthOptions {
    int maxSweeps = 400;
    double tolerance = Defaults::convergence_tol;
    std::uint64_t seed = 0x6d756c7469636f72ull; // initial-guess phase jitter
};

// All complex roots of p, refined simultaneously. Multiple roots come back as
// clusters accurate to roughly sqrt(eps); callers that care (parabolic
// centers) must deduplicate downstream.
inline std::vector<Complex> aberthRoots(const Polynomial& p, AberthOptions opt = {}) {
    int n = p.degree();
    if (n <= 0) return {};
    double lead = std::abs(p.leading());
    if (lead == 0.0) throw MulticornError("aberthRoots: zero leading coefficient");

    // Cauchy bound on root modulus.
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.coeffs()[i]) / lead);
    bound += 1.0;

    // Initial guesses on a slightly eccentric spiral; the irrational phase
    // step keeps symmetric polynomials from locking the iteration.
    std::vector<Complex> z(n);
    Rng rng(opt.seed);
    double phase0 = kTwoPi * rng.uniform();
    for (int i = 0; i < n; ++i) {
        double r = bound * (0.6 + 0.4 * (i + 0.5) / n);
        double a = phase0 + kTwoPi * (i + 0.26) / n + 0.4 * std::sin(7.0 * i + 1.0) / n;
        z[i] = Complex(r * std::cos(a), r * std::sin(a));
    }

    std::vector<Complex> wOverOne(n);
    for (int sweep = 0; sweep < opt.maxSweeps; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            auto [pv, dv] = p.evalWithDerivative(z[i]);
            if (std::abs(pv) == 0.0) {
                wOverOne[i] = 0;
                continue;
            }
            Complex w = (dv == Complex(0)) ? Complex(1e-30) : pv / dv;
            Complex s = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 1e-300);
                s += 1.0 / diff;
            }
            Complex denom = 1.0 - w * s;
            Complex step = (std::abs(denom) < 1e-300) ? w : w / denom;
            wOverOne[i] = step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        for (int i = 0; i < n; ++i) z[i] -= wOverOne[i];
        if (worst < opt.tolerance) break;
    }
    return z;
}

// Newton refinement of a simple root; returns refined root or the input if
// the iteration stalls.
inline Complex polishRoot(const Polynomial& p, Complex z0,
                          double tol = Defaults::convergence_tol, int maxIter = 60) {
    Complex z = z0;
    for (int i = 0; i < maxIter; ++i) {
        auto [pv, dv] = p.evalWithDerivative(z);
        if (std::abs(dv) < 1e-300) break;
        Complex step = pv / dv;
        z -= step;
        if (std::abs(step) < tol * std::max(1.0, std::abs(z))) break;
    }
    return finite(z) ? z : z0;
}

} // namespace multicorn
