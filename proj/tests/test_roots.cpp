// Aberth/Ehrlich solver against closed forms and a companion-matrix
// eigenvalue oracle (Eigen, test-side only).

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <vector>

#include "multicorn/roots.hpp"

using namespace multicorn;

namespace {

// Oracle: eigenvalues of the companion matrix of p / leading.
std::vector<Complex> companionRoots(const Polynomial& p) {
    int n = p.degree();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    Complex lead = p.leading();
    for (int i = 0; i < n; ++i) {
        m(i, n - 1) = -p.coeffs()[i] / lead;
        if (i + 1 < n) m(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<Complex> roots;
    for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
    return roots;
}

// Greedy matching distance between two root multisets.
double rootSetDistance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const Complex& x : a) {
        auto best = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) {
            return std::abs(u - x) < std::abs(v - x);
        });
        worst = std::max(worst, std::abs(*best - x));
        b.erase(best);
    }
    return worst;
}

Polynomial fromRoots(const std::vector<Complex>& roots) {
    Polynomial p = Polynomial::constant(1);
    for (Complex r : roots) p = p * Polynomial({-r, Complex(1)});
    return p;
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    Polynomial p({Complex(1), Complex(0), Complex(1)}); // 1 + z^2
    CHECK(std::abs(p(Complex(0, 1))) < 1e-15);
    CHECK(std::abs(p(2.0) - 5.0) < 1e-15);
    auto [v, d] = p.evalWithDerivative(3.0);
    CHECK(std::abs(v - 10.0) < 1e-15);
    CHECK(std::abs(d - 6.0) < 1e-15);

    Polynomial q = p * p;
    CHECK(q.degree() == 4);
    CHECK(std::abs(q(2.0) - 25.0) < 1e-12);
    CHECK(p.pow(3).degree() == 6);
    CHECK((p - p).degree() == 0);
}

TEST_CASE("aberth recovers constructed roots") {
    std::vector<Complex> truth = {{1, 0}, {-2, 0.5}, {0.3, -0.7}, {0, 2}, {-1.5, -1.5}};
    Polynomial p = fromRoots(truth);
    auto roots = aberthRoots(p);
    CHECK(rootSetDistance(roots, truth) < 1e-9);
}

TEST_CASE("aberth matches the companion-matrix oracle") {
    Rng rng(20240817);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Complex> coeffs;
        int deg = 8 + trial * 3;
        for (int i = 0; i <= deg; ++i) coeffs.push_back(rng.inDisk(1.0));
        coeffs.back() += Complex(1.5); // keep the leading coefficient away from 0
        Polynomial p{coeffs};
        auto mine = aberthRoots(p);
        auto oracle = companionRoots(p);
        CAPTURE(trial);
        CHECK(rootSetDistance(mine, oracle) < 1e-7);
    }
}

TEST_CASE("aberth handles z^n - z without deflation") {
    // Fixed-point polynomial of the second iterate at c=0: roots are 0 and
    // the 15th roots of unity.
    std::vector<Complex> coeffs(17, Complex(0));
    coeffs[16] = 1;
    coeffs[1] = -1;
    auto roots = aberthRoots(Polynomial{coeffs});
    REQUIRE(roots.size() == 16);
    std::vector<Complex> truth{Complex(0, 0)};
    for (int j = 0; j < 15; ++j) truth.push_back(std::polar(1.0, kTwoPi * j / 15.0));
    CHECK(rootSetDistance(roots, truth) < 1e-9);
}

TEST_CASE("polishRoot sharpens a perturbed root") {
    Polynomial p = fromRoots({{1, 1}, {2, -1}, {-0.5, 0}});
    Complex rough = Complex(1.001, 0.999);
    Complex polished = polishRoot(p, rough);
    CHECK(std::abs(polished - Complex(1, 1)) < 1e-12);
}
