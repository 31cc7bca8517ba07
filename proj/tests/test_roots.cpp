#include "doctest.h"

#include "weil/error.hpp"
#include "weil/roots.hpp"

#include <cmath>
#include <complex>

using namespace weil;

namespace {

bool box_holds(const RootBox& b, std::complex<double> z, double slack = 1e-12) {
    return b.re_lo.get_d() - slack <= z.real() && z.real() <= b.re_hi.get_d() + slack &&
           b.im_lo.get_d() - slack <= z.imag() && z.imag() <= b.im_hi.get_d() + slack;
}

void check_cyclotomic_like(const Poly& f, const std::vector<std::complex<double>>& roots) {
    RootIsolation iso = isolate_roots(f, Rational(1, 1 << 20));
    REQUIRE(iso.boxes.size() == roots.size());
    for (auto z : roots) {
        int hits = 0;
        for (const auto& b : iso.boxes) hits += box_holds(b, z);
        CHECK(hits == 1);
    }
    for (size_t i = 0; i < iso.boxes.size(); ++i) {
        CHECK(iso.boxes[i].side() <= Rational(1, 1 << 20));
        CHECK(iso.conjugate[iso.conjugate[i]] == i);
        for (size_t j = i + 1; j < iso.boxes.size(); ++j) CHECK_FALSE(iso.boxes[i].intersects(iso.boxes[j]));
    }
}

}  // namespace

TEST_CASE("sturm counts match factored polynomials") {
    Poly f = from_roots({-3, Rational(1, 2), 2, 7});
    CHECK(sturm_count(f) == 4);
    CHECK(sturm_count(f, Rational(0), Rational(2)) == 2);  // (0, 2] holds 1/2 and 2
    CHECK(sturm_count(f, Rational(2), Rational(7)) == 1);
    CHECK(sturm_count(f * Poly{1, 0, 1}) == 4);
    CHECK_THROWS_AS(SturmSequence(f * f), Error);
}

TEST_CASE("root bound") {
    Poly f = from_roots({-100, 3});
    Rational b = root_bound(f);
    CHECK(b > 100);
    CHECK(sturm_count(f, -b, b) == 2);
}

TEST_CASE("isolating boxes for roots of unity") {
    const double pi = std::acos(-1.0);
    for (int n : {3, 4, 5, 8}) {
        // x^n - 1
        std::vector<Rational> c(static_cast<size_t>(n + 1));
        c[0] = -1;
        c[static_cast<size_t>(n)] = 1;
        std::vector<std::complex<double>> roots;
        for (int k = 0; k < n; ++k) roots.push_back(std::polar(1.0, 2 * pi * k / n));
        check_cyclotomic_like(Poly(c), roots);
    }
    // x^4 + 1
    std::vector<std::complex<double>> r8;
    for (int k : {1, 3, 5, 7}) r8.push_back(std::polar(1.0, pi * k / 4));
    check_cyclotomic_like(Poly{1, 0, 0, 0, 1}, r8);
}

TEST_CASE("refinement nests and keeps the order") {
    Poly f{-1, 0, -1, 0, 1};  // x^4 - x^2 - 1
    RootIsolation a = isolate_roots(f, Rational(1, 16));
    RootIsolation b = isolate_roots(f, Rational(1, 1 << 30));
    REQUIRE(a.boxes.size() == b.boxes.size());
    CHECK(a.real_count() == 2);
    for (size_t i = 0; i < a.boxes.size(); ++i) {
        CHECK(a.boxes[i].contains(b.boxes[i]));
        CHECK(a.boxes[i].is_real == b.boxes[i].is_real);
    }
    // canonical order: ascending real part
    for (size_t i = 0; i + 1 < b.boxes.size(); ++i) CHECK(b.boxes[i].re_lo <= b.boxes[i + 1].re_hi);
}

TEST_CASE("equal real parts are ordered by imaginary part") {
    Poly f = Poly{1, 0, 1} * Poly{4, 0, 1};  // roots +-i, +-2i
    RootIsolation iso = isolate_roots(f, Rational(1, 64));
    REQUIRE(iso.boxes.size() == 4);
    CHECK(iso.boxes[0].center().im < -1);
    CHECK(iso.boxes[3].center().im > 1);
    CHECK(iso.conjugate[0] == 3);
}

TEST_CASE("root approximations and sign at a real root") {
    auto z = root_approximations(Poly{-2, 0, 1}, 30);
    REQUIRE(z.size() == 2);
    Rational err = z[1].re * z[1].re - 2;
    CHECK(abs(err) < Rational(1, 1000000) * Rational(1, 1000000) * Rational(1, 1000000));
    CHECK(sign_at_real_root(Poly({Rational(-3, 2), Rational(1)}), Poly{-2, 0, 1}, 1, 2) == -1);
    CHECK(sign_at_real_root(Poly{-2, 0, 1}, Poly{-2, 0, 1}, 1, 2) == 0);
    CHECK(sign_at_real_root(Poly{-1, 1}, Poly{-2, 0, 1}, 1, 2) == 1);
}
