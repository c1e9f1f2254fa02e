#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kc/angle.hpp"
#include "kc/logexpr.hpp"

#include <cmath>
#include <random>

using namespace kc;

TEST_CASE("valuation basics") {
    CHECK(valuation(Rational(12), 2) == -2);
    CHECK(valuation(Rational(8, 9), 3) == 2);
    CHECK(valuation(Rational(1), 5) == 0);
    CHECK_THROWS_AS(valuation(Rational(0), 2), std::domain_error);
}

TEST_CASE("valuation is additive over products") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-500, 500);
    std::uniform_int_distribution<long> den(1, 500);
    for (int i = 0; i < 2000; ++i) {
        long a = num(rng), b = num(rng);
        if (a == 0 || b == 0) continue;
        Rational x(a, den(rng)), y(b, den(rng));
        x.canonicalize();
        y.canonicalize();
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            CHECK(valuation(x * y, p) == valuation(x, p) + valuation(y, p));
        }
    }
}

TEST_CASE("floor_affine on rationals and surds") {
    CHECK(floor_affine(Angle(Rational(3, 2)), 2, Rational(0)) == 3);
    // sqrt(2)/2: floor(3 * sqrt2/2) = floor(2.121...) = 2
    Angle r2half = Angle::surd(0, 1, 2, 2);
    CHECK(floor_affine(r2half, 3, Rational(0)) == 2);
    CHECK(floor_affine(Angle(Rational(1, 2)), -1, Rational(1, 4)) == -1);
    CHECK(ceil_affine(Angle(Rational(1, 2)), -1, Rational(1, 4)) == 0);
    // ceil(x) = -floor(-x) on integers too
    CHECK(ceil_affine(Angle(Rational(1, 2)), 2, Rational(0)) == 1);
}

TEST_CASE("floor_affine agrees with a double-precision estimate when safe") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pq(-40, 40);
    std::uniform_int_distribution<long> dpick(0, 4);
    const long ds[] = {2, 3, 5, 6, 7};
    std::uniform_int_distribution<long> rr(1, 12);
    std::uniform_int_distribution<long> nn(-50, 50);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        long p = pq(rng), q = pq(rng);
        if (q == 0) continue;
        Angle a = Angle::surd(p, q, ds[dpick(rng)], rr(rng));
        long n = nn(rng);
        Rational t(pq(rng), rr(rng));
        t.canonicalize();
        Int f = floor_affine(a, n, t);
        double approx = n * a.to_double() + t.get_d();
        // only check when the estimate is far from an integer
        if (std::abs(approx - std::round(approx)) > 1e-6) {
            CHECK(f == Int(static_cast<long>(std::floor(approx))));
            ++checked;
        }
    }
    CHECK(checked > 8000);
}

TEST_CASE("angle parsing round-trips") {
    for (const char* s : {"3/2", "-7/3", "2", "(1+1*sqrt(2))/2", "(0+1*sqrt(6))/3",
                          "(-1+2*sqrt(5))/7"}) {
        Angle a = Angle::parse(s);
        Angle b = Angle::parse(a.str());
        CHECK(a == b);
    }
    CHECK(Angle::parse("sqrt(2)/2") == Angle::surd(0, 1, 2, 2));
    // square factors are pulled out of d
    CHECK(Angle::surd(0, 1, 8, 2) == Angle::surd(0, 2, 2, 2));
    CHECK(Angle::surd(3, 0, 7, 6) == Angle(Rational(1, 2)));
}

TEST_CASE("exact surd comparison") {
    Angle golden = Angle::surd(1, 1, 5, 2);  // (1+sqrt5)/2 = 1.618...
    CHECK(golden.compare(Rational(8, 5)) > 0);
    CHECK(golden.compare(Rational(13, 8)) < 0);
    CHECK(golden.compare(Rational(1618033988749894848l, 1000000000000000000l)) > 0);
    Angle r2 = Angle::surd(0, 1, 2, 1);
    CHECK((r2 * Rational(r2.surd_d())).compare(Rational(0)) > 0);
    CHECK((golden - golden).sign() == 0);
}

TEST_CASE("rnd_alpha simplifies to floor/ceil at the interval ends") {
    // phi(1/3) = 0: interval is (n, n+1), so rnd = floor on non-integers
    CHECK(rnd_alpha(Angle(Rational(1, 3)), Rational(1, 2)) == 0);
    CHECK(rnd_alpha(Angle(Rational(1, 3)), Rational(3, 2)) == 1);
    // phi(2) = 1: interval is (n-1, n), so rnd = ceil on non-integers
    CHECK(rnd_alpha(Angle(Rational(2)), Rational(1, 2)) == 1);
    // exact endpoint: x integer at alpha = 1/3 is undefined
    CHECK_THROWS_AS(rnd_alpha(Angle(Rational(1, 3)), Rational(1)), EndpointAmbiguity);
    // sqrt(6)/3 has phi = 1/2 exactly, so x = 1/2 is an endpoint
    CHECK_THROWS_AS(rnd_alpha(Angle::surd(0, 1, 6, 3), Rational(1, 2)), EndpointAmbiguity);
    // ... but nearby values are fine
    CHECK(rnd_alpha(Angle::surd(0, 1, 6, 3), Rational(49, 100)) == 0);
    CHECK(rnd_alpha(Angle::surd(0, 1, 6, 3), Rational(51, 100)) == 1);
}

TEST_CASE("phi conjugacy endpoints and value at 1") {
    CHECK(phi_conjugacy(Angle(Rational(1, 3))) == doctest::Approx(0.0));
    CHECK(phi_conjugacy(Angle(Rational(2))) == doctest::Approx(1.0));
    CHECK(phi_conjugacy(Angle(Rational(1))) ==
          doctest::Approx(std::log(3.0) / std::log(6.0)).epsilon(1e-12));
    CHECK_THROWS_AS(phi_conjugacy(Angle(Rational(3))), std::domain_error);
    // phi o phi^{-1} = id
    for (double y : {0.0, 0.1, 0.5, 0.61, 0.99, 1.0}) {
        double x = phi_inverse(y);
        Rational xr(static_cast<long>(std::llround(x * 1e15)), 1000000000000000l);
        xr.canonicalize();
        if (xr < Rational(1, 3)) xr = Rational(1, 3);
        if (xr > 2) xr = Rational(2);
        CHECK(phi_conjugacy(Angle(xr)) == doctest::Approx(y).epsilon(1e-9));
    }
}

TEST_CASE("phi conjugates f to rotation by log2/log6") {
    // phi(f(x)) = phi(x) + log2/log6 mod 1 to 1e-12
    const double rot = std::log(2.0) / std::log(6.0);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(1, 600);
    for (int i = 0; i < 200; ++i) {
        long n = num(rng);
        Rational x(n, 300);
        x.canonicalize();
        if (x < Rational(1, 3) || x > 2) continue;
        Angle a(x);
        double before = phi_conjugacy(a);
        bool doubling = a.compare(Rational(1)) < 0;
        Angle fa = a * (doubling ? Rational(2) : Rational(1, 3));
        double after = phi_conjugacy(fa);
        double delta = after - before - rot;
        delta -= std::round(delta);
        CHECK(std::abs(delta) < 1e-12);
    }
}

TEST_CASE("LogLinear exact rationality detection") {
    // log(8/9)/log6 + ... : 3*log2 - 2*log3 over log6 is not rational
    LogLinear v = LogLinear::log_term(Rational(8, 9), Rational(1));
    CHECK_FALSE(v.equals_rational(Rational(0)));
    // log(6^3)/log6 == 3
    LogLinear w = LogLinear::log_term(Rational(216), Rational(1));
    CHECK(w.equals_rational(Rational(3)));
    // log(12)/log6 + log(3)/log6 == log(36)/log6 == 2
    LogLinear u = LogLinear::log_term(Rational(12), Rational(1)) +
                  LogLinear::log_term(Rational(3), Rational(1));
    CHECK(u.equals_rational(Rational(2)));
    CHECK_FALSE(u.equals_rational(Rational(3)));
}

TEST_CASE("floor_strict refines until certain") {
    // value very close to an integer but provably not equal:
    // log(2^100 + 1)/log(2^100) scaled... keep it simple: floor of
    // log(7)/log(6) = 1.08...
    LogLinear v = LogLinear::log_term(Rational(7), Rational(1));
    CHECK(v.floor_strict() == 1);
    LogLinear w = LogLinear::log_term(Rational(36), Rational(1));
    CHECK_THROWS_AS(w.floor_strict(), EndpointAmbiguity);
}
