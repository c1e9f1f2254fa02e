#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kc/torus.hpp"

#include <random>

using namespace kc;

TEST_CASE("scalar multiply examples") {
    // M_2 of (0.5, 3.5) = (0, 1)
    TorusPoint t({Rational(1, 2), Rational(7, 2)});
    TorusPoint m2 = scalar_multiply(t, Scalar::two);
    CHECK(m2.level(0) == Rational(0));
    CHECK(m2.level(1) == Rational(1));

    // M_{1/3} of (1/2, 7/2, 19/2) = (1/6, 7/6)
    TorusPoint t2({Rational(1, 2), Rational(7, 2), Rational(19, 2)});
    TorusPoint third = scalar_multiply(t2, Scalar::third);
    CHECK(third.depth() == 1);
    CHECK(third.level(0) == Rational(1, 6));
    // by M_{1/a} = M_{6/a}(t_1/6, t_2/6, ...): level 1 is t_2/3 mod 6
    CHECK(third.level(1) == Rational(19, 6));
    // M_3 recovers the original on the shared depth
    TorusPoint back = scalar_multiply(third, Scalar::three);
    CHECK(back.level(0) == Rational(1, 2));
    CHECK(back.level(1) == Rational(7, 2));

    CHECK_THROWS_AS(scalar_multiply(TorusPoint::zero(0), Scalar::half), DepthExhausted);
}

TEST_CASE("scalar add examples") {
    TorusPoint t({Rational(1, 4), Rational(17, 4)});
    TorusPoint r = scalar_add(t, Rational(3, 2));
    CHECK(r.level(0) == Rational(3, 4));
    CHECK(r.level(1) == Rational(23, 4));
    CHECK(scalar_add(t, Rational(0)) == t);
    CHECK(scalar_add(scalar_add(t, Rational(1)), Rational(-1)) == t);
}

TEST_CASE("consistency holds under random operation sequences") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> op(0, 5);
    std::uniform_int_distribution<long> rnum(-20, 20);
    std::uniform_int_distribution<long> rden(1, 20);
    for (int trial = 0; trial < 300; ++trial) {
        TorusPoint t = TorusPoint::from_value(8, Rational(rnum(rng) + 40, rden(rng)));
        REQUIRE(t.consistent());
        for (int step = 0; step < 350; ++step) {
            switch (op(rng)) {
                case 0: t = scalar_multiply(t, Scalar::two); break;
                case 1: t = scalar_multiply(t, Scalar::three); break;
                case 2:
                    if (t.depth() >= 1) t = scalar_multiply(t, Scalar::half);
                    break;
                case 3:
                    if (t.depth() >= 1) t = scalar_multiply(t, Scalar::third);
                    break;
                default: {
                    Rational r(rnum(rng), rden(rng));
                    r.canonicalize();
                    t = scalar_add(t, r);
                }
            }
            REQUIRE(t.consistent());
            if (t.depth() == 0) break;
        }
    }
}

TEST_CASE("M_a are bijective on a fixed depth and homomorphic") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> rnum(0, 1000);
    for (int i = 0; i < 300; ++i) {
        TorusPoint t = TorusPoint::from_value(5, Rational(rnum(rng), 7));
        TorusPoint s = TorusPoint::from_value(5, Rational(rnum(rng), 11));
        // M_{1/a} o M_a = id (depth drops by one)
        TorusPoint t4 = TorusPoint::from_value(4, t.level(4));
        CHECK(scalar_multiply(scalar_multiply(t, Scalar::two), Scalar::half) == t4);
        CHECK(scalar_multiply(scalar_multiply(t, Scalar::three), Scalar::third) == t4);
        // homomorphism over level-wise addition
        CHECK(scalar_multiply(torus_add(t, s), Scalar::two) ==
              torus_add(scalar_multiply(t, Scalar::two), scalar_multiply(s, Scalar::two)));
        CHECK(scalar_multiply(torus_add(t, s), Scalar::three) ==
              torus_add(scalar_multiply(t, Scalar::three),
                        scalar_multiply(s, Scalar::three)));
    }
}

TEST_CASE("fhat branches and inverse") {
    TorusPoint t = TorusPoint::from_value(3, Rational(5, 7));
    // (1/2, t) -> (1, 2t)
    SkewState a(Angle(Rational(1, 2)), t);
    SkewState fa = fhat(a);
    CHECK(fa.alpha == Angle(Rational(1)));
    CHECK(fa.phase == scalar_multiply(t, Scalar::two));
    // (1, t) -> (1/3, t/3)
    SkewState b(Angle(Rational(1)), t);
    SkewState fb = fhat(b);
    CHECK(fb.alpha == Angle(Rational(1, 3)));
    CHECK(fb.phase == scalar_multiply(t, Scalar::third));
    // variant branch doubles at 1
    SkewState fbv = fhat(b, true);
    CHECK(fbv.alpha == Angle(Rational(2)));
    // fhat_inverse(1/2, t) = (3/2, 3t): unique preimage since 1/4 is out of range
    SkewState inv = fhat_inverse(a);
    CHECK(inv.alpha == Angle(Rational(3, 2)));
    CHECK(inv.phase == scalar_multiply(t, Scalar::three));
    // round trips on the shared depth
    SkewState rt = fhat_inverse(fhat(a));
    CHECK(rt.alpha == a.alpha);
    CHECK(rt.phase.level(0) == a.phase.level(0));
    CHECK(rt.phase.level(1) == a.phase.level(1));
    CHECK_THROWS_AS(fhat(SkewState(Angle(Rational(3)), t)), AngleOutOfRange);
    CHECK_THROWS_AS(fhat_inverse(SkewState(Angle(Rational(2)), t)), AngleOutOfRange);
    // the seam 2/3 resolves to the doubling preimage 1/3
    SkewState seam = fhat_inverse(SkewState(Angle(Rational(2, 3)), t));
    CHECK(seam.alpha == Angle(Rational(1, 3)));
    CHECK(fhat(seam).alpha == Angle(Rational(2, 3)));
}

TEST_CASE("that advances the phase by alpha") {
    SkewState s(Angle(Rational(1, 2)), TorusPoint::zero(0));
    SkewState t1 = that(s);
    CHECK(t1.phase.level(0) == Rational(1, 2));
    SkewState t2 = that(t1);
    CHECK(t2.phase.level(0) == Rational(0));

    SkewState deep(Angle(Rational(3, 2)), TorusPoint({Rational(1, 4), Rational(9, 4)}));
    SkewState td = that(deep);
    CHECK(td.phase.level(0) == Rational(3, 4));
    CHECK(td.phase.level(1) == Rational(15, 4));

    // surd angles: supported at level 0 only
    Angle surd = Angle::surd(1, 1, 2, 2);  // (1+sqrt2)/2 ~ 1.207
    SkewState ss(surd, TorusPoint::zero(0));
    SkewState st = that(ss);
    CHECK(st.alpha_coeff == 1);
    // level-0 value is alpha - 1 in [0,1): rational part -1
    CHECK(st.surd_off == Rational(-1));
    SkewState st2 = that(st);
    CHECK(st2.alpha_coeff == 2);
    // 2*alpha = 1 + sqrt(2) = 2.41..: rational part -2
    CHECK(st2.surd_off == Rational(-2));
    SkewState deep_surd(surd, TorusPoint::zero(2));
    CHECK_THROWS_AS(that(deep_surd), std::domain_error);
}

TEST_CASE("serialization round trip is bit exact") {
    TorusPoint t({Rational(1, 3), Rational(13, 3), Rational(49, 3)});
    std::string s = t.serialize();
    CHECK(s == "2;1/3;13/3;49/3");
    CHECK(TorusPoint::deserialize(s) == t);
    CHECK_THROWS_AS(TorusPoint::deserialize("1;1/2"), std::invalid_argument);
    CHECK_THROWS_AS(TorusPoint::deserialize("1;1/2;1/3"), std::invalid_argument);
}
