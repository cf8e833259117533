#include <doctest.h>

#include <random>

#include "padic/json_io.hpp"

using namespace padic;

TEST_CASE("scalar round trip") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 30; ++t) {
        long p = (t % 2) ? 3 : 5;
        auto x = PadicScalar::from_rational(
            p, Rational(Int(static_cast<long>(rng() % 5000) - 2500),
                        Int(1 + static_cast<long>(rng() % 50))),
            20 + static_cast<int>(rng() % 20));
        auto back = scalar_from_json(to_json(x));
        CHECK(back.pi_exponent() == x.pi_exponent());
        CHECK(back.rel_prec() == x.rel_prec());
        CHECK(indistinguishable(back, x));
        // byte-stable canonical encoding
        CHECK(to_json(back).dump() == to_json(x).dump());
    }
    auto pi = PadicScalar::pi(3, 2, 12);
    CHECK(indistinguishable(scalar_from_json(to_json(pi)), pi));
    auto z = PadicScalar::zero(7, 9);
    CHECK(scalar_from_json(to_json(z)).is_zero_at_prec());
}

TEST_CASE("cyclo and series round trips") {
    auto e = CycloElement::root(3, 2) + PadicScalar::from_int(3, 4) * CycloElement::root_pow(3, 2, 5);
    auto eb = cyclo_from_json(to_json(e));
    CHECK(indistinguishable(e, eb));

    TruncatedSeries f(3, 9);
    f.set(-2, PadicScalar::from_int(3, 5));
    f.set(0, PadicScalar::from_rational(3, Rational(1, 3)));
    f.set(7, PadicScalar::from_int(3, -11));
    auto fb = series_from_json(3, to_json(f));
    CHECK(fb.tail_order() == 9);
    CHECK((f - fb).is_zero_at_prec());
    CHECK(to_json(fb).dump() == to_json(f).dump());

    auto ex = one_plus_T_pow_int(3, 4);
    auto exb = series_from_json(3, to_json(ex));
    CHECK(exb.exact());
    CHECK((ex - exb).is_zero_at_prec());
}

TEST_CASE("distribution round trip") {
    std::mt19937_64 rng(2);
    LocalDistribution mu(3, 2, 5);
    for (long a = 0; a < mu.classes(); ++a)
        for (int i = 0; i < 5; ++i)
            mu.set_entry(a, i, PadicScalar::from_int(3, Int(static_cast<long>(rng() % 100)), 24));
    auto back = dist_from_json(to_json(mu));
    CHECK(back.indistinguishable_from(mu));
    CHECK(to_json(back).dump() == to_json(mu).dump());
}

TEST_CASE("character round trip and grammar") {
    long p = 3;
    auto c = ContinuousCharacter(SmoothCharacter(p, 2, 1, 1, PadicScalar::from_rational(p, Rational(5, 3))), 2);
    auto back = continuous_from_json(p, to_json(c));
    CHECK(back == c);

    auto ur = parse_character(p, "ur(1/3)");
    CHECK(ur.smooth().unramified_q());
    CHECK(indistinguishable(ur.smooth().at_p(), PadicScalar::from_rational(p, Rational(1, 3))));
    auto q = parse_character(p, "quadratic");
    CHECK(q.smooth().conductor() == 1);
    CHECK(indistinguishable(q.smooth().eval_unit(2).expect_scalar(), -PadicScalar::one(p)));
    auto xq = parse_character(p, "x^2*quadratic");
    CHECK(xq.alg_exp() == 2);
    auto full = parse_character(p, "cond:2;gen:5;at_p:7/3");
    CHECK(full.smooth().conductor() == 2);
    CHECK(full.smooth().j_teich() == 1); // 5 mod 2
    CHECK(full.smooth().j_wild() == 2);  // 5 mod 3
    CHECK_THROWS_AS(parse_character(p, "cond:x"), Error);
    CHECK_THROWS_AS(parse_character(p, "gen:1"), DomainError);
}

TEST_CASE("series parser") {
    auto f = parse_series(3, "3T^2 - T + 5");
    CHECK(indistinguishable(f.coeff(2), PadicScalar::from_int(3, 3)));
    CHECK(indistinguishable(f.coeff(1), PadicScalar::from_int(3, -1)));
    CHECK(indistinguishable(f.coeff(0), PadicScalar::from_int(3, 5)));
    auto g = parse_series(3, "T^-1 + 1/3");
    CHECK(indistinguishable(g.coeff(-1), PadicScalar::one(3)));
    CHECK(g.coeff(0).val().value() == -1);
    auto h = parse_series(3, "T");
    CHECK(indistinguishable(residue_at_zero(psi(h) * parse_series(3, "T^-1")),
                            PadicScalar::from_int(3, -1)));
}

TEST_CASE("elementary function round trip") {
    ElementaryFunction h{5, 0, 1, 0, Rational(3, 25)};
    auto back = elementary_from_json(5, to_json(h));
    CHECK(back.ball_a == h.ball_a);
    CHECK(back.ball_n == h.ball_n);
    CHECK(back.j == h.j);
    CHECK(back.y == h.y);
}
