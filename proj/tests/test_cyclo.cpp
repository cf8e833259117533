#include <doctest.h>

#include "padic/cyclo.hpp"

using namespace padic;

TEST_CASE("reduction mod Phi_3: 1 + X + X^2 = 0") {
    auto e1 = CycloElement::root(3, 1);
    CHECK(indistinguishable(e1 + e1.pow(2), -CycloElement::one(3, 1)));
}

TEST_CASE("root powers and order checks") {
    auto e2 = CycloElement::root(3, 2);
    CHECK(indistinguishable(cyclo_power(e2, 0), CycloElement::one(3, 2)));
    CHECK(indistinguishable(e2.pow(9), CycloElement::one(3, 2)));
    CHECK(!indistinguishable(e2.pow(3), CycloElement::one(3, 2)));
    // residue exponent only defined modulo the order
    CHECK_THROWS_AS(cyclo_power(e2, 1, 3), DomainError);
    CHECK(indistinguishable(cyclo_power(e2, 10, 9), e2));
}

TEST_CASE("tower: (eps^(m+1))^p = eps^(m)") {
    for (long p : {3L, 5L}) {
        auto em = CycloElement::root(p, 1);
        auto em1 = CycloElement::root(p, 2);
        CHECK(indistinguishable(em1.pow(p), em.embed_to(2)));
    }
}

TEST_CASE("tower coherence on a non-monomial element") {
    auto a = CycloElement::root(3, 1) +
             CycloElement::from_scalar(PadicScalar::from_int(3, 5), 1);
    CHECK(indistinguishable(a.embed_to(3), a.embed_to(2).embed_to(3)));
}

TEST_CASE("valuations via resultants") {
    auto e1 = CycloElement::root(3, 1);
    CHECK(cyclo_val(e1 - CycloElement::one(3, 1)).value() == Rational(1, 2));
    CHECK(cyclo_val(CycloElement::one(3, 2)).value() == 0);
    CHECK(cyclo_val(PadicScalar::from_int(3, 3) * CycloElement::root(3, 2)).value() == 1);
    CHECK_THROWS_AS(cyclo_val(CycloElement::zero(3, 1, 8)), PrecisionError);
}

TEST_CASE("rho_h: val(eps^(h+1) - 1) = 1/((p-1)p^h)") {
    for (long p : {3L, 5L}) {
        for (int h = 0; h <= 2; ++h) {
            if (p == 5 && h == 2) continue; // degree 100 resultant, covered at p=3
            auto e = CycloElement::root(p, h + 1);
            Rational expect(1, (p - 1) * pow_long(p, h).get_si());
            CHECK(cyclo_val(e - CycloElement::one(p, h + 1)).value() == expect);
        }
    }
}

TEST_CASE("val is additive on products") {
    auto e2 = CycloElement::root(3, 2);
    auto x = e2 - CycloElement::one(3, 2);
    auto y = PadicScalar::from_int(3, 7) * e2 + CycloElement::one(3, 2);
    CHECK(cyclo_val(x * y).value() == cyclo_val(x).value() + cyclo_val(y).value());
}

TEST_CASE("galois twist permutes roots") {
    auto e2 = CycloElement::root(3, 2);
    CHECK(indistinguishable(e2.galois(5), e2.pow(5)));
    auto mixed = e2 + PadicScalar::from_int(3, 2) * e2.pow(3);
    CHECK(indistinguishable(mixed.galois(2),
                            e2.pow(2) + PadicScalar::from_int(3, 2) * e2.pow(6)));
}
