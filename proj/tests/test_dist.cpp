#include <doctest.h>

#include <random>

#include "padic/dist.hpp"

using namespace padic;

namespace {

LocalDistribution rand_full(long p, int h, int M, std::mt19937_64& rng, int rel = 48) {
    LocalDistribution mu(p, h, M);
    for (long a = 0; a < mu.classes(); ++a)
        for (int i = 0; i < M; ++i)
            mu.set_entry(a, i,
                         PadicScalar::from_int(p, Int(static_cast<long>(rng() % 4000) - 2000), rel));
    return mu;
}

CharacterPair pair33() {
    long p = 3;
    return CharacterPair(
        SmoothCharacter::unramified(p, PadicScalar::from_rational(p, Rational(1, 3))),
        SmoothCharacter::unramified(p, PadicScalar::from_rational(p, Rational(-1, 3))), 3);
}

} // namespace

TEST_CASE("integration against point masses") {
    long p = 3;
    auto d5 = LocalDistribution::dirac(p, 5, 2, 8);
    CHECK(indistinguishable(integrate(d5, LocalFunction::constant_one(p)).expect_scalar(),
                            PadicScalar::one(p)));
    CHECK(indistinguishable(integrate(d5, LocalFunction::z_pow(p, 2)).expect_scalar(),
                            PadicScalar::from_int(p, 25)));
    auto eta = CycloElement::root(p, 2);
    CHECK(indistinguishable(integrate_zpow_root(d5, 0, eta, 2), eta.pow(5)));
    // class-aliased point: dirac at 17 lives on class 8 mod 9
    auto d17 = LocalDistribution::dirac(p, 17, 2, 8);
    CHECK(indistinguishable(integrate(d17, LocalFunction::z_pow(p, 1)).expect_scalar(),
                            PadicScalar::from_int(p, 17)));
    CHECK_THROWS_AS(integrate(d5, LocalFunction::z_pow(p, 9)), DegreeError);
    CHECK_THROWS_AS(integrate(LocalDistribution::dirac(p, 1, 1, 8),
                              LocalFunction::z_pow(p, 0).with_twist(eta, 2)),
                    LevelError);
}

TEST_CASE("LA norms") {
    long p = 3;
    auto d0 = LocalDistribution::dirac(p, 0, 2, 6);
    CHECK(d0.norm_la().value() == 0);
    CHECK(d0.scale(PadicScalar::from_int(p, 3)).norm_la().value() == 1);
    std::mt19937_64 rng(1);
    auto mu = rand_full(p, 2, 6, rng);
    CHECK(dist_gamma(PadicScalar::from_int(p, 2, 40), mu).norm_la().value() ==
          mu.norm_la().value());
}

TEST_CASE("gamma transports point masses") {
    long p = 3;
    auto a = PadicScalar::from_int(p, 2, 40);
    auto d5 = LocalDistribution::dirac(p, 5, 2, 8);
    CHECK(dist_gamma(a, d5).indistinguishable_from(LocalDistribution::dirac(p, 10, 2, 8)));
    std::mt19937_64 rng(2);
    auto mu = rand_full(p, 2, 8, rng);
    CHECK(dist_gamma(PadicScalar::one(p, 40), mu).indistinguishable_from(mu));
    CHECK_THROWS_AS(dist_gamma(PadicScalar::from_int(p, 2, 2), mu), PrecisionError);
}

TEST_CASE("phi and psi") {
    long p = 3;
    std::mt19937_64 rng(3);
    auto mu = rand_full(p, 2, 8, rng);
    CHECK(dist_psi(dist_phi(mu)).indistinguishable_from(mu));
    CHECK(dist_phi(dist_psi(mu)).indistinguishable_from(dist_res(mu, 1, {0})));
    CHECK(dist_psi(LocalDistribution::dirac(p, 15, 2, 8))
              .indistinguishable_from(LocalDistribution::dirac(p, 5, 1, 8)));
    CHECK(dist_psi(LocalDistribution::dirac(p, 7, 2, 8))
              .indistinguishable_from(LocalDistribution(p, 1, 8)));
    CHECK(dist_phi(LocalDistribution::dirac(p, 5, 2, 8))
              .indistinguishable_from(LocalDistribution::dirac(p, 15, 3, 8)));
    CHECK_THROWS_AS(dist_psi(LocalDistribution(p, 0, 4)), LevelError);
}

TEST_CASE("restriction partitions and support") {
    long p = 3;
    std::mt19937_64 rng(4);
    auto mu = rand_full(p, 2, 6, rng);
    CHECK(dist_res(mu, 0, {0}).indistinguishable_from(mu)); // restriction to Z_p
    LocalDistribution acc(p, 2, 6);
    for (long a = 0; a < mu.classes(); ++a) acc = acc + dist_res(mu, 2, {a});
    CHECK(acc.indistinguishable_from(mu));
    auto units = dist_res_units(mu);
    CHECK(supported_on_units(units));
    CHECK(dist_psi(units).indistinguishable_from(LocalDistribution(p, 1, 6)));
    CHECK_THROWS_AS(dist_res(mu, 3, {0}), LevelError);
}

TEST_CASE("amice on point masses and degree guard") {
    long p = 3;
    auto d0 = LocalDistribution::dirac(p, 0, 2, 8);
    CHECK((amice(d0, 7) - TruncatedSeries::one(p).restrict_tail(7)).is_zero_at_prec());
    auto d5 = LocalDistribution::dirac(p, 5, 2, 8);
    CHECK((amice(d5, 7) - one_plus_T_pow_int(p, 5).restrict_tail(7)).is_zero_at_prec());
    CHECK_THROWS_AS(amice(d5, 8), DegreeError);
}

TEST_CASE("amice intertwines gamma and phi") {
    long p = 3;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        auto mu = rand_full(p, 2, 12, rng);
        auto am = amice(mu, 11);
        auto a = PadicScalar::from_int(p, 2 + 3 * static_cast<long>(rng() % 5), 40);
        CHECK((amice(dist_gamma(a, mu), 11) - gamma_act(a, am, 11)).is_zero_at_prec());
        CHECK((amice(dist_phi(mu), 11) - frobenius_phi(am, 11).restrict_tail(11))
                  .is_zero_at_prec());
    }
}

TEST_CASE("amice intertwines psi on point-mass combinations") {
    long p = 3;
    std::mt19937_64 rng(6);
    for (int t = 0; t < 5; ++t) {
        LocalDistribution mu(p, 2, 12);
        TruncatedSeries exact = TruncatedSeries::zero(p);
        for (int pts = 0; pts < 4; ++pts) {
            long c = static_cast<long>(rng() % 27);
            auto w = PadicScalar::from_int(p, Int(static_cast<long>(rng() % 200) - 100), 48);
            mu = mu + LocalDistribution::dirac(p, c, 2, 12).scale(w);
            exact = exact + w * one_plus_T_pow_int(p, c);
        }
        CHECK((amice(mu, 11) - exact.restrict_tail(11)).is_zero_at_prec());
        CHECK((amice(dist_psi(mu), 11) - psi(exact).restrict_tail(11)).is_zero_at_prec());
    }
}

TEST_CASE("support equivalence: psi = 0 iff concentrated on units") {
    long p = 3;
    // unit-supported point masses have psi(amice) = 0 exactly
    LocalDistribution mu(p, 2, 10);
    mu = mu + LocalDistribution::dirac(p, 4, 2, 10);
    mu = mu + LocalDistribution::dirac(p, 8, 2, 10).scale(PadicScalar::from_int(p, -3));
    CHECK(supported_on_units(mu));
    auto exact = one_plus_T_pow_int(p, 4) -
                 PadicScalar::from_int(p, 3) * one_plus_T_pow_int(p, 8);
    CHECK(psi(exact).is_zero_at_prec());
    CHECK(dist_psi(mu).indistinguishable_from(LocalDistribution(p, 1, 10)));
    // and conversely a mass at a non-unit breaks both
    auto bad = mu + LocalDistribution::dirac(p, 6, 2, 10);
    CHECK(!supported_on_units(bad));
    CHECK(!dist_psi(bad).indistinguishable_from(LocalDistribution(p, 1, 10)));
    CHECK(!psi(exact + one_plus_T_pow_int(p, 6)).is_zero_at_prec());
}

TEST_CASE("Amice norm inequalities on the window") {
    long p = 3;
    std::mt19937_64 rng(7);
    int h = 2;
    for (int t = 0; t < 10; ++t) {
        auto mu = rand_full(p, h, 12, rng);
        auto A = amice(mu, 11);
        Rational mid = mu.norm_la().value();
        auto left = sup_norm_rho(A, h);
        CHECK(!(left.min_exponent < mid)); // every window term obeys ||A|| <= ||mu||
    }
}

TEST_CASE("w-involution") {
    long p = 3;
    auto pr = pair33();
    int h = 2, M = 8;
    SUBCASE("point mass formula") {
        Int aa = 5;
        auto da = LocalDistribution::dirac(p, aa, h, M);
        auto w1 = w_involution(da, pr, WSide::Alpha);
        PadicScalar sign = pr.beta().eval_unit(-1).expect_scalar();
        auto dav = pr.delta_alpha().eval(PadicScalar::from_int(p, aa)).expect_scalar();
        PadicScalar fac = -(sign * dav); // (-1)^k = -1 here
        Int s = inv_mod(aa, pow_long(p, h));
        LocalDistribution expect(p, h, M);
        PadicScalar base = (PadicScalar::from_rational(p, Rational(1, 5), 60) -
                            PadicScalar::from_int(p, s, 60)) /
                           PadicScalar::from_int(p, 9, 60);
        for (int i = 0; i < M; ++i) expect.set_entry(s.get_si(), i, fac * base.pow(i));
        CHECK(w1.indistinguishable_from(expect));
    }
    SUBCASE("involution and norm preservation") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 4; ++t) {
            auto mu = dist_res_units(rand_full(p, h, M, rng));
            auto wmu = w_involution(mu, pr, WSide::Alpha);
            CHECK(wmu.norm_la().value() == mu.norm_la().value());
            CHECK(w_involution(wmu, pr, WSide::Alpha).indistinguishable_from(mu));
            auto wb = w_involution(mu, pr, WSide::Beta);
            CHECK(w_involution(wb, pr, WSide::Beta).indistinguishable_from(mu));
        }
    }
    SUBCASE("guards") {
        std::mt19937_64 rng(9);
        auto mu = rand_full(p, h, M, rng);
        CHECK_THROWS_AS(w_involution(mu, pr, WSide::Alpha), SupportError);
        CHECK_THROWS_AS(w_involution(LocalDistribution(p, 0, M), pr, WSide::Alpha), LevelError);
    }
    SUBCASE("norm bound transported: ||A(w mu)||_{rho_h} <= p ||A(mu)||_{rho_{h+1}}") {
        std::mt19937_64 rng(10);
        for (int t = 0; t < 4; ++t) {
            auto mu = dist_res_units(rand_full(p, h, M, rng));
            auto wmu = w_involution(mu, pr, WSide::Alpha);
            auto lhs = sup_norm_rho(amice(wmu, M - 1), h);
            auto rhs = sup_norm_rho(amice(mu, M - 1), h + 1);
            // norms as p^{-exponent}: lhs <= p * rhs  <=>  lhs_exp >= rhs_exp - 1
            CHECK(!(lhs.min_exponent < rhs.min_exponent - 1));
        }
    }
}

TEST_CASE("w conjugates the finite group-algebra action through the twist map") {
    long p = 3;
    auto pr = pair33();
    int h = 2, M = 8;
    std::mt19937_64 rng(11);
    auto da = pr.delta_alpha();
    for (int t = 0; t < 6; ++t) {
        auto mu = dist_res_units(rand_full(p, h, M, rng));
        GroupAlgebraElement lam(p, 12);
        for (int i = 0; i < 3; ++i) {
            long a = 1 + static_cast<long>(rng() % 26);
            if (a % p == 0) ++a;
            lam.add_term(a, PadicScalar::from_int(p, Int(static_cast<long>(rng() % 40) - 20), 48));
        }
        long N = M - 1;
        // lhs: lambda acting on A(w mu)
        auto wmu = w_involution(mu, pr, WSide::Alpha);
        auto lhs = lam.act(amice(wmu, N), N);
        // rhs: w applied to T_{delta_alpha,-1}(lambda)(mu), distribution side
        auto tw = lam.twist(da, -1);
        LocalDistribution acted(p, h, M);
        for (const auto& [a, cscal] : tw.terms())
            acted = acted + dist_gamma(PadicScalar::make(p, 1, 0, a, 12), mu).scale(cscal);
        auto rhs = amice(w_involution(acted, pr, WSide::Alpha), N);
        // compare at the shared (loss-reduced) precision
        auto diff = lhs - rhs;
        CHECK(diff.is_zero_at_prec());
    }
}

TEST_CASE("derivative at a root: point mass closed form") {
    long p = 3;
    auto eta = CycloElement::root(p, 1);
    auto dc = LocalDistribution::dirac(p, 7, 2, 9);
    for (long j = 0; j <= 2; ++j) {
        auto got = derivative_at_root(dc, j, eta, 1);
        // j! eta^{-j} C(7,j) eta^7
        Int fact = 1;
        for (long tt = 2; tt <= j; ++tt) fact *= tt;
        auto expect = (PadicScalar::from_int(p, fact * detail::pascal(7, j)) *
                       cyclo_power(eta, 7 - j));
        CHECK(indistinguishable(got.embed_to(1), expect));
    }
    CHECK_THROWS_AS(derivative_at_root(dc, 9, eta, 1), DegreeError);
    CHECK_THROWS_AS(derivative_at_root(LocalDistribution::dirac(p, 1, 0, 4), 0, eta, 1),
                    LevelError);
}

TEST_CASE("derivative at a root: series-side cross-check") {
    long p = 3;
    std::mt19937_64 rng(12);
    int h = 2, M = 12;
    auto eta1 = CycloElement::root(p, 1);
    auto x = eta1 - CycloElement::one(p, 1);
    for (int t = 0; t < 4; ++t) {
        auto mu = rand_full(p, h, M, rng);
        long v0 = mu.min_entry_val_floor();
        for (long j = 0; j <= 2; ++j) {
            auto dist_side = derivative_at_root(mu, j, eta1, 1);
            auto ser_side = eval_at(derivative(amice(mu, M - 1), j), x);
            // tail bound: val(c_n (n)_j x^{n-j}) >= v0 - n/((p-1)p^h) + (n-j)/2 - 2 log_p n
            Rational bound(1000000);
            for (long n = M; n <= M + 200; ++n) {
                Rational b = Rational(v0) - Rational(n, (p - 1) * 9) + Rational(n - j, 2) -
                             Rational(2 * floor_log(n, p));
                if (b < bound) bound = b;
            }
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
            auto diff = dist_side - ser_side;
            for (long i = 0; i < diff.deg(); ++i)
                CHECK(!diff.coeff(i).truncate_pi(fl.get_si()).definitely_nonzero());
        }
    }
}
