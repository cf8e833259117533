#pragma once

#include "padic/dist.hpp"

namespace padic {

// 1_{a + p^n Z_p} * z^j * e^{2 pi i z y} with y rational.
struct ElementaryFunction {
    long p;
    Int ball_a;
    int ball_n;
    long j;
    Rational y;
};

// e^{2 pi i y} = (eps^(m))^{p^m y} for y in p^{-m} Z, independent of m.
inline CycloElement root_of_exponent(long p, const Rational& y, int rel = kDefaultPrec) {
    long vy = val_rat(y, p);
    int m = static_cast<int>(std::max(-vy, 0L));
    if (m == 0) {
        // y in Z_(p): e^{2 pi i y} is the root of unity of order dividing the
        // denominator's p-part, which is trivial here only for y in Z
        if (y.get_den() != 1 && val_rat(y, p) >= 0) {
            // p'-part denominators never arise in scope
            throw DomainError("root_of_exponent: y must lie in p^{-m} Z");
        }
        return CycloElement::one(p, 0, rel);
    }
    Rational c = y * Rational(pow_long(p, m));
    if (c.get_den() != 1) throw DomainError("root_of_exponent: y must lie in p^{-m} Z");
    return CycloElement::root_pow(p, m, c.get_num(), rel);
}

// Unit residue of y p^{-val(y)} modulo p^m.
inline Int unit_residue_of(const Rational& y, long p, int m) {
    long vy = val_rat(y, p);
    Rational u = y * Rational(pow_long(p, -vy > 0 ? -vy : 0)) /
                 Rational(pow_long(p, vy > 0 ? vy : 0));
    Int pm = pow_long(p, m);
    Int num = mod_pos(u.get_num(), pm);
    Int den = mod_pos(u.get_den(), pm);
    return mod_pos(num * inv_mod(den, pm), pm);
}

struct IntertwineResult {
    CycloElement factor;      // scalar factor in L_{m(V)}
    ElementaryFunction image; // the unchanged elementary function
};

namespace detail {

inline void check_closed_form_hypothesis(const ElementaryFunction& h, const CharacterPair& pr) {
    if (h.j != 0) throw DomainError("intertwine: the closed form takes j = 0 inputs");
    if (mod_pos(h.ball_a, pow_long(h.p, std::max(h.ball_n, 0))) != 0)
        throw DomainError("intertwine: ball must be p^n Z_p");
    int m = essential_conductor(pr);
    long vy = val_rat(h.y, h.p);
    if (h.ball_n + vy > -m)
        throw HypothesisError("intertwine: hypothesis n + val(y) <= -m(alpha,beta) fails");
}

// G(beta^{-1} alpha, e^{2 pi i y / p^{m(V)+val(y)}}), with the unramified
// convention G = 1.
inline CycloElement gauss_factor(const CharacterPair& pr, const Rational& y, int rel) {
    long p = pr.prime();
    int m = essential_conductor(pr);
    SmoothCharacter tau = pr.alpha_beta_inv(); // beta^{-1} alpha
    if (tau.unramified_q()) return CycloElement::one(p, 0, rel);
    Int u = unit_residue_of(y, p, m);
    return gauss_sum(tau, CycloElement::root_pow(p, m, u, rel), rel);
}

} // namespace detail

// Closed form:
//   I^sm(1_{p^n Z} e^{2 pi i x y})
//     = C(alpha_p, beta_p) (beta_p/alpha_p)^{val y} G(beta^{-1}alpha, ...)
//       * 1_{p^n Z} e^{2 pi i z y}.
inline IntertwineResult intertwine_closed(const ElementaryFunction& h, const CharacterPair& pr,
                                          int rel = kDefaultPrec) {
    detail::check_closed_form_hypothesis(h, pr);
    long p = pr.prime();
    long vy = val_rat(h.y, p);
    PadicScalar scal = intertwining_constant(pr) * (pr.beta_p() / pr.alpha_p()).pow(vy);
    CycloElement factor = scal * detail::gauss_factor(pr, h.y, rel);
    return IntertwineResult{factor, h};
}

// The proof's shell decomposition, evaluated literally:
//   I = e^{2 pi i z y} sum_{l >= n} p^l Shell(l),
//   Shell(l) = p^{-l-m} (alpha_p/beta_p)^l sum_{a in S_m} (beta alpha^{-1})(a)
//              e^{2 pi i p^l a y}            if l + m >= -val(y), else 0,
// with the constant-root tail summed as a geometric series in closed form.
inline IntertwineResult intertwine_oracle(const ElementaryFunction& h, const CharacterPair& pr,
                                          int rel = kDefaultPrec) {
    detail::check_closed_form_hypothesis(h, pr);
    long p = pr.prime();
    int m = essential_conductor(pr);
    long vy = val_rat(h.y, p);
    long l_max = -vy;
    SmoothCharacter tau = pr.beta_alpha_inv();
    PadicScalar ratio = pr.alpha_p() / pr.beta_p(); // (beta alpha^{-1})(p)^{-1} ... = tau(p)
    PadicScalar pm_inv = PadicScalar::from_rational(p, Rational(1, pow_long(p, m)), rel);
    Int pmod = pow_long(p, m);
    CycloElement total = CycloElement::zero(p, m, rel);

    // finite shells n <= l < l_max
    for (long l = h.ball_n; l < l_max; ++l) {
        if (l + m < l_max) continue; // Haar average of a nontrivial character
        int ml = static_cast<int>(l_max - l); // order exponent of e^{2 pi i p^l y}
        Rational yl = h.y * Rational(pow_long(p, l));
        Int ul = unit_residue_of(yl, p, ml);
        CycloElement shell = CycloElement::zero(p, std::max(m, ml), rel);
        for (Int a = 1; a < pmod; ++a) {
            if (a % p == 0) continue;
            shell = shell + tau.eval_unit(a, rel) * CycloElement::root_pow(p, ml, a * ul, rel);
        }
        total = total + (pm_inv * ratio.pow(l)) * shell;
    }

    // constant-root tail l >= max(n, l_max)
    long l0 = std::max(static_cast<long>(h.ball_n), l_max);
    CycloElement char_sum = CycloElement::zero(p, std::max(m - 1, 0), rel);
    for (Int a = 1; a < pmod; ++a) {
        if (a % p == 0) continue;
        char_sum = char_sum + tau.eval_unit(a, rel);
    }
    if (char_sum.is_zero_at_prec()) {
        // the tail is a sum of below-precision terms with non-decreasing val
        total = total + char_sum * pm_inv;
    } else {
        PadicScalar one = PadicScalar::one(p, rel);
        PadicScalar den = one - ratio;
        if (!den.definitely_nonzero())
            throw DivergenceError("intertwine_oracle: geometric ratio is 1 at precision");
        PadicScalar geo = ratio.pow(l0) / den;
        total = total + (pm_inv * geo) * char_sum;
    }
    return IntertwineResult{total.embed_to(m), h};
}

// Moment transfer:
//   integral of z^j e^{2 pi i z y} dmu_beta
//     = G(beta^{-1}alpha, e^{2 pi i y / p^{val y + m(V)}}) (beta_p/alpha_p)^{val y}
//       * integral of z^j e^{2 pi i z y} dmu_alpha.
inline CycloElement moment_transfer(const LocalDistribution& mu_alpha, long j, const Rational& y,
                                    const CharacterPair& pr, int rel = kDefaultPrec) {
    long p = pr.prime();
    int m = essential_conductor(pr);
    long vy = val_rat(y, p);
    if (vy > -m) throw HypothesisError("moment_transfer: val(y) <= -m(alpha,beta) required");
    if (mu_alpha.level() < -vy) throw LevelError("moment_transfer: distribution level below -val(y)");
    if (j < 0 || j > pr.k() - 2) throw DegreeError("moment_transfer: j outside [0, k-2]");
    int m_eta = static_cast<int>(-vy);
    Int c_eta = unit_residue_of(y, p, m_eta);
    CycloElement base = integrate_zpow_root(mu_alpha, j, m_eta, c_eta, m_eta);
    PadicScalar scal = (pr.beta_p() / pr.alpha_p()).pow(vy);
    return (scal * detail::gauss_factor(pr, y, rel)) * base;
}

// Build the transferred distribution mu_beta at the level and degree of
// mu_alpha: the moments against z^j eta^z for roots eta of order >= p^{m(V)}
// and j <= k-2 are pinned by the transfer relation; the remaining freedom
// (coarser frequencies, higher degrees) is set to zero.
inline LocalDistribution transfer_distribution(const LocalDistribution& mu_alpha,
                                               const CharacterPair& pr, int rel = kDefaultPrec) {
    long p = pr.prime();
    int ell = mu_alpha.level();
    int m = essential_conductor(pr);
    if (ell < m) throw LevelError("transfer_distribution: level below m(alpha,beta)");
    int M = mu_alpha.degree();
    int jmax = std::min(static_cast<long>(M - 1), static_cast<long>(pr.k() - 2));
    Int pell = pow_long(p, ell);
    long pl = pell.get_si();

    // F[j][a] = transferred moment against z^j (eps^(ell))^{a z}
    std::vector<std::vector<CycloElement>> F(
        static_cast<size_t>(jmax + 1),
        std::vector<CycloElement>(static_cast<size_t>(pl), CycloElement::zero(p, ell, rel)));
    for (long a = 0; a < pl; ++a) {
        if (a == 0) continue;
        long va = val_int(Int(a), p);
        if (ell - va < m) continue; // coarser than the pinned frequencies
        Rational ya(Int(a), pell);
        ya.canonicalize();
        for (long j = 0; j <= jmax; ++j)
            F[static_cast<size_t>(j)][static_cast<size_t>(a)] =
                moment_transfer(mu_alpha, j, ya, pr, rel).embed_to(ell);
    }

    LocalDistribution mu_beta(p, ell, M);
    PadicScalar pinv = PadicScalar::from_rational(p, Rational(1, pell), rel + 2 * ell * M);
    // dft[j][c] = sum_a eps^{-ac} F[j][a]
    std::vector<std::vector<CycloElement>> dft(
        static_cast<size_t>(jmax + 1),
        std::vector<CycloElement>(static_cast<size_t>(pl), CycloElement::zero(p, ell, rel)));
    for (long j = 0; j <= jmax; ++j)
        for (long c = 0; c < pl; ++c) {
            CycloElement acc = CycloElement::zero(p, ell, rel);
            for (long a = 1; a < pl; ++a) {
                const CycloElement& Fa = F[static_cast<size_t>(j)][static_cast<size_t>(a)];
                if (Fa.is_zero_at_prec()) continue;
                acc = acc + Fa.mul_root_pow(Int(-a) * c);
            }
            dft[static_cast<size_t>(j)][static_cast<size_t>(c)] = std::move(acc);
        }
    for (long c = 0; c < pl; ++c) {
        PadicScalar cs = PadicScalar::from_int(p, c, rel + 2 * ell * M);
        for (int i = 0; i <= jmax; ++i) {
            CycloElement acc = CycloElement::zero(p, ell, rel);
            for (long j = 0; j <= i; ++j) {
                PadicScalar coef = PadicScalar::from_int(p, detail::pascal(i, j), rel + 16) *
                                   (-cs).pow(i - j);
                acc = acc + coef * dft[static_cast<size_t>(j)][static_cast<size_t>(c)];
            }
            PadicScalar entry = acc.expect_scalar("transfer_distribution") * pinv.pow(i + 1);
            mu_beta.set_entry(c, i, entry);
        }
    }
    return mu_beta;
}

struct FilWitness {
    long j;
    Int a;
};

struct FilCheckResult {
    bool ok = true;
    std::vector<FilWitness> witnesses;
};

// The filtration condition at level m:
//   G(beta^{-1}alpha, eta^{p^{m-m(V)}}) alpha_p^m * integral z^j eta^z dmu_alpha
//     = beta_p^m * integral z^j eta^z dmu_beta
// for all 0 <= j <= k-2 and all primitive p^m-th roots eta.
inline FilCheckResult fil_condition_check(const LocalDistribution& mu_alpha,
                                          const LocalDistribution& mu_beta,
                                          const CharacterPair& pr, int m,
                                          int rel = kDefaultPrec) {
    long p = pr.prime();
    int mv = essential_conductor(pr);
    if (m < mv) throw HypothesisError("fil_condition_check: m below m(alpha,beta)");
    if (mu_alpha.level() < m || mu_beta.level() < m)
        throw LevelError("fil_condition_check: distribution level below m");
    SmoothCharacter tau = pr.alpha_beta_inv();
    PadicScalar apm = pr.alpha_p().pow(m);
    PadicScalar bpm = pr.beta_p().pow(m);
    Int pm = pow_long(p, m);
    FilCheckResult out;
    for (Int a = 1; a < pm; ++a) {
        if (a % p == 0) continue;
        CycloElement g = tau.unramified_q()
                             ? CycloElement::one(p, 0, rel)
                             : gauss_sum(tau,
                                         CycloElement::root_pow(p, mv, a, rel), rel);
        for (long j = 0; j <= pr.k() - 2; ++j) {
            CycloElement lhs = g * apm * integrate_zpow_root(mu_alpha, j, m, a, m);
            CycloElement rhs = bpm * integrate_zpow_root(mu_beta, j, m, a, m);
            if (!indistinguishable(lhs, rhs)) {
                out.ok = false;
                out.witnesses.push_back(FilWitness{j, a});
            }
        }
    }
    return out;
}

// Coordinates of z = c_alpha e_alpha + c_beta e_beta with
// c_alpha = A(mu_alpha|_Z), c_beta = C^{-1} A(mu_beta|_Z).
struct AssembledVector {
    TruncatedSeries c_alpha;
    TruncatedSeries c_beta;
};

inline AssembledVector assemble_vector(const LocalDistribution& mu_alpha,
                                       const LocalDistribution& mu_beta, const CharacterPair& pr,
                                       long N) {
    PadicScalar cinv = intertwining_constant(pr).inverse();
    return AssembledVector{amice(mu_alpha, N), cinv * amice(mu_beta, N)};
}

// The companion vector from the unit-restricted w-images.
inline AssembledVector assemble_w_vector(const LocalDistribution& mu_alpha,
                                         const LocalDistribution& mu_beta,
                                         const CharacterPair& pr, long N) {
    PadicScalar cinv = intertwining_constant(pr).inverse();
    LocalDistribution wa = w_involution(dist_res_units(mu_alpha), pr, WSide::Alpha);
    LocalDistribution wb = w_involution(dist_res_units(mu_beta), pr, WSide::Beta);
    return AssembledVector{amice(wa, N), cinv * amice(wb, N)};
}

} // namespace padic
