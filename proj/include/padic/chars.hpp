#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "padic/cyclo.hpp"

namespace padic {

// Smallest primitive root mod p^2 (then a generator of (Z/p^n)^x for all n, p odd).
inline long primitive_root(long p) {
    static std::map<long, long> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    long p2 = p * p;
    long order = p * (p - 1);
    for (long g = 2;; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        // order of g divides p(p-1); check proper divisors via prime factors
        std::vector<long> fac;
        long n = order;
        for (long q = 2; q * q <= n; ++q)
            while (n % q == 0) {
                fac.push_back(q);
                n /= q;
            }
        if (n > 1) fac.push_back(n);
        std::sort(fac.begin(), fac.end());
        fac.erase(std::unique(fac.begin(), fac.end()), fac.end());
        for (long q : fac) {
            Int r;
            mpz_powm(r.get_mpz_t(), Int(g).get_mpz_t(), Int(order / q).get_mpz_t(),
                     Int(p2).get_mpz_t());
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            cache[p] = g;
            return g;
        }
    }
}

// Discrete log base the canonical generator in (Z/p^n)^x.
inline Int unit_dlog(long p, int n, const Int& a) {
    Int pn = pow_long(p, n);
    Int x = mod_pos(a, pn);
    if (x % p == 0) throw DomainError("unit_dlog: not a unit");
    Int g(primitive_root(p));
    Int cur = 1;
    Int order = pn / p * (p - 1);
    for (Int i = 0; i < order; ++i) {
        if (cur == x) return i;
        cur = mod_pos(cur * g, pn);
    }
    throw DomainError("unit_dlog: generator failed (non-cyclic group?)");
}

// Smooth character of Q_p^x: conductor-n data on units plus the value at p.
// The unit part is pinned by the value at the canonical generator g of
// (Z/p^n)^x:
//
//     tau(g) = omega(g)^j_teich * (eps^(n-1))^j_wild,
//
// omega the Teichmueller lift.  Stored normalized: the conductor is minimal.
class SmoothCharacter {
public:
    SmoothCharacter() : p_(3), cond_(0), j_teich_(0), j_wild_(0), at_p_(PadicScalar::one(3)) {}

    SmoothCharacter(long p, int cond, long j_teich, const Int& j_wild, PadicScalar at_p)
        : p_(p), cond_(cond), j_teich_(j_teich), j_wild_(j_wild), at_p_(std::move(at_p)) {
        if (!at_p_.definitely_nonzero())
            throw DomainError("SmoothCharacter: value at p must be invertible");
        normalize();
    }

    // The unramified character mapping p to c and trivial on units.
    static SmoothCharacter unramified(long p, PadicScalar c) {
        return SmoothCharacter(p, 0, 0, 0, std::move(c));
    }

    static SmoothCharacter trivial(long p) { return unramified(p, PadicScalar::one(p)); }

    // |x|: trivial on units, p -> 1/p.
    static SmoothCharacter abs_value(long p) {
        return unramified(p, PadicScalar::from_rational(p, Rational(1, p)));
    }

    long prime() const { return p_; }
    int conductor() const { return cond_; }
    bool unramified_q() const { return cond_ == 0; }
    long j_teich() const { return j_teich_; }
    const Int& j_wild() const { return j_wild_; }
    const PadicScalar& at_p() const { return at_p_; }

    // Multiplicative order of the unit-part value.
    Int unit_order() const {
        long d = (p_ - 1) / std::gcd(p_ - 1, j_teich_ == 0 ? p_ - 1 : j_teich_);
        Int wild_ord = 1;
        if (cond_ >= 2) {
            Int w = pow_long(p_, cond_ - 1);
            Int g = j_wild_ == 0 ? w : Int(mpz_class(gcd_int(j_wild_, w)));
            wild_ord = w / g;
        }
        return Int(d) * wild_ord;
    }

    // tau(u) for a unit u (needs u mod p^cond).  Values of p-power order live
    // at cyclotomic level cond-1; conductor <= 1 values are plain scalars.
    CycloElement eval_unit(const Int& u, int rel = kDefaultPrec) const {
        if (cond_ == 0) return CycloElement::one(p_, 0, rel);
        Int s = unit_dlog(p_, cond_, u);
        PadicScalar t = PadicScalar::one(p_, rel);
        if (j_teich_ != 0) {
            PadicScalar w = teichmuller(p_, primitive_root(p_), rel);
            t = w.pow(j_teich_ * mod_pos(s, p_ - 1).get_si());
        }
        if (cond_ <= 1) return CycloElement::from_scalar(t);
        return t * CycloElement::root_pow(p_, cond_ - 1, j_wild_ * s, rel);
    }

    CycloElement eval_unit_inv(const Int& u, int rel = kDefaultPrec) const {
        return inv().eval_unit(u, rel);
    }

    // Full evaluation at nonzero x = pi^t u (e = 1 inputs).
    CycloElement eval(const PadicScalar& x, int rel = kDefaultPrec) const {
        if (!x.definitely_nonzero())
            throw PrecisionError("SmoothCharacter::eval: valuation undeterminable");
        if (x.ram_index() != 1) throw DomainError("SmoothCharacter::eval: e = 1 arguments only");
        long v = x.pi_exponent();
        return at_p_.pow(v) * eval_unit(x.unit_residue(), rel);
    }

    SmoothCharacter mul(const SmoothCharacter& o) const {
        require_same_p(o);
        int n = std::max(cond_, o.cond_);
        return SmoothCharacter(p_, n, j_teich_ + o.j_teich_, lift_wild(n) + o.lift_wild(n),
                               at_p_ * o.at_p_);
    }

    SmoothCharacter inv() const {
        return SmoothCharacter(p_, cond_, -j_teich_, -j_wild_, at_p_.inverse());
    }

    SmoothCharacter div(const SmoothCharacter& o) const { return mul(o.inv()); }

    SmoothCharacter pow(long n) const {
        return SmoothCharacter(p_, cond_, j_teich_ * n, j_wild_ * n, at_p_.pow(n));
    }

    // Unit part only: same unit data, trivial at p.
    SmoothCharacter unit_part() const {
        return SmoothCharacter(p_, cond_, j_teich_, j_wild_, PadicScalar::one(p_));
    }

    bool operator==(const SmoothCharacter& o) const {
        return p_ == o.p_ && cond_ == o.cond_ && mod_pos(j_teich_ - o.j_teich_, p_ - 1) == 0 &&
               (cond_ < 2 || mod_pos(j_wild_ - o.j_wild_, pow_long(p_, cond_ - 1)) == 0) &&
               indistinguishable(at_p_, o.at_p_);
    }
    bool operator!=(const SmoothCharacter& o) const { return !(*this == o); }

private:
    static Int gcd_int(const Int& a, const Int& b) {
        Int r;
        mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }

    void require_same_p(const SmoothCharacter& o) const {
        if (p_ != o.p_) throw DomainError("SmoothCharacter: mixed primes");
    }

    // j_wild re-expressed at ambient level n: eps^(c-1) = (eps^(n-1))^{p^(n-c)}.
    Int lift_wild(int n) const {
        if (cond_ <= 1 || n == cond_) return j_wild_ * (cond_ <= 1 ? 0 : 1);
        return j_wild_ * pow_long(p_, n - cond_);
    }

    void normalize() {
        j_teich_ = mod_pos(j_teich_, p_ - 1).get_si();
        if (cond_ >= 2) j_wild_ = mod_pos(j_wild_, pow_long(p_, cond_ - 1));
        while (cond_ >= 2 && j_wild_ % p_ == 0) {
            j_wild_ /= p_;
            cond_ -= 1;
            if (cond_ >= 2) j_wild_ = mod_pos(j_wild_, pow_long(p_, cond_ - 1));
        }
        if (cond_ == 1 && j_teich_ == 0) cond_ = 0;
        if (cond_ <= 1) j_wild_ = 0;
        if (cond_ == 0) j_teich_ = 0;
    }

    long p_;
    int cond_;
    long j_teich_;
    Int j_wild_;
    PadicScalar at_p_;
};

// delta = x^n * tau with tau smooth; evaluation at u in Z_p^x is u^n tau(u).
class ContinuousCharacter {
public:
    ContinuousCharacter() = default;
    ContinuousCharacter(SmoothCharacter smooth, long alg_exp)
        : smooth_(std::move(smooth)), alg_(alg_exp) {}

    static ContinuousCharacter from_smooth(SmoothCharacter s) {
        return ContinuousCharacter(std::move(s), 0);
    }

    // x|x| (the cyclotomic character under the reciprocity normalization).
    static ContinuousCharacter cyclotomic(long p) {
        return ContinuousCharacter(SmoothCharacter::abs_value(p), 1);
    }

    static ContinuousCharacter x_pow(long p, long n) {
        return ContinuousCharacter(SmoothCharacter::trivial(p), n);
    }

    const SmoothCharacter& smooth() const { return smooth_; }
    long alg_exp() const { return alg_; }
    long prime() const { return smooth_.prime(); }

    // w(delta) = log delta(u)/log u: the algebraic exponent (torsion values
    // vanish under log).
    Rational weight() const { return Rational(alg_); }

    // Numeric cross-check of the weight via log delta(1+p)/log(1+p); only the
    // conductor <= 1 case keeps the value inside Q_p.
    Rational weight_via_log(int prec = 24) const {
        long p = prime();
        if (smooth_.conductor() >= 2)
            throw DomainError("weight_via_log: value at 1+p leaves Q_p for conductor >= 2");
        CycloElement v = eval(PadicScalar::from_int(p, 1 + p, prec));
        PadicScalar s = v.expect_scalar("weight_via_log");
        PadicScalar target = padic_log(s);
        PadicScalar base = padic_log(PadicScalar::from_int(p, 1 + p, prec));
        PadicScalar q = target / base;
        // the quotient is a rational integer here
        Int bal = q.balanced_unit() * pow_long(p, std::max(q.pi_exponent(), 0L));
        if (q.is_zero_at_prec()) bal = 0;
        return Rational(bal);
    }

    PadicScalar at_p() const { return smooth_.at_p() * PadicScalar::from_int(prime(), prime()).pow(alg_); }

    CycloElement eval(const PadicScalar& x, int rel = kDefaultPrec) const {
        if (!x.definitely_nonzero())
            throw PrecisionError("ContinuousCharacter::eval: valuation undeterminable");
        if (x.ram_index() != 1)
            throw DomainError("ContinuousCharacter::eval: e = 1 arguments only");
        long p = prime();
        long v = x.pi_exponent();
        PadicScalar alg_part = PadicScalar::from_int(p, p, rel).pow(alg_ * v) *
                               PadicScalar::make(p, 1, 0, x.unit_residue(), x.rel_prec()).pow(alg_);
        return alg_part * smooth_.at_p().pow(v) * smooth_.eval_unit(x.unit_residue(), rel);
    }

    CycloElement eval_unit(const Int& u, int rel = kDefaultPrec) const {
        long p = prime();
        PadicScalar uu = PadicScalar::make(p, 1, 0, u, rel);
        return uu.pow(alg_) * smooth_.eval_unit(u, rel);
    }

    ContinuousCharacter mul(const ContinuousCharacter& o) const {
        return ContinuousCharacter(smooth_.mul(o.smooth_), alg_ + o.alg_);
    }
    ContinuousCharacter inv() const { return ContinuousCharacter(smooth_.inv(), -alg_); }
    ContinuousCharacter div(const ContinuousCharacter& o) const { return mul(o.inv()); }

    bool operator==(const ContinuousCharacter& o) const {
        return alg_ == o.alg_ && smooth_ == o.smooth_;
    }
    bool operator!=(const ContinuousCharacter& o) const { return !(*this == o); }

private:
    SmoothCharacter smooth_{};
    long alg_ = 0;
};

// G(tau, eta) = sum over a in (Z/p^m)^x of tau^{-1}(a) eta^a, with m = n(tau)
// and eta a primitive p^m-th root of unity.
inline CycloElement gauss_sum(const SmoothCharacter& tau, const CycloElement& eta,
                              int rel = kDefaultPrec) {
    long p = tau.prime();
    int m = tau.conductor();
    if (m < 1) throw DomainError("gauss_sum: character must be ramified");
    if (eta.level() < m) throw DomainError("gauss_sum: root level below conductor");
    // eta must have order exactly p^m
    Int pm = pow_long(p, m);
    if (!indistinguishable(cyclo_power(eta, pm), CycloElement::one(p, eta.level())) ||
        indistinguishable(cyclo_power(eta, pm / p), CycloElement::one(p, eta.level())))
        throw DomainError("gauss_sum: root order does not equal p^conductor");
    SmoothCharacter tinv = tau.inv();
    CycloElement acc = CycloElement::zero(p, std::max(eta.level(), m - 1));
    CycloElement pw = CycloElement::one(p, eta.level(), rel);
    for (Int a = 1; a < pm; ++a) {
        pw = pw * eta;
        if (a % p == 0) continue;
        acc = acc + tinv.eval_unit(a, rel) * pw;
    }
    return acc;
}

// G(tau) with the distinguished root eps^(m); equals 1 when tau is unramified.
inline CycloElement gauss_sum_std(const SmoothCharacter& tau, int rel = kDefaultPrec) {
    if (tau.unramified_q()) return CycloElement::one(tau.prime(), 0, rel);
    return gauss_sum(tau, CycloElement::root(tau.prime(), tau.conductor(), rel), rel);
}

// The standing datum (alpha, beta, k): val(alpha_p) + val(beta_p) = k-1 and
// 0 < val(beta_p) <= val(alpha_p) < k-1, where alpha_p = alpha(p)^{-1}.
// The constructor swaps the two characters if needed.
class CharacterPair {
public:
    CharacterPair(SmoothCharacter a, SmoothCharacter b, int k)
        : alpha_(std::move(a)), beta_(std::move(b)), k_(k) {
        if (alpha_.prime() != beta_.prime()) throw DomainError("CharacterPair: mixed primes");
        Rational va = alpha_p().val().value();
        Rational vb = beta_p().val().value();
        if (vb > va) {
            std::swap(alpha_, beta_);
            std::swap(va, vb);
        }
        if (!(va + vb == Rational(k_ - 1)))
            throw DomainError("CharacterPair: val(alpha_p) + val(beta_p) != k-1");
        if (!(Rational(0) < vb && va < Rational(k_ - 1)))
            throw DomainError("CharacterPair: valuations outside (0, k-1)");
    }

    long prime() const { return alpha_.prime(); }
    int k() const { return k_; }
    const SmoothCharacter& alpha() const { return alpha_; }
    const SmoothCharacter& beta() const { return beta_; }

    PadicScalar alpha_p() const { return alpha_.at_p().inverse(); }
    PadicScalar beta_p() const { return beta_.at_p().inverse(); }

    SmoothCharacter beta_alpha_inv() const { return beta_.div(alpha_); }
    SmoothCharacter alpha_beta_inv() const { return alpha_.div(beta_); }

    // delta_alpha(z) = (beta alpha^{-1})(z) |z|^{-1} z^{k-2}.
    ContinuousCharacter delta_alpha() const {
        return ContinuousCharacter(beta_alpha_inv().mul(SmoothCharacter::abs_value(prime()).inv()),
                                   k_ - 2);
    }
    ContinuousCharacter delta_beta() const {
        return ContinuousCharacter(alpha_beta_inv().mul(SmoothCharacter::abs_value(prime()).inv()),
                                   k_ - 2);
    }

    bool exceptional() const { return alpha_ == beta_; }

private:
    SmoothCharacter alpha_, beta_;
    int k_;
};

// m(alpha, beta) = sup(n(beta alpha^{-1}), 1).
inline int essential_conductor(const CharacterPair& pr) {
    return std::max(pr.beta_alpha_inv().conductor(), 1);
}

// C(alpha_p, beta_p): (beta_p / (p alpha_p))^{m} if beta alpha^{-1} ramified,
// (1 - beta_p/(p alpha_p)) / (1 - alpha_p/beta_p) if unramified.
inline PadicScalar intertwining_constant(const CharacterPair& pr) {
    long p = pr.prime();
    PadicScalar ap = pr.alpha_p(), bp = pr.beta_p();
    PadicScalar pscal = PadicScalar::from_int(p, p);
    if (!pr.beta_alpha_inv().unramified_q()) {
        int m = essential_conductor(pr);
        return (bp / (pscal * ap)).pow(m);
    }
    PadicScalar one = PadicScalar::one(p);
    PadicScalar den = one - ap / bp;
    if (!den.definitely_nonzero())
        throw DomainError("intertwining_constant: alpha_p = beta_p in the unramified branch");
    return (one - bp / (pscal * ap)) / den;
}

} // namespace padic
