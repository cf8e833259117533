#pragma once

#include <gmpxx.h>
#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "padic/errors.hpp"
#include "padic/rational.hpp"

namespace padic {

// Default relative working precision, in powers of p.
inline constexpr int kDefaultPrec = 64;

// Sentinel absolute precision (in pi-units) used for structurally exact zeros.
inline constexpr long kZeroPrec = 1L << 24;

// An element of Q_p, or of the totally ramified extension Q_p(pi) with
// pi^e = p, in the scaled form
//
//     x = pi^t * u,   u a unit residue known modulo p^rel,
//
// so x is known modulo pi^(t + e*rel).  The degenerate "zero form"
// (u = 0, rel = 0) records an element indistinguishable from 0 modulo pi^t.
// Sums that would need a genuine pi-polynomial (mixed residues of t mod e)
// are rejected; no in-scope formula produces one.
class PadicScalar {
public:
    PadicScalar() : p_(3), e_(1), t_(kZeroPrec), rel_(0), u_(0) {}

    static PadicScalar zero(long p, long abs_prec_p = kDefaultPrec, int e = 1) {
        PadicScalar x;
        x.p_ = p;
        x.e_ = e;
        x.t_ = abs_prec_p * e;
        x.rel_ = 0;
        x.u_ = 0;
        return x;
    }

    static PadicScalar from_int(long p, const Int& n, int rel = kDefaultPrec, int e = 1) {
        return make(p, e, 0, n, rel);
    }

    static PadicScalar from_rational(long p, const Rational& q, int rel = kDefaultPrec, int e = 1) {
        if (q == 0) return zero(p, rel, e);
        Int num = q.get_num(), den = q.get_den();
        long vn = val_int(num, p), vd = val_int(den, p);
        num /= pow_long(p, static_cast<unsigned long>(vn));
        den /= pow_long(p, static_cast<unsigned long>(vd));
        const Int& P = cached_prime_pow(p, static_cast<unsigned long>(rel));
        Int u = mod_pos(num * inv_mod(mod_pos(den, P), P), P);
        return make(p, e, (vn - vd) * e, u, rel);
    }

    static PadicScalar from_rational_str(long p, const std::string& s, int rel = kDefaultPrec,
                                         int e = 1) {
        return from_rational(p, rat_from_str(s), rel, e);
    }

    // pi^t * u mod p^rel, normalized.
    static PadicScalar make(long p, int e, long t, Int u, int rel) {
        PadicScalar x;
        x.p_ = p;
        x.e_ = e;
        x.t_ = t;
        x.rel_ = rel;
        x.u_ = std::move(u);
        x.normalize();
        return x;
    }

    static PadicScalar one(long p, int rel = kDefaultPrec, int e = 1) {
        return from_int(p, 1, rel, e);
    }

    // The uniformizer pi (equals p itself when e = 1).
    static PadicScalar pi(long p, int e = 1, int rel = kDefaultPrec) {
        return make(p, e, 1, 1, rel);
    }

    long prime() const { return p_; }
    int ram_index() const { return e_; }
    bool is_zero_at_prec() const { return rel_ == 0; }
    const Int& unit_residue() const { return u_; }
    int rel_prec() const { return rel_; }
    long pi_exponent() const { return t_; }

    // Absolute precision as "known modulo p^N", N rational for e > 1.
    Rational abs_prec() const {
        Rational r(t_ + static_cast<long>(e_) * rel_, e_);
        r.canonicalize();
        return r;
    }

    Valuation val() const {
        Rational r(t_, e_);
        r.canonicalize();
        return rel_ == 0 ? Valuation::at_least(r) : Valuation::exact(r);
    }

    bool definitely_nonzero() const { return rel_ != 0; }

    PadicScalar lift_ram(int e2) const {
        if (e2 % e_ != 0) throw DomainError("lift_ram: incompatible ramification indices");
        PadicScalar x = *this;
        x.t_ *= e2 / e_;
        x.e_ = e2;
        return x;
    }

    PadicScalar operator-() const {
        if (rel_ == 0) return *this;
        PadicScalar x = *this;
        x.u_ = mod_pos(-x.u_, cached_prime_pow(p_, static_cast<unsigned long>(rel_)));
        return x;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        auto [x, y] = unify(a, b);
        long A = std::min(x.abs_pi(), y.abs_pi());
        if (x.rel_ == 0 && y.rel_ == 0) return zero_pi(x.p_, x.e_, A);
        if (x.rel_ == 0) return y.truncate_pi(A);
        if (y.rel_ == 0) return x.truncate_pi(A);
        const PadicScalar& lo = (x.t_ <= y.t_) ? x : y;
        const PadicScalar& hi = (x.t_ <= y.t_) ? y : x;
        if (hi.t_ >= A) return lo.truncate_pi(A);
        if ((hi.t_ - lo.t_) % lo.e_ != 0)
            throw DomainError("PadicScalar: sum leaves the pi-power * unit model");
        int rel = static_cast<int>((A - lo.t_) / lo.e_);
        const Int& P = cached_prime_pow(lo.p_, static_cast<unsigned long>(rel));
        Int u = mod_pos(lo.u_ + hi.u_ * cached_prime_pow(lo.p_, static_cast<unsigned long>((hi.t_ - lo.t_) / lo.e_)), P);
        return make(lo.p_, lo.e_, lo.t_, u, rel);
    }

    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        auto [x, y] = unify(a, b);
        if (x.rel_ == 0 || y.rel_ == 0) return zero_pi(x.p_, x.e_, x.t_ + y.t_);
        int rel = std::min(x.rel_, y.rel_);
        const Int& P = cached_prime_pow(x.p_, static_cast<unsigned long>(rel));
        return make(x.p_, x.e_, x.t_ + y.t_, mod_pos(x.u_ * y.u_, P), rel);
    }

    PadicScalar inverse() const {
        if (rel_ == 0)
            throw PrecisionError("PadicScalar::inverse: element indistinguishable from 0");
        const Int& P = cached_prime_pow(p_, static_cast<unsigned long>(rel_));
        return make(p_, e_, -t_, inv_mod(u_, P), rel_);
    }

    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
        return a * b.inverse();
    }

    PadicScalar pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        PadicScalar r = one(p_, rel_ == 0 ? kDefaultPrec : rel_, e_);
        PadicScalar b = *this;
        unsigned long m = static_cast<unsigned long>(n);
        while (m) {
            if (m & 1) r = r * b;
            b = b * b;
            m >>= 1;
        }
        return r;
    }

    // True when a and b agree at their shared precision.  Visible values on
    // incompatible pi-scales differ outright.
    friend bool indistinguishable(const PadicScalar& a, const PadicScalar& b) {
        try {
            return (a - b).is_zero_at_prec();
        } catch (const DomainError&) {
            return false;
        }
    }

    PadicScalar truncate_abs(const Rational& abs_p) const {
        Rational scaled = abs_p * e_;
        long A = static_cast<long>(mpz_class(scaled.get_num() / scaled.get_den()).get_si());
        return truncate_pi(A);
    }

    // Lower this element's absolute precision to pi^A.
    PadicScalar truncate_pi(long A) const {
        if (rel_ == 0) return zero_pi(p_, e_, std::min(t_, A));
        if (t_ >= A) return zero_pi(p_, e_, A);
        long d = A - t_;
        int rel = static_cast<int>(d / e_);
        if (rel >= rel_) return *this;
        const Int& P = cached_prime_pow(p_, static_cast<unsigned long>(rel));
        return make(p_, e_, t_, mod_pos(u_, P), rel);
    }

    // Smallest-magnitude signed representative of the unit part (for display).
    Int balanced_unit() const {
        if (rel_ == 0) return 0;
        const Int& P = cached_prime_pow(p_, static_cast<unsigned long>(rel_));
        return (2 * u_ > P) ? Int(u_ - P) : u_;
    }

    std::string str() const {
        if (rel_ == 0) return "O(pi^" + std::to_string(t_) + ")";
        std::string s = balanced_unit().get_str();
        if (t_ != 0) {
            s += (e_ == 1) ? "*p^" + std::to_string(t_) : "*pi^" + std::to_string(t_);
        }
        return s + " (p=" + std::to_string(p_) + ", mod p^" + std::to_string(rel_) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
        return os << x.str();
    }

    long abs_pi() const { return t_ + static_cast<long>(e_) * rel_; }

private:
    static PadicScalar zero_pi(long p, int e, long t) {
        PadicScalar x;
        x.p_ = p;
        x.e_ = e;
        x.t_ = t;
        x.rel_ = 0;
        x.u_ = 0;
        return x;
    }

    static std::pair<PadicScalar, PadicScalar> unify(const PadicScalar& a, const PadicScalar& b) {
        if (a.p_ != b.p_) throw DomainError("PadicScalar: mixed primes");
        if (a.e_ == b.e_) return {a, b};
        long e = std::lcm(static_cast<long>(a.e_), static_cast<long>(b.e_));
        return {a.lift_ram(static_cast<int>(e)), b.lift_ram(static_cast<int>(e))};
    }

    void normalize() {
        if (rel_ <= 0) {
            t_ += static_cast<long>(e_) * std::max(rel_, 0);
            rel_ = 0;
            u_ = 0;
            return;
        }
        const Int& P = cached_prime_pow(p_, static_cast<unsigned long>(rel_));
        u_ = mod_pos(u_, P);
        while (u_ != 0 && mpz_divisible_ui_p(u_.get_mpz_t(), static_cast<unsigned long>(p_))) {
            u_ /= p_;
            t_ += e_;
            rel_ -= 1;
        }
        if (u_ == 0) {
            t_ += static_cast<long>(e_) * rel_;
            rel_ = 0;
        }
    }

    long p_;
    int e_;
    long t_;
    int rel_;
    Int u_;
};

inline Valuation padic_val(const PadicScalar& x) { return x.val(); }

// Teichmueller lift: the (p-1)-st root of unity congruent to a mod p.
inline PadicScalar teichmuller(long p, const Int& a, int rel = kDefaultPrec) {
    Int P = pow_long(p, static_cast<unsigned long>(rel));
    Int x = mod_pos(a, P);
    if (x % p == 0) throw DomainError("teichmuller: argument divisible by p");
    for (int i = 0; i < rel + 1; ++i) {
        Int y;
        mpz_powm(y.get_mpz_t(), x.get_mpz_t(), Int(p).get_mpz_t(), P.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return PadicScalar::make(p, 1, 0, x, rel);
}

// log x = sum_{n>=1} (-1)^{n+1} (x-1)^n / n, valid for val(x-1) >= 1 (p odd).
inline PadicScalar padic_log(const PadicScalar& x) {
    if (x.ram_index() != 1) throw DomainError("padic_log: implemented for e = 1 only");
    long p = x.prime();
    PadicScalar y = x - PadicScalar::one(p, kDefaultPrec, 1);
    if (y.definitely_nonzero() && y.val().value() < 1)
        throw DomainError("padic_log: val(x-1) < 1, outside convergence region");
    long P = x.abs_pi();
    if (y.is_zero_at_prec()) return PadicScalar::zero(p, y.abs_pi());
    long v = y.val().value().get_num().get_si();
    // n*v - log_p(n) >= P once n > n_max
    long n_max = 1;
    while (n_max * v - floor_log(n_max, p) < P + 1) ++n_max;
    PadicScalar acc = PadicScalar::zero(p, P);
    PadicScalar pw = PadicScalar::one(p, static_cast<int>(P) + 2, 1);
    for (long n = 1; n <= n_max; ++n) {
        pw = pw * y;
        PadicScalar term = pw / PadicScalar::from_int(p, n, static_cast<int>(P) + 2);
        acc = (n % 2 == 1) ? acc + term : acc - term;
    }
    long tail = (n_max + 1) * v - floor_log(n_max + 1, p);
    return acc.truncate_pi(std::min(acc.abs_pi(), tail));
}

} // namespace padic
