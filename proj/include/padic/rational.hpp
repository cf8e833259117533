#pragma once

#include <gmpxx.h>
#include <map>
#include <string>
#include <utility>

#include "padic/errors.hpp"

namespace padic {

using Int = mpz_class;
using Rational = mpq_class;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow_long(long base, unsigned long e) { return pow_int(Int(base), e); }

// Cache for the prime-power moduli that scalar arithmetic reduces by.
inline const Int& cached_prime_pow(long p, unsigned long e) {
    thread_local std::map<std::pair<long, unsigned long>, Int> cache;
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pow_long(p, e)).first;
    return it->second;
}

// p-adic valuation of a nonzero integer.
inline long val_int(Int n, long p) {
    if (n == 0) throw DomainError("val_int: zero has no finite valuation");
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= p;
        ++v;
    }
    return v;
}

inline long val_rat(const Rational& q, long p) {
    return val_int(q.get_num(), p) - val_int(q.get_den(), p);
}

inline Int mod_pos(Int a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw DomainError("inv_mod: not invertible");
    return r;
}

inline std::string rat_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_from_str(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

// Valuation of a finite-precision element: either an exact rational or the
// statement "at least this much" when the element is indistinguishable from 0.
struct Valuation {
    Rational v;
    bool lower_bound = false; // true: val >= v, exact value unknown

    static Valuation exact(Rational x) { return Valuation{std::move(x), false}; }
    static Valuation at_least(Rational x) { return Valuation{std::move(x), true}; }

    bool is_exact() const { return !lower_bound; }

    Rational value() const {
        if (lower_bound) throw PrecisionError("valuation only bounded below: >= " + rat_str(v));
        return v;
    }

    std::string str() const { return lower_bound ? (">= " + rat_str(v)) : rat_str(v); }

    bool operator==(const Valuation& o) const { return lower_bound == o.lower_bound && v == o.v; }
};

inline long floor_log(long n, long base) {
    long k = 0;
    while (n >= base) {
        n /= base;
        ++k;
    }
    return k;
}

} // namespace padic
