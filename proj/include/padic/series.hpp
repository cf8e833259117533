#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "padic/chars.hpp"

namespace padic {

inline constexpr long kTailExact = 1L << 40;
inline constexpr int kDefaultOrder = 64;

// Laurent windows are bounded below; -64 by default, adjustable for callers
// that genuinely need deeper tails.
inline long& laurent_floor() {
    static long floor_ = -64;
    return floor_;
}

namespace detail {

inline const Int& pascal(long n, long k) {
    static std::vector<std::vector<Int>> rows;
    static std::mutex mtx;
    static const Int zero_ = 0;
    if (k < 0 || k > n) return zero_;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<long>(rows.size()) <= n) {
        long r = static_cast<long>(rows.size());
        std::vector<Int> row(static_cast<size_t>(r) + 1, 1);
        for (long j = 1; j < r; ++j)
            row[static_cast<size_t>(j)] =
                rows[static_cast<size_t>(r - 1)][static_cast<size_t>(j - 1)] +
                rows[static_cast<size_t>(r - 1)][static_cast<size_t>(j)];
        rows.push_back(std::move(row));
    }
    return rows[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

} // namespace detail

// Laurent-windowed series over PadicScalar coefficients.
//
// Semantics: exponents below the stored support are exactly zero; exponents
// above tail_order() are unknown.  An exact series (tail = kTailExact) is a
// genuine Laurent polynomial.  The window is bounded below at kLaurentFloor.
class TruncatedSeries {
public:
    explicit TruncatedSeries(long p) : p_(p), tail_(kTailExact) {}

    TruncatedSeries(long p, long tail_order) : p_(p), tail_(tail_order) {}

    static TruncatedSeries zero(long p) { return TruncatedSeries(p); }

    static TruncatedSeries monomial(long p, long n, const PadicScalar& c) {
        TruncatedSeries f(p);
        f.set(n, c);
        return f;
    }

    static TruncatedSeries one(long p, int rel = kDefaultPrec) {
        return monomial(p, 0, PadicScalar::one(p, rel));
    }

    static TruncatedSeries T(long p, int rel = kDefaultPrec) {
        return monomial(p, 1, PadicScalar::one(p, rel));
    }

    long prime() const { return p_; }
    bool exact() const { return tail_ >= kTailExact; }
    long tail_order() const { return tail_; }
    const std::map<long, PadicScalar>& coeffs() const { return c_; }

    void set(long n, const PadicScalar& v) {
        if (n < laurent_floor()) throw DomainError("TruncatedSeries: below the Laurent floor");
        if (v.is_zero_at_prec() && v.abs_pi() >= kZeroPrec) {
            c_.erase(n);
            return;
        }
        c_[n] = v;
    }

    bool known(long n) const { return n <= tail_; }

    PadicScalar coeff(long n) const {
        if (!known(n))
            throw PrecisionError("TruncatedSeries::coeff: exponent outside certified window");
        auto it = c_.find(n);
        return it == c_.end() ? PadicScalar::zero(p_, kZeroPrec) : it->second;
    }

    // Lowest exponent that can carry a nonzero coefficient.
    long ord_lower() const { return c_.empty() ? 0 : c_.begin()->first; }
    long top_stored() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    bool is_zero_at_prec() const {
        for (const auto& [n, v] : c_)
            if (v.definitely_nonzero()) return false;
        return true;
    }

    // Minimal certified absolute precision over the window (p-units).
    Rational coeff_prec() const {
        bool have = false;
        Rational best;
        for (const auto& [n, v] : c_) {
            Rational a = v.abs_prec();
            if (!have || a < best) {
                best = a;
                have = true;
            }
        }
        return have ? best : Rational(kZeroPrec);
    }

    TruncatedSeries restrict_tail(long new_tail) const {
        if (new_tail >= tail_) return *this;
        TruncatedSeries r(p_, new_tail);
        for (const auto& [n, v] : c_)
            if (n <= new_tail) r.c_[n] = v;
        return r;
    }

    // Floor the absolute precision of every coefficient in [floor_lo, tail].
    TruncatedSeries floor_prec(long abs_p_units, long window_top) const {
        TruncatedSeries r(p_, std::min(tail_, window_top));
        long lo = std::min(ord_lower(), 0L);
        for (long n = lo; n <= r.tail_; ++n) {
            PadicScalar v = coeff(n).truncate_pi(abs_p_units);
            if (!(v.is_zero_at_prec() && v.abs_pi() >= kZeroPrec)) r.c_[n] = v;
        }
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (auto& [n, v] : r.c_) v = -v;
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.p_ != b.p_) throw DomainError("TruncatedSeries: mixed primes");
        TruncatedSeries r(a.p_, std::min(a.tail_, b.tail_));
        for (const auto& [n, v] : a.c_)
            if (r.known(n)) r.set(n, v + b.safe(n));
        for (const auto& [n, v] : b.c_)
            if (r.known(n) && a.c_.find(n) == a.c_.end()) r.set(n, a.safe(n) + v);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const PadicScalar& s, const TruncatedSeries& f) {
        TruncatedSeries r = f;
        for (auto& [n, v] : r.c_) v = s * v;
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.p_ != b.p_) throw DomainError("TruncatedSeries: mixed primes");
        long tail = kTailExact;
        if (!a.exact()) tail = std::min(tail, a.tail_ + b.ord_lower());
        if (!b.exact()) tail = std::min(tail, b.tail_ + a.ord_lower());
        TruncatedSeries r(a.p_, tail);
        std::map<long, PadicScalar> acc;
        for (const auto& [i, x] : a.c_)
            for (const auto& [j, y] : b.c_) {
                long n = i + j;
                if (!r.known(n)) continue;
                auto it = acc.find(n);
                if (it == acc.end())
                    acc.emplace(n, x * y);
                else
                    it->second = it->second + x * y;
            }
        for (auto& [n, v] : acc) r.set(n, v);
        return r;
    }

    std::string str() const {
        std::string s;
        for (const auto& [n, v] : c_) {
            if (!s.empty()) s += " + ";
            s += "(" + v.str() + ")*T^" + std::to_string(n);
        }
        if (s.empty()) s = "0";
        if (!exact()) s += " + O(T^" + std::to_string(tail_ + 1) + ")";
        return s;
    }

private:
    PadicScalar safe(long n) const {
        auto it = c_.find(n);
        return it == c_.end() ? PadicScalar::zero(p_, kZeroPrec) : it->second;
    }

    long p_;
    std::map<long, PadicScalar> c_;
    long tail_;
};

// (1+T)^a for an exact integer exponent; exact polynomial when a >= 0,
// otherwise a truncation to the given order.
inline TruncatedSeries one_plus_T_pow_int(long p, const Int& a, long order = kDefaultOrder,
                                          int rel = kDefaultPrec) {
    if (a >= 0) {
        TruncatedSeries f(p);
        long n = a.get_si();
        for (long k = 0; k <= n; ++k)
            f.set(k, PadicScalar::from_int(p, detail::pascal(n, k), rel));
        return f;
    }
    TruncatedSeries f(p, order);
    PadicScalar c = PadicScalar::one(p, rel);
    f.set(0, c);
    for (long n = 1; n <= order; ++n) {
        c = c * PadicScalar::from_rational(p, Rational(a - (n - 1)), rel) /
            PadicScalar::from_int(p, n, rel);
        f.set(n, c);
    }
    return f;
}

// (1+T)^a for a p-adic integer exponent given as a residue; the coefficient
// precision follows from the residue's precision.
inline TruncatedSeries one_plus_T_pow(long p, const PadicScalar& a, long order = kDefaultOrder) {
    TruncatedSeries f(p, order);
    PadicScalar c = PadicScalar::one(p, std::max(a.rel_prec(), 1) + 8);
    f.set(0, c);
    for (long n = 1; n <= order; ++n) {
        c = c * (a - PadicScalar::from_int(p, n - 1, kDefaultPrec)) /
            PadicScalar::from_int(p, n, kDefaultPrec);
        f.set(n, c);
    }
    return f;
}

// Multiplicative inverse of a series with invertible constant term.
inline TruncatedSeries series_inverse(const TruncatedSeries& u, long order) {
    long p = u.prime();
    if (u.ord_lower() < 0) throw DomainError("series_inverse: power series required");
    PadicScalar u0 = u.coeff(0);
    if (!u0.definitely_nonzero())
        throw PrecisionError("series_inverse: constant term indistinguishable from 0");
    PadicScalar inv0 = u0.inverse();
    long tail = std::min(order, u.exact() ? order : u.tail_order());
    TruncatedSeries r(p, tail);
    std::vector<PadicScalar> c(static_cast<size_t>(tail) + 1, PadicScalar::zero(p, kZeroPrec));
    c[0] = inv0;
    r.set(0, inv0);
    for (long n = 1; n <= tail; ++n) {
        PadicScalar s = PadicScalar::zero(p, kZeroPrec);
        for (long k = 1; k <= n; ++k) s = s + u.coeff(k) * c[static_cast<size_t>(n - k)];
        c[static_cast<size_t>(n)] = -(inv0 * s);
        r.set(n, c[static_cast<size_t>(n)]);
    }
    return r;
}

// f(g) for a substitution g with T-order exactly 1; Laurent tails of f go
// through g^{-1} = T^{-1} (g/T)^{-1}.
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g,
                               long order = kDefaultOrder) {
    long p = f.prime();
    if (g.ord_lower() < 1 || !g.known(1) || !g.coeff(1).definitely_nonzero())
        throw DomainError("compose: substitution must have T-order exactly 1");
    long out_tail = order;
    if (!f.exact()) out_tail = std::min(out_tail, f.tail_order());
    if (!g.exact()) out_tail = std::min(out_tail, g.tail_order());
    bool out_exact = f.exact() && g.exact() && f.ord_lower() >= 0;

    TruncatedSeries pos = TruncatedSeries::zero(p);
    long top = f.top_stored();
    if (top >= 0) {
        for (long n = top; n >= 0; --n) {
            pos = pos * g;
            if (!out_exact) pos = pos.restrict_tail(out_tail);
            PadicScalar cn = f.known(n) ? f.coeff(n) : PadicScalar::zero(p, kZeroPrec);
            pos = pos + TruncatedSeries::monomial(p, 0, cn);
        }
    }
    TruncatedSeries res = pos;
    long lo = f.ord_lower();
    if (lo < 0) {
        out_exact = false;
        long need = out_tail - lo;
        TruncatedSeries u(p, g.exact() ? need : g.tail_order() - 1);
        long utail = std::min(need, u.tail_order());
        for (long n = 0; n <= utail; ++n)
            if (g.known(n + 1)) u.set(n, g.coeff(n + 1));
        u = u.restrict_tail(utail);
        TruncatedSeries uinv = series_inverse(u, utail);
        TruncatedSeries upow = TruncatedSeries::one(p);
        TruncatedSeries acc = TruncatedSeries::zero(p);
        for (long n = -1; n >= lo; --n) {
            upow = (upow * uinv).restrict_tail(out_tail - n);
            if (!f.known(n)) continue;
            auto it = f.coeffs().find(n);
            if (it == f.coeffs().end()) continue;
            const PadicScalar& cn = it->second;
            TruncatedSeries term(p, out_tail);
            for (const auto& [e, v] : upow.coeffs())
                if (e + n <= out_tail) term.set(e + n, cn * v);
            acc = acc + term;
        }
        res = res + acc;
    }
    if (!out_exact) res = res.restrict_tail(out_tail);
    return res;
}

// phi(f) = f((1+T)^p - 1).
namespace detail {

// (1+T)^a - 1 with the (mathematically exact) zero constant term erased.
inline TruncatedSeries power_substitution(TruncatedSeries g) {
    g.set(0, PadicScalar::zero(g.prime(), kZeroPrec));
    return g;
}

} // namespace detail

inline TruncatedSeries frobenius_phi(const TruncatedSeries& f, long order = kDefaultOrder) {
    long p = f.prime();
    TruncatedSeries g =
        detail::power_substitution(one_plus_T_pow_int(p, p) - TruncatedSeries::one(p));
    long ord = order;
    if (f.exact())
        ord = std::max(order, p * std::max(f.top_stored(), 0L) + p * std::max(0L, -f.ord_lower()));
    return compose(f, g, ord);
}

// gamma_a(f) = f((1+T)^a - 1) for a unit a given as a residue.
inline TruncatedSeries gamma_act(const PadicScalar& a, const TruncatedSeries& f,
                                 long order = kDefaultOrder) {
    long p = f.prime();
    if (!a.definitely_nonzero() || a.val().value() != 0)
        throw DomainError("gamma_act: exponent must be a unit");
    long need = order;
    if (!f.exact()) need = std::min(need, f.tail_order());
    TruncatedSeries g = detail::power_substitution(
        one_plus_T_pow(p, a, need + std::max(0L, -f.ord_lower()) + 1) - TruncatedSeries::one(p));
    return compose(f, g, need);
}

// gamma_a for an exact integer unit a; exact output on exact polynomial input
// when a >= 0.
inline TruncatedSeries gamma_act_int(const Int& a, const TruncatedSeries& f,
                                     long order = kDefaultOrder) {
    long p = f.prime();
    if (mod_pos(a, p) == 0) throw DomainError("gamma_act_int: exponent must be a unit");
    long need = order;
    if (!f.exact()) need = std::min(need, f.tail_order());
    if (a >= 0 && f.exact() && f.ord_lower() >= 0) {
        TruncatedSeries g =
            detail::power_substitution(one_plus_T_pow_int(p, a) - TruncatedSeries::one(p));
        return compose(f, g, need);
    }
    TruncatedSeries g = detail::power_substitution(
        one_plus_T_pow_int(p, a, need + std::max(0L, -f.ord_lower()) + 1) -
        TruncatedSeries::one(p));
    return compose(f, g, need);
}

namespace detail {

// Exact polynomial -> coordinates in the (1+T)-basis (finite support).
inline std::map<long, PadicScalar> to_onepT(const TruncatedSeries& f) {
    if (!f.exact() || f.ord_lower() < 0)
        throw ContractError("psi/res_restrict: input must be an exact polynomial in T");
    long p = f.prime();
    std::map<long, PadicScalar> out;
    for (const auto& [n, v] : f.coeffs()) {
        for (long j = 0; j <= n; ++j) {
            Int b = pascal(n, j);
            if ((n - j) % 2) b = -b;
            PadicScalar add = v * PadicScalar::from_int(p, b, kDefaultPrec + 16);
            auto it = out.find(j);
            if (it == out.end())
                out.emplace(j, add);
            else
                it->second = it->second + add;
        }
    }
    return out;
}

inline TruncatedSeries from_onepT(long p, const std::map<long, PadicScalar>& b) {
    TruncatedSeries r(p);
    std::map<long, PadicScalar> acc;
    for (const auto& [e, v] : b) {
        if (e < 0) throw ContractError("from_onepT: negative (1+T)-exponent");
        for (long k = 0; k <= e; ++k) {
            PadicScalar add = v * PadicScalar::from_int(p, pascal(e, k), kDefaultPrec + 16);
            auto it = acc.find(k);
            if (it == acc.end())
                acc.emplace(k, add);
            else
                it->second = it->second + add;
        }
    }
    for (const auto& [k, v] : acc) r.set(k, v);
    return r;
}

} // namespace detail

// psi: the left inverse of phi, extracting the i = 0 component of the unique
// decomposition g = sum_{i=0}^{p-1} (1+T)^i phi(g_i).  Exact on polynomials.
inline TruncatedSeries psi(const TruncatedSeries& f) {
    long p = f.prime();
    auto basis = detail::to_onepT(f);
    std::map<long, PadicScalar> out;
    for (const auto& [e, v] : basis) {
        if (e % p != 0) continue;
        auto it = out.find(e / p);
        if (it == out.end())
            out.emplace(e / p, v);
        else
            it->second = it->second + v;
    }
    return detail::from_onepT(p, out);
}

// psi on a truncated series: the unknown tail must come with a caller-supplied
// valuation floor (p-units) on all discarded coefficients; the result is
// certified only to that floor.
inline TruncatedSeries psi(const TruncatedSeries& f, const Rational& tail_val_floor) {
    long p = f.prime();
    if (f.exact()) return psi(f);
    if (f.ord_lower() < 0) throw ContractError("psi: Laurent tails not supported");
    TruncatedSeries window(p);
    for (const auto& [n, v] : f.coeffs()) window.set(n, v);
    TruncatedSeries r = psi(window);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), tail_val_floor.get_num().get_mpz_t(),
               tail_val_floor.get_den().get_mpz_t());
    return r.floor_prec(fl.get_si(), f.tail_order() / p);
}

// Res_{i+p^n Z_p}(f) = (1+T)^i phi^n psi^n ((1+T)^{-i} f) on exact polynomials;
// in the (1+T)-basis this keeps exactly the exponents congruent to i mod p^n.
inline TruncatedSeries res_restrict(const TruncatedSeries& f, const Int& i, int n) {
    long p = f.prime();
    Int pn = pow_long(p, n);
    Int i0 = mod_pos(i, pn);
    auto basis = detail::to_onepT(f);
    std::map<long, PadicScalar> out;
    for (const auto& [e, v] : basis) {
        if (mod_pos(Int(e) - i0, pn) != 0) continue;
        out.emplace(e, v);
    }
    return detail::from_onepT(p, out);
}

// res_0(g dT) = a_{-1}.
inline PadicScalar residue_at_zero(const TruncatedSeries& g) {
    if (!g.known(-1))
        throw PrecisionError("residue_at_zero: exponent -1 outside certified window");
    return g.coeff(-1);
}

inline TruncatedSeries derivative(const TruncatedSeries& f, long j = 1) {
    long p = f.prime();
    TruncatedSeries r = f;
    for (long step = 0; step < j; ++step) {
        TruncatedSeries d(p, r.exact() ? kTailExact : r.tail_order() - 1);
        for (const auto& [n, v] : r.coeffs()) {
            if (n == 0) continue;
            if (d.known(n - 1)) d.set(n - 1, v * PadicScalar::from_int(p, n, kDefaultPrec + 16));
        }
        r = d;
    }
    return r;
}

inline void require_small(const PadicScalar& x) {
    Valuation v = x.val();
    if (!(v.v > 0)) throw PrecisionError("evaluation point must satisfy |x| < 1");
}

inline PadicScalar eval_at(const TruncatedSeries& f, const PadicScalar& x) {
    require_small(x);
    if (f.ord_lower() < 0) throw DomainError("eval_at: Laurent input");
    long top = f.exact() ? f.top_stored() : std::min(f.top_stored(), f.tail_order());
    PadicScalar acc = PadicScalar::zero(f.prime(), kZeroPrec);
    for (long n = top; n >= 0; --n) {
        acc = acc * x;
        auto it = f.coeffs().find(n);
        if (it != f.coeffs().end()) acc = acc + it->second;
    }
    return acc;
}

inline CycloElement eval_at(const TruncatedSeries& f, const CycloElement& x) {
    if (f.ord_lower() < 0) throw DomainError("eval_at: Laurent input");
    long top = f.exact() ? f.top_stored() : std::min(f.top_stored(), f.tail_order());
    CycloElement acc = CycloElement::zero(f.prime(), x.level(), kZeroPrec);
    for (long n = top; n >= 0; --n) {
        acc = acc * x;
        auto it = f.coeffs().find(n);
        if (it != f.coeffs().end())
            acc = acc + CycloElement::from_scalar(it->second, x.level());
    }
    return acc;
}

// res_0( g / prod (T - a_i)^{k_i} dT ) for pairwise distinct |a_i| < 1.
//
// The coefficient a_{-1} of the Laurent expansion on the unit annulus is the
// sum of the local residues at the poles: at a_i it is the degree-(k_i - 1)
// Taylor coefficient of g(T) prod_{j != i} (T - a_j)^{-k_j} around a_i,
// i.e. (1/(k_i-1)!) (d/dT)^{k_i-1}[g prod_{j!=i}(T-a_j)^{-k_j}] (a_i).
// For a single pole, and for all-simple poles, this is the classical
// (1/((k-1)! prod (a_i-a_j)^{k_j})) g^{(k-1)}(a_i) evaluation.
struct Pole {
    PadicScalar a;
    long k;
};

inline PadicScalar partial_fraction_residue(const TruncatedSeries& g,
                                            const std::vector<Pole>& poles) {
    long p = g.prime();
    for (const auto& pl : poles) {
        if (pl.k < 1) throw DomainError("partial_fraction_residue: pole order must be >= 1");
        if (!pl.a.definitely_nonzero() || !(pl.a.val().value() > 0))
            throw PrecisionError("partial_fraction_residue: |a| < 1 unresolvable");
    }
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (!(poles[i].a - poles[j].a).definitely_nonzero())
                throw DomainError("partial_fraction_residue: coincident poles");
    PadicScalar acc = PadicScalar::zero(p, kZeroPrec);
    for (size_t i = 0; i < poles.size(); ++i) {
        long K = poles[i].k;
        // Taylor window of g around a_i: g^{(t)}(a_i)/t!
        std::vector<PadicScalar> loc(static_cast<size_t>(K), PadicScalar::zero(p, kZeroPrec));
        Int fact = 1;
        for (long t = 0; t < K; ++t) {
            if (t > 1) fact *= t;
            loc[static_cast<size_t>(t)] = eval_at(derivative(g, t), poles[i].a) /
                                          PadicScalar::from_int(p, fact, kDefaultPrec + 16);
        }
        // multiply by ((a_i - a_j) + u)^{-k_j} for each other pole
        for (size_t j = 0; j < poles.size(); ++j) {
            if (j == i) continue;
            PadicScalar d = poles[i].a - poles[j].a;
            std::vector<PadicScalar> b(static_cast<size_t>(K));
            for (long t = 0; t < K; ++t) {
                PadicScalar c = PadicScalar::from_int(
                                    p, detail::pascal(poles[j].k - 1 + t, t), kDefaultPrec + 16) *
                                d.pow(-poles[j].k - t);
                b[static_cast<size_t>(t)] = (t % 2) ? -c : c;
            }
            std::vector<PadicScalar> nx(static_cast<size_t>(K), PadicScalar::zero(p, kZeroPrec));
            for (long s = 0; s < K; ++s)
                for (long t = 0; s + t < K; ++t)
                    nx[static_cast<size_t>(s + t)] =
                        nx[static_cast<size_t>(s + t)] +
                        loc[static_cast<size_t>(s)] * b[static_cast<size_t>(t)];
            loc = std::move(nx);
        }
        acc = acc + loc[static_cast<size_t>(K - 1)];
    }
    return acc;
}

// sup_i |a_i| p^{-r i} over the certified window, through the exponent:
// norm = p^{-min_exponent}.
struct SeriesNorm {
    Rational min_exponent;
    bool window_only; // an unknown tail could still raise the sup
    bool uncertain;   // a below-precision coefficient could still raise it
};

inline SeriesNorm sup_norm_r(const TruncatedSeries& f, const Rational& r) {
    bool have = false;
    Rational best;
    bool uncertain = false;
    std::vector<Rational> pendings;
    for (const auto& [n, v] : f.coeffs()) {
        Valuation val = v.val();
        Rational cand = val.v + r * n;
        if (val.lower_bound) {
            pendings.push_back(cand);
            continue;
        }
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    if (!have) return SeriesNorm{Rational(kZeroPrec), !f.exact(), !pendings.empty()};
    for (const auto& c : pendings)
        if (c < best) uncertain = true;
    return SeriesNorm{best, !f.exact(), uncertain};
}

// ||.||_{rho_h} with rho_h = p^{-1/((p-1)p^h)}.
inline SeriesNorm sup_norm_rho(const TruncatedSeries& f, int h) {
    long p = f.prime();
    Rational r(1, (p - 1) * pow_long(p, h).get_si());
    return sup_norm_r(f, r);
}

// log(1+T) truncated at the given order.
inline TruncatedSeries log_one_plus_T(long p, long N, int rel = kDefaultPrec) {
    if (N < 1) throw DomainError("log_one_plus_T: order must be >= 1");
    TruncatedSeries f(p, N);
    for (long n = 1; n <= N; ++n)
        f.set(n, PadicScalar::from_rational(p, Rational(n % 2 ? 1 : -1, n), rel));
    return f;
}

// Power-series division a/b to the given order.
inline TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b, long order) {
    long lb = 0;
    bool found = false;
    for (const auto& [n, v] : b.coeffs()) {
        if (v.definitely_nonzero()) {
            lb = n;
            found = true;
            break;
        }
        throw PrecisionError("series_div: leading divisor coefficient indistinguishable from 0");
    }
    if (!found) throw PrecisionError("series_div: divisor indistinguishable from 0");
    long extra = std::max(0L, lb - a.ord_lower());
    TruncatedSeries bs(b.prime(), b.exact() ? order + extra : b.tail_order() - lb);
    for (const auto& [n, v] : b.coeffs())
        if (bs.known(n - lb)) bs.set(n - lb, v);
    TruncatedSeries inv = series_inverse(bs, order + extra);
    TruncatedSeries shifted(a.prime(), a.exact() ? kTailExact : a.tail_order() - lb);
    for (const auto& [n, v] : a.coeffs())
        if (shifted.known(n - lb)) shifted.set(n - lb, v);
    return (shifted * inv).restrict_tail(order);
}

// Finite element of the group algebra of Gamma ~ Z_p^x: sum of c_gamma gamma
// with chi(gamma) = a, the a's unit residues known modulo p^H.
class GroupAlgebraElement {
public:
    GroupAlgebraElement(long p, int H) : p_(p), H_(H) {}

    long prime() const { return p_; }
    int residue_prec() const { return H_; }
    const std::vector<std::pair<Int, PadicScalar>>& terms() const { return t_; }

    void add_term(const Int& a, const PadicScalar& c) {
        Int pH = pow_long(p_, H_);
        Int r = mod_pos(a, pH);
        if (r % p_ == 0) throw DomainError("GroupAlgebraElement: chi(gamma) must be a unit");
        for (auto& [b, v] : t_)
            if (b == r) {
                v = v + c;
                return;
            }
        t_.emplace_back(r, c);
    }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const {
        GroupAlgebraElement r = *this;
        for (const auto& [a, c] : o.t_) r.add_term(a, c);
        return r;
    }

    // lambda(f) = sum c_a gamma_a(f).
    TruncatedSeries act(const TruncatedSeries& f, long order = kDefaultOrder) const {
        TruncatedSeries acc = TruncatedSeries::zero(p_).restrict_tail(
            f.exact() ? order : std::min(order, f.tail_order()));
        for (const auto& [a, c] : t_) {
            PadicScalar ar = PadicScalar::make(p_, 1, 0, a, H_);
            acc = acc + c * gamma_act(ar, f, order);
        }
        return acc;
    }

    // Mellin: lambda -> lambda(1+T) = sum c_a (1+T)^a, truncated at order N.
    TruncatedSeries mellin(long N) const {
        TruncatedSeries acc = TruncatedSeries::zero(p_).restrict_tail(N);
        for (const auto& [a, c] : t_) {
            PadicScalar ar = PadicScalar::make(p_, 1, 0, a, H_);
            acc = acc + c * one_plus_T_pow(p_, ar, N);
        }
        return acc;
    }

    // Same under the promise that the stored residues are the exact integer
    // exponents; exact polynomial output.
    TruncatedSeries mellin_exact() const {
        TruncatedSeries acc = TruncatedSeries::zero(p_);
        for (const auto& [a, c] : t_) acc = acc + c * one_plus_T_pow_int(p_, a);
        return acc;
    }

    // T_{tau,n}: gamma -> tau(chi(gamma)) gamma^n.
    GroupAlgebraElement twist(const ContinuousCharacter& tau, long n) const {
        GroupAlgebraElement r(p_, H_);
        Int pH = pow_long(p_, H_);
        for (const auto& [a, c] : t_) {
            Int base = n >= 0 ? a : inv_mod(a, pH);
            Int e(n >= 0 ? n : -n);
            Int pw;
            mpz_powm(pw.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), pH.get_mpz_t());
            PadicScalar tv = tau.eval_unit(a, H_).expect_scalar("twist_group_algebra");
            r.add_term(pw, c * tv);
        }
        return r;
    }

private:
    long p_;
    int H_;
    std::vector<std::pair<Int, PadicScalar>> t_;
};

// Formal psi on a finite combination sum c_a (1+T)^a: terms with a unit a die,
// terms with p | a map to (1+T)^{a/p}.
inline std::vector<std::pair<Int, PadicScalar>> psi_formal_onepT(
    long p, const std::vector<std::pair<Int, PadicScalar>>& terms, int H) {
    std::vector<std::pair<Int, PadicScalar>> out;
    Int pH1 = pow_long(p, std::max(H - 1, 1));
    for (const auto& [a, c] : terms) {
        if (mod_pos(a, p) != 0) continue;
        out.emplace_back(mod_pos(a / p, pH1), c);
    }
    return out;
}

// {x, y} = res_0( sum_i gamma_{-1}(x_i) y_i dT/(1+T) ).
inline PadicScalar duality_pairing(const std::vector<TruncatedSeries>& xs,
                                   const std::vector<TruncatedSeries>& ys,
                                   long order = kDefaultOrder) {
    if (xs.empty() || xs.size() != ys.size())
        throw DomainError("duality_pairing: coordinate vectors must match");
    long p = xs[0].prime();
    TruncatedSeries acc = TruncatedSeries::zero(p).restrict_tail(order);
    PadicScalar minus1 = PadicScalar::from_int(p, -1, kDefaultPrec);
    TruncatedSeries inv1T = one_plus_T_pow_int(p, -1, order + 8);
    for (size_t i = 0; i < xs.size(); ++i)
        acc = acc + gamma_act(minus1, xs[i], order) * ys[i] * inv1T;
    return residue_at_zero(acc);
}

} // namespace padic
