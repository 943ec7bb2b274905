#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "rotwalk/errors.hpp"

namespace rotwalk {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructor; on LP64 long is wide enough.
inline Int zi(long long v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw Error("zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int floor_rat(const Rat& x) {
    return floor_div(x.get_num(), x.get_den());
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Splits n = s^2 * k with k squarefree, by trial division. Factors beyond
// the trial bound stay inside k; values of that size do not arise from the
// descriptor grammar.
inline std::pair<Int, Int> extract_square(const Int& n) {
    Int k = n, s = 1;
    if (k == 0) return {0, 0};
    for (Int i = 2; i * i <= k && i < 100000; ++i) {
        Int ii = i * i;
        while (mpz_divisible_p(k.get_mpz_t(), ii.get_mpz_t())) {
            k /= ii;
            s *= i;
        }
    }
    if (is_square(k)) {
        s *= isqrt(k);
        k = 1;
    }
    return {s, k};
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// Closed interval with exact rational endpoints.
struct QInterval {
    Rat lo, hi;

    QInterval() = default;
    QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("interval endpoints out of order");
    }
    static QInterval point(Rat v) { return {v, v}; }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator*(const QInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    QInterval operator*(const Rat& r) const {
        if (sgn(r) >= 0) return {lo * r, hi * r};
        return {hi * r, lo * r};
    }
    QInterval operator/(const QInterval& o) const {
        if (sgn(o.lo) <= 0 && sgn(o.hi) >= 0) throw Error("interval division by zero");
        Rat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    QInterval& operator+=(const QInterval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }

    // Sign of every point in the interval; 0 means undecided (straddles 0).
    int certain_sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }
};

} // namespace rotwalk
