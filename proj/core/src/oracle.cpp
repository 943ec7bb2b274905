#include "rotwalk/oracle.hpp"

#include <algorithm>

namespace rotwalk::oracle {

OrbitScan::OrbitScan(const Angle& angle, const AffineForm& start) : angle_(angle) {
    if (start.sign() < 0 || (start - Rat(1)).sign() >= 0)
        throw Error("orbit start must lie in [0,1)");
    if (angle.surd()) {
        raw_ = true;
        QuadValue b = start.as_quad();
        const QuadValue& a = *angle.surd();
        d_ = a.d() == 0 ? b.d() : a.d();
        // common denominator z
        Int g;
        mpz_gcd(g.get_mpz_t(), a.r().get_mpz_t(), b.r().get_mpz_t());
        z_ = a.r() / g * b.r();
        Int sa = z_ / a.r(), sb = z_ / b.r();
        ax_ = a.p() * sa;
        ay_ = a.q() * sa;
        x_ = b.p() * sb;
        y_ = b.q() * sb;
    } else {
        c0_ = start.c0();
        c1_ = start.c1();
    }
}

int OrbitScan::sign_shifted(const Rat& t0, const Rat& t1) const {
    if (raw_) {
        // sign((x + y sqrt(d))/z - t0 - t1*(ax + ay sqrt(d))/z)
        Int dn = t0.get_den() * t1.get_den();
        Int n0 = t0.get_num() * t1.get_den(), n1 = t1.get_num() * t0.get_den();
        // sign over denominator z*dn > 0:
        Int P = x_ * dn - n0 * z_ - n1 * ax_ * t0.get_den() / t0.get_den() * 1;
        // recompute carefully: value*z*dn = (x + y sqrt d)*dn - t0*z*dn - t1*dn*(ax+ay sqrt d)
        Int t0n = t0.get_num() * t1.get_den(); // t0 as fraction over dn
        Int t1n = t1.get_num() * t0.get_den();
        P = x_ * dn - t0n * z_ - t1n * ax_;
        Int Q = y_ * dn - t1n * ay_;
        // sign of P + Q sqrt(d)
        int sp = sgn(P), sq = sgn(Q);
        if (sq == 0) return sp;
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        int c = cmp(P * P, Q * Q * d_);
        return (c == 0) ? 0 : ((c > 0) ? sp : sq);
    }
    return angle_.sign_affine(c0_ - t0, c1_ - t1);
}

int OrbitScan::cmp_half() const { return sign_shifted(Rat(1, 2), Rat(0)); }

int OrbitScan::cmp(const AffineForm& t) const { return sign_shifted(t.c0(), t.c1()); }

void OrbitScan::advance() {
    if (raw_) {
        x_ += ax_;
        y_ += ay_;
        // wrap if x + y sqrt(d) >= z
        Int P = x_ - z_;
        int sp = sgn(P), sq = sgn(y_);
        bool wrap;
        if (sq == 0)
            wrap = sp >= 0;
        else if (sp == 0)
            wrap = sq >= 0;
        else if (sp == sq)
            wrap = sp > 0;
        else {
            int c = cmp(P * P, y_ * y_ * d_);
            wrap = (c == 0) ? true : ((c > 0) == (sp > 0));
        }
        if (wrap) x_ -= z_;
    } else {
        c1_ += 1;
        if (angle_.sign_affine(c0_ - 1, c1_) >= 0) c0_ -= 1;
    }
}

long long walk(const Int& n, const Angle& angle, const AffineForm& beta) {
    if (n < 0) throw Error("walk horizon must be >= 0");
    angle.check_horizon(n);
    OrbitScan scan(angle, beta);
    long long s = 0;
    for (Int r = 0; r <= n; ++r) {
        s += (scan.cmp_half() < 0) ? 1 : -1;
        if (r < n) scan.advance();
    }
    return s;
}

long long walk_zero(const Int& n, const Angle& angle) {
    return walk(n, angle, AffineForm::constant(angle, Rat(0)));
}

AffineForm drel(const Int& n, const Angle& angle, const AffineForm& beta, bool complemented) {
    if (n < 1) throw Error("drel horizon must be >= 1");
    angle.check_horizon(n);
    if (beta.sign() <= 0 || (beta - Rat(1)).sign() >= 0)
        throw BetaOutOfRange("beta must lie in (0,1)");
    OrbitScan scan(angle, AffineForm::constant(angle, Rat(0)));
    AffineForm one_minus = AffineForm::constant(angle, Rat(1)) - beta;
    long long count = 0;
    for (Int r = 0; r < n; ++r) {
        if (complemented) {
            if (scan.cmp(one_minus) > 0) ++count; // {r a} in (1-beta, 1]
        } else {
            if (scan.cmp(beta) < 0) ++count; // {r a} in [0, beta)
        }
        if (r + 1 < n) scan.advance();
    }
    return AffineForm::constant(angle, Rat(static_cast<long>(count))) - beta * Rat(n);
}

Scalar dstar(const Int& n, const Angle& angle) {
    if (n < 1) throw Error("dstar horizon must be >= 1");
    angle.check_horizon(n);
    // orbit points {r alpha}, r < n
    std::vector<AffineForm> pts;
    pts.reserve(n.get_ui());
    for (Int r = 0; r < n; ++r) pts.push_back(frac_multiple(angle, r));
    // at beta just above p: d -> count_below(p)+mult(p) - n p; just below: count_below(p) - n p
    AffineForm best = AffineForm::constant(angle, Rat(0));
    for (const auto& p : pts) {
        long long below = 0, eq = 0;
        for (const auto& q : pts) {
            int s = (q - p).sign();
            if (s < 0) ++below;
            if (s == 0) ++eq;
        }
        for (AffineForm cand :
             {AffineForm::constant(angle, Rat(static_cast<long>(below + eq))) - p * Rat(n),
              p * Rat(n) - Rat(static_cast<long>(below))}) {
            if ((cand - best).sign() > 0) best = cand;
        }
    }
    // right edge: beta -> 1^-
    AffineForm edge = AffineForm::constant(angle, Rat(n) - Rat(static_cast<long>(n.get_ui())));
    (void)edge; // d -> 0 at beta -> 1, already dominated
    if (angle.surd()) {
        QuadValue v = best.as_quad();
        if (v.is_rational()) return Scalar(v.rational());
        return Scalar(v);
    }
    if (best.c1() == 0) return Scalar(best.c0());
    return Scalar(best);
}

Extrema extrema(const Int& r, const Angle& angle) {
    if (r < 0) throw Error("extrema horizon must be >= 0");
    angle.check_horizon(r);
    OrbitScan scan(angle, AffineForm::constant(angle, Rat(0)));
    long long s = 0;
    Extrema out{-1, 1};
    bool first = true;
    for (Int i = 0; i <= r; ++i) {
        s += (scan.cmp_half() < 0) ? 1 : -1;
        if (first) {
            out.max = out.min = s;
            first = false;
        } else {
            out.max = std::max(out.max, s);
            out.min = std::min(out.min, s);
        }
        if (i < r) scan.advance();
    }
    return out;
}

ReturnScan return_structure(const Int& k_max, const Angle& angle) {
    ReturnScan out;
    OrbitScan scan(angle, AffineForm::constant(angle, Rat(0)));
    // floor(r*alpha) increments exactly when the orbit wraps; track block
    // boundaries by comparing successive fractional parts.
    Int r = 0;
    Int k = 0;
    out.r.push_back(0);
    long long bl = 1;
    AffineForm prev = frac_multiple(angle, 0);
    while (k < k_max + 1) {
        scan.advance();
        r += 1;
        AffineForm cur = frac_multiple(angle, r);
        if ((cur - prev).sign() < 0) { // wrapped: floor increased
            out.t.push_back(bl);
            bl = 0;
            k += 1;
            if (k <= k_max) out.r.push_back(r);
        }
        bl += 1;
        prev = cur;
    }
    return out;
}

} // namespace rotwalk::oracle
