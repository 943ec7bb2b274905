#include "rotwalk/beta.hpp"

#include <algorithm>

namespace rotwalk {

AffineForm beta_affine(const Angle& angle, const Scalar& beta) {
    if (std::holds_alternative<Rat>(beta))
        return AffineForm::constant(angle, std::get<Rat>(beta));
    if (std::holds_alternative<AffineForm>(beta)) {
        const AffineForm& b = std::get<AffineForm>(beta);
        if (b.angle() != angle) throw MixedField("offset bound to a different angle");
        return b;
    }
    const QuadValue& v = std::get<QuadValue>(beta);
    if (v.is_rational()) return AffineForm::constant(angle, v.rational());
    if (!angle.surd())
        throw MixedField("surd offset with a non-quadratic angle descriptor");
    const QuadValue& a = *angle.surd();
    if (a.d() != v.d())
        throw MixedField("offset field sqrt(" + v.d().get_str() + ") differs from angle field");
    // beta = x + y*alpha with y = (v_q r_a)/(v_r q_a), x = v_p/v_r - y p_a/r_a
    Rat y = make_rat(v.q() * a.r(), v.r() * a.q());
    Rat x = make_rat(v.p(), v.r()) - y * make_rat(a.p(), a.r());
    return {angle, x, y};
}

LatticeFlag lattice_test(const AffineForm& beta, std::optional<LatticeWitness>* witness) {
    if (witness) witness->reset();
    bool in = beta.c0().get_den() == 1 && beta.c1().get_den() == 1;
    if (in && witness) *witness = LatticeWitness{beta.c0().get_num(), beta.c1().get_num()};
    return in ? LatticeFlag::InLattice : LatticeFlag::NotInLattice;
}

const AffineForm& BetaExpansion::remainder(long long k) const {
    if (k < 0 || k >= static_cast<long long>(remainders.size()))
        throw DepthExceeded("remainder index past expansion depth");
    return remainders[static_cast<size_t>(k)];
}

BetaExpansion expand(const AffineForm& beta, long long depth) {
    if (depth < 1) throw Error("expansion depth must be >= 1");
    if (beta.sign() <= 0 || (beta - Rat(1)).sign() >= 0)
        throw BetaOutOfRange("beta must lie in (0,1)");

    BetaExpansion out{beta.angle(), beta, {}, {}, lattice_test(beta)};
    out.remainders.push_back(beta);
    AffineForm rem = beta;
    bool dead = false; // remainder hit exact zero
    for (long long k = 0; k < depth; ++k) {
        if (dead) {
            out.digits.push_back(0);
            out.remainders.push_back(rem);
            continue;
        }
        AffineForm fk = AffineForm::f(beta.angle(), k);
        long long cap = beta.angle().quotient(k + 1);
        // b_k = max{c : rem - c f_k >= 0}, binary search on the exact sign
        long long lo = 0, hi = cap;
        while (lo < hi) {
            long long mid = lo + (hi - lo + 1) / 2;
            if ((rem - fk * Rat(static_cast<long>(mid))).sign() >= 0)
                lo = mid;
            else
                hi = mid - 1;
        }
        out.digits.push_back(lo);
        rem = rem - fk * Rat(static_cast<long>(lo));
        if (rem.is_zero()) dead = true;
        out.remainders.push_back(rem);
    }
    return out;
}

BetaExpansion expand(const Angle& angle, const Scalar& beta, long long depth) {
    return expand(beta_affine(angle, beta), depth);
}

std::optional<Scalar> AffineRatio::to_scalar() const {
    if (num.angle().surd()) {
        QuadValue v = num.as_quad() / den.as_quad();
        if (v.is_rational()) return Scalar(v.rational());
        return Scalar(v);
    }
    if (den.c1() == 0) return Scalar(num * (Rat(1) / den.c0()));
    if (num.c1() == 0 && num.c0() == 0) return Scalar(Rat(0));
    return std::nullopt; // genuinely a ratio of linear forms
}

QInterval AffineRatio::enclosure(unsigned bits) const {
    for (unsigned b = std::max(bits, 8u);; b *= 2) {
        QInterval n = num.enclosure(b), d = den.enclosure(b);
        if (d.certain_sign() == 0) {
            if (b > 1u << 14) throw Error("ratio denominator straddles zero");
            continue;
        }
        QInterval v = n / d;
        if (v.width() <= make_rat(1, Int(1) << bits)) return v;
        if (b > 1u << 14) return v; // cylinder exhausted for truncated descriptors
    }
}

int AffineRatio::cmp_rat(const Rat& r) const {
    AffineForm diff = num - den * r;
    return diff.sign();
}

std::string AffineRatio::str() const {
    auto s = to_scalar();
    if (s) return scalar_str(*s);
    return "(" + num.str() + ")/(" + den.str() + ")";
}

RenormOffsets renorm_offsets(const BetaExpansion& exp, long long m) {
    if (m < 1) throw Error("renorm offsets need m >= 1");
    if (m > exp.depth()) throw DepthExceeded("renorm offset index past expansion depth");
    const Angle& a = exp.angle;
    AffineForm beta_m = exp.remainder(m);
    AffineForm fm = AffineForm::f(a, m);
    AffineForm fm1 = AffineForm::f(a, m - 1);
    return RenormOffsets{m, AffineRatio{beta_m, fm}, AffineRatio{beta_m - fm, fm1 - fm}};
}

} // namespace rotwalk
