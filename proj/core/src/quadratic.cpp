#include "rotwalk/quadratic.hpp"

#include <sstream>

namespace rotwalk {

QuadValue::QuadValue(Int p, Int q, Int r, Int d)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {
    if (r_ == 0) throw Error("QuadValue: zero denominator");
    if (d_ < 0) throw Error("QuadValue: negative radicand");
    if (q_ != 0) {
        auto [s, k] = extract_square(d_);
        if (k == 1 || d_ == 1) { // perfect square: fold into the rational part
            p_ += q_ * s;
            q_ = 0;
            d_ = 0;
        } else if (s != 1) {
            q_ *= s;
            d_ = k;
        }
    }
    canonicalize();
}

void QuadValue::canonicalize() {
    if (q_ == 0) d_ = 0;
    if (d_ == 0) q_ = 0;
    if (r_ < 0) {
        r_ = -r_;
        p_ = -p_;
        q_ = -q_;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

Rat QuadValue::rational() const {
    if (!is_rational()) throw Error("QuadValue: not rational");
    return make_rat(p_, r_);
}

int QuadValue::sign() const {
    // sign of p + q*sqrt(d) (r > 0)
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Int lhs = p_ * p_, rhs = q_ * q_ * d_;
    int c = cmp(lhs, rhs);
    if (c == 0) throw EqualityDetected("QuadValue: radicand comparison hit equality");
    return (c > 0) ? sp : sq;
}

Int QuadValue::floor() const {
    // floor(q*sqrt(d)) first, then divide by r with one exact fixup.
    Int qr;
    if (q_ >= 0) {
        qr = isqrt(q_ * q_ * d_);
    } else {
        Int t = q_ * q_ * d_;
        Int u = isqrt(t);
        qr = -u - (is_square(t) ? 0 : 1);
    }
    Int cand = floor_div(p_ + qr, r_);
    // p + q*sqrt(d) lies in [p+qr, p+qr+1), so cand is exact or one short.
    QuadValue diff = *this - QuadValue(Rat(cand + 1));
    if (diff.sign() >= 0) cand += 1;
    return cand;
}

Int QuadValue::common_d(const QuadValue& a, const QuadValue& b) {
    if (a.d_ == 0) return b.d_;
    if (b.d_ == 0) return a.d_;
    if (a.d_ != b.d_)
        throw MixedField("QuadValue: sqrt(" + a.d_.get_str() + ") vs sqrt(" + b.d_.get_str() + ")");
    return a.d_;
}

QuadValue QuadValue::operator+(const QuadValue& o) const {
    Int d = common_d(*this, o);
    QuadValue out(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, r_ * o.r_, d, nocanon{});
    out.canonicalize();
    return out;
}

QuadValue QuadValue::operator-(const QuadValue& o) const { return *this + (-o); }

QuadValue QuadValue::operator*(const QuadValue& o) const {
    Int d = common_d(*this, o);
    QuadValue out(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_, r_ * o.r_, d, nocanon{});
    out.canonicalize();
    return out;
}

QuadValue QuadValue::operator/(const QuadValue& o) const {
    if (o.p_ == 0 && o.q_ == 0) throw Error("QuadValue: division by zero");
    Int d = common_d(*this, o);
    // 1/((p + q*sqrt(d))/r) = r*(p - q*sqrt(d)) / (p^2 - q^2 d)
    Int norm = o.p_ * o.p_ - o.q_ * o.q_ * d;
    if (norm == 0) throw EqualityDetected("QuadValue: zero norm");
    QuadValue inv(o.r_ * o.p_, -o.r_ * o.q_, norm, d, nocanon{});
    inv.canonicalize();
    return *this * inv;
}

QInterval QuadValue::enclosure(unsigned bits) const {
    if (is_rational()) return QInterval::point(make_rat(p_, r_));
    // sqrt(d) in [s/2^bits, (s+1)/2^bits] with s = isqrt(d * 4^bits)
    Int scale = Int(1) << bits;
    Int s = isqrt(d_ * scale * scale);
    QInterval root(make_rat(s, scale), make_rat(s + 1, scale));
    QInterval v = root * Rat(q_);
    v += QInterval::point(Rat(p_));
    return v * make_rat(1, r_);
}

double QuadValue::to_double() const {
    QInterval e = enclosure(80);
    return e.lo.get_d();
}

std::string QuadValue::str() const {
    if (is_rational()) return to_string(rational());
    std::ostringstream os;
    os << "(" << p_.get_str() << "+" << q_.get_str() << "*sqrt(" << d_.get_str() << "))/"
       << r_.get_str();
    return os.str();
}

} // namespace rotwalk
