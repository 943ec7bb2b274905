#include "rotwalk/exact.hpp"

#include <sstream>

namespace rotwalk {

AffineForm AffineForm::f(const Angle& a, long long h) {
    if (h < -1) throw Error("f index must be >= -1");
    int sign = ((h % 2 + 2) % 2 == 0) ? 1 : -1;
    return {a, Rat(a.p(h)) * (-sign), Rat(a.q(h)) * sign};
}

QuadValue AffineForm::as_quad() const {
    if (!angle_.surd()) throw MixedField("angle has no exact surd value");
    return QuadValue(c1_) * *angle_.surd() + QuadValue(c0_);
}

QInterval AffineForm::enclosure(unsigned bits) const {
    if (angle_.surd()) return as_quad().enclosure(bits);
    if (c1_ == 0) return QInterval::point(c0_);
    Rat target = make_rat(1, Int(1) << bits);
    long long maxd = angle_.max_depth();
    for (long long d = 4;; d = (maxd >= 0 && d >= maxd) ? d + 1 : d * 2) {
        if (maxd >= 0 && d > maxd) d = maxd;
        QInterval v = angle_.cylinder(d) * c1_ + QInterval::point(c0_);
        if (v.width() <= target) return v;
        if (maxd >= 0 && d >= maxd) return v; // tightest certified enclosure
    }
}

std::string AffineForm::str() const {
    if (c1_ == 0) return to_string(c0_);
    if (angle_.surd()) return as_quad().str();
    std::ostringstream os;
    if (c0_ != 0) os << to_string(c0_) << (sgn(c1_) >= 0 ? "+" : "");
    if (c1_ == 1) {
        os << "a";
    } else if (c1_ == -1) {
        os << "-a";
    } else {
        os << to_string(c1_) << "*a";
    }
    return os.str();
}

Int floor_multiple(const Angle& angle, const Int& r) {
    return angle.floor_affine(Rat(0), Rat(r));
}

AffineForm frac_multiple(const Angle& angle, const Int& r) {
    Int k = floor_multiple(angle, r);
    return {angle, Rat(-k), Rat(r)};
}

Ordering frac_compare(const Int& r, const Angle& angle, const Threshold& threshold) {
    if (r < 0) throw Error("frac_compare: r must be >= 0");
    AffineForm fr = frac_multiple(angle, r);
    int s;
    if (std::holds_alternative<Rat>(threshold)) {
        s = (fr - std::get<Rat>(threshold)).sign();
    } else if (std::holds_alternative<AffineForm>(threshold)) {
        s = (fr - std::get<AffineForm>(threshold)).sign();
    } else {
        const QuadValue& t = std::get<QuadValue>(threshold);
        if (t.is_rational()) {
            s = (fr - t.rational()).sign();
        } else {
            s = (fr.as_quad() - t).sign();
        }
    }
    if (s == 0)
        throw EqualityDetected("frac_compare: {r*alpha} equals threshold at r=" + r.get_str());
    return s < 0 ? Ordering::Less : Ordering::Greater;
}

OrbitStepper::OrbitStepper(Angle angle, AffineForm start)
    : angle_(std::move(angle)), cur_(std::move(start)) {
    if (cur_.sign() < 0 || (cur_ - Rat(1)).sign() >= 0)
        throw Error("orbit start must lie in [0,1)");
}

void OrbitStepper::step() {
    cur_ = AffineForm(angle_, cur_.c0(), cur_.c1() + 1);
    if ((cur_ - Rat(1)).sign() >= 0) cur_ = cur_ - Rat(1);
}

std::string scalar_str(const Scalar& s) {
    if (std::holds_alternative<Rat>(s)) return to_string(std::get<Rat>(s));
    if (std::holds_alternative<QuadValue>(s)) return std::get<QuadValue>(s).str();
    return std::get<AffineForm>(s).str();
}

QInterval scalar_enclosure(const Scalar& s, unsigned bits) {
    if (std::holds_alternative<Rat>(s)) return QInterval::point(std::get<Rat>(s));
    if (std::holds_alternative<QuadValue>(s)) return std::get<QuadValue>(s).enclosure(bits);
    return std::get<AffineForm>(s).enclosure(bits);
}

double scalar_double(const Scalar& s) {
    return scalar_enclosure(s, 64).lo.get_d();
}

} // namespace rotwalk
