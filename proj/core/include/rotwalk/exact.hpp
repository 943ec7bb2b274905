#pragma once

#include <string>
#include <variant>

#include "rotwalk/angle.hpp"

namespace rotwalk {

// Exact enclosure type named by the artifact interface; endpoints are exact
// rationals and can be tightened on demand by deepening the convergent table.
using RationalInterval = QInterval;

// c0 + c1 * alpha for a fixed angle descriptor. Sign, comparison and floor
// are exact for every descriptor kind (surd arithmetic when available, a
// convergent walk otherwise).
class AffineForm {
  public:
    AffineForm(Angle angle, Rat c0, Rat c1)
        : angle_(std::move(angle)), c0_(std::move(c0)), c1_(std::move(c1)) {}

    static AffineForm constant(const Angle& a, Rat v) { return {a, std::move(v), Rat(0)}; }
    static AffineForm alpha(const Angle& a) { return {a, Rat(0), Rat(1)}; }
    // f_h = (-1)^h (q_h alpha - p_h); f_{-1} = 1.
    static AffineForm f(const Angle& a, long long h);

    const Rat& c0() const { return c0_; }
    const Rat& c1() const { return c1_; }
    const Angle& angle() const { return angle_; }

    AffineForm operator+(const AffineForm& o) const { return {angle_, c0_ + o.c0_, c1_ + o.c1_}; }
    AffineForm operator-(const AffineForm& o) const { return {angle_, c0_ - o.c0_, c1_ - o.c1_}; }
    AffineForm operator+(const Rat& r) const { return {angle_, c0_ + r, c1_}; }
    AffineForm operator-(const Rat& r) const { return {angle_, c0_ - r, c1_}; }
    AffineForm operator-() const { return {angle_, -c0_, -c1_}; }
    AffineForm operator*(const Rat& r) const { return {angle_, c0_ * r, c1_ * r}; }

    int sign() const { return angle_.sign_affine(c0_, c1_); }
    bool is_zero() const { return c0_ == 0 && c1_ == 0; }

    bool operator<(const AffineForm& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const AffineForm& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const AffineForm& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const AffineForm& o) const { return (*this - o).sign() >= 0; }
    bool operator==(const AffineForm& o) const { return (*this - o).sign() == 0; }

    Int floor() const { return angle_.floor_affine(c0_, c1_); }
    AffineForm frac() const { return {angle_, c0_ - Rat(floor()), c1_}; }

    QuadValue as_quad() const;
    QInterval enclosure(unsigned bits) const;
    double to_double() const { return enclosure(64).lo.get_d(); }
    std::string str() const;

  private:
    Angle angle_;
    Rat c0_, c1_;
};

// floor(r * alpha) and {r * alpha}, exact.
Int floor_multiple(const Angle& angle, const Int& r);
AffineForm frac_multiple(const Angle& angle, const Int& r);

enum class Ordering { Less, Greater };

// Exact comparison of {r*alpha} against an exact threshold. Equality would
// contradict irrationality of the descriptor and raises EqualityDetected.
using Threshold = std::variant<Rat, QuadValue, AffineForm>;
Ordering frac_compare(const Int& r, const Angle& angle, const Threshold& threshold);

// Steps {x0 + i*alpha} incrementally with exact wrap detection.
class OrbitStepper {
  public:
    OrbitStepper(Angle angle, AffineForm start);

    const AffineForm& value() const { return cur_; }
    void step();

  private:
    Angle angle_;
    AffineForm cur_;
};

// Exact scalar for reporting: rational, quadratic surd, or a linear form in
// the angle (how irrational exact values print for rule-based descriptors).
using Scalar = std::variant<Rat, QuadValue, AffineForm>;

std::string scalar_str(const Scalar& s);
QInterval scalar_enclosure(const Scalar& s, unsigned bits);
double scalar_double(const Scalar& s);

} // namespace rotwalk
