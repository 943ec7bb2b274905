#pragma once

#include <optional>
#include <string>

#include "rotwalk/numeric.hpp"

namespace rotwalk {

// Exact element (p + q*sqrt(d))/r of a real quadratic field, canonical with
// gcd(p,q,r) = 1, r > 0 and d squarefree (d = 0 encodes a rational).
class QuadValue {
  public:
    QuadValue() : p_(0), q_(0), r_(1), d_(0) {}
    QuadValue(Int p, Int q, Int r, Int d);
    /* implicit */ QuadValue(const Rat& v) : p_(v.get_num()), q_(0), r_(v.get_den()), d_(0) {}
    /* implicit */ QuadValue(long v) : p_(v), q_(0), r_(1), d_(0) {}

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& d() const { return d_; }

    bool is_rational() const { return q_ == 0; }
    Rat rational() const;

    int sign() const;
    Int floor() const;
    QuadValue frac() const { return *this - QuadValue(Rat(floor())); }

    QuadValue operator-() const { return QuadValue(-p_, -q_, r_, d_, nocanon{}); }
    QuadValue operator+(const QuadValue& o) const;
    QuadValue operator-(const QuadValue& o) const;
    QuadValue operator*(const QuadValue& o) const;
    QuadValue operator/(const QuadValue& o) const;

    bool operator==(const QuadValue& o) const { return (*this - o).sign() == 0; }
    bool operator!=(const QuadValue& o) const { return !(*this == o); }
    bool operator<(const QuadValue& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadValue& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadValue& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadValue& o) const { return (*this - o).sign() >= 0; }

    // Rational enclosure with width < 1/2^bits.
    QInterval enclosure(unsigned bits) const;
    double to_double() const;
    std::string str() const;

  private:
    struct nocanon {};
    QuadValue(Int p, Int q, Int r, Int d, nocanon)
        : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)) {}

    void canonicalize();
    static Int common_d(const QuadValue& a, const QuadValue& b);

    Int p_, q_, r_, d_;
};

} // namespace rotwalk
