#pragma once

// Direct-summation ground truth. This header must stay independent of the
// renormalization modules (ostrowski, walk, discrepancy): everything here is
// computed from definitions with exact comparisons only.

#include <vector>

#include "rotwalk/exact.hpp"

namespace rotwalk::oracle {

// Steps {beta + r*alpha} for r = 0, 1, 2, ... with exact comparisons.
// Surd-backed angles run on a fixed-denominator integer representation; the
// general path walks convergents per comparison.
class OrbitScan {
  public:
    OrbitScan(const Angle& angle, const AffineForm& start);

    // sign({x} - 1/2) for the current point
    int cmp_half() const;
    // sign({x} - t); t must be convertible to the scan's representation
    int cmp(const AffineForm& t) const;
    void advance();

  private:
    Angle angle_;
    bool raw_ = false;
    // raw surd state: point = (x + y*sqrt(d))/z, alpha = (ax + ay*sqrt(d))/z
    Int x_, y_, z_, d_, ax_, ay_;
    // generic state
    Rat c0_, c1_;

    int sign_shifted(const Rat& t0, const Rat& t1) const; // sign({x} - (t0 + t1*alpha))
};

long long walk(const Int& n, const Angle& angle, const AffineForm& beta);
long long walk_zero(const Int& n, const Angle& angle);

// d_n(alpha, beta) = sum_{r<n} chi_[0,beta)({r alpha}) - beta*n, exact.
// complemented: the indicator is chi_(1-beta,1].
AffineForm drel(const Int& n, const Angle& angle, const AffineForm& beta,
                bool complemented = false);

// Definitional n*D_n^*: for every breakpoint re-count from scratch. O(n^2);
// the production evaluator lives in the discrepancy module.
Scalar dstar(const Int& n, const Angle& angle);

struct Extrema {
    long long max = 0, min = 0;
};
Extrema extrema(const Int& r, const Angle& angle);

struct ReturnScan {
    std::vector<Int> r;       // r_k
    std::vector<long long> t; // t_k
};
ReturnScan return_structure(const Int& k_max, const Angle& angle);

} // namespace rotwalk::oracle
