#pragma once

#include <optional>
#include <vector>

#include "rotwalk/exact.hpp"

namespace rotwalk {

// Any exact offset in the angle's field embeds as x + y*alpha with rational
// x, y: rationals directly, same-field surds through sqrt(d) = (r*alpha-p)/q.
// Offsets outside the field are rejected.
AffineForm beta_affine(const Angle& angle, const Scalar& beta);

enum class LatticeFlag { InLattice, NotInLattice, Unknown };

struct LatticeWitness {
    Int t, s; // beta = t + s*alpha
};

// Decides beta in Z + alpha*Z. beta = x + y*alpha lies in the lattice exactly
// when x and y are integers; irrationality of alpha makes the solution unique.
LatticeFlag lattice_test(const AffineForm& beta, std::optional<LatticeWitness>* witness = nullptr);

// Greedy expansion beta = sum b_k f_k with 0 <= b_k <= a_{k+1},
// b_k = a_{k+1} => b_{k+1} = 0, and exact remainders beta_k < f_{k-1}.
struct BetaExpansion {
    Angle angle;
    AffineForm beta;
    std::vector<long long> digits;      // b_0 .. b_{depth-1}
    std::vector<AffineForm> remainders; // beta_0 = beta, ..., beta_depth
    LatticeFlag lattice = LatticeFlag::Unknown;

    long long depth() const { return static_cast<long long>(digits.size()); }
    long long digit(long long k) const {
        return (k >= 0 && k < depth()) ? digits[static_cast<size_t>(k)] : 0;
    }
    const AffineForm& remainder(long long k) const; // beta_k, 0 <= k <= depth
};

BetaExpansion expand(const AffineForm& beta, long long depth);
BetaExpansion expand(const Angle& angle, const Scalar& beta, long long depth);

// Exact ratio of two linear forms; the shape of beta^m and bar(beta)^m.
struct AffineRatio {
    AffineForm num, den; // den > 0

    // Closed form when the field allows; ratios over rule-based angles stay
    // symbolic and are compared through cmp_rat / enclosed on demand.
    std::optional<Scalar> to_scalar() const;
    QInterval enclosure(unsigned bits) const;
    int cmp_rat(const Rat& r) const; // sign of *this - r
    std::string str() const;
};

struct RenormOffsets {
    long long m;
    AffineRatio plain;  // beta^m = beta_m / f_m
    AffineRatio barred; // bar(beta)^m = (beta_m - f_m) / (f_{m-1} - f_m)
};

RenormOffsets renorm_offsets(const BetaExpansion& exp, long long m);

} // namespace rotwalk
