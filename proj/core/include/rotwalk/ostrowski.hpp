#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "rotwalk/exact.hpp"

namespace rotwalk {

// Digits c_h of r = sum c_h q_h with 0 <= c_h <= a_{h+1} and c_{h-1} = 0
// whenever c_h = a_{h+1}. Canonical digits come from the top-down greedy
// algorithm (which keeps c_0 < a_1); from_ostrowski accepts any vector
// meeting the stated constraints.
struct OstrowskiRep {
    std::vector<long long> coeffs; // c_0, c_1, ..., trailing zeros trimmed

    long long order() const { return coeffs.empty() ? 0 : static_cast<long long>(coeffs.size()) - 1; }
    long long digit(long long h) const {
        return (h >= 0 && h < static_cast<long long>(coeffs.size())) ? coeffs[static_cast<size_t>(h)]
                                                                     : 0;
    }
    bool zero() const { return coeffs.empty(); }
    // smallest h with c_h > 0; -1 for the zero representation
    long long min_support() const;
    void trim();
};

OstrowskiRep to_ostrowski(const Int& r, const Angle& angle);
Int from_ostrowski(const OstrowskiRep& rep, const Angle& angle);

// r = r_{k_j} for some j > 0 iff c_0 = c_1 = 0 and min{h : c_h > 0} >= 2, even.
bool is_return_peak(const Int& r, const Angle& angle);
bool is_return_peak(const OstrowskiRep& rep);

// r is of the form r_k iff it is a peak (or 0) or peak + c q_1 + 1, 1 <= c <= a_2.
bool is_rk(const Int& r, const Angle& angle);

struct IndexMaps {
    Int k;         // k_j = sum c_h p_h
    Int j;         // sum c_h (q_h - a_1 p_h)
    Int k_minus_j; // via the bar-denominator identity
};
IndexMaps index_maps(const OstrowskiRep& peak_rep, const Angle& angle);

// Largest r' <= r expressible as sum_{h>=2} c_h q_h with even minimal support
// (the r_{k_j} values); 0 is always admissible.
Int largest_peak_at_most(const Int& r, const Angle& angle);

// r = r_{k_j} + R_1 q_1 + R_0 with R_1 q_1 + R_0 < r_{k_{j+1}} - r_{k_j},
// 0 <= R_1 <= a_2 + 1, 0 <= R_0 < q_1. Unlike the Ostrowski digits, R_1 may
// reach a_2 + 1.
struct StructuredIndex {
    Int peak; // r_{k_j}
    Int j;
    Int k; // k_j
    long long R1 = 0;
    long long R0 = 0;
    OstrowskiRep peak_digits;
};
StructuredIndex decompose(const Int& r, const Angle& angle);

// t_k and r_k from their defining formulas (independent of the peak theorem):
// r_k is the least r with floor(r*alpha) = k, t_k counts the block length.
Int r_value(const Int& k, const Angle& angle);
long long t_value(const Int& k, const Angle& angle);

// g_j in {q_2, q_2 + q_1}; g_j = q_2 iff {(j-1) alpha_2} < 1 - alpha_2.
Int gap(const Int& j, const Angle& angle);
// j_h: indices of the long gaps; j_0 = a_3 + 1, j_h - j_{h-1} = t_h of alpha_2.
Int special_subsequence(const Int& h, const Angle& angle);

// Scan-built return-time cache: t_k via frac_compare block by block, peaks
// recorded as they appear. Append-only under a lock; safe for concurrent
// readers. This is the test-facing independent path next to the theorem
// characterization above.
class ReturnStructure {
  public:
    explicit ReturnStructure(Angle angle);

    const Angle& angle() const { return angle_; }

    long long t(const Int& k);
    Int r(const Int& k);
    // j-th peak r_{k_j} (j >= 0) and its k-index
    Int peak(const Int& j);
    Int peak_k(const Int& j);
    Int gap(const Int& j); // from the recorded peaks
    // peaks r_{k_j} <= bound, in order
    std::vector<Int> peaks_up_to(const Int& bound);

  private:
    void ensure_k(const Int& k);

    Angle angle_;
    std::mutex mu_;
    std::vector<Int> rk_;            // r_k for k = 0..
    std::vector<long long> tk_;      // t_k
    std::vector<Int> peaks_;         // r_{k_j}
    std::vector<Int> peak_ks_;       // k_j
};

} // namespace rotwalk
