#include "rotwalk/ostrowski.hpp"

#include <algorithm>

namespace rotwalk {

long long OstrowskiRep::min_support() const {
    for (size_t h = 0; h < coeffs.size(); ++h)
        if (coeffs[h] > 0) return static_cast<long long>(h);
    return -1;
}

void OstrowskiRep::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

OstrowskiRep to_ostrowski(const Int& r, const Angle& angle) {
    if (r < 0) throw Error("to_ostrowski: r must be >= 0");
    OstrowskiRep rep;
    if (r == 0) return rep;

    long long N = 0;
    try {
        while (angle.q(N + 1) <= r) ++N;
    } catch (const TruncationExceeded&) {
        throw TableTooShallow("convergent table too shallow for r = " + r.get_str());
    } catch (const DepthExceeded&) {
        throw TableTooShallow("convergent table too shallow for r = " + r.get_str());
    }

    rep.coeffs.assign(static_cast<size_t>(N) + 1, 0);
    Int rem = r;
    for (long long h = N; h >= 0; --h) {
        Int c = floor_div(rem, angle.q(h));
        rep.coeffs[static_cast<size_t>(h)] = c.get_si();
        rem -= c * angle.q(h);
    }
    rep.trim();
    return rep;
}

Int from_ostrowski(const OstrowskiRep& rep, const Angle& angle) {
    Int total = 0;
    long long n = static_cast<long long>(rep.coeffs.size());
    for (long long h = 0; h < n; ++h) {
        long long c = rep.coeffs[static_cast<size_t>(h)];
        long long bound = angle.quotient(h + 1);
        if (c < 0 || c > bound)
            throw DigitConstraintViolation("digit c_" + std::to_string(h) + " out of range");
        if (h >= 1 && c == bound && rep.digit(h - 1) != 0)
            throw DigitConstraintViolation("c_" + std::to_string(h) +
                                           " at maximum requires c_" + std::to_string(h - 1) +
                                           " = 0");
        total += Int(static_cast<long>(c)) * angle.q(h);
    }
    return total;
}

bool is_return_peak(const OstrowskiRep& rep) {
    long long m = rep.min_support();
    return m >= 2 && m % 2 == 0;
}

bool is_return_peak(const Int& r, const Angle& angle) {
    if (r < 1) throw Error("is_return_peak: r must be >= 1");
    return is_return_peak(to_ostrowski(r, angle));
}

namespace {

// Maximal value representable on positions pos..2 under the digit rules,
// given a forced zero at pos and whether the already-chosen prefix allows an
// all-zero suffix (its lowest nonzero digit sits at an even position, or it
// has none at all). Returns -1 when infeasible.
Int max_fill(const Angle& angle, long long pos, bool forced, bool ok_empty) {
    if (pos < 2) return ok_empty ? Int(0) : Int(-1);
    long long cap = forced ? 0 : angle.quotient(pos + 1);
    // Feasibility depends on the flags only, so at most three digit choices
    // matter: the cap, cap-1 (unforced), and zero.
    for (long long c : {cap, cap - 1}) {
        if (c <= 0) break;
        Int sub = max_fill(angle, pos - 1, c == angle.quotient(pos + 1), pos % 2 == 0);
        if (sub >= 0) return Int(static_cast<long>(c)) * angle.q(pos) + sub;
        if (c == cap - 1) break;
    }
    return max_fill(angle, pos - 1, false, ok_empty);
}

} // namespace

Int largest_peak_at_most(const Int& r, const Angle& angle) {
    OstrowskiRep digits = to_ostrowski(r, angle);
    long long N = digits.order();

    Int best = 0; // r_{k_0} = 0 is always admissible
    Int prefix = 0;
    int lowest_parity = -1; // parity of the lowest nonzero tight digit; -1 = none
    for (long long h = N; h >= 2; --h) {
        long long d = digits.digit(h);
        // Break below the tight prefix at position h, then fill maximally.
        if (d > 0) {
            for (long long c : {d - 1, 0LL}) {
                bool ok_empty = c > 0 ? (h % 2 == 0)
                                      : (lowest_parity == -1 || lowest_parity % 2 == 0);
                Int sub = max_fill(angle, h - 1, false, ok_empty);
                if (sub >= 0) {
                    Int cand = prefix + Int(static_cast<long>(c)) * angle.q(h) + sub;
                    if (cand > best) best = cand;
                }
                if (d - 1 == 0) break; // c = 0 already covered
            }
        }
        prefix += Int(static_cast<long>(d)) * angle.q(h);
        if (d > 0) lowest_parity = static_cast<int>(h % 2);
    }
    if (lowest_parity != -1 && lowest_parity % 2 == 0 && prefix > best) best = prefix;
    return best;
}

IndexMaps index_maps(const OstrowskiRep& rep, const Angle& angle) {
    if (!rep.zero() && !is_return_peak(rep))
        throw DigitConstraintViolation("index_maps requires a return-peak representation");
    IndexMaps out{Int(0), Int(0), Int(0)};
    long long a1 = angle.quotient(1);
    for (long long h = 2; h <= rep.order(); ++h) {
        long long c = rep.digit(h);
        if (c == 0) continue;
        Int cc(static_cast<long>(c));
        out.k += cc * angle.p(h);
        out.j += cc * (angle.q(h) - zi(a1) * angle.p(h));
    }
    // k_j - j through the denominators of bar(alpha)_1 (eq. with the a_2
    // branch); cross-checked against the direct difference.
    Angle bar1 = angle.bar_shift(1);
    if (angle.quotient(2) != 1) {
        for (long long h = 2; h <= rep.order(); ++h) {
            long long c = rep.digit(h);
            if (c) out.k_minus_j += Int(static_cast<long>(c)) * bar1.q(h - 1);
        }
    } else {
        for (long long h = 3; h <= rep.order(); ++h) {
            long long c = rep.digit(h);
            if (c) out.k_minus_j += Int(static_cast<long>(c)) * bar1.q(h - 3);
        }
    }
    return out;
}

StructuredIndex decompose(const Int& r, const Angle& angle) {
    if (r < 0) throw Error("decompose: r must be >= 0");
    StructuredIndex out;
    out.peak = largest_peak_at_most(r, angle);
    out.peak_digits = to_ostrowski(out.peak, angle);
    IndexMaps maps = index_maps(out.peak_digits, angle);
    out.j = maps.j;
    out.k = maps.k;
    Int rest = r - out.peak;
    Int q1 = angle.q(1);
    out.R1 = Int(floor_div(rest, q1)).get_si();
    out.R0 = Int(rest - floor_div(rest, q1) * q1).get_si();
    return out;
}

bool is_rk(const Int& r, const Angle& angle) {
    if (r < 0) throw Error("is_rk: r must be >= 0");
    if (r == 0) return true;
    StructuredIndex d = decompose(r, angle);
    if (d.R1 == 0 && d.R0 == 0) return true;
    Int rest = r - d.peak;
    if (rest < 1) return false;
    Int q1 = angle.q(1);
    if ((rest - 1) % q1 != 0) return false;
    Int c1 = (rest - 1) / q1;
    return c1 >= 1 && c1 <= zi(angle.quotient(2));
}

Int r_value(const Int& k, const Angle& angle) {
    if (k < 0) throw Error("r_value: k must be >= 0");
    if (k == 0) return 0;
    // r_k = floor(k / alpha) + 1; 1/alpha = a_1 + alpha_1
    Angle a1 = angle.gauss_shift(1);
    return Int(k * zi(angle.quotient(1)) + floor_multiple(a1, k) + 1);
}

long long t_value(const Int& k, const Angle& angle) {
    Int rk = r_value(k, angle);
    Ordering o = frac_compare(rk, angle, Threshold(AffineForm::f(angle, 1)));
    return angle.quotient(1) + (o == Ordering::Less ? 1 : 0);
}

Int gap(const Int& j, const Angle& angle) {
    if (j < 1) throw Error("gap: j must be >= 1");
    Angle a2 = angle.gauss_shift(2);
    AffineForm threshold = AffineForm::constant(a2, Rat(1)) - AffineForm::alpha(a2);
    Ordering o = frac_compare(j - 1, a2, Threshold(threshold));
    return (o == Ordering::Less) ? angle.q(2) : Int(angle.q(2) + angle.q(1));
}

Int special_subsequence(const Int& h, const Angle& angle) {
    if (h < 0) throw Error("special_subsequence: h must be >= 0");
    Int j = zi(angle.quotient(3) + 1);
    Angle a2 = angle.gauss_shift(2);
    for (Int i = 1; i <= h; ++i) j += zi(t_value(i, a2));
    return j;
}

ReturnStructure::ReturnStructure(Angle angle) : angle_(std::move(angle)) {}

void ReturnStructure::ensure_k(const Int& k) {
    std::lock_guard<std::mutex> lk(mu_);
    if (rk_.empty()) {
        rk_.push_back(0);
        tk_.push_back(t_value(0, angle_));
        peaks_.push_back(0);
        peak_ks_.push_back(0);
        if (tk_[0] != angle_.quotient(1) + 1) throw Error("t_0 must be a_1 + 1");
    }
    while (Int(static_cast<long>(rk_.size())) <= k) {
        Int next_r = rk_.back() + zi(tk_.back());
        Int next_k(static_cast<long>(rk_.size()));
        long long t = t_value(next_k, angle_);
        rk_.push_back(next_r);
        tk_.push_back(t);
        if (t == angle_.quotient(1) + 1) {
            peaks_.push_back(next_r);
            peak_ks_.push_back(next_k);
        }
    }
}

long long ReturnStructure::t(const Int& k) {
    ensure_k(k);
    std::lock_guard<std::mutex> lk(mu_);
    return tk_[k.get_ui()];
}

Int ReturnStructure::r(const Int& k) {
    ensure_k(k);
    std::lock_guard<std::mutex> lk(mu_);
    return rk_[k.get_ui()];
}

Int ReturnStructure::peak(const Int& j) {
    while (true) {
        Int k;
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (j < Int(static_cast<long>(peaks_.size()))) return peaks_[j.get_ui()];
            k = Int(static_cast<long>(rk_.size()));
        }
        ensure_k(k + 64);
    }
}

Int ReturnStructure::peak_k(const Int& j) {
    peak(j);
    std::lock_guard<std::mutex> lk(mu_);
    return peak_ks_[j.get_ui()];
}

Int ReturnStructure::gap(const Int& j) {
    if (j < 1) throw Error("gap: j must be >= 1");
    return peak(j) - peak(j - 1);
}

std::vector<Int> ReturnStructure::peaks_up_to(const Int& bound) {
    Int j = 0;
    std::vector<Int> out;
    while (true) {
        Int p = peak(j);
        if (p > bound) break;
        out.push_back(p);
        j += 1;
    }
    return out;
}

} // namespace rotwalk
