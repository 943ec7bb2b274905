#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rotwalk/numeric.hpp"
#include "rotwalk/quadratic.hpp"

namespace rotwalk {

class Angle;

// p_h, q_h rows with exact f_h access through the owning angle.
// Indexing follows f with f_{-1} = 1: p_{-1} = 1, q_{-1} = 0.
class ConvergentTable {
  public:
    ConvergentTable(Angle angle, long long depth);

    long long depth() const { return depth_; }
    const Angle& angle() const;

    Int p(long long h) const;
    Int q(long long h) const;

    std::optional<QuadValue> f_quad(long long h) const;
    QInterval f_interval(long long h, unsigned bits) const;

    ConvergentTable deepen(long long depth) const;

  private:
    std::shared_ptr<Angle> angle_;
    long long depth_;
};

// An irrational angle in (0,1) given by its partial-quotient stream.
// Immutable value handle; internal caches grow append-only under a lock, so
// instances can be shared freely across threads.
class Angle {
  public:
    enum class Kind { Periodic, Rule, Truncated };

    static Angle periodic(std::vector<long long> pre, std::vector<long long> period);
    static Angle rule(const std::string& name, long long depth_cap = 10000);
    static Angle truncated(std::vector<long long> quotients);
    static Angle named(const std::string& name);
    // Classical eventually-periodic expansion of a quadratic irrational in (0,1).
    static Angle from_surd(const QuadValue& value);

    static void register_rule(const std::string& name,
                              std::function<long long(long long)> generator);

    Kind kind() const;
    const std::optional<QuadValue>& surd() const;

    long long quotient(long long h) const; // a_h, h >= 1
    std::vector<long long> quotients(long long m) const;

    // nullopt when the stream is infinite; otherwise the largest certified n.
    std::optional<Int> validity_horizon() const;
    void check_horizon(const Int& n) const;

    // Certified quotient depth; -1 when the stream is unbounded.
    long long max_depth() const;

    Int p(long long h) const; // h >= -1
    Int q(long long h) const;

    Angle gauss_shift(long long m) const; // alpha_m
    Angle bar_shift(long long m) const;   // [a_{m+1}-1, a_{m+2}, ...], m >= 1

    bool operator==(const Angle& o) const;
    bool operator!=(const Angle& o) const { return !(*this == o); }

    // Periodic canonical form, for tests and printing.
    std::pair<std::vector<long long>, std::vector<long long>> periodic_parts() const;

    std::string str() const;

    // Enclosure of the angle from the depth-h cylinder (exact endpoints).
    QInterval cylinder(long long h) const;

    // sign(c0 + c1 * alpha), exact for every descriptor kind.
    int sign_affine(const Rat& c0, const Rat& c1) const;
    Int floor_affine(const Rat& c0, const Rat& c1) const;

    struct Impl;
    const std::shared_ptr<const Impl>& impl() const { return impl_; }

  private:
    explicit Angle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

} // namespace rotwalk
