#include "rotwalk/angle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rotwalk {

namespace {

std::mutex g_rules_mu;
std::map<std::string, std::function<long long(long long)>>& rule_registry() {
    static std::map<std::string, std::function<long long(long long)>> reg = {
        // e-2 = [1,2,1,1,4,1,1,6,1,1,8,...]: a_h = 2(h+1)/3 when h = 2 mod 3
        {"em2", [](long long h) -> long long { return (h % 3 == 2) ? 2 * (h + 1) / 3 : 1; }},
    };
    return reg;
}

// Smallest rotation-primitive period, then fold the preperiod tail into the
// period so equal streams get equal (pre, period) pairs.
void canonicalize_periodic(std::vector<long long>& pre, std::vector<long long>& period) {
    const size_t n = period.size();
    for (size_t m = 1; m < n; ++m) {
        if (n % m != 0) continue;
        bool ok = true;
        for (size_t i = m; i < n && ok; ++i) ok = (period[i] == period[i % m]);
        if (ok) {
            period.resize(m);
            break;
        }
    }
    while (!pre.empty() && pre.back() == period.back()) {
        pre.pop_back();
        std::rotate(period.begin(), period.begin() + (period.size() - 1), period.end());
    }
}

} // namespace

struct Angle::Impl : std::enable_shared_from_this<Angle::Impl> {
    Kind kind;

    std::vector<long long> pre, period; // Periodic
    std::string rule_name;              // Rule
    std::function<long long(long long)> rule_fn;
    long long rule_offset = 0;
    std::optional<long long> head; // overrides a_1 (decremented head of a bar shift)
    long long depth_cap = 10000;
    std::vector<long long> list; // Truncated

    std::optional<QuadValue> surd;

    mutable std::mutex mu;
    mutable std::vector<Int> pc, qc; // p_{h}, q_{h} stored from h = -1

    long long raw_quotient(long long h) const {
        switch (kind) {
            case Kind::Periodic: {
                size_t idx = static_cast<size_t>(h - 1);
                if (idx < pre.size()) return pre[idx];
                return period[(idx - pre.size()) % period.size()];
            }
            case Kind::Rule: {
                if (head && h == 1) return *head;
                long long abs_h = h + rule_offset;
                if (abs_h > depth_cap)
                    throw DepthExceeded("rule '" + rule_name + "' past depth cap");
                long long a = rule_fn(abs_h);
                if (a < 1) throw Error("rule '" + rule_name + "' emitted quotient < 1");
                return a;
            }
            case Kind::Truncated: {
                if (h > static_cast<long long>(list.size()))
                    throw TruncationExceeded("quotient a_" + std::to_string(h) +
                                             " past truncation depth " +
                                             std::to_string(list.size()));
                return list[static_cast<size_t>(h - 1)];
            }
        }
        throw Error("unreachable");
    }

    // Largest depth the stream certifies; -1 when infinite.
    long long max_depth() const {
        if (kind == Kind::Truncated) return static_cast<long long>(list.size());
        if (kind == Kind::Rule) return depth_cap - rule_offset;
        return -1;
    }

    void ensure_convergents(long long h) const {
        std::lock_guard<std::mutex> lk(mu);
        if (pc.empty()) {
            pc = {Int(1), Int(0)}; // p_{-1}, p_0
            qc = {Int(0), Int(1)}; // q_{-1}, q_0
        }
        while (static_cast<long long>(pc.size()) - 2 < h) {
            long long k = static_cast<long long>(pc.size()) - 1; // next index
            Int a(static_cast<long>(raw_quotient(k)));
            pc.push_back(a * pc[pc.size() - 1] + pc[pc.size() - 2]);
            qc.push_back(a * qc[qc.size() - 1] + qc[qc.size() - 2]);
        }
    }

    Int conv_p(long long h) const {
        ensure_convergents(h);
        std::lock_guard<std::mutex> lk(mu);
        return pc[static_cast<size_t>(h + 1)];
    }
    Int conv_q(long long h) const {
        ensure_convergents(h);
        std::lock_guard<std::mutex> lk(mu);
        return qc[static_cast<size_t>(h + 1)];
    }
};

Angle Angle::periodic(std::vector<long long> pre, std::vector<long long> period) {
    if (period.empty()) throw ParseError("periodic descriptor needs a nonempty period");
    for (long long a : pre)
        if (a < 1) throw ParseError("partial quotients must be >= 1");
    for (long long a : period)
        if (a < 1) throw ParseError("partial quotients must be >= 1");
    canonicalize_periodic(pre, period);

    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Periodic;
    impl->pre = std::move(pre);
    impl->period = std::move(period);

    // Purely periodic tail x = [c_1,...,c_k,x]: composing x -> 1/(c+x) gives
    // x = (Ax+B)/(Cx+D); take the positive root of Cx^2 + (D-A)x - B = 0.
    Int A(0), B(1), C(1), D(0); // identity under 1/(c+x) composition start
    A = 1;
    B = 0;
    C = 0;
    D = 1;
    for (long long cq : impl->period) {
        // M := M * [[0,1],[1,c]]
        long c = static_cast<long>(cq);
        Int nA = B, nB = A + B * c;
        Int nC = D, nD = C + D * c;
        A = nA;
        B = nB;
        C = nC;
        D = nD;
    }
    // x = (Ax + B)/(Cx + D)
    Int qa = C, qb = D - A, qc2 = -B;
    Int disc = qb * qb - 4 * qa * qc2;
    QuadValue x = (QuadValue(-qb, Int(1), 2 * qa, disc));
    if (x.sign() <= 0) x = QuadValue(-qb, Int(-1), 2 * qa, disc);
    // preperiod head: alpha = 1/(c_1 + 1/(c_2 + ... + x))
    QuadValue alpha = x;
    for (auto it = impl->pre.rbegin(); it != impl->pre.rend(); ++it)
        alpha = QuadValue(Rat(1)) / (QuadValue(Rat(static_cast<long>(*it))) + alpha);
    impl->surd = alpha;
    return Angle(impl);
}

Angle Angle::rule(const std::string& name, long long depth_cap) {
    std::function<long long(long long)> fn;
    {
        std::lock_guard<std::mutex> lk(g_rules_mu);
        auto it = rule_registry().find(name);
        if (it == rule_registry().end()) throw ParseError("unknown rule '" + name + "'");
        fn = it->second;
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Rule;
    impl->rule_name = name;
    impl->rule_fn = std::move(fn);
    impl->depth_cap = depth_cap;
    return Angle(impl);
}

Angle Angle::truncated(std::vector<long long> quotients) {
    if (quotients.empty()) throw ParseError("truncated descriptor needs quotients");
    for (long long a : quotients)
        if (a < 1) throw ParseError("partial quotients must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Truncated;
    impl->list = std::move(quotients);
    return Angle(impl);
}

Angle Angle::named(const std::string& name) {
    if (name == "golden") return periodic({}, {1});
    if (name == "sqrt2m1") return periodic({}, {2});
    if (name == "sqrt13m3over2") return periodic({}, {3});
    if (name == "em2") return rule("em2");
    throw ParseError("unknown angle name '" + name + "'");
}

void Angle::register_rule(const std::string& name, std::function<long long(long long)> gen) {
    std::lock_guard<std::mutex> lk(g_rules_mu);
    rule_registry()[name] = std::move(gen);
}

Angle Angle::from_surd(const QuadValue& value) {
    if (value.is_rational()) throw ParseError("surd angle is rational");
    if (value.sign() <= 0 || (value - QuadValue(Rat(1))).sign() >= 0)
        throw ParseError("surd angle must lie in (0,1)");

    // PQa expansion of x = (P + sqrt(D))/Q with Q | D - P^2.
    Int P = value.p(), Q = value.r(), D;
    {
        Int q = value.q();
        D = q * q * value.d();
        if (q < 0) {
            P = -P;
            Q = -Q;
        }
    }
    if ((D - P * P) % Q != 0) {
        P *= abs(Q);
        D *= Q * Q;
        Q *= abs(Q);
    }

    std::vector<long long> quots;
    std::map<std::pair<std::string, std::string>, size_t> seen;
    size_t first = 0, cycle = 0;
    for (size_t i = 0; i < 1000000; ++i) {
        QuadValue xi(P, Int(1), Q, D);
        Int a = xi.floor();
        if (i > 0) {
            auto key = std::make_pair(P.get_str(), Q.get_str());
            auto it = seen.find(key);
            if (it != seen.end()) {
                first = it->second;
                cycle = i;
                break;
            }
            seen[key] = i;
            quots.push_back(a.get_si());
        } else if (a != 0) {
            throw ParseError("surd angle must lie in (0,1)");
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    if (cycle == 0) throw Error("surd expansion failed to cycle");

    std::vector<long long> pre(quots.begin(), quots.begin() + (first - 1));
    std::vector<long long> period(quots.begin() + (first - 1), quots.end());
    Angle a = periodic(pre, period);
    // keep the caller's exact value (equal to the computed one)
    const_cast<Impl*>(a.impl_.get())->surd = value;
    return a;
}

Angle::Kind Angle::kind() const { return impl_->kind; }

const std::optional<QuadValue>& Angle::surd() const { return impl_->surd; }

long long Angle::quotient(long long h) const {
    if (h < 1) throw Error("quotient index must be >= 1");
    return impl_->raw_quotient(h);
}

std::vector<long long> Angle::quotients(long long m) const {
    if (m < 1) throw Error("quotient count must be >= 1");
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(m));
    for (long long h = 1; h <= m; ++h) out.push_back(quotient(h));
    return out;
}

std::optional<Int> Angle::validity_horizon() const {
    long long depth = impl_->max_depth();
    if (depth < 0) return std::nullopt;
    return q(depth);
}

void Angle::check_horizon(const Int& n) const {
    auto h = validity_horizon();
    if (h && n > *h)
        throw TruncationExceeded("horizon " + n.get_str() + " past certified " + h->get_str());
}

long long Angle::max_depth() const { return impl_->max_depth(); }

Int Angle::p(long long h) const { return impl_->conv_p(h); }
Int Angle::q(long long h) const { return impl_->conv_q(h); }

Angle Angle::gauss_shift(long long m) const {
    if (m < 0) throw Error("gauss_shift: m must be >= 0");
    if (m == 0) return *this;
    auto impl = std::make_shared<Impl>();
    impl->kind = impl_->kind;
    switch (impl_->kind) {
        case Kind::Periodic: {
            std::vector<long long> pre = impl_->pre, period = impl_->period;
            for (long long i = 0; i < m; ++i) {
                if (!pre.empty()) {
                    pre.erase(pre.begin());
                } else {
                    std::rotate(period.begin(), period.begin() + 1, period.end());
                }
            }
            Angle out = periodic(std::move(pre), std::move(period));
            return out;
        }
        case Kind::Rule:
            impl->rule_name = impl_->rule_name;
            impl->rule_fn = impl_->rule_fn;
            impl->rule_offset = impl_->rule_offset + m;
            impl->depth_cap = impl_->depth_cap;
            if (impl->rule_offset >= impl->depth_cap)
                throw DepthExceeded("gauss_shift past rule depth cap");
            break;
        case Kind::Truncated: {
            if (m >= static_cast<long long>(impl_->list.size()))
                throw TruncationExceeded("gauss_shift past truncation depth");
            impl->list.assign(impl_->list.begin() + m, impl_->list.end());
            break;
        }
    }
    return Angle(impl);
}

Angle Angle::bar_shift(long long m) const {
    if (m < 1) throw Error("bar_shift: m must be >= 1");
    long long head = quotient(m + 1);
    if (head == 1) return gauss_shift(m + 2);
    switch (impl_->kind) {
        case Kind::Periodic: {
            Angle shifted = gauss_shift(m);
            std::vector<long long> pre = shifted.impl_->pre, period = shifted.impl_->period;
            if (pre.empty()) {
                pre.push_back(period.front());
                std::rotate(period.begin(), period.begin() + 1, period.end());
            }
            pre.front() -= 1;
            return periodic(std::move(pre), std::move(period));
        }
        case Kind::Rule: {
            auto impl = std::make_shared<Impl>();
            impl->kind = Kind::Rule;
            impl->rule_name = impl_->rule_name;
            impl->rule_fn = impl_->rule_fn;
            impl->rule_offset = impl_->rule_offset + m;
            impl->depth_cap = impl_->depth_cap;
            impl->head = head - 1;
            if (impl->rule_offset >= impl->depth_cap)
                throw DepthExceeded("bar_shift past rule depth cap");
            return Angle(impl);
        }
        case Kind::Truncated: {
            std::vector<long long> list(impl_->list.begin() + m, impl_->list.end());
            list.front() -= 1;
            return truncated(std::move(list));
        }
    }
    throw Error("unreachable");
}

bool Angle::operator==(const Angle& o) const {
    if (impl_ == o.impl_) return true;
    if (impl_->kind != o.impl_->kind) return false;
    switch (impl_->kind) {
        case Kind::Periodic:
            return impl_->pre == o.impl_->pre && impl_->period == o.impl_->period;
        case Kind::Truncated:
            return impl_->list == o.impl_->list;
        case Kind::Rule:
            return impl_->rule_name == o.impl_->rule_name &&
                   impl_->rule_offset == o.impl_->rule_offset && impl_->head == o.impl_->head;
    }
    return false;
}

std::pair<std::vector<long long>, std::vector<long long>> Angle::periodic_parts() const {
    if (impl_->kind != Kind::Periodic) throw Error("not a periodic descriptor");
    return {impl_->pre, impl_->period};
}

std::string Angle::str() const {
    std::ostringstream os;
    switch (impl_->kind) {
        case Kind::Periodic: {
            os << "periodic:";
            for (size_t i = 0; i < impl_->pre.size(); ++i)
                os << (i ? "," : "") << impl_->pre[i];
            if (!impl_->pre.empty()) os << ";";
            for (size_t i = 0; i < impl_->period.size(); ++i)
                os << (i ? "," : "") << impl_->period[i];
            break;
        }
        case Kind::Rule:
            os << "rule:" << impl_->rule_name;
            if (impl_->rule_offset) os << "+" << impl_->rule_offset;
            if (impl_->head) os << "(head=" << *impl_->head << ")";
            break;
        case Kind::Truncated:
            os << "list:";
            for (size_t i = 0; i < impl_->list.size(); ++i)
                os << (i ? "," : "") << impl_->list[i];
            break;
    }
    return os.str();
}

QInterval Angle::cylinder(long long h) const {
    long long maxd = impl_->max_depth();
    if (maxd >= 0 && h > maxd) h = maxd;
    if (h < 1) h = 1;
    Rat a = make_rat(p(h), q(h));
    Rat b = make_rat(p(h) + p(h - 1), q(h) + q(h - 1));
    return (a < b) ? QInterval(a, b) : QInterval(b, a);
}

int Angle::sign_affine(const Rat& c0, const Rat& c1) const {
    if (impl_->surd) {
        QuadValue v = QuadValue(c1) * *impl_->surd + QuadValue(c0);
        return v.sign();
    }
    if (c1 == 0) return sgn(c0);
    Rat t = -c0 / c1;
    int su = sgn(c1);
    long long maxd = impl_->max_depth();
    for (long long h = 1;; ++h) {
        if (maxd >= 0 && h > maxd) {
            throw UndecidableAtValidity("sign of " + to_string(c0) + "+" + to_string(c1) +
                                        "*alpha not certified at truncation depth");
        }
        QInterval cyl = cylinder(h);
        if (t <= cyl.lo) return su;       // alpha > t
        if (t >= cyl.hi) return -su;      // alpha < t
    }
}

Int Angle::floor_affine(const Rat& c0, const Rat& c1) const {
    if (impl_->surd) {
        QuadValue v = QuadValue(c1) * *impl_->surd + QuadValue(c0);
        return v.floor();
    }
    if (c1 == 0) return floor_rat(c0);
    long long maxd = impl_->max_depth();
    for (long long h = 2;; h = (maxd >= 0 && h >= maxd) ? h + 1 : h * 2) {
        if (maxd >= 0 && h > maxd) h = maxd;
        QInterval cyl = cylinder(h);
        QInterval v = cyl * c1 + QInterval::point(c0);
        Int flo = floor_rat(v.lo), fhi = floor_rat(v.hi);
        if (flo == fhi) return flo;
        if (fhi - flo == 1) {
            // candidate boundary fhi: exact membership test
            int s = sign_affine(c0 - Rat(fhi), c1);
            return (s >= 0) ? fhi : flo;
        }
        if (maxd >= 0 && h >= maxd)
            throw UndecidableAtValidity("floor not certified at truncation depth");
    }
}

ConvergentTable::ConvergentTable(Angle angle, long long depth)
    : angle_(std::make_shared<Angle>(std::move(angle))), depth_(depth) {
    if (depth < 1) throw Error("convergent table depth must be >= 1");
    angle_->p(depth); // force materialization (and truncation errors) eagerly
}

const Angle& ConvergentTable::angle() const { return *angle_; }

Int ConvergentTable::p(long long h) const {
    if (h < -1 || h > depth_) throw TableTooShallow("p index out of range");
    return angle_->p(h);
}

Int ConvergentTable::q(long long h) const {
    if (h < -1 || h > depth_) throw TableTooShallow("q index out of range");
    return angle_->q(h);
}

std::optional<QuadValue> ConvergentTable::f_quad(long long h) const {
    if (h < -1 || h > depth_) throw TableTooShallow("f index out of range");
    if (!angle_->surd()) return std::nullopt;
    QuadValue v = QuadValue(Rat(q(h))) * *angle_->surd() - QuadValue(Rat(p(h)));
    if ((h % 2 + 2) % 2 == 1) v = -v;
    return v;
}

QInterval ConvergentTable::f_interval(long long h, unsigned bits) const {
    if (h < -1 || h > depth_) throw TableTooShallow("f index out of range");
    int sign = ((h % 2 + 2) % 2 == 0) ? 1 : -1;
    Rat c1 = Rat(q(h)) * sign, c0 = Rat(p(h)) * (-sign);
    if (angle_->surd()) {
        QuadValue v = QuadValue(c1) * *angle_->surd() + QuadValue(c0);
        return v.enclosure(bits);
    }
    Rat target = make_rat(1, Int(1) << bits);
    long long maxd = angle_->max_depth();
    for (long long d = depth_ + 1;; ++d) {
        if (maxd >= 0 && d > maxd) d = maxd;
        QInterval v = angle_->cylinder(d) * c1 + QInterval::point(c0);
        if (v.width() <= target) return v;
        if (maxd >= 0 && d >= maxd)
            throw UndecidableAtValidity("f enclosure not refinable at truncation depth");
    }
}

ConvergentTable ConvergentTable::deepen(long long depth) const {
    return ConvergentTable(*angle_, std::max(depth, depth_));
}

} // namespace rotwalk
