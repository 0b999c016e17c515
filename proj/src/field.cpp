#include "lfa/field.hpp"

#include <algorithm>
#include <sstream>

namespace lfa {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p, low degree first, for modulus validation only.
using Poly = std::vector<std::uint32_t>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_trim(r);
}

// remainder of a mod monic b
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    a = poly_trim(a);
    while (a.size() >= b.size()) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint32_t sub = (lead * b[i]) % p;
            std::uint32_t& d = a[i + shift];
            d = (d + p - sub) % p;
        }
        a = poly_trim(a);
    }
    return a;
}

// Exhaustive trial division by all monic polynomials of degree <= deg/2.
bool is_irreducible(const Poly& m, std::uint32_t p) {
    Poly mm = poly_trim(m);
    if (mm.size() < 2) return false;
    std::size_t deg = mm.size() - 1;
    if (mm.back() != 1) return false; // require monic
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly div(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            div[d] = 1;
            if (poly_rem(mm, div, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t c) {
    if (c == 1) return {0, 1};
    if (p == 2 && c == 2) return {1, 1, 1};          // 1 + t + t^2
    if (p == 2 && c == 3) return {1, 1, 0, 1};       // 1 + t + t^3
    if (p == 2 && c == 4) return {1, 1, 0, 0, 1};    // 1 + t + t^4
    if (p == 3 && c == 2) return {2, 2, 1};          // 2 + 2t + t^2
    if (p == 3 && c == 3) return {1, 2, 0, 1};       // 1 + 2t + t^3
    if (p == 5 && c == 2) return {2, 4, 1};          // 2 + 4t + t^2
    throw parameter_error("no default modulus for p=" + std::to_string(p) +
                          ", c=" + std::to_string(c) + "; pass one explicitly");
}

FieldParams::FieldParams(Characteristic chr, std::uint32_t p, std::uint32_t c,
                         std::vector<std::uint32_t> modulus)
    : chr_(chr), p_(p), c_(c), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw parameter_error("p must be prime, got " + std::to_string(p_));
    if (c_ == 0) throw parameter_error("c must be positive");
    if (chr_ == Characteristic::zero && c_ != 1)
        throw parameter_error("characteristic-zero backend covers Q_p only (c = 1)");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < c_; ++i) {
        q *= p_;
        if (q > 256) throw parameter_error("q = p^c too large (max 256)");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (modulus_.empty()) modulus_ = default_modulus(p_, c_);
    if (modulus_.size() != c_ + 1)
        throw parameter_error("modulus must have length c+1 (low degree first)");
    for (auto d : modulus_)
        if (d >= p_) throw parameter_error("modulus digit out of range [0,p)");
    if (c_ > 1 && !is_irreducible(modulus_, p_))
        throw parameter_error("modulus is reducible over F_p");
    build_tables();
}

void FieldParams::build_tables() {
    add_tab_.assign(std::size_t(q_) * q_, 0);
    mul_tab_.assign(std::size_t(q_) * q_, 0);
    neg_tab_.assign(q_, 0);
    trace_tab_.assign(q_, 0);

    auto unpack = [&](std::uint32_t v) {
        Poly d(c_, 0);
        for (std::uint32_t i = 0; i < c_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
        return d;
    };
    auto pack = [&](const Poly& d) {
        std::uint32_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + (i < d.size() ? d[i] : 0);
        return v;
    };

    for (std::uint32_t a = 0; a < q_; ++a) {
        Poly da = unpack(a);
        Poly na(c_, 0);
        for (std::uint32_t i = 0; i < c_; ++i) na[i] = (p_ - da[i]) % p_;
        neg_tab_[a] = pack(na);
        for (std::uint32_t b = 0; b < q_; ++b) {
            Poly db = unpack(b);
            Poly s(c_, 0);
            for (std::uint32_t i = 0; i < c_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_tab_[std::size_t(a) * q_ + b] = pack(s);
            Poly m = poly_rem(poly_mul(da, db, p_), modulus_, p_);
            m.resize(c_, 0);
            mul_tab_[std::size_t(a) * q_ + b] = pack(m);
        }
    }

    // Tr(a) = a + a^p + ... + a^{p^{c-1}}, an element of F_p.
    for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t acc = 0;
        std::uint32_t power = a;
        for (std::uint32_t j = 0; j < c_; ++j) {
            acc = add_tab_[std::size_t(acc) * q_ + power];
            std::uint32_t next = power;
            for (std::uint32_t e = 1; e < p_; ++e)
                next = mul_tab_[std::size_t(next) * q_ + power];
            power = next;
        }
        if (acc >= p_)
            throw parameter_error("internal: trace escaped F_p"); // cannot happen for irreducible modulus
        trace_tab_[a] = acc;
    }
}

std::string FieldParams::describe() const {
    std::ostringstream os;
    if (chr_ == Characteristic::zero)
        os << "Q_" << p_;
    else
        os << "F_" << q_ << "((X))";
    return os.str();
}

FqElem fq_add(const FieldParams& f, FqElem a, FqElem b) {
    if (a.v >= f.q() || b.v >= f.q()) throw parameter_error("FqElem out of range for this field");
    return f.add(a, b);
}

FqElem fq_mul(const FieldParams& f, FqElem a, FqElem b) {
    if (a.v >= f.q() || b.v >= f.q()) throw parameter_error("FqElem out of range for this field");
    return f.mul(a, b);
}

FqElem fq_neg(const FieldParams& f, FqElem a) {
    if (a.v >= f.q()) throw parameter_error("FqElem out of range for this field");
    return f.neg(a);
}

std::uint32_t trace(const FieldParams& f, FqElem a) {
    if (f.characteristic() == Characteristic::zero)
        throw unsupported_error("trace is defined on the positive-characteristic backend only");
    if (a.v >= f.q()) throw parameter_error("FqElem out of range for this field");
    return f.trace_tab(a);
}

LocalElement LocalElement::make(int valuation, std::vector<FqElem> digits) {
    // canonicalize: strip leading and trailing zero digits
    std::size_t lead = 0;
    while (lead < digits.size() && digits[lead].v == 0) ++lead;
    if (lead == digits.size()) return LocalElement();
    std::size_t tail = digits.size();
    while (tail > lead && digits[tail - 1].v == 0) --tail;
    LocalElement e;
    e.val_ = valuation + static_cast<int>(lead);
    e.digits_.assign(digits.begin() + lead, digits.begin() + tail);
    return e;
}

LocalElement LocalElement::prime_power(int k) {
    LocalElement e;
    e.val_ = k;
    e.digits_ = {FqElem{1}};
    return e;
}

int LocalElement::valuation() const {
    if (is_zero()) throw parameter_error("valuation of zero is +infinity");
    return val_;
}

FqElem LocalElement::digit_at(int t) const {
    if (is_zero()) return FqElem{0};
    if (t < val_ || t >= val_ + static_cast<int>(digits_.size())) return FqElem{0};
    return digits_[static_cast<std::size_t>(t - val_)];
}

Rational LocalElement::abs_value(const FieldParams& f) const {
    if (is_zero()) return Rational(0);
    return rat_pow(static_cast<std::int64_t>(f.q()), -static_cast<std::int64_t>(val_));
}

std::string LocalElement::to_string(const FieldParams&) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "v=" << val_ << ":";
    for (auto d : digits_) os << d.v << ",";
    return os.str();
}

LocalElement elem_add(const FieldParams& f, const LocalElement& x, const LocalElement& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    int lo = std::min(x.val_, y.val_);
    int hi = std::max(x.val_ + static_cast<int>(x.digits_.size()),
                      y.val_ + static_cast<int>(y.digits_.size()));
    std::size_t len = static_cast<std::size_t>(hi - lo);
    if (len + 1 > f.max_digits())
        throw precision_error("elem_add: digit window exceeds max_digits");
    if (f.characteristic() == Characteristic::positive) {
        std::vector<FqElem> d(len, FqElem{0});
        for (std::size_t i = 0; i < len; ++i)
            d[i] = f.add(x.digit_at(lo + static_cast<int>(i)), y.digit_at(lo + static_cast<int>(i)));
        return LocalElement::make(lo, std::move(d));
    }
    // Q_p: base-p addition with carries
    std::vector<FqElem> d(len + 1, FqElem{0});
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        std::uint32_t s = x.digit_at(lo + static_cast<int>(i)).v +
                          y.digit_at(lo + static_cast<int>(i)).v + carry;
        d[i] = FqElem{s % f.p()};
        carry = s / f.p();
    }
    d[len] = FqElem{carry};
    return LocalElement::make(lo, std::move(d));
}

LocalElement elem_mul(const FieldParams& f, const LocalElement& x, const LocalElement& y) {
    if (x.is_zero() || y.is_zero()) return LocalElement::zero();
    std::size_t len = x.digits_.size() + y.digits_.size();
    if (len > f.max_digits())
        throw precision_error("elem_mul: digit window exceeds max_digits");
    int lo = x.val_ + y.val_;
    if (f.characteristic() == Characteristic::positive) {
        std::vector<FqElem> d(len, FqElem{0});
        for (std::size_t i = 0; i < x.digits_.size(); ++i)
            for (std::size_t j = 0; j < y.digits_.size(); ++j)
                d[i + j] = f.add(d[i + j], f.mul(x.digits_[i], y.digits_[j]));
        return LocalElement::make(lo, std::move(d));
    }
    // Q_p: schoolbook with carries
    std::vector<std::uint64_t> acc(len + 1, 0);
    for (std::size_t i = 0; i < x.digits_.size(); ++i)
        for (std::size_t j = 0; j < y.digits_.size(); ++j)
            acc[i + j] += std::uint64_t(x.digits_[i].v) * y.digits_[j].v;
    std::vector<FqElem> d(len + 1, FqElem{0});
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i <= len; ++i) {
        std::uint64_t s = acc[i] + carry;
        d[i] = FqElem{static_cast<std::uint32_t>(s % f.p())};
        carry = s / f.p();
    }
    if (carry != 0) throw precision_error("elem_mul: carry escaped the digit window");
    return LocalElement::make(lo, std::move(d));
}

LocalElement elem_neg(const FieldParams& f, const LocalElement& x) {
    if (f.characteristic() == Characteristic::zero)
        throw unsupported_error("elem_neg: negatives have no finite digit window in Q_p");
    if (x.is_zero()) return x;
    std::vector<FqElem> d(x.digits_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.neg(x.digits_[i]);
    return LocalElement::make(x.val_, std::move(d));
}

LocalElement u_of(const FieldParams& f, std::uint64_t n) {
    if (n == 0) return LocalElement::zero();
    // base-q digits b_0, b_1, ...: u(n) has residue digit b_i at position -1-i
    std::vector<std::uint32_t> b;
    std::uint64_t m = n;
    while (m > 0) {
        b.push_back(static_cast<std::uint32_t>(m % f.q()));
        m /= f.q();
    }
    std::vector<FqElem> digits(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        digits[i] = FqElem{b[b.size() - 1 - i]}; // position -(s+1)+i holds b_{s-i}
    return LocalElement::make(-static_cast<int>(b.size()), std::move(digits));
}

std::optional<std::uint64_t> u_index_of(const FieldParams& f, const LocalElement& x) {
    if (x.is_zero()) return 0;
    int v = x.valuation();
    if (v >= 0) return std::nullopt;
    int top = v + static_cast<int>(x.digits().size()) - 1;
    if (top >= 0) return std::nullopt; // has digits at non-negative positions
    std::uint64_t n = 0;
    for (int t = v; t <= top; ++t) {
        // digit at position t contributes base-q digit index -1-t
        int i = -1 - t;
        std::uint64_t scale = ipow64(f.q(), static_cast<std::uint32_t>(i));
        n += std::uint64_t(x.digit_at(t).v) * scale;
    }
    return n;
}

Rational haar_measure(const FieldParams& f, const Ball& b) {
    return rat_pow(static_cast<std::int64_t>(f.q()), -static_cast<std::int64_t>(b.level));
}

BallRelation ball_relation(const FieldParams& f, const Ball& a, const Ball& b) {
    if (a.ambient != b.ambient)
        throw parameter_error("ball_relation: balls live in different ambient windows");
    if (a.level == b.level)
        return a.center == b.center ? BallRelation::equal : BallRelation::disjoint;
    if (a.level < b.level) {
        // a is the bigger ball; the ancestor of b at a.level is its low digits
        std::uint64_t anc = b.center % ipow64(f.q(), static_cast<std::uint32_t>(a.level - a.ambient));
        return anc == a.center ? BallRelation::a_contains_b : BallRelation::disjoint;
    }
    std::uint64_t anc = a.center % ipow64(f.q(), static_cast<std::uint32_t>(b.level - b.ambient));
    return anc == b.center ? BallRelation::b_contains_a : BallRelation::disjoint;
}

std::uint64_t ipow64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::uint64_t cell_count(const FieldParams& f, int window_lo, int level) {
    if (level < window_lo) throw parameter_error("cell_count: level above window");
    return ipow64(f.q(), static_cast<std::uint32_t>(level - window_lo));
}

LocalElement cell_representative(const FieldParams& f, int window_lo, int level,
                                 std::uint64_t index) {
    std::size_t n = static_cast<std::size_t>(level - window_lo);
    std::vector<FqElem> digits(n, FqElem{0});
    for (std::size_t i = 0; i < n; ++i) {
        digits[i] = FqElem{static_cast<std::uint32_t>(index % f.q())};
        index /= f.q();
    }
    return LocalElement::make(window_lo, std::move(digits));
}

std::uint64_t cell_of(const FieldParams& f, int window_lo, int level, const LocalElement& x) {
    if (x.is_zero()) return 0;
    if (x.valuation() < window_lo)
        throw resolution_error("cell_of: element lies outside the window");
    std::uint64_t idx = 0;
    for (int t = level - 1; t >= window_lo; --t)
        idx = idx * f.q() + x.digit_at(t).v;
    return idx;
}

std::uint64_t cell_add(const FieldParams& f, std::uint64_t ncells, std::uint64_t i, std::uint64_t j) {
    if (f.characteristic() == Characteristic::zero) return (i + j) % ncells;
    std::uint64_t r = 0, scale = 1;
    while (scale < ncells) {
        std::uint32_t di = static_cast<std::uint32_t>(i % f.q());
        std::uint32_t dj = static_cast<std::uint32_t>(j % f.q());
        r += std::uint64_t(f.add(FqElem{di}, FqElem{dj}).v) * scale;
        i /= f.q();
        j /= f.q();
        scale *= f.q();
    }
    return r;
}

std::uint64_t cell_sub(const FieldParams& f, std::uint64_t ncells, std::uint64_t i, std::uint64_t j) {
    if (f.characteristic() == Characteristic::zero) return (i + ncells - j % ncells) % ncells;
    std::uint64_t r = 0, scale = 1;
    while (scale < ncells) {
        std::uint32_t di = static_cast<std::uint32_t>(i % f.q());
        std::uint32_t dj = static_cast<std::uint32_t>(j % f.q());
        r += std::uint64_t(f.add(FqElem{di}, f.neg(FqElem{dj})).v) * scale;
        i /= f.q();
        j /= f.q();
        scale *= f.q();
    }
    return r;
}

std::optional<int> cell_leading_position(const FieldParams& f, int window_lo, int level,
                                         std::uint64_t index) {
    for (int t = window_lo; t < level; ++t) {
        if (index % f.q() != 0) return t;
        index /= f.q();
    }
    return std::nullopt;
}

std::uint64_t reverse_base_q(const FieldParams& f, std::uint64_t n, int ndigits) {
    std::uint64_t r = 0;
    for (int i = 0; i < ndigits; ++i) {
        r = r * f.q() + n % f.q();
        n /= f.q();
    }
    return r;
}

} // namespace lfa
