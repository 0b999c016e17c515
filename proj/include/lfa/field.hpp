#pragma once

#include "lfa/errors.hpp"
#include "lfa/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lfa {

enum class Characteristic { zero, positive };

/// Element of the residue field F_q, packed as v = sum a_i p^i where
/// (a_0,...,a_{c-1}) are the coordinates over F_p in the basis 1, t, ..., t^{c-1}.
struct FqElem {
    std::uint32_t v = 0;
    friend bool operator==(FqElem a, FqElem b) { return a.v == b.v; }
    friend bool operator!=(FqElem a, FqElem b) { return a.v != b.v; }
};

/// Backend description: K = Q_p (characteristic zero, c = 1) or
/// K = F_q((X)) with q = p^c. Carries the residue-field tables.
///
/// The modulus is the irreducible polynomial over F_p defining F_q,
/// stored low degree first, length c+1, monic. Ignored when c = 1.
class FieldParams {
public:
    FieldParams(Characteristic chr, std::uint32_t p, std::uint32_t c = 1,
                std::vector<std::uint32_t> modulus = {});

    Characteristic characteristic() const { return chr_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t c() const { return c_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    /// Hard cap on digit-window length; operations needing more throw
    /// precision_error rather than silently truncating.
    std::size_t max_digits() const { return max_digits_; }
    void set_max_digits(std::size_t n) { max_digits_ = n; }

    bool same_as(const FieldParams& o) const {
        return chr_ == o.chr_ && p_ == o.p_ && c_ == o.c_ && modulus_ == o.modulus_;
    }

    // residue field tables (q <= 256)
    FqElem add(FqElem a, FqElem b) const { return {add_tab_[a.v * q_ + b.v]}; }
    FqElem mul(FqElem a, FqElem b) const { return {mul_tab_[a.v * q_ + b.v]}; }
    FqElem neg(FqElem a) const { return {neg_tab_[a.v]}; }
    std::uint32_t trace_tab(FqElem a) const { return trace_tab_[a.v]; }

    std::string describe() const;

private:
    Characteristic chr_;
    std::uint32_t p_, c_, q_;
    std::vector<std::uint32_t> modulus_;
    std::size_t max_digits_ = 96;
    std::vector<std::uint32_t> add_tab_, mul_tab_, neg_tab_, trace_tab_;

    void build_tables();
};

/// Default irreducible modulus for small prime powers (low degree first).
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t c);

[[nodiscard]] FqElem fq_add(const FieldParams& f, FqElem a, FqElem b);
[[nodiscard]] FqElem fq_mul(const FieldParams& f, FqElem a, FqElem b);
[[nodiscard]] FqElem fq_neg(const FieldParams& f, FqElem a);

/// Trace F_q -> F_p, used by the positive-characteristic character.
std::uint32_t trace(const FieldParams& f, FqElem a);

/// A truncated element of K: the exact value sum_{i} d_i * prime^{v+i}
/// over a finite digit window, with d_0 nonzero. Zero is the distinguished
/// element with no digits (valuation = +infinity).
class LocalElement {
public:
    LocalElement() = default; // zero

    static LocalElement zero() { return LocalElement(); }
    static LocalElement make(int valuation, std::vector<FqElem> digits);
    /// prime^k (k may be negative).
    static LocalElement prime_power(int k);
    static LocalElement one() { return prime_power(0); }

    bool is_zero() const { return digits_.empty(); }
    /// Defined only for nonzero elements.
    int valuation() const;
    const std::vector<FqElem>& digits() const { return digits_; }

    /// Digit at position t (coefficient of prime^t); zero outside the window.
    FqElem digit_at(int t) const;

    /// |x| = q^{-v} as exact rational; |0| = 0.
    Rational abs_value(const FieldParams& f) const;

    friend bool operator==(const LocalElement& a, const LocalElement& b) {
        return a.val_ == b.val_ && a.digits_ == b.digits_;
    }

    std::string to_string(const FieldParams& f) const;

private:
    int val_ = 0;
    std::vector<FqElem> digits_; // digits_[i] at position val_ + i

    friend LocalElement elem_add(const FieldParams&, const LocalElement&, const LocalElement&);
    friend LocalElement elem_mul(const FieldParams&, const LocalElement&, const LocalElement&);
    friend LocalElement elem_neg(const FieldParams&, const LocalElement&);
};

[[nodiscard]] LocalElement elem_add(const FieldParams& f, const LocalElement& x, const LocalElement& y);
[[nodiscard]] LocalElement elem_mul(const FieldParams& f, const LocalElement& x, const LocalElement& y);
/// Additive inverse. Positive characteristic only: in Q_p the negative of a
/// finite expansion has no finite digit window.
[[nodiscard]] LocalElement elem_neg(const FieldParams& f, const LocalElement& x);

/// Canonical coset representative u(n) of D in K: built from the base-q
/// digits of n, one residue digit per negative position.
LocalElement u_of(const FieldParams& f, std::uint64_t n);

/// Inverse of u_of on its image: the n with u(n) = x, if x has digits only
/// at negative positions (x = 0 gives 0).
std::optional<std::uint64_t> u_index_of(const FieldParams& f, const LocalElement& x);

/// Identifies the coset h + P^level inside the ambient ideal P^ambient.
/// word digits are encoded in the index base q, lowest position fastest.
struct CosetIndex {
    int level = 0;
    std::uint64_t index = 0;
};

/// Ball h + P^level inside the ambient window P^ambient; center is the
/// coset index among the q^(level-ambient) cells.
struct Ball {
    int ambient = 0;
    int level = 0;
    std::uint64_t center = 0;

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.ambient == b.ambient && a.level == b.level && a.center == b.center;
    }
};

enum class BallRelation { disjoint, a_contains_b, b_contains_a, equal };

/// Haar measure q^{-level}, exact.
Rational haar_measure(const FieldParams& f, const Ball& b);

/// Two balls in the same ambient window are nested, disjoint or equal;
/// partial overlap cannot occur.
BallRelation ball_relation(const FieldParams& f, const Ball& a, const Ball& b);

std::uint64_t ipow64(std::uint64_t b, std::uint32_t e);

/// Number of cells (cosets of P^level) in the window P^window_lo.
std::uint64_t cell_count(const FieldParams& f, int window_lo, int level);

/// The exact representative of cell `index`: digits at positions
/// window_lo..level-1 read off base q, lowest position fastest.
LocalElement cell_representative(const FieldParams& f, int window_lo, int level,
                                 std::uint64_t index);

/// Cell of x at resolution `level` within P^window_lo. Requires x in the window.
std::uint64_t cell_of(const FieldParams& f, int window_lo, int level, const LocalElement& x);

/// Group law on cell indices: the cell of x + y.
std::uint64_t cell_add(const FieldParams& f, std::uint64_t ncells, std::uint64_t i, std::uint64_t j);
std::uint64_t cell_sub(const FieldParams& f, std::uint64_t ncells, std::uint64_t i, std::uint64_t j);

/// Position (valuation) of the leading digit of the cell representative,
/// or nullopt for the zero cell. Index digits start at window_lo.
std::optional<int> cell_leading_position(const FieldParams& f, int window_lo, int level,
                                         std::uint64_t index);

/// Base-q digit reversal of n over `ndigits` digits.
std::uint64_t reverse_base_q(const FieldParams& f, std::uint64_t n, int ndigits);

} // namespace lfa
