#pragma once

#include "lfa/character.hpp"
#include "lfa/field.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace lfa {

enum class Domain { on_D, periodic, windowed };

/// A complex-valued function constant on cosets of P^level within the window
/// P^win_lo, stored as one value per cell (lowest digit position fastest).
/// Values are exact rationals when the data is genuinely rational (weights,
/// indicators, characteristic-2 character sums); binary64 complex otherwise.
class SampledFunction {
public:
    SampledFunction() = default;

    static SampledFunction zeros(std::shared_ptr<const FieldParams> params, int win_lo,
                                 int level, Domain dom, bool exact);
    static SampledFunction constant(std::shared_ptr<const FieldParams> params, int level,
                                    const Rational& value, Domain dom = Domain::on_D);
    static SampledFunction from_rational(std::shared_ptr<const FieldParams> params, int win_lo,
                                         int level, Domain dom, std::vector<Rational> cells);
    static SampledFunction from_complex(std::shared_ptr<const FieldParams> params, int win_lo,
                                        int level, Domain dom, std::vector<Cplx> cells);

    const FieldParams& field() const { return *params_; }
    std::shared_ptr<const FieldParams> params_ptr() const { return params_; }
    int level() const { return level_; }
    int win_lo() const { return win_lo_; }
    Domain domain() const { return domain_; }
    bool exact() const { return exact_; }
    std::size_t size() const { return exact_ ? rvals_.size() : cvals_.size(); }

    Cplx cval(std::size_t j) const {
        return exact_ ? Cplx(to_double(rvals_[j]), 0.0) : cvals_[j];
    }
    const Rational& rval(std::size_t j) const;
    const std::vector<Rational>& rvals() const;
    const std::vector<Cplx>& cvals() const;

    /// Same data with complex storage (identity when already complex).
    SampledFunction to_complex() const;

    /// Refinement embedding to a deeper level; preserves integrals, norms and
    /// Fourier coefficients.
    SampledFunction lift(int new_level) const;

    /// Block means down to a coarser level (the level-k cell averages).
    SampledFunction coarsen(int new_level) const;

    /// Integral over the domain window (cell measure q^{-level}).
    Cplx integral() const;
    Rational integral_exact() const;

    /// |f| cellwise. Keeps exact storage when exact.
    SampledFunction abs() const;
    SampledFunction conj() const;
    SampledFunction operator+(const SampledFunction& o) const;
    SampledFunction operator-(const SampledFunction& o) const;
    /// Cellwise product.
    SampledFunction operator*(const SampledFunction& o) const;
    SampledFunction scaled(const Cplx& a) const;
    SampledFunction scaled(const Rational& a) const;

    /// tau_h f = f(. - h), h given as a cell index of the same window.
    SampledFunction translate(std::uint64_t h_cell) const;

    double max_abs_diff(const SampledFunction& o) const;

    /// Exact equality; requires both sides exact.
    friend bool operator==(const SampledFunction& a, const SampledFunction& b);

private:
    std::shared_ptr<const FieldParams> params_;
    int win_lo_ = 0;
    int level_ = 0;
    Domain domain_ = Domain::on_D;
    bool exact_ = false;
    std::vector<Rational> rvals_;
    std::vector<Cplx> cvals_;

    void check_compatible(const SampledFunction& o) const;
};

/// Indicator of the coset h + P^{h.level} in D, realized at resolution `level`.
SampledFunction indicator(std::shared_ptr<const FieldParams> params, const CosetIndex& h,
                          int level);

/// The character chi_n as a level-k sampled function (exact signs when p = 2
/// in positive characteristic).
SampledFunction character_function(const CharacterSystem& cs, std::uint64_t n);

/// (q^{-k} sum |f|^p w)^{1/p}. The weight, when given, must be positive
/// cellwise and share the grid of f.
double lp_norm(const SampledFunction& f, double p,
               const SampledFunction* w = nullptr);

/// Exact p-th power of the L^p norm for integer p and rational data.
Rational lp_norm_pow_exact(const SampledFunction& f, unsigned p,
                           const SampledFunction* w = nullptr);

/// <f, g>_w = q^{-k} sum f conj(g) w.
Cplx inner_product(const SampledFunction& f, const SampledFunction& g,
                   const SampledFunction* w = nullptr);

} // namespace lfa
