#include "lfa/character.hpp"

#include <cmath>
#include <numbers>

namespace lfa {

namespace {

// frac(x) = sum_{t<0} d_t p^t as a fraction num / p^m, m = -valuation.
// Fits in uint64 for every window this library materializes.
std::pair<std::uint64_t, std::uint64_t> frac_parts(const FieldParams& f, const LocalElement& x) {
    if (x.is_zero() || x.valuation() >= 0) return {0, 1};
    int m = -x.valuation();
    if (m > 60) throw precision_error("chi: fractional window too deep for exact angle");
    std::uint64_t den = ipow64(f.p(), static_cast<std::uint32_t>(m));
    std::uint64_t num = 0;
    for (int t = x.valuation(); t < 0; ++t)
        num += std::uint64_t(x.digit_at(t).v) * ipow64(f.p(), static_cast<std::uint32_t>(t + m));
    return {num, den};
}

} // namespace

Cplx chi(const FieldParams& f, const LocalElement& x) {
    if (f.characteristic() == Characteristic::positive) {
        std::uint32_t t = trace(f, x.digit_at(-1));
        if (t == 0) return {1.0, 0.0};
        if (f.p() == 2) return {-1.0, 0.0};
        double ang = 2.0 * std::numbers::pi * double(t) / double(f.p());
        return {std::cos(ang), std::sin(ang)};
    }
    auto [num, den] = frac_parts(f, x);
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    double ang = 2.0 * std::numbers::pi * (double(num) / double(den));
    return {std::cos(ang), std::sin(ang)};
}

int chi_sign(const FieldParams& f, const LocalElement& x) {
    if (f.characteristic() != Characteristic::positive || f.p() != 2)
        throw unsupported_error("chi_sign: exact +-1 characters need residue characteristic 2");
    return trace(f, x.digit_at(-1)) == 0 ? 1 : -1;
}

Cplx chi_n(const FieldParams& f, std::uint64_t n, const LocalElement& x) {
    return chi(f, elem_mul(f, u_of(f, n), x));
}

CharacterSystem::CharacterSystem(std::shared_ptr<const FieldParams> params, int resolution)
    : params_(std::move(params)), k_(resolution) {
    if (k_ < 0) throw parameter_error("CharacterSystem: resolution must be >= 0");
    n_ = cell_count(*params_, 0, k_);
    if (n_ > 1024) throw resolution_error("CharacterSystem: q^k too large to materialize");
    reps_.reserve(n_);
    for (std::uint64_t j = 0; j < n_; ++j)
        reps_.push_back(cell_representative(*params_, 0, k_, j));

    const bool exact = params_->characteristic() == Characteristic::positive && params_->p() == 2;
    std::vector<LocalElement> us(n_);
    for (std::uint64_t n = 0; n < n_; ++n) us[n] = u_of(*params_, n);
    table_.resize(n_ * n_);
    if (exact) signs_.resize(n_ * n_);
    for (std::uint64_t n = 0; n < n_; ++n) {
        for (std::uint64_t j = 0; j < n_; ++j) {
            LocalElement prod = elem_mul(*params_, us[n], reps_[j]);
            if (exact) {
                int s = chi_sign(*params_, prod);
                signs_[n * n_ + j] = static_cast<signed char>(s);
                table_[n * n_ + j] = {double(s), 0.0};
            } else {
                table_[n * n_ + j] = chi(*params_, prod);
            }
        }
    }
}

Cplx CharacterSystem::value(std::uint64_t n, std::uint64_t j) const {
    if (n >= n_ || j >= n_) throw resolution_error("CharacterSystem: index exceeds q^k");
    return table_[n * n_ + j];
}

int CharacterSystem::sign(std::uint64_t n, std::uint64_t j) const {
    if (signs_.empty())
        throw unsupported_error("CharacterSystem: exact signs need residue characteristic 2");
    if (n >= n_ || j >= n_) throw resolution_error("CharacterSystem: index exceeds q^k");
    return signs_[n * n_ + j];
}

} // namespace lfa
