#pragma once

#include "lfa/function.hpp"

#include <optional>

namespace lfa {

/// A weight on K: either the power weight |x|^alpha (Lambda-periodic
/// reduction used for A_p; genuine |x|^alpha on windows) or a sampled
/// positive function on D extended Lambda-periodically.
class Weight {
public:
    static Weight power(double alpha) {
        Weight w;
        w.is_power_ = true;
        w.alpha_ = alpha;
        return w;
    }
    static Weight sampled(SampledFunction cells);

    bool is_power() const { return is_power_; }
    double alpha() const { return alpha_; }
    const SampledFunction& cells() const { return cells_; }

    /// Cell value (cell average for the cell containing 0) on the window
    /// P^{-m} at resolution level.
    std::vector<double> values_on_window(const FieldParams& f, int win_lo, int level) const;
    /// Exact cell masses integrate the weight; value * q^{-level} off the
    /// origin cell, the closed-form geometric series on it.
    std::vector<double> masses_on_window(const FieldParams& f, int win_lo, int level) const;

private:
    Weight() = default;
    bool is_power_ = false;
    double alpha_ = 0.0;
    SampledFunction cells_;
};

struct ApReport {
    double p = 0.0;
    int level = 0;
    double value = 0.0;
    std::optional<Rational> exact; // set when computed in exact arithmetic
    Ball witness;
};

/// w(ball) for w = |x|^alpha: the geometric-series closed form
/// (q-1) q^{alpha - j(alpha+1)} / (q^{alpha+1} - 1) for balls containing 0,
/// |center|^alpha q^{-j} otherwise. Needs alpha > -1.
double power_weight_ball_mass(const FieldParams& f, double alpha, const Ball& ball);
/// Exact variant for integer alpha.
Rational power_weight_ball_mass_exact(const FieldParams& f, long alpha, const Ball& ball);

/// sup over balls B in D of levels 0..k of (avg_B w)(avg_B w^{-1/(p-1)})^{p-1},
/// with the witness ball. Exact rationals when w is sampled rational and p = 2.
ApReport ap_characteristic(const FieldParams& f, const Weight& w, double p, int k);

/// max over cells and levels 1..k of w(parent ball)/w(child ball).
double doubling_ratio(const FieldParams& f, const Weight& w, int k);

/// || f ||_{L^p(w)} over f's window, using exact weight cell masses.
double weighted_lp_norm(const SampledFunction& f, double p, const Weight& w);

} // namespace lfa
