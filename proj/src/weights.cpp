#include "lfa/weights.hpp"

#include <cmath>

namespace lfa {

Weight Weight::sampled(SampledFunction cells) {
    if (cells.win_lo() != 0)
        throw parameter_error("Weight: sampled weights live on D (Lambda-periodic)");
    for (std::size_t j = 0; j < cells.size(); ++j) {
        bool pos = cells.exact() ? cells.rval(j) > 0 : cells.cval(j).real() > 0.0;
        if (!pos) throw domain_error("Weight: cells must be positive");
    }
    Weight w;
    w.is_power_ = false;
    w.cells_ = std::move(cells);
    return w;
}

double power_weight_ball_mass(const FieldParams& f, double alpha, const Ball& ball) {
    if (!(alpha > -1.0))
        throw nonintegrable_error("power weight needs alpha > -1");
    const double q = double(f.q());
    auto lead = cell_leading_position(f, ball.ambient, ball.level, ball.center);
    if (!lead) {
        // ball contains 0: geometric series over the spheres inside it
        return (q - 1.0) * std::pow(q, alpha - double(ball.level) * (alpha + 1.0)) /
               (std::pow(q, alpha + 1.0) - 1.0);
    }
    // |x| = q^{-t} constant on the ball
    return std::pow(q, -double(*lead) * alpha - double(ball.level));
}

Rational power_weight_ball_mass_exact(const FieldParams& f, long alpha, const Ball& ball) {
    if (alpha <= -1) throw nonintegrable_error("power weight needs alpha > -1");
    const std::int64_t q = f.q();
    auto lead = cell_leading_position(f, ball.ambient, ball.level, ball.center);
    if (!lead) {
        Rational num = Rational(q - 1) * rat_pow(q, alpha - std::int64_t(ball.level) * (alpha + 1));
        return num / (rat_pow(q, alpha + 1) - 1);
    }
    return rat_pow(q, -std::int64_t(*lead) * alpha - std::int64_t(ball.level));
}

std::vector<double> Weight::values_on_window(const FieldParams& f, int win_lo, int level) const {
    std::uint64_t n = cell_count(f, win_lo, level);
    std::vector<double> v(n);
    if (is_power_) {
        const double q = double(f.q());
        for (std::uint64_t j = 0; j < n; ++j) {
            auto lead = cell_leading_position(f, win_lo, level, j);
            if (lead) {
                v[j] = std::pow(q, -double(*lead) * alpha_);
            } else {
                // cell average of the singular cell, from the closed-form mass
                v[j] = power_weight_ball_mass(f, alpha_, Ball{win_lo, level, j}) *
                       std::pow(q, double(level));
            }
        }
        return v;
    }
    // Lambda-periodic tiling of the sampled cells over the window
    SampledFunction w = cells_.level() < level ? cells_.lift(level) : cells_;
    if (w.level() > level)
        throw resolution_error("Weight: sampled weight is finer than the requested grid");
    std::uint64_t cosets = cell_count(f, win_lo, 0);
    for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t dcell = j / cosets;
        v[j] = w.exact() ? to_double(w.rval(dcell)) : w.cval(dcell).real();
    }
    return v;
}

std::vector<double> Weight::masses_on_window(const FieldParams& f, int win_lo, int level) const {
    std::vector<double> m = values_on_window(f, win_lo, level);
    const double cell = std::pow(double(f.q()), -double(level));
    for (auto& x : m) x *= cell;
    if (is_power_) {
        // origin cell: exact geometric mass rather than average * measure
        m[0] = power_weight_ball_mass(f, alpha_, Ball{win_lo, level, 0});
    }
    return m;
}

ApReport ap_characteristic(const FieldParams& f, const Weight& w, double p, int k) {
    if (!(p > 1.0)) throw parameter_error("ap_characteristic: need p > 1");
    if (k < 0) throw parameter_error("ap_characteristic: need k >= 0");
    ApReport rep;
    rep.p = p;
    rep.level = k;

    if (w.is_power()) {
        const double alpha = w.alpha();
        const double q = double(f.q());
        if (!(alpha > -1.0)) throw nonintegrable_error("ap_characteristic: alpha <= -1");
        if (!(alpha < p - 1.0))
            throw nonintegrable_error("ap_characteristic: alpha >= p-1, dual mass diverges");
        // balls containing 0 share one level-independent ratio; off-origin
        // balls give exactly 1
        double cf = std::pow(q - 1.0, p) /
                    ((std::pow(q, alpha + 1.0) - 1.0) *
                     std::pow(std::pow(q, 1.0 - alpha / (p - 1.0)) - 1.0, p - 1.0));
        if (k >= 1 && cf < 1.0) {
            rep.value = 1.0;
            rep.witness = Ball{0, 1, 1};
        } else {
            rep.value = cf;
            rep.witness = Ball{0, 0, 0};
        }
        return rep;
    }

    const FieldParams& fp = w.cells().field();
    if (!fp.same_as(f)) throw parameter_error("ap_characteristic: field mismatch");
    int kk = std::max(k, w.cells().level());
    SampledFunction cells = w.cells().level() < kk ? w.cells().lift(kk) : w.cells();
    const std::uint64_t n = cells.size();

    if (cells.exact() && p == 2.0) {
        Rational meas = rat_pow(f.q(), -static_cast<std::int64_t>(kk));
        std::vector<Rational> sa(n), sb(n);
        for (std::uint64_t j = 0; j < n; ++j) {
            if (!(cells.rval(j) > 0)) throw domain_error("ap_characteristic: weight not positive");
            sa[j] = cells.rval(j) * meas;
            sb[j] = meas / cells.rval(j);
        }
        Rational best(0);
        Ball bw{0, 0, 0};
        for (int j = kk; j >= 0; --j) {
            if (j <= k) {
                Rational ball_meas = rat_pow(f.q(), -static_cast<std::int64_t>(j));
                for (std::uint64_t c = 0; c < sa.size(); ++c) {
                    Rational ratio = (sa[c] / ball_meas) * (sb[c] / ball_meas);
                    if (ratio > best) {
                        best = ratio;
                        bw = Ball{0, j, c};
                    }
                }
            }
            if (j == 0) break;
            std::uint64_t nc = sa.size() / f.q();
            std::vector<Rational> na(nc, Rational(0)), nb(nc, Rational(0));
            for (std::uint64_t c = 0; c < sa.size(); ++c) {
                na[c % nc] += sa[c];
                nb[c % nc] += sb[c];
            }
            sa = std::move(na);
            sb = std::move(nb);
        }
        rep.exact = best;
        rep.value = to_double(best);
        rep.witness = bw;
        return rep;
    }

    double meas = std::pow(double(f.q()), -double(kk));
    std::vector<double> sa(n), sb(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        double wj = cells.exact() ? to_double(cells.rval(j)) : cells.cval(j).real();
        if (!(wj > 0.0)) throw domain_error("ap_characteristic: weight not positive");
        sa[j] = wj * meas;
        sb[j] = std::pow(wj, -1.0 / (p - 1.0)) * meas;
    }
    double best = 0.0;
    Ball bw{0, 0, 0};
    for (int j = kk; j >= 0; --j) {
        if (j <= k) {
            double ball_meas = std::pow(double(f.q()), -double(j));
            for (std::uint64_t c = 0; c < sa.size(); ++c) {
                double ratio = (sa[c] / ball_meas) * std::pow(sb[c] / ball_meas, p - 1.0);
                if (ratio > best) {
                    best = ratio;
                    bw = Ball{0, j, c};
                }
            }
        }
        if (j == 0) break;
        std::uint64_t nc = sa.size() / f.q();
        std::vector<double> na(nc, 0.0), nb(nc, 0.0);
        for (std::uint64_t c = 0; c < sa.size(); ++c) {
            na[c % nc] += sa[c];
            nb[c % nc] += sb[c];
        }
        sa = std::move(na);
        sb = std::move(nb);
    }
    rep.value = best;
    rep.witness = bw;
    return rep;
}

double doubling_ratio(const FieldParams& f, const Weight& w, int k) {
    const double q = double(f.q());
    if (w.is_power()) {
        const double a = w.alpha();
        if (!(a > -1.0)) throw nonintegrable_error("doubling_ratio: alpha <= -1");
        double r1 = std::pow(q, a + 1.0);
        double r2 = (q - 1.0) * std::pow(q, a + 1.0) / (std::pow(q, a + 1.0) - 1.0);
        double r3 = q;
        return std::max({r1, r2, r3});
    }
    SampledFunction cells = w.cells().level() < k ? w.cells().lift(k) : w.cells();
    std::vector<double> sums(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
        sums[j] = cells.exact() ? to_double(cells.rval(j)) : cells.cval(j).real();
    double best = 0.0;
    for (int j = cells.level(); j >= 1; --j) {
        std::uint64_t nc = sums.size() / f.q();
        std::vector<double> parent(nc, 0.0);
        for (std::uint64_t c = 0; c < sums.size(); ++c) parent[c % nc] += sums[c];
        for (std::uint64_t c = 0; c < sums.size(); ++c)
            best = std::max(best, parent[c % nc] / sums[c]);
        sums = std::move(parent);
    }
    return best;
}

double weighted_lp_norm(const SampledFunction& f, double p, const Weight& w) {
    std::vector<double> masses = w.masses_on_window(f.field(), f.win_lo(), f.level());
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        s += std::pow(std::abs(f.cval(j)), p) * masses[j];
    return std::pow(s, 1.0 / p);
}

} // namespace lfa
