#include "lfa/maximal.hpp"

#include <cmath>

namespace lfa {

SampledFunction extend_to_window(const SampledFunction& f, int m) {
    if (m < 0) throw parameter_error("extend_to_window: m must be >= 0");
    if (f.win_lo() != 0) {
        if (f.win_lo() == -m) return f;
        throw parameter_error("extend_to_window: input already windowed differently");
    }
    if (m == 0) return f;
    const FieldParams& fp = f.field();
    std::uint64_t cosets = cell_count(fp, -m, 0);
    std::uint64_t n = f.size() * cosets;
    bool tile = f.domain() == Domain::periodic;
    if (f.exact()) {
        std::vector<Rational> cells(n, Rational(0));
        for (std::uint64_t j = 0; j < n; ++j) {
            std::uint64_t ucell = j % cosets, dcell = j / cosets;
            if (tile || ucell == 0) cells[j] = f.rval(dcell);
        }
        return SampledFunction::from_rational(f.params_ptr(), -m, f.level(), Domain::windowed,
                                              std::move(cells));
    }
    std::vector<Cplx> cells(n, Cplx(0.0, 0.0));
    for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t ucell = j % cosets, dcell = j / cosets;
        if (tile || ucell == 0) cells[j] = f.cval(dcell);
    }
    return SampledFunction::from_complex(f.params_ptr(), -m, f.level(), Domain::windowed,
                                         std::move(cells));
}

namespace {

// per-level coset sums of |f| from the finest level up; sums[l][c] covers the
// level-(lo+l) coset c
template <typename T>
std::vector<std::vector<T>> coset_sums(const FieldParams& fp, const std::vector<T>& finest) {
    std::vector<std::vector<T>> sums;
    sums.push_back(finest);
    while (sums.back().size() > 1) {
        const auto& prev = sums.back();
        std::uint64_t nc = prev.size() / fp.q();
        std::vector<T> next(nc, T(0));
        for (std::uint64_t c = 0; c < prev.size(); ++c) next[c % nc] += prev[c];
        sums.push_back(std::move(next));
    }
    // sums[d] has cells of level (level - d); reverse index sense kept implicit
    return sums;
}

} // namespace

SampledFunction maximal_windowed(const SampledFunction& f) {
    const FieldParams& fp = f.field();
    const int lo = f.win_lo();
    const int k = f.level();
    const std::uint64_t n = f.size();

    if (f.exact()) {
        std::vector<Rational> g(n);
        for (std::uint64_t j = 0; j < n; ++j) {
            g[j] = f.rval(j);
            if (g[j] < 0) g[j] = -g[j];
        }
        auto sums = coset_sums(fp, g);
        std::vector<Rational> out(n);
        for (std::uint64_t j = 0; j < n; ++j) {
            Rational best(-1);
            std::uint64_t c = j;
            for (int d = 0; d <= k - lo; ++d) {
                // ball at level k-d containing cell j: avg = sum * q^{-d}
                Rational avg = sums[static_cast<std::size_t>(d)][c] *
                               rat_pow(fp.q(), -static_cast<std::int64_t>(d));
                if (avg > best) best = avg;
                c %= std::max<std::uint64_t>(1, sums[static_cast<std::size_t>(d)].size() / fp.q());
            }
            out[j] = best;
        }
        return SampledFunction::from_rational(f.params_ptr(), lo, k, Domain::windowed,
                                              std::move(out));
    }

    std::vector<double> g(n);
    for (std::uint64_t j = 0; j < n; ++j) g[j] = std::abs(f.cval(j));
    auto sums = coset_sums(fp, g);
    std::vector<Cplx> out(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        double best = -1.0;
        std::uint64_t c = j;
        for (int d = 0; d <= k - lo; ++d) {
            double avg = sums[static_cast<std::size_t>(d)][c] /
                         std::pow(double(fp.q()), double(d));
            if (avg > best) best = avg;
            c %= std::max<std::uint64_t>(1, sums[static_cast<std::size_t>(d)].size() / fp.q());
        }
        out[j] = Cplx(best, 0.0);
    }
    return SampledFunction::from_complex(f.params_ptr(), lo, k, Domain::windowed, std::move(out));
}

SampledFunction maximal(const SampledFunction& f, int m) {
    return maximal_windowed(extend_to_window(f, m));
}

SampledFunction sharp_maximal(const SampledFunction& f, int m) {
    SampledFunction g = extend_to_window(f, m);
    const FieldParams& fp = g.field();
    const int lo = g.win_lo();
    const int k = g.level();
    const std::uint64_t n = g.size();

    if (g.exact()) {
        // level-j pass: ball averages, then coset sums of |f - f_B|
        std::vector<Rational> vals(n);
        for (std::uint64_t j = 0; j < n; ++j) vals[j] = g.rval(j);
        auto sums = coset_sums(fp, vals);
        std::vector<Rational> best(n, Rational(0));
        for (int d = 0; d <= k - lo; ++d) {
            std::uint64_t nballs = sums[static_cast<std::size_t>(d)].size();
            std::uint64_t per = n / nballs;
            std::vector<Rational> osc(nballs, Rational(0));
            for (std::uint64_t c = 0; c < nballs; ++c) {
                Rational avg = sums[static_cast<std::size_t>(d)][c] / Rational(per);
                Rational s(0);
                for (std::uint64_t i = 0; i < per; ++i) {
                    Rational diff = vals[c + i * nballs] - avg;
                    if (diff < 0) diff = -diff;
                    s += diff;
                }
                osc[c] = s / Rational(per); // average oscillation over the ball
            }
            for (std::uint64_t j = 0; j < n; ++j) {
                Rational o = osc[j % nballs];
                if (o > best[j]) best[j] = o;
            }
        }
        return SampledFunction::from_rational(g.params_ptr(), lo, k, Domain::windowed,
                                              std::move(best));
    }

    std::vector<Cplx> vals(n);
    for (std::uint64_t j = 0; j < n; ++j) vals[j] = g.cval(j);
    std::vector<Cplx> csum(vals);
    std::vector<double> best(n, 0.0);
    std::uint64_t nballs = n;
    while (true) {
        std::uint64_t per = n / nballs;
        for (std::uint64_t c = 0; c < nballs; ++c) {
            Cplx avg = csum[c] / double(per);
            double s = 0.0;
            for (std::uint64_t i = 0; i < per; ++i) s += std::abs(vals[c + i * nballs] - avg);
            s /= double(per);
            for (std::uint64_t i = 0; i < per; ++i) {
                std::uint64_t j = c + i * nballs;
                if (s > best[j]) best[j] = s;
            }
        }
        if (nballs == 1) break;
        std::uint64_t nc = nballs / fp.q();
        std::vector<Cplx> next(nc, Cplx(0.0, 0.0));
        for (std::uint64_t c = 0; c < nballs; ++c) next[c % nc] += csum[c];
        csum = std::move(next);
        nballs = nc;
    }
    std::vector<Cplx> out(n);
    for (std::uint64_t j = 0; j < n; ++j) out[j] = Cplx(best[j], 0.0);
    return SampledFunction::from_complex(g.params_ptr(), lo, k, Domain::windowed, std::move(out));
}

SampledFunction m_s(const SampledFunction& f, double s, int m) {
    if (!(s > 1.0)) throw parameter_error("m_s: need s > 1");
    SampledFunction g = extend_to_window(f, m).to_complex();
    std::vector<Cplx> cells(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        cells[j] = Cplx(std::pow(std::abs(g.cval(j)), s), 0.0);
    SampledFunction powd = SampledFunction::from_complex(g.params_ptr(), g.win_lo(), g.level(),
                                                         Domain::windowed, std::move(cells));
    SampledFunction M = maximal_windowed(powd);
    std::vector<Cplx> out(M.size());
    for (std::size_t j = 0; j < M.size(); ++j)
        out[j] = Cplx(std::pow(M.cval(j).real(), 1.0 / s), 0.0);
    return SampledFunction::from_complex(g.params_ptr(), g.win_lo(), g.level(), Domain::windowed,
                                         std::move(out));
}

} // namespace lfa
