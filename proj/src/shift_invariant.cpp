#include "lfa/shift_invariant.hpp"

#include "lfa/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lfa {

PeriodizeResult periodize(const PhiSpec& spec) {
    const SampledFunction& ph = spec.phi_hat;
    const FieldParams& f = ph.field();
    if (f.characteristic() != Characteristic::positive)
        throw unsupported_error("periodize: the translation lattice is a group only in "
                                "positive characteristic");
    const int k = ph.level();
    const int m = -ph.win_lo();
    if (m < 0) throw parameter_error("periodize: phi_hat window must contain D");
    std::uint64_t cosets = cell_count(f, ph.win_lo(), 0);
    std::uint64_t n_d = cell_count(f, 0, k);

    double window_mass = 0.0;
    for (std::size_t j = 0; j < ph.size(); ++j) window_mass += std::norm(ph.cval(j));
    window_mass *= to_double(rat_pow(f.q(), -k));
    double tail = 0.0;
    if (spec.declared_total) {
        tail = *spec.declared_total - window_mass;
        if (tail < 0.0 && tail > -1e-12) tail = 0.0;
        if (tail < 0.0)
            throw parameter_error("periodize: declared total below the window mass");
        if (tail > 1e-3)
            throw window_error("periodize: truncation tail " + std::to_string(tail) +
                               " exceeds 1e-3; widen the phi_hat window");
    }

    PeriodizeResult res;
    res.tail_mass = tail;
    if (ph.exact()) {
        std::vector<Rational> cells(n_d, Rational(0));
        for (std::uint64_t d = 0; d < n_d; ++d)
            for (std::uint64_t u = 0; u < cosets; ++u) {
                const Rational& v = ph.rval(u + cosets * d);
                cells[d] += v * v;
            }
        res.w_phi = SampledFunction::from_rational(ph.params_ptr(), 0, k, Domain::periodic,
                                                   std::move(cells));
        return res;
    }
    std::vector<Cplx> cells(n_d, Cplx(0.0, 0.0));
    for (std::uint64_t d = 0; d < n_d; ++d) {
        double s = 0.0;
        for (std::uint64_t u = 0; u < cosets; ++u) s += std::norm(ph.cval(u + cosets * d));
        cells[d] = Cplx(s, 0.0);
    }
    res.w_phi = SampledFunction::from_complex(ph.params_ptr(), 0, k, Domain::periodic,
                                              std::move(cells));
    return res;
}

ApReport a2_check(const FieldParams& f, const Weight& w, int k) {
    return ap_characteristic(f, w, 2.0, k);
}

DualResult canonical_dual(const SampledFunction& w_phi) {
    DualResult res;
    res.integrable = true;
    if (w_phi.exact()) {
        std::vector<Rational> rec(w_phi.size(), Rational(0));
        for (std::size_t j = 0; j < w_phi.size(); ++j) {
            if (w_phi.rval(j) == 0) {
                res.integrable = false; // dual undefined on this cell
                continue;
            }
            rec[j] = Rational(1) / w_phi.rval(j);
        }
        res.reciprocal = SampledFunction::from_rational(w_phi.params_ptr(), w_phi.win_lo(),
                                                        w_phi.level(), w_phi.domain(),
                                                        std::move(rec));
    } else {
        std::vector<Cplx> rec(w_phi.size(), Cplx(0.0, 0.0));
        for (std::size_t j = 0; j < w_phi.size(); ++j) {
            double v = w_phi.cval(j).real();
            if (!(v > 0.0)) {
                res.integrable = false;
                continue;
            }
            rec[j] = Cplx(1.0 / v, 0.0);
        }
        res.reciprocal = SampledFunction::from_complex(w_phi.params_ptr(), w_phi.win_lo(),
                                                       w_phi.level(), w_phi.domain(),
                                                       std::move(rec));
    }
    res.integral = res.reciprocal.integral().real();
    return res;
}

double biorthogonality_check(const FieldParams& f, const SampledFunction& w_phi, std::uint64_t N,
                             int k) {
    if (N > cell_count(f, 0, k))
        throw resolution_error("biorthogonality_check: N > q^k");
    SampledFunction w = w_phi.level() < k ? w_phi.lift(k) : w_phi;
    for (std::size_t j = 0; j < w.size(); ++j) {
        double v = w.exact() ? to_double(w.rval(j)) : w.cval(j).real();
        if (!(v > 0.0))
            throw domain_error("biorthogonality_check: dual undefined on a zero cell");
    }
    auto params = w.params_ptr();
    CharacterSystem cs(params, k);
    SampledFunction wc = w.to_complex();
    double worst = 0.0;
    for (std::uint64_t a = 0; a < N; ++a) {
        SampledFunction xa = character_function(cs, a).to_complex();
        for (std::uint64_t b = 0; b < N; ++b) {
            SampledFunction xb = character_function(cs, b).to_complex();
            // z_b = chi_b / w; pairing in L^2(D, w)
            std::vector<Cplx> zb(w.size());
            for (std::size_t j = 0; j < w.size(); ++j)
                zb[j] = xb.cval(j) / wc.cval(j).real();
            SampledFunction z = SampledFunction::from_complex(params, 0, k, Domain::on_D,
                                                              std::move(zb));
            Cplx ip = inner_product(xa, z, &wc);
            double dev = std::abs(ip - (a == b ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0)));
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

const char* to_string(SchauderVerdict v) {
    switch (v) {
        case SchauderVerdict::schauder_basis: return "schauder_basis";
        case SchauderVerdict::not_schauder: return "not_schauder";
        default: return "inconclusive";
    }
}

SchauderReport schauder_verdict(const PhiSpec& spec, const std::vector<int>& k_list,
                                std::uint64_t N) {
    if (k_list.empty()) throw parameter_error("schauder_verdict: empty level list");
    std::vector<int> ks = k_list;
    std::sort(ks.begin(), ks.end());
    PeriodizeResult per = periodize(spec);
    const FieldParams& f = per.w_phi.field();
    if (ks.back() > per.w_phi.level())
        throw resolution_error("schauder_verdict: requested level finer than phi_hat data");

    SchauderReport rep;
    rep.levels = ks;
    rep.tail_mass = per.tail_mass;

    bool zero_cell = false;
    std::vector<double> dual_integrals;
    for (int k : ks) {
        SampledFunction wk = per.w_phi.coarsen(k);
        DualResult dual = canonical_dual(wk);
        if (!dual.integrable) zero_cell = true;
        dual_integrals.push_back(dual.integral);

        double a2 = std::numeric_limits<double>::infinity();
        double sup_norm = std::numeric_limits<double>::infinity();
        if (!zero_cell) {
            Weight w = Weight::sampled(wk);
            a2 = a2_check(f, w, k).value;
            std::vector<double> wcells = w.values_on_window(f, 0, k);
            std::uint64_t nmax = std::min<std::uint64_t>(N, cell_count(f, 0, k));
            sup_norm = 0.0;
            std::vector<double> trace;
            for (std::uint64_t n = 1; n <= nmax; ++n) {
                KernelOperator op = make_Sn(wk.params_ptr(), n, k);
                double norm = weighted_opnorm_L2(op, wcells);
                trace.push_back(norm);
                sup_norm = std::max(sup_norm, norm);
            }
            if (k == ks.back()) rep.norm_trace = trace;
        }
        rep.a2_values.push_back(a2);
        rep.sup_norm_trace.push_back(sup_norm);
    }

    // dual integrability: no zero cells, and the integral of 1/w must not keep
    // growing by q^{1/2} per refinement level
    bool unstable = false;
    for (std::size_t i = 1; i < dual_integrals.size(); ++i) {
        double growth_levels = double(ks[i] - ks[i - 1]);
        double limit = std::pow(double(f.q()), 0.5 * growth_levels);
        if (i + 1 == dual_integrals.size() && dual_integrals[i - 1] > 0.0 &&
            dual_integrals[i] / dual_integrals[i - 1] >= limit)
            unstable = true;
    }
    rep.dual_integrable = !zero_cell && !unstable;

    bool a2_stable = false;
    if (!zero_cell && rep.a2_values.size() >= 2) {
        double prev = rep.a2_values[rep.a2_values.size() - 2];
        double last = rep.a2_values.back();
        a2_stable = std::abs(last / prev - 1.0) < 0.05;
    }
    bool trace_bounded = false;
    if (!rep.norm_trace.empty()) {
        std::size_t half = rep.norm_trace.size() / 2;
        double mx = 0.0, mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = half; i < rep.norm_trace.size(); ++i) {
            mx = std::max(mx, rep.norm_trace[i]);
            mn = std::min(mn, rep.norm_trace[i]);
        }
        trace_bounded = mn > 0.0 && mx / mn < 2.0;
    }
    bool sup_grows = rep.sup_norm_trace.size() >= 2 && !zero_cell;
    for (std::size_t i = 1; i < rep.sup_norm_trace.size() && sup_grows; ++i)
        if (!(rep.sup_norm_trace[i] >= 1.2 * rep.sup_norm_trace[i - 1])) sup_grows = false;

    if (!rep.dual_integrable || sup_grows)
        rep.verdict = SchauderVerdict::not_schauder;
    else if (a2_stable && trace_bounded)
        rep.verdict = SchauderVerdict::schauder_basis;
    else
        rep.verdict = SchauderVerdict::inconclusive;
    return rep;
}

TilingResult tiling_check(const FieldParams& f, const TilingSpec& spec) {
    const int m = spec.window_m;
    const int k = spec.level;
    if (m < 0 || k < -m) throw parameter_error("tiling_check: bad window");
    std::uint64_t nwin = cell_count(f, -m, k);
    for (auto c : spec.omega_cells)
        if (c >= nwin) throw resolution_error("tiling_check: omega cell outside window");

    // enclosing lattice P^{M} deep enough for every translation
    int M = -m;
    for (const auto& t : spec.translations)
        if (!t.is_zero()) M = std::min(M, t.valuation());
    std::uint64_t ng = cell_count(f, M, k);
    std::uint64_t shift = cell_count(f, M, -m); // embedding factor q^{-m-M}

    std::vector<char> in_omega(ng, 0);
    for (auto c : spec.omega_cells) in_omega[c * shift] = 1;

    std::vector<std::uint64_t> tcells;
    tcells.reserve(spec.translations.size());
    for (const auto& t : spec.translations) tcells.push_back(cell_of(f, M, k, t));

    TilingResult res;
    res.coverage.assign(nwin, 0);
    for (std::uint64_t x = 0; x < nwin; ++x) {
        std::uint64_t xg = x * shift;
        std::uint64_t cnt = 0;
        for (auto tg : tcells) {
            std::uint64_t d = cell_sub(f, ng, xg, tg);
            if (in_omega[d]) ++cnt;
        }
        res.coverage[x] = cnt;
    }
    res.tiles = std::all_of(res.coverage.begin(), res.coverage.end(),
                            [](std::uint64_t c) { return c == 1; });
    return res;
}

SpectralResult spectral_gram(const FieldParams& f, const TilingSpec& spec, std::size_t bank,
                             std::uint64_t seed) {
    const int m = spec.window_m;
    const int k = spec.level;
    const auto& gamma = spec.spectrum;
    if (gamma.empty()) throw parameter_error("spectral_gram: empty spectrum candidate");
    for (const auto& g : gamma)
        if (!g.is_zero() && g.valuation() < -k)
            throw resolution_error("spectral_gram: |gamma| > q^k, cells do not resolve chi_gamma");
    const std::size_t nom = spec.omega_cells.size();
    if (nom == 0) throw parameter_error("spectral_gram: empty omega");

    std::vector<LocalElement> reps;
    reps.reserve(nom);
    for (auto c : spec.omega_cells) reps.push_back(cell_representative(f, -m, k, c));

    const bool exact = f.characteristic() == Characteristic::positive && f.p() == 2;
    // character values on omega cells
    std::vector<std::vector<Cplx>> vals(gamma.size(), std::vector<Cplx>(nom));
    std::vector<std::vector<int>> sgn;
    if (exact) sgn.assign(gamma.size(), std::vector<int>(nom));
    for (std::size_t a = 0; a < gamma.size(); ++a)
        for (std::size_t j = 0; j < nom; ++j) {
            LocalElement prod = elem_mul(f, gamma[a], reps[j]);
            if (exact) {
                sgn[a][j] = chi_sign(f, prod);
                vals[a][j] = Cplx(double(sgn[a][j]), 0.0);
            } else {
                vals[a][j] = chi(f, prod);
            }
        }

    SpectralResult res;
    if (exact) {
        Rational worst_off(0), worst_diag(0);
        Rational inv(1, static_cast<long>(nom));
        for (std::size_t a = 0; a < gamma.size(); ++a)
            for (std::size_t b = 0; b < gamma.size(); ++b) {
                long s = 0;
                for (std::size_t j = 0; j < nom; ++j) s += sgn[a][j] * sgn[b][j];
                Rational entry = Rational(s) * inv;
                if (a == b) {
                    Rational dev = entry - 1;
                    if (dev < 0) dev = -dev;
                    if (dev > worst_diag) worst_diag = dev;
                } else {
                    Rational dev = entry < 0 ? Rational(-entry) : entry;
                    if (dev > worst_off) worst_off = dev;
                }
            }
        res.exact_offdiag = worst_off;
        res.max_offdiag = to_double(worst_off);
        res.max_diag_dev = to_double(worst_diag);
    } else {
        for (std::size_t a = 0; a < gamma.size(); ++a)
            for (std::size_t b = 0; b < gamma.size(); ++b) {
                Cplx s(0.0, 0.0);
                for (std::size_t j = 0; j < nom; ++j) s += vals[a][j] * std::conj(vals[b][j]);
                s /= double(nom);
                if (a == b)
                    res.max_diag_dev = std::max(res.max_diag_dev, std::abs(s - Cplx(1.0, 0.0)));
                else
                    res.max_offdiag = std::max(res.max_offdiag, std::abs(s));
            }
    }

    // completeness: enough exponentials, and Parseval on seeded data over Omega
    if (gamma.size() >= nom) {
        std::mt19937_64 rng(seed);
        auto unit = [&]() { return double(rng()) * 0x1p-63 - 1.0; };
        double omega_meas = double(nom); // in units of q^{-k} cells
        double worst = 0.0;
        for (std::size_t t = 0; t < bank; ++t) {
            std::vector<Cplx> fc(nom);
            for (auto& v : fc) v = Cplx(unit(), unit());
            double norm2 = 0.0;
            for (const auto& v : fc) norm2 += std::norm(v);
            norm2 /= omega_meas;
            double sum = 0.0;
            for (std::size_t a = 0; a < gamma.size(); ++a) {
                Cplx ip(0.0, 0.0);
                for (std::size_t j = 0; j < nom; ++j) ip += fc[j] * std::conj(vals[a][j]);
                ip /= omega_meas;
                sum += std::norm(ip);
            }
            worst = std::max(worst, std::abs(sum - norm2) / std::max(norm2, 1e-30));
        }
        res.parseval_residual = worst;
        res.complete = worst <= 1e-9;
    }
    return res;
}

} // namespace lfa
