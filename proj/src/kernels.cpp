#include "lfa/kernels.hpp"

namespace lfa {

SampledFunction dirichlet(const CharacterSystem& cs, std::uint64_t n) {
    const std::uint64_t N = cs.size();
    if (n > N) throw resolution_error("dirichlet: n > q^k, D_n is not constant on cells");
    if (cs.exact_signs()) {
        std::vector<Rational> cells(N, Rational(0));
        for (std::uint64_t j = 0; j < N; ++j) {
            long long s = 0;
            for (std::uint64_t m = 0; m < n; ++m) s += cs.sign(m, j);
            cells[j] = s;
        }
        return SampledFunction::from_rational(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                              std::move(cells));
    }
    std::vector<Cplx> cells(N, Cplx(0.0, 0.0));
    for (std::uint64_t j = 0; j < N; ++j) {
        Cplx s(0.0, 0.0);
        for (std::uint64_t m = 0; m < n; ++m) s += cs.value(m, j);
        cells[j] = s;
    }
    return SampledFunction::from_complex(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                         std::move(cells));
}

bool dirichlet_recursion_check(const CharacterSystem& cs, std::uint64_t n, int l, double tol) {
    const std::uint64_t N = cs.size();
    const std::uint64_t q = cs.field().q();
    if (l < 1) throw parameter_error("dirichlet_recursion_check: need l >= 1");
    if (n > N) throw resolution_error("dirichlet_recursion_check: n > q^k");
    std::uint64_t ql = ipow64(q, static_cast<std::uint32_t>(l));
    std::uint64_t r = n / ql, t = n % ql;
    if (r == 0) throw parameter_error("dirichlet_recursion_check: split needs n >= q^l");

    // chi_m(p^{-l} x) = chi_{m q^l}(x) by the composition law u(m q^l) = u(m) p^{-l}.
    for (std::uint64_t j = 0; j < N; ++j) {
        Cplx lhs(0.0, 0.0);
        for (std::uint64_t m = 0; m < n; ++m) lhs += cs.value(m, j);
        Cplx d_r(0.0, 0.0);
        for (std::uint64_t m = 0; m < r; ++m) d_r += cs.value(m * ql, j);
        Cplx d_ql(0.0, 0.0);
        for (std::uint64_t m = 0; m < ql; ++m) d_ql += cs.value(m, j);
        Cplx rhs = d_r * d_ql;
        if (t > 0) {
            Cplx d_t(0.0, 0.0);
            for (std::uint64_t m = 0; m < t; ++m) d_t += cs.value(m, j);
            rhs += cs.value(r * ql, j) * d_t;
        }
        if (std::abs(lhs - rhs) > tol) return false;
    }
    return true;
}

SampledFunction modified_kernel(const CharacterSystem& cs, std::uint64_t n) {
    const std::uint64_t N = cs.size();
    if (n >= N && n != 0)
        throw resolution_error("modified_kernel: need n < q^k for chi_n to resolve on cells");
    SampledFunction d = dirichlet(cs, n);
    if (n == 0) return d; // K_0 = 0
    if (d.exact()) {
        std::vector<Rational> cells(N);
        for (std::uint64_t j = 0; j < N; ++j) cells[j] = d.rval(j) * cs.sign(n, j);
        return SampledFunction::from_rational(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                              std::move(cells));
    }
    std::vector<Cplx> cells(N);
    for (std::uint64_t j = 0; j < N; ++j) cells[j] = d.cval(j) * std::conj(cs.value(n, j));
    return SampledFunction::from_complex(cs.params_ptr(), 0, cs.resolution(), Domain::on_D,
                                         std::move(cells));
}

std::vector<int> khat_mask(const FieldParams& f, std::uint64_t n, int k) {
    std::uint64_t N = cell_count(f, 0, k);
    if (n > N) throw resolution_error("khat_mask: n > q^k");
    std::vector<int> mask(N, 0);
    LocalElement un = u_of(f, n);
    for (std::uint64_t m = 0; m < N; ++m) {
        LocalElement sum = elem_add(f, u_of(f, m), un);
        // u-index of the fractional part of u(m) + u(n)
        std::vector<FqElem> frac_digits;
        if (!sum.is_zero()) {
            int v = sum.valuation();
            for (int t = v; t < 0; ++t) frac_digits.push_back(sum.digit_at(t));
            if (v >= 0) frac_digits.clear();
        }
        LocalElement frac = frac_digits.empty()
                                ? LocalElement::zero()
                                : LocalElement::make(sum.valuation(), std::move(frac_digits));
        auto s = u_index_of(f, frac);
        if (s && *s < n) mask[m] = 1;
    }
    return mask;
}

SampledFunction apply_Sn(std::uint64_t n, const SampledFunction& f) {
    std::uint64_t N = cell_count(f.field(), 0, f.level());
    if (n > N) throw resolution_error("apply_Sn: n > q^k");
    FourierCoeffs F = fourier(f);
    if (F.exact) {
        for (std::uint64_t m = n; m < N; ++m) F.r[m] = 0;
    } else {
        for (std::uint64_t m = n; m < N; ++m) F.c[m] = Cplx(0.0, 0.0);
    }
    return inverse_fourier(F);
}

SampledFunction apply_Tn(std::uint64_t n, const SampledFunction& f) {
    std::uint64_t N = cell_count(f.field(), 0, f.level());
    if (n > N) throw resolution_error("apply_Tn: n > q^k");
    std::vector<int> mask = khat_mask(f.field(), n, f.level());
    FourierCoeffs F = fourier(f);
    if (F.exact) {
        for (std::uint64_t m = 0; m < N; ++m)
            if (!mask[m]) F.r[m] = 0;
    } else {
        for (std::uint64_t m = 0; m < N; ++m)
            if (!mask[m]) F.c[m] = Cplx(0.0, 0.0);
    }
    return inverse_fourier(F);
}

SampledFunction ball_average(const SampledFunction& f, int r) {
    if (f.win_lo() != 0) throw parameter_error("ball_average: expects a function on D");
    if (r < 0 || r > f.level()) throw resolution_error("ball_average: level out of range");
    std::uint64_t block = cell_count(f.field(), 0, r);
    std::uint64_t N = f.size();
    std::uint64_t per = N / block;
    if (f.exact()) {
        std::vector<Rational> cells(N);
        for (std::uint64_t c = 0; c < block; ++c) {
            Rational s(0);
            for (std::uint64_t i = 0; i < per; ++i) s += f.rval(c + i * block);
            s /= per;
            for (std::uint64_t i = 0; i < per; ++i) cells[c + i * block] = s;
        }
        return SampledFunction::from_rational(f.params_ptr(), 0, f.level(), f.domain(),
                                              std::move(cells));
    }
    std::vector<Cplx> cells(N);
    for (std::uint64_t c = 0; c < block; ++c) {
        Cplx s(0.0, 0.0);
        for (std::uint64_t i = 0; i < per; ++i) s += f.cval(c + i * block);
        s /= double(per);
        for (std::uint64_t i = 0; i < per; ++i) cells[c + i * block] = s;
    }
    return SampledFunction::from_complex(f.params_ptr(), 0, f.level(), f.domain(),
                                         std::move(cells));
}

bool kernel_constancy_check(const CharacterSystem& cs, std::uint64_t n, double tol) {
    return spherewise_constant(modified_kernel(cs, n), tol);
}

} // namespace lfa
