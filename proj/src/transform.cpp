#include "lfa/transform.hpp"

#include <cmath>
#include <numbers>

namespace lfa {

namespace {

// q x q base kernel for positive characteristic: U[b][d] = chi(eta(b) eta(d) 𝔭^{-1}).
// The level-k character factors as a rank-1 tensor product of this kernel,
// one factor per digit position.
struct StageKernel {
    std::uint32_t q;
    std::vector<Cplx> u;        // row-major q x q
    std::vector<int> sign;      // +-1 when p == 2, else empty

    explicit StageKernel(const FieldParams& f) : q(f.q()) {
        u.resize(std::size_t(q) * q);
        if (f.p() == 2) sign.resize(std::size_t(q) * q);
        for (std::uint32_t b = 0; b < q; ++b) {
            for (std::uint32_t d = 0; d < q; ++d) {
                std::uint32_t t = trace(f, f.mul(FqElem{b}, FqElem{d}));
                double ang = 2.0 * std::numbers::pi * double(t) / double(f.p());
                u[std::size_t(b) * q + d] = {std::cos(ang), std::sin(ang)};
                if (f.p() == 2) {
                    int s = (t == 0) ? 1 : -1;
                    sign[std::size_t(b) * q + d] = s;
                    u[std::size_t(b) * q + d] = {double(s), 0.0};
                }
            }
        }
    }
};

// One tensor stage along digit position `axis`; kernel applied as
// out[b] = sum_d K[b][d] in[d] with K = U or conj(U).
void tensor_stage_c(std::vector<Cplx>& data, const StageKernel& K, std::size_t axis_stride,
                    bool conjugate) {
    const std::uint32_t q = K.q;
    std::size_t n = data.size();
    std::vector<Cplx> in(q), out(q);
    for (std::size_t base = 0; base < n; ++base) {
        if ((base / axis_stride) % q != 0) continue;
        for (std::uint32_t d = 0; d < q; ++d) in[d] = data[base + d * axis_stride];
        for (std::uint32_t b = 0; b < q; ++b) {
            Cplx s(0.0, 0.0);
            for (std::uint32_t d = 0; d < q; ++d) {
                Cplx k = K.u[std::size_t(b) * q + d];
                s += (conjugate ? std::conj(k) : k) * in[d];
            }
            out[b] = s;
        }
        for (std::uint32_t b = 0; b < q; ++b) data[base + b * axis_stride] = out[b];
    }
}

void tensor_stage_r(std::vector<Rational>& data, const StageKernel& K, std::size_t axis_stride) {
    const std::uint32_t q = K.q;
    std::size_t n = data.size();
    std::vector<Rational> in(q), out(q);
    for (std::size_t base = 0; base < n; ++base) {
        if ((base / axis_stride) % q != 0) continue;
        for (std::uint32_t d = 0; d < q; ++d) in[d] = data[base + d * axis_stride];
        for (std::uint32_t b = 0; b < q; ++b) {
            Rational s(0);
            for (std::uint32_t d = 0; d < q; ++d) {
                if (K.sign[std::size_t(b) * q + d] > 0)
                    s += in[d];
                else
                    s -= in[d];
            }
            out[b] = s;
        }
        for (std::uint32_t b = 0; b < q; ++b) data[base + b * axis_stride] = out[b];
    }
}

// Radix-p Cooley-Tukey for the cyclic group Z/p^k (Q_p backend).
// Computes X[t] = sum_m x[m] roots[(t*m) % N] in place of x.
void fft_radix_p(std::vector<Cplx>& x, std::uint32_t p, const std::vector<Cplx>& roots) {
    std::size_t n = x.size();
    if (n == 1) return;
    std::size_t m = n / p;
    std::size_t N = roots.size();
    std::size_t scale = N / n;
    std::vector<std::vector<Cplx>> sub(p, std::vector<Cplx>(m));
    for (std::size_t i = 0; i < n; ++i) sub[i % p][i / p] = x[i];
    for (auto& s : sub) fft_radix_p(s, p, roots);
    for (std::size_t t = 0; t < n; ++t) {
        Cplx acc(0.0, 0.0);
        for (std::uint32_t r = 0; r < p; ++r)
            acc += roots[(t * r * scale) % N] * sub[r][t % m];
        x[t] = acc;
    }
}

std::vector<Cplx> root_table(std::size_t N, int dir) {
    std::vector<Cplx> roots(N);
    for (std::size_t j = 0; j < N; ++j) {
        double ang = dir * 2.0 * std::numbers::pi * double(j) / double(N);
        roots[j] = {std::cos(ang), std::sin(ang)};
    }
    return roots;
}

} // namespace

FourierCoeffs fourier(const SampledFunction& f) {
    if (f.win_lo() != 0)
        throw parameter_error("fourier: use windowed_fourier for windowed functions");
    const FieldParams& fp = f.field();
    const int k = f.level();
    const std::size_t n = f.size();
    FourierCoeffs F;
    F.params = f.params_ptr();
    F.level = k;

    if (fp.characteristic() == Characteristic::positive) {
        StageKernel K(fp);
        if (f.exact() && fp.p() == 2) {
            F.exact = true;
            F.r = f.rvals();
            std::size_t stride = 1;
            for (int s = 0; s < k; ++s, stride *= fp.q()) tensor_stage_r(F.r, K, stride);
            Rational scale = rat_pow(fp.q(), -k);
            for (auto& v : F.r) v *= scale;
            return F;
        }
        SampledFunction g = f.to_complex();
        F.c = g.cvals();
        std::size_t stride = 1;
        for (int s = 0; s < k; ++s, stride *= fp.q()) tensor_stage_c(F.c, K, stride, true);
        double scale = to_double(rat_pow(fp.q(), -k));
        for (auto& v : F.c) v *= scale;
        return F;
    }

    // Q_p: F[n] = q^{-k} X[rev(n)] with X the forward DFT of the cell vector.
    SampledFunction g = f.to_complex();
    std::vector<Cplx> x = g.cvals();
    auto roots = root_table(n, -1);
    fft_radix_p(x, fp.p(), roots);
    F.c.resize(n);
    double scale = 1.0 / double(n);
    for (std::uint64_t m = 0; m < n; ++m)
        F.c[m] = x[reverse_base_q(fp, m, k)] * scale;
    return F;
}

SampledFunction inverse_fourier(const FourierCoeffs& F) {
    const FieldParams& fp = *F.params;
    const int k = F.level;
    const std::size_t n = F.size();

    if (fp.characteristic() == Characteristic::positive) {
        StageKernel K(fp);
        if (F.exact) {
            std::vector<Rational> data = F.r;
            std::size_t stride = 1;
            for (int s = 0; s < k; ++s, stride *= fp.q()) tensor_stage_r(data, K, stride);
            return SampledFunction::from_rational(F.params, 0, k, Domain::on_D, std::move(data));
        }
        std::vector<Cplx> data = F.c;
        std::size_t stride = 1;
        for (int s = 0; s < k; ++s, stride *= fp.q()) tensor_stage_c(data, K, stride, false);
        return SampledFunction::from_complex(F.params, 0, k, Domain::on_D, std::move(data));
    }

    std::vector<Cplx> y(n);
    for (std::uint64_t m = 0; m < n; ++m) y[reverse_base_q(fp, m, k)] = F.cval(m);
    auto roots = root_table(n, +1);
    fft_radix_p(y, fp.p(), roots);
    return SampledFunction::from_complex(F.params, 0, k, Domain::on_D, std::move(y));
}

SampledFunction windowed_fourier(const SampledFunction& f) {
    const FieldParams& fp = f.field();
    const int lo = f.win_lo();
    const int k = f.level();
    const std::size_t n = f.size();
    // dual window: support P^{-lo} -> cells of P^{-lo} in ... support moves to
    // P^{-k} with constancy on cosets of P^{-lo}; window (-k, -lo).
    const int dlo = -k;
    const int dlevel = -lo;
    std::vector<LocalElement> xs(n), xis(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = cell_representative(fp, lo, k, j);
    for (std::size_t d = 0; d < n; ++d) xis[d] = cell_representative(fp, dlo, dlevel, d);

    bool exact = f.exact() && fp.characteristic() == Characteristic::positive && fp.p() == 2;
    if (exact) {
        Rational scale = rat_pow(fp.q(), -k);
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t d = 0; d < n; ++d) {
            Rational s(0);
            for (std::size_t j = 0; j < n; ++j) {
                int sg = chi_sign(fp, elem_mul(fp, xis[d], xs[j]));
                if (sg > 0)
                    s += f.rval(j);
                else
                    s -= f.rval(j);
            }
            out[d] = s * scale;
        }
        return SampledFunction::from_rational(f.params_ptr(), dlo, dlevel, Domain::windowed,
                                              std::move(out));
    }
    double scale = to_double(rat_pow(fp.q(), -k));
    std::vector<Cplx> out(n);
    for (std::size_t d = 0; d < n; ++d) {
        Cplx s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            s += f.cval(j) * std::conj(chi(fp, elem_mul(fp, xis[d], xs[j])));
        out[d] = s * scale;
    }
    return SampledFunction::from_complex(f.params_ptr(), dlo, dlevel, Domain::windowed,
                                         std::move(out));
}

bool spherewise_constant(const SampledFunction& f, double tol) {
    const FieldParams& fp = f.field();
    const std::size_t n = f.size();
    const int lo = f.win_lo();
    const int k = f.level();
    for (std::size_t x = 0; x < n; ++x) {
        auto lead_x = cell_leading_position(fp, lo, k, x);
        if (!lead_x) continue;
        for (std::size_t y = 1; y < n; ++y) {
            auto lead_y = cell_leading_position(fp, lo, k, y);
            if (lead_y && *lead_y <= *lead_x) continue; // need |y| < |x|
            std::uint64_t xy = cell_add(fp, n, x, y);
            if (f.exact()) {
                if (f.rval(xy) != f.rval(x)) return false;
            } else if (std::abs(f.cval(xy) - f.cval(x)) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool constancy_dual_check(const SampledFunction& f, double tol) {
    if (!spherewise_constant(f, tol)) return true;
    return spherewise_constant(windowed_fourier(f), tol);
}

} // namespace lfa
