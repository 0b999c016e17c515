#pragma once

#include "lfa/function.hpp"

namespace lfa {

/// Fourier coefficients of a level-k function on D, indexed by n < q^k
/// (coefficient at chi_n). Exact storage mirrors SampledFunction.
struct FourierCoeffs {
    std::shared_ptr<const FieldParams> params;
    int level = 0;
    bool exact = false;
    std::vector<Rational> r;
    std::vector<Cplx> c;

    std::size_t size() const { return exact ? r.size() : c.size(); }
    Cplx cval(std::size_t n) const { return exact ? Cplx(to_double(r[n]), 0.0) : c[n]; }
};

/// Forward transform, F[n] = q^{-k} sum_j f[j] conj(chi_n(x_j)).
/// Fast path: radix-p butterflies for Q_p (D/P^k cyclic of order p^k);
/// k tensor stages of q-point kernels for F_q((X)) (D/P^k = (F_q)^k).
/// Exact rational arithmetic when f is exact and the characters are +-1.
FourierCoeffs fourier(const SampledFunction& f);

/// Inverse transform, f[j] = sum_n F[n] chi_n(x_j).
SampledFunction inverse_fourier(const FourierCoeffs& F);

/// Transform of a windowed step function: f constant on P^level cells within
/// P^win_lo maps to a function constant on P^{-win_lo} cells within
/// P^{-level}. Direct O(cells^2) evaluation through the field product.
SampledFunction windowed_fourier(const SampledFunction& f);

/// True iff f is constant on cosets of P^{t+1} inside each sphere
/// {|x| = q^{-t}}; equivalently f(x+y) = f(x) whenever |y| < |x|.
bool spherewise_constant(const SampledFunction& f, double tol = 1e-10);

/// Property probe: whenever f is sphere-wise constant, so is its windowed
/// transform. Vacuously true when the hypothesis fails.
bool constancy_dual_check(const SampledFunction& f, double tol = 1e-10);

} // namespace lfa
