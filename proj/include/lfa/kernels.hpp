#pragma once

#include "lfa/function.hpp"
#include "lfa/transform.hpp"

namespace lfa {

/// Dirichlet kernel D_n = sum_{m<n} chi_m at the table's resolution k.
/// Requires n <= q^k (D_n is not constant on level-k cells beyond that).
SampledFunction dirichlet(const CharacterSystem& cs, std::uint64_t n);

/// Verifies the splitting D_n(x) = D_r(p^{-l} x) D_{q^l}(x) + chi_r(p^{-l} x) D_t(x)
/// with n = r q^l + t, 0 <= t < q^l, at every cell. Exact for characteristic-2
/// backends, within tol otherwise.
bool dirichlet_recursion_check(const CharacterSystem& cs, std::uint64_t n, int l,
                               double tol = 1e-10);

/// Modified kernel K_n = Phi_0 conj(chi_n) D_n on D. Requires n < q^k so that
/// chi_n is constant on cells.
SampledFunction modified_kernel(const CharacterSystem& cs, std::uint64_t n);

/// Coefficient mask of K_n: khat_mask(..)[m] = K_n^(u(m)) in {0,1}.
/// K_n^ is the indicator of the n disjoint cosets D + u(m) - u(n), which at
/// coefficient m reads "frac(u(m) + u(n)) has u-index < n".
std::vector<int> khat_mask(const FieldParams& f, std::uint64_t n, int k);

/// Partial sum S_n f = sum_{m<n} f^(u(m)) chi_m via the fast transform.
SampledFunction apply_Sn(std::uint64_t n, const SampledFunction& f);

/// T_n f = K_n * f, realized as coefficient multiplication by the 0/1 mask.
SampledFunction apply_Tn(std::uint64_t n, const SampledFunction& f);

/// Average of f over the cosets of P^r (the action of S_{q^r}).
SampledFunction ball_average(const SampledFunction& f, int r);

/// K_n(x+y) = K_n(x) whenever |y| < |x|, checked over the full level-k grid.
bool kernel_constancy_check(const CharacterSystem& cs, std::uint64_t n, double tol = 1e-10);

} // namespace lfa
