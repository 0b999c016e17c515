#pragma once

#include "lfa/field.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace lfa {

using Cplx = std::complex<double>;

/// The canonical additive character, trivial on D and nontrivial on P^{-1}.
///   Q_p:       chi(x) = exp(2 pi i frac(x)), frac(x) = sum_{t<0} d_t p^t in [0,1)
///   F_q((X)):  chi(x) = exp(2 pi i Tr(d_{-1}) / p)
Cplx chi(const FieldParams& f, const LocalElement& x);

/// chi_n(x) = chi(u(n) x), evaluated through the actual field product so the
/// same code path serves both backends.
Cplx chi_n(const FieldParams& f, std::uint64_t n, const LocalElement& x);

/// Exact character sign for residue characteristic 2 (values are +-1 there).
int chi_sign(const FieldParams& f, const LocalElement& x);

/// Character tables at a fixed resolution k: chi_n on the q^k cosets of P^k
/// in D. Rows n < q^k, columns in coset-index order. Built once, read-only.
class CharacterSystem {
public:
    CharacterSystem(std::shared_ptr<const FieldParams> params, int resolution);

    const FieldParams& field() const { return *params_; }
    std::shared_ptr<const FieldParams> params_ptr() const { return params_; }
    int resolution() const { return k_; }
    std::uint64_t size() const { return n_; }

    /// chi_n at the representative of cell j.
    Cplx value(std::uint64_t n, std::uint64_t j) const;

    /// Exact +-1 value; requires an exact backend (positive characteristic, p = 2).
    int sign(std::uint64_t n, std::uint64_t j) const;

    /// True when character values are exactly +-1.
    bool exact_signs() const { return !signs_.empty(); }

    const LocalElement& cell_rep(std::uint64_t j) const { return reps_[j]; }

private:
    std::shared_ptr<const FieldParams> params_;
    int k_;
    std::uint64_t n_;
    std::vector<LocalElement> reps_;
    std::vector<Cplx> table_;       // dense when q^k <= table cap
    std::vector<signed char> signs_; // exact +-1 table for p = 2 positive char
};

} // namespace lfa
