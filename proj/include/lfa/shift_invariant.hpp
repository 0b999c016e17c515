#pragma once

#include "lfa/weights.hpp"

#include <string>
#include <vector>

namespace lfa {

/// phi given through its Fourier transform, cell-averaged on the frequency
/// window P^{-m}..P^k. declared_total, when set, is ||phi_hat||^2 over all of
/// K; the part outside the window is reported as truncation tail.
struct PhiSpec {
    SampledFunction phi_hat; // windowed (or on_D)
    std::optional<double> declared_total;
};

struct PeriodizeResult {
    SampledFunction w_phi;    // sum_n |phi_hat(. + u(n))|^2 on D; may have zero cells
    double tail_mass = 0.0;   // declared_total minus the window mass
};

/// w_phi(xi) = sum_n |phi_hat(xi + u(n))|^2 truncated to the window.
/// Positive characteristic only: the translation set must be a group.
PeriodizeResult periodize(const PhiSpec& spec);

/// ap_characteristic with p = 2 over balls B in D.
ApReport a2_check(const FieldParams& f, const Weight& w, int k);

struct DualResult {
    SampledFunction reciprocal; // 1/w cellwise; 0 where undefined
    bool integrable = false;    // false when w has a zero cell
    double integral = 0.0;
};

/// Canonical dual symbol 1/w_phi. Refinement stability of the integral is
/// judged by the schauder pipeline across its level list.
DualResult canonical_dual(const SampledFunction& w_phi);

/// max over m, l < N of |<chi_m, chi_l / w>_{L^2(D,w)} - delta_{ml}|.
/// The weight cancels exactly in the pairing, so this probes the arithmetic.
double biorthogonality_check(const FieldParams& f, const SampledFunction& w_phi,
                             std::uint64_t N, int k);

enum class SchauderVerdict { schauder_basis, not_schauder, inconclusive };

struct SchauderReport {
    std::vector<int> levels;
    std::vector<double> a2_values;
    std::vector<double> sup_norm_trace; // sup_{n<=N} ||S_n||_{L^2(D,w)} per level
    std::vector<double> norm_trace;     // n -> ||S_n|| at the finest level
    bool dual_integrable = false;
    double tail_mass = 0.0;
    SchauderVerdict verdict = SchauderVerdict::inconclusive;
};

/// Executable rendering of the Schauder-basis criterion: translates of phi
/// form a Schauder basis iff w_phi is A_2(D). Verdict conventions:
/// schauder_basis when the A_2 values stabilize (last relative change < 5%)
/// and the norm trace stays bounded (max/min over the upper half < 2);
/// not_schauder when the dual fails or the sup trace grows >= 20% per level.
SchauderReport schauder_verdict(const PhiSpec& spec, const std::vector<int>& k_list,
                                std::uint64_t N);

const char* to_string(SchauderVerdict v);

/// Omega as a finite union of level-k cells in the window P^{-m}; the
/// translation set and spectrum candidates are exact field elements.
struct TilingSpec {
    int window_m = 0;
    int level = 0;
    std::vector<std::uint64_t> omega_cells;
    std::vector<LocalElement> translations;
    std::vector<LocalElement> spectrum;
};

struct TilingResult {
    bool tiles = false;
    std::vector<std::uint64_t> coverage; // per window cell
};

/// Every window cell must be covered exactly once by { Omega + t }.
TilingResult tiling_check(const FieldParams& f, const TilingSpec& spec);

struct SpectralResult {
    double max_offdiag = 0.0;
    double max_diag_dev = 0.0;
    std::optional<Rational> exact_offdiag; // characteristic-2 backends
    bool complete = false;                 // |Gamma| >= dim and Parseval holds
    double parseval_residual = 0.0;
};

/// Gram matrix of { chi_gamma } in L^2(Omega)/|Omega|; orthonormal-basis
/// certification additionally checks completeness through Parseval on a
/// seeded bank.
SpectralResult spectral_gram(const FieldParams& f, const TilingSpec& spec, std::size_t bank = 20,
                             std::uint64_t seed = 1);

} // namespace lfa
