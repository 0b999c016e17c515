#pragma once

#include "lfa/kernels.hpp"

#include <Eigen/Dense>

namespace lfa {

/// A realized q^k x q^k operator acting on level-k cell vectors.
/// Dense matrices are materialized only up to q^k <= 1024; larger sizes are
/// served matrix-free through apply_Sn / apply_Tn.
struct KernelOperator {
    enum class Kind { S_n, T_n };
    Kind kind;
    std::uint64_t n = 0;
    int level = 0;
    std::shared_ptr<const FieldParams> params;
    Eigen::MatrixXcd matrix;
};

KernelOperator make_Sn(std::shared_ptr<const FieldParams> params, std::uint64_t n, int level);
KernelOperator make_Tn(std::shared_ptr<const FieldParams> params, std::uint64_t n, int level);

/// Exact L^2(D, w) operator norm: the largest singular value of
/// W^{1/2} M W^{-1/2}, W the diagonal of cell weights. The Haar factor
/// q^{-k} cancels between the two sides.
double weighted_opnorm_L2(const KernelOperator& op, const std::vector<double>& w_cells);

/// Residual || A v - sigma u ||_2 of the returned top singular triple;
/// reported by the CLI alongside each norm.
struct OpNormResult {
    double norm = 0.0;
    double residual = 0.0;
};
OpNormResult weighted_opnorm_L2_full(const KernelOperator& op, const std::vector<double>& w_cells);

/// Certified lower bound on the L^p(D, w) -> L^p(D, w) operator norm:
/// the best Rayleigh ratio over a deterministic bank of candidates
/// (constant, indicators, power profiles, seeded random draws) followed by
/// duality-map ascent from the best candidate. Monotone in budget; equals
/// power iteration at p = 2.
double opnorm_lower_bound_Lp(const KernelOperator& op, const std::vector<double>& w_cells,
                             double p, std::size_t budget, std::uint64_t seed = 1);

} // namespace lfa
