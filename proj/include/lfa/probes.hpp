#pragma once

#include "lfa/maximal.hpp"
#include "lfa/weights.hpp"

#include <vector>

namespace lfa {

/// One cell of the maximal-operator sharpness experiment:
/// w = |x|^{(p-1)(1-theta)}, f = |x|^{theta-1} 1_D cell-averaged at level k,
/// Mf over the window P^{-m}.
struct BuckleyResult {
    double theta = 0.0;
    double ap = 0.0;          // [w]_{A_p} at level k
    double ratio = 0.0;       // ||Mf||_{L^p(w)} / ||f||_{L^p(w)} over the window
    double paper_bound = 0.0; // (1 - 1/q) / (q^theta - 1)
    std::size_t pointwise_violations = 0; // cells with Mf < bound * f, origin cell excluded
};

BuckleyResult buckley_experiment(const FieldParams& f, double p, double theta, int k, int m);

/// Sweep over theta values; slope = least-squares slope of log(ratio)
/// against log(ap), which tends to 1/(p-1) as theta decreases.
struct BuckleySweep {
    std::vector<BuckleyResult> rows;
    double slope = 0.0;
};
BuckleySweep buckley_sweep(const FieldParams& f, double p, const std::vector<double>& thetas,
                           int k, int m);

/// The cell-averaged |x|^{theta-1} 1_D test function on the window P^{-m}.
SampledFunction buckley_test_function(std::shared_ptr<const FieldParams> params, double theta,
                                      int k, int m);

/// Largest grid epsilon with (avg_B w^{1+eps})^{1/(1+eps)} <= C avg_B w and
/// C <= 4 over all balls B in D up to level k.
struct RhiResult {
    double best_eps = 0.0;
    double C = 1.0;
};
RhiResult reverse_holder_probe(const FieldParams& f, const Weight& w, int k,
                               const std::vector<double>& eps_grid = {});

/// Largest grid delta with w(E) |B|^delta <= C w(B) |E|^delta, C <= 4, over
/// balls B and seeded unions E of their finest-level cells.
struct AInfResult {
    double delta = 0.0;
    double C = 1.0;
};
AInfResult a_infty_probe(const FieldParams& f, const Weight& w, int k, std::size_t samples,
                         std::uint64_t seed = 1);

/// max over a seeded bank of ||Mf||_{L^p(w)} / ||f#||_{L^p(w)}; members are
/// mean-adjusted first and constants are skipped.
struct MSharpResult {
    double max_ratio = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
};
MSharpResult m_to_sharp_probe(const FieldParams& f, const Weight& w, double p, int k, int m,
                              std::size_t bank, std::uint64_t seed = 1);

/// Pointwise probe of (T_n f)# <= C M_s f: the worst cellwise ratio over a
/// seeded bank, reported per n.
struct TnSharpResult {
    std::vector<std::uint64_t> ns;
    std::vector<double> max_ratio;
};
TnSharpResult tn_sharp_probe(std::shared_ptr<const FieldParams> params, int k, int m,
                             const std::vector<std::uint64_t>& ns, double s, std::size_t bank,
                             std::uint64_t seed = 1);

/// Deterministic bank of complex test functions on D at level k.
std::vector<SampledFunction> seeded_bank(std::shared_ptr<const FieldParams> params, int k,
                                         std::size_t count, std::uint64_t seed);

/// Bank with 1/(n+1)-decaying spectra and random phases: generic functions
/// carrying energy at every scale, used where a probe compares behaviour
/// across operator indices n.
std::vector<SampledFunction> seeded_decaying_bank(std::shared_ptr<const FieldParams> params,
                                                  int k, std::size_t count, std::uint64_t seed);

} // namespace lfa
