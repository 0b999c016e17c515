#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfa/transform.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace lfa;
using lfa::testing::naive_fourier;
using lfa::testing::random_complex;
using lfa::testing::random_rational;

namespace {

std::shared_ptr<FieldParams> laurent(std::uint32_t p, std::uint32_t c = 1) {
    return std::make_shared<FieldParams>(Characteristic::positive, p, c);
}
std::shared_ptr<FieldParams> padic(std::uint32_t p) {
    return std::make_shared<FieldParams>(Characteristic::zero, p);
}

std::vector<std::shared_ptr<FieldParams>> all_backends() {
    return {laurent(2), padic(2), laurent(3), padic(3), laurent(2, 2)};
}

double coeff_diff(const FourierCoeffs& a, const FourierCoeffs& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.cval(i) - b.cval(i)));
    return m;
}

} // namespace

TEST_CASE("indicator functions") {
    for (auto fp : all_backends()) {
        SampledFunction phi0 = indicator(fp, CosetIndex{0, 0}, 3);
        for (std::size_t j = 0; j < phi0.size(); ++j) CHECK(phi0.rval(j) == 1);
        for (int j = 0; j <= 3; ++j) {
            SampledFunction phi = indicator(fp, CosetIndex{j, 0}, 3);
            CHECK(phi.integral_exact() == rat_pow(fp->q(), -j)); // |P^j| = q^{-j}
        }
        CHECK_THROWS_AS(indicator(fp, CosetIndex{4, 0}, 3), resolution_error);
    }
}

TEST_CASE("transform of indicators and characters") {
    for (auto fp : all_backends()) {
        const int k = 3;
        CharacterSystem cs(fp, k);
        std::uint64_t N = cs.size();

        // fourier(Phi_0) = (1, 0, 0, ...)
        FourierCoeffs F0 = fourier(indicator(fp, CosetIndex{0, 0}, k));
        CHECK(std::abs(F0.cval(0) - Cplx(1.0, 0.0)) < 1e-12);
        for (std::uint64_t n = 1; n < N; ++n) CHECK(std::abs(F0.cval(n)) < 1e-12);

        // fourier(chi_m) is the delta at m
        for (std::uint64_t m = 0; m < N; m += (fp->q() == 2 ? 1 : 2)) {
            FourierCoeffs Fm = fourier(character_function(cs, m));
            for (std::uint64_t n = 0; n < N; ++n) {
                Cplx expect = n == m ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0);
                CHECK(std::abs(Fm.cval(n) - expect) < 1e-12);
            }
        }

        // fourier(Phi_j) supported on n < q^j with values q^{-j}; frozen from
        // the naive oracle and consistent with the support duality
        for (int j = 0; j <= k; ++j) {
            SampledFunction phi = indicator(fp, CosetIndex{j, 0}, k);
            FourierCoeffs F = fourier(phi);
            FourierCoeffs G = naive_fourier(cs, phi);
            CHECK(coeff_diff(F, G) < 1e-12);
            double qj = to_double(rat_pow(fp->q(), -j));
            std::uint64_t cutoff = cell_count(*fp, 0, j);
            for (std::uint64_t n = 0; n < N; ++n) {
                Cplx expect = n < cutoff ? Cplx(qj, 0.0) : Cplx(0.0, 0.0);
                CHECK(std::abs(F.cval(n) - expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("fast transform agrees with the naive oracle") {
    std::mt19937_64 rng(20240811);
    for (auto fp : all_backends()) {
        for (int k = 1; k <= (fp->q() == 2 ? 5 : 4); ++k) {
            CharacterSystem cs(fp, k);
            for (int t = 0; t < 25; ++t) {
                SampledFunction f = random_complex(fp, k, rng);
                CHECK(coeff_diff(fourier(f), naive_fourier(cs, f)) < 1e-11);
            }
            if (cs.exact_signs()) {
                // bitwise agreement in exact rational arithmetic
                for (int t = 0; t < 10; ++t) {
                    SampledFunction f = random_rational(fp, k, rng);
                    FourierCoeffs F = fourier(f);
                    FourierCoeffs G = naive_fourier(cs, f);
                    REQUIRE(F.exact);
                    REQUIRE(G.exact);
                    CHECK(F.r == G.r);
                }
            }
        }
    }
}

TEST_CASE("inverse transform and Parseval") {
    std::mt19937_64 rng(7);
    for (auto fp : {laurent(2), padic(2), laurent(3), padic(3), laurent(2, 2), laurent(3, 2)}) {
        for (int k = 1; k <= 4; ++k) {
            for (int t = 0; t < 20; ++t) {
                SampledFunction f = random_complex(fp, k, rng);
                SampledFunction g = inverse_fourier(fourier(f));
                CHECK(f.max_abs_diff(g) < 1e-10);

                FourierCoeffs F = fourier(f);
                double sum = 0.0;
                for (std::size_t n = 0; n < F.size(); ++n) sum += std::norm(F.cval(n));
                double norm2 = std::pow(lp_norm(f, 2.0), 2.0);
                CHECK(sum == doctest::Approx(norm2).epsilon(1e-10));
            }
        }
    }
    // exact round trip for the characteristic-2 backends
    std::mt19937_64 rng2(8);
    for (auto fp : {laurent(2), laurent(2, 2)}) {
        SampledFunction f = random_rational(fp, 4, rng2);
        SampledFunction g = inverse_fourier(fourier(f));
        CHECK(f == g);
        // exact Parseval
        FourierCoeffs F = fourier(f);
        Rational sum(0);
        for (const auto& c : F.r) sum += c * c;
        CHECK(sum == lp_norm_pow_exact(f, 2));
    }
}

TEST_CASE("translation-modulation law") {
    std::mt19937_64 rng(99);
    for (auto fp : all_backends()) {
        const int k = 3;
        CharacterSystem cs(fp, k);
        std::uint64_t N = cs.size();
        for (int t = 0; t < 10; ++t) {
            SampledFunction f = random_complex(fp, k, rng);
            std::uint64_t h = rng() % N;
            FourierCoeffs Ft = fourier(f.translate(h));
            FourierCoeffs F = fourier(f);
            for (std::uint64_t n = 0; n < N; ++n) {
                Cplx expect = std::conj(cs.value(n, h)) * F.cval(n);
                CHECK(std::abs(Ft.cval(n) - expect) < 1e-11);
            }
        }
    }
}

TEST_CASE("refinement embedding preserves norms and coefficients") {
    std::mt19937_64 rng(5);
    for (auto fp : all_backends()) {
        SampledFunction f = random_complex(fp, 2, rng);
        SampledFunction g = f.lift(4);
        CHECK(lp_norm(f, 2.0) == doctest::Approx(lp_norm(g, 2.0)).epsilon(1e-12));
        FourierCoeffs F = fourier(f), G = fourier(g);
        for (std::size_t n = 0; n < F.size(); ++n)
            CHECK(std::abs(F.cval(n) - G.cval(n)) < 1e-11);
        for (std::size_t n = F.size(); n < G.size(); ++n) CHECK(std::abs(G.cval(n)) < 1e-11);
        CHECK(g.coarsen(2).max_abs_diff(f) < 1e-14);
    }
}

TEST_CASE("windowed transform: support duality on indicator atoms") {
    for (auto fp : all_backends()) {
        // f constant on P^k cells, supported on P^l: transform constant on
        // P^{-l} cells, supported on P^{-k}; windows up to 3
        for (int l = -2; l <= 1; ++l) {
            const int k = l + 2;
            const int m = 2; // ambient window P^{-2}
            std::uint64_t n = cell_count(*fp, -m, k);
            // indicator of P^l realized on the window
            std::vector<Rational> cells(n, Rational(0));
            for (std::uint64_t j = 0; j < n; ++j) {
                auto lead = cell_leading_position(*fp, -m, k, j);
                if (!lead || *lead >= l) cells[j] = 1;
            }
            SampledFunction f = SampledFunction::from_rational(fp, -m, k, Domain::windowed,
                                                               std::move(cells));
            SampledFunction F = windowed_fourier(f);
            CHECK(F.win_lo() == -k);
            CHECK(F.level() == m);
            // supported on P^{-l}: zero on cells with |xi| > q^{l}
            for (std::uint64_t d = 0; d < F.size(); ++d) {
                auto lead = cell_leading_position(*fp, -k, m, d);
                if (lead && *lead < -l) CHECK(std::abs(F.cval(d)) < 1e-12);
            }
            // constant on cosets of P^{-l}: scan pairs differing above -l
            for (std::uint64_t d = 0; d < F.size(); ++d) {
                std::uint64_t block = cell_count(*fp, -k, -l);
                std::uint64_t base = d % block;
                CHECK(std::abs(F.cval(d) - F.cval(base)) < 1e-12);
            }
        }
    }
}

TEST_CASE("constancy dual check") {
    std::mt19937_64 rng(11);
    for (auto fp : all_backends()) {
        const int m = 2, k = 2;
        std::uint64_t n = cell_count(*fp, -m, k);
        // radial f (Phi_0 on the window) passes
        std::vector<Rational> cells(n, Rational(0));
        for (std::uint64_t j = 0; j < n; ++j) {
            auto lead = cell_leading_position(*fp, -m, k, j);
            if (!lead || *lead >= 0) cells[j] = 1;
        }
        SampledFunction phi = SampledFunction::from_rational(fp, -m, k, Domain::windowed,
                                                             std::move(cells));
        CHECK(spherewise_constant(phi));
        CHECK(constancy_dual_check(phi));

        // randomized sphere-wise-constant draws: value depends only on the
        // leading position
        for (int t = 0; t < (fp->q() == 2 ? 100 : 25); ++t) {
            std::vector<Cplx> vals(n);
            std::vector<Cplx> per_level(static_cast<std::size_t>(m + k + 1));
            auto unit = [&]() { return double(rng()) * 0x1p-63 - 1.0; };
            for (auto& v : per_level) v = Cplx(unit(), unit());
            for (std::uint64_t j = 0; j < n; ++j) {
                auto lead = cell_leading_position(*fp, -m, k, j);
                vals[j] = lead ? per_level[static_cast<std::size_t>(*lead + m)] : per_level.back();
            }
            SampledFunction f = SampledFunction::from_complex(fp, -m, k, Domain::windowed,
                                                              std::move(vals));
            CHECK(spherewise_constant(f));
            CHECK(constancy_dual_check(f));
        }

        // non-spherewise-constant input: vacuously true, but must detect the
        // broken hypothesis
        std::vector<Cplx> bad(n, Cplx(0.0, 0.0));
        bad[n - 1] = Cplx(1.0, 0.0);
        bad[n - 2] = Cplx(2.0, 0.0);
        SampledFunction fb = SampledFunction::from_complex(fp, -m, k, Domain::windowed,
                                                           std::move(bad));
        CHECK(constancy_dual_check(fb));
    }
}

TEST_CASE("norm basics") {
    for (auto fp : all_backends()) {
        CharacterSystem cs(fp, 3);
        CHECK(lp_norm(indicator(fp, CosetIndex{0, 0}, 3), 2.0) == doctest::Approx(1.0));
        for (std::uint64_t nn : {std::uint64_t(1), cs.size() - 1})
            CHECK(lp_norm(character_function(cs, nn), 2.0) == doctest::Approx(1.0));
        SampledFunction w = SampledFunction::constant(fp, 3, Rational(0));
        CHECK_THROWS_AS(lp_norm(indicator(fp, CosetIndex{0, 0}, 3), 2.0, &w), domain_error);
    }
}
