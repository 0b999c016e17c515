// lfa: harmonic analysis on the ring of integers of a local field.
// Every check of the library is exposed as a subcommand with deterministic
// seeds and machine-readable JSON/CSV output.

#include "lfa/kernels.hpp"
#include "lfa/maximal.hpp"
#include "lfa/opnorm.hpp"
#include "lfa/probes.hpp"
#include "lfa/serialize.hpp"
#include "lfa/shift_invariant.hpp"
#include "lfa/transform.hpp"
#include "lfa/weights.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lfa;

namespace {

struct FieldOpts {
    std::string chr = "p";
    std::uint32_t p = 2;
    std::uint32_t c = 1;
    std::string modulus;

    std::shared_ptr<FieldParams> make() const {
        std::vector<std::uint32_t> mod;
        if (!modulus.empty()) {
            std::stringstream ss(modulus);
            std::string tok;
            while (std::getline(ss, tok, ',')) mod.push_back(std::stoul(tok));
        }
        Characteristic ch = chr == "0" ? Characteristic::zero : Characteristic::positive;
        return std::make_shared<FieldParams>(ch, p, c, std::move(mod));
    }
};

// Commands that take a Lebesgue exponent use --p for it (matching their
// documented invocations); the field prime is then --prime. Everywhere else
// --p and --prime both name the prime.
void add_field_opts(CLI::App* cmd, FieldOpts& fo, bool p_is_prime = true) {
    cmd->add_option("--char", fo.chr, "field characteristic: 0 for Q_p, p for F_q((X))")
        ->check(CLI::IsMember({"0", "p"}));
    cmd->add_option(p_is_prime ? "--p,--prime" : "--prime", fo.p,
                    "residue characteristic (prime)");
    cmd->add_option("--c", fo.c, "extension degree, q = p^c (positive characteristic only)");
    cmd->add_option("--modulus", fo.modulus,
                    "irreducible modulus digits over F_p, low degree first, comma separated");
}

std::string resolve_out(const std::string& out) {
    if (out.empty() || out == "-") return out;
    if (out.front() == '/') return out;
    const char* dir = std::getenv("LFA_OUT_DIR");
    if (!dir || !*dir) return out;
    return std::string(dir) + "/" + out;
}

class Sink {
public:
    explicit Sink(const std::string& out) : path_(resolve_out(out)) {
        if (!path_.empty() && path_ != "-") {
            file_.open(path_);
            if (!file_) throw parameter_error("cannot open output file " + path_);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::string path_;
    std::ofstream file_;
};

Weight parse_weight(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    if (kind == "POWER") {
        if (colon == std::string::npos)
            throw parameter_error("--w POWER needs an exponent, e.g. POWER:0.5");
        return Weight::power(std::stod(spec.substr(colon + 1)));
    }
    if (kind == "SAMPLED") {
        std::ifstream in(spec.substr(colon + 1));
        if (!in) throw parameter_error("cannot read weight file " + spec.substr(colon + 1));
        Json j = Json::parse(in);
        return Weight::sampled(function_from_json(j));
    }
    throw parameter_error("unknown weight spec '" + spec + "' (POWER:alpha or SAMPLED:file)");
}

Json check_entry(const std::string& name, bool pass, std::uint64_t cases) {
    return Json{{"name", name}, {"pass", pass}, {"cases", cases}};
}

int run_field_selftest(const FieldOpts& fo, int k, const std::string& out) {
    auto fp = fo.make();
    const FieldParams& f = *fp;
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool pass, std::uint64_t cases) {
        checks.push_back(check_entry(name, pass, cases));
        all = all && pass;
    };

    { // residue field axioms, exhaustive
        bool ok = true;
        std::uint64_t cases = 0;
        for (std::uint32_t a = 0; a < f.q(); ++a)
            for (std::uint32_t b = 0; b < f.q(); ++b) {
                ok = ok && fq_mul(f, FqElem{a}, FqElem{1}).v == a;
                ok = ok && fq_add(f, FqElem{a}, FqElem{b}).v == fq_add(f, FqElem{b}, FqElem{a}).v;
                for (std::uint32_t cc = 0; cc < f.q(); ++cc) {
                    auto l = fq_mul(f, fq_mul(f, FqElem{a}, FqElem{b}), FqElem{cc});
                    auto r = fq_mul(f, FqElem{a}, fq_mul(f, FqElem{b}, FqElem{cc}));
                    ok = ok && l.v == r.v;
                    ++cases;
                }
            }
        record("residue_field_axioms", ok, cases);
    }
    { // ultrametric and multiplicativity on an exhaustive window
        bool ok = true;
        std::uint64_t cases = 0;
        int len = f.q() <= 3 ? 4 : 3;
        std::uint64_t total = ipow64(f.q(), static_cast<std::uint32_t>(len));
        std::vector<LocalElement> elems;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<FqElem> digits(static_cast<std::size_t>(len));
            std::uint64_t cc = code;
            for (int i = 0; i < len; ++i) {
                digits[static_cast<std::size_t>(i)] =
                    FqElem{static_cast<std::uint32_t>(cc % f.q())};
                cc /= f.q();
            }
            elems.push_back(LocalElement::make(-2, std::move(digits)));
        }
        for (const auto& x : elems)
            for (const auto& y : elems) {
                Rational ax = x.abs_value(f), ay = y.abs_value(f);
                Rational as = elem_add(f, x, y).abs_value(f);
                ok = ok && as <= std::max(ax, ay);
                if (ax != ay) ok = ok && as == std::max(ax, ay);
                ok = ok && elem_mul(f, x, y).abs_value(f) == ax * ay;
                ++cases;
            }
        record("ultrametric_multiplicativity", ok, cases);
    }
    { // |u(n)| law
        bool ok = true;
        std::uint64_t limit = ipow64(f.q(), f.q() <= 3 ? 6 : 4);
        Rational expected(1);
        std::uint64_t next = 1;
        for (std::uint64_t n = 1; n < limit; ++n) {
            if (n == next) {
                expected *= f.q();
                next *= f.q();
            }
            ok = ok && u_of(f, n).abs_value(f) == expected;
        }
        ok = ok && u_of(f, 0).is_zero();
        record("u_norm_law", ok, limit);
    }
    { // composition law
        bool ok = true;
        std::uint64_t cases = 0;
        for (std::uint64_t r = 0; r < std::uint64_t(f.q()) * f.q(); ++r)
            for (int kk = 0; kk <= 3; ++kk) {
                std::uint64_t qk = ipow64(f.q(), static_cast<std::uint32_t>(kk));
                for (std::uint64_t s = 0; s < qk; ++s) {
                    LocalElement lhs = u_of(f, r * qk + s);
                    LocalElement rhs = elem_add(
                        f, elem_mul(f, u_of(f, r), LocalElement::prime_power(-kk)), u_of(f, s));
                    ok = ok && lhs == rhs;
                    ++cases;
                }
            }
        record("u_composition_law", ok, cases);
    }
    if (f.characteristic() == Characteristic::positive) { // u-image group laws
        bool ok = true;
        std::uint64_t cases = 0;
        for (int m = 1; m <= 3; ++m) {
            std::uint64_t qm = ipow64(f.q(), static_cast<std::uint32_t>(m));
            std::vector<char> seen(qm, 0);
            for (std::uint64_t n = 0; n < qm; ++n) {
                auto idx = u_index_of(f, elem_neg(f, u_of(f, n)));
                if (!idx || *idx >= qm) ok = false;
                else seen[*idx] = 1;
                ++cases;
            }
            for (auto s : seen) ok = ok && s;
            std::fill(seen.begin(), seen.end(), 0);
            for (std::uint64_t n = 0; n < qm; ++n) {
                auto idx = u_index_of(f, elem_add(f, u_of(f, 1), u_of(f, n)));
                if (!idx || *idx >= qm) ok = false;
                else seen[*idx] = 1;
            }
            for (auto s : seen) ok = ok && s;
        }
        record("u_image_group_laws", ok, cases);
    }
    { // character orthonormality at resolution k
        int kk = std::min(k, 5);
        while (cell_count(f, 0, kk) > 256) --kk;
        CharacterSystem cs(fp, kk);
        bool ok = true;
        std::uint64_t N = cs.size();
        for (std::uint64_t a = 0; a < N; ++a)
            for (std::uint64_t b = 0; b < N; ++b) {
                Cplx s(0.0, 0.0);
                for (std::uint64_t j = 0; j < N; ++j)
                    s += cs.value(a, j) * std::conj(cs.value(b, j));
                s /= double(N);
                Cplx expect = a == b ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0);
                ok = ok && std::abs(s - expect) < 1e-12;
            }
        record("character_orthonormality", ok, N * N);
    }

    Json rep;
    rep["schema_version"] = report_schema_version();
    rep["field"] = params_to_json(f);
    rep["resolution"] = k;
    rep["checks"] = checks;
    rep["all_pass"] = all;
    Sink sink(out);
    sink.stream() << rep.dump(2) << "\n";
    return all ? 0 : 1;
}

int run_characters(const FieldOpts& fo, int k, const std::string& out) {
    auto fp = fo.make();
    CharacterSystem cs(fp, k);
    Sink sink(out);
    auto& os = sink.stream();
    os << "n,coset,re,im\n";
    for (std::uint64_t n = 0; n < cs.size(); ++n)
        for (std::uint64_t j = 0; j < cs.size(); ++j) {
            Cplx v = cs.value(n, j);
            os << n << "," << j << "," << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
        }
    return 0;
}

int run_dirichlet(const FieldOpts& fo, std::uint64_t n, int k, bool recursion,
                  const std::string& out) {
    auto fp = fo.make();
    CharacterSystem cs(fp, k);
    Sink sink(out);
    if (recursion) {
        Json splits = Json::array();
        bool all = true;
        for (int l = 1; ipow64(fp->q(), static_cast<std::uint32_t>(l)) <= n; ++l) {
            bool ok = dirichlet_recursion_check(cs, n, l);
            splits.push_back(Json{{"l", l}, {"ok", ok}});
            all = all && ok;
        }
        Json rep{{"schema_version", report_schema_version()},
                 {"n", n},
                 {"k", k},
                 {"splits", splits},
                 {"all_ok", all}};
        sink.stream() << rep.dump(2) << "\n";
        return all ? 0 : 1;
    }
    SampledFunction d = dirichlet(cs, n);
    auto& os = sink.stream();
    os << "cell,re,im\n";
    for (std::size_t j = 0; j < d.size(); ++j) {
        Cplx v = d.cval(j);
        os << j << "," << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
    }
    return 0;
}

int run_kernel_audit(const FieldOpts& fo, std::uint64_t nmax, int k, const std::string& out) {
    auto fp = fo.make();
    if (k <= 0) {
        k = 1;
        while (cell_count(*fp, 0, k) <= nmax) ++k;
    }
    CharacterSystem cs(fp, k);
    Sink sink(out);
    auto& os = sink.stream();
    os << "n,max_kernel_bound_ratio,khat_mass,khat_zero_one_dev,constancy_ok\n";
    bool all = true;
    const double q = double(fp->q());
    for (std::uint64_t n = 1; n <= nmax; ++n) {
        SampledFunction K = modified_kernel(cs, n);
        double worst = 0.0;
        for (std::size_t j = 1; j < K.size(); ++j) {
            auto lead = cell_leading_position(*fp, 0, k, j);
            if (!lead) continue;
            worst = std::max(worst, std::abs(K.cval(j)) * std::pow(q, -double(*lead)));
        }
        FourierCoeffs F = fourier(K);
        std::vector<int> mask = khat_mask(*fp, n, k);
        double dev = 0.0;
        std::uint64_t mass = 0;
        for (std::size_t m = 0; m < F.size(); ++m) {
            dev = std::max(dev, std::abs(F.cval(m) - Cplx(double(mask[m]), 0.0)));
            mass += mask[m];
        }
        bool constancy = kernel_constancy_check(cs, n);
        bool ok = worst <= q && mass == n && dev <= 1e-9 && constancy;
        all = all && ok;
        os << n << "," << fmt17(worst) << "," << mass << "," << fmt17(dev) << ","
           << (constancy ? 1 : 0) << "\n";
    }
    return all ? 0 : 1;
}

int run_sn_norms(const FieldOpts& fo, const std::string& wspec, double p, int k,
                 std::uint64_t nmax, std::uint64_t seed, const std::string& out) {
    auto fp = fo.make();
    Weight w = parse_weight(wspec);
    std::vector<double> wcells = w.values_on_window(*fp, 0, k);
    Sink sink(out);
    auto& os = sink.stream();
    os << "n,norm,residual,method\n";
    std::uint64_t cap = std::min(nmax, cell_count(*fp, 0, k));
    for (std::uint64_t n = 1; n <= cap; ++n) {
        KernelOperator op = make_Sn(fp, n, k);
        if (p == 2.0) {
            OpNormResult r = weighted_opnorm_L2_full(op, wcells);
            os << n << "," << fmt17(r.norm) << "," << fmt17(r.residual) << ",svd\n";
        } else {
            double lb = opnorm_lower_bound_Lp(op, wcells, p, 2000, seed);
            os << n << "," << fmt17(lb) << ",,lb\n";
        }
    }
    return 0;
}

int run_ap(const FieldOpts& fo, const std::string& wspec, double p, int k,
           const std::string& out) {
    auto fp = fo.make();
    ApReport rep = ap_characteristic(*fp, parse_weight(wspec), p, k);
    Sink sink(out);
    sink.stream() << ap_report_to_json(rep).dump(2) << "\n";
    return 0;
}

int run_doubling(const FieldOpts& fo, const std::string& wspec, int k, const std::string& out) {
    auto fp = fo.make();
    double ratio = doubling_ratio(*fp, parse_weight(wspec), k);
    Json rep{{"schema_version", report_schema_version()}, {"k", k}, {"ratio", ratio}};
    Sink sink(out);
    sink.stream() << rep.dump(2) << "\n";
    return 0;
}

int run_rhi(const FieldOpts& fo, const std::string& wspec, double p, int k,
            const std::string& out) {
    auto fp = fo.make();
    Weight w = parse_weight(wspec);
    ApReport ap = ap_characteristic(*fp, w, p, k); // confirms w in A_p first
    RhiResult r = reverse_holder_probe(*fp, w, k);
    Json rep{{"schema_version", report_schema_version()},
             {"p", p},
             {"k", k},
             {"ap_value", ap.value},
             {"best_eps", r.best_eps},
             {"C", r.C}};
    Sink sink(out);
    sink.stream() << rep.dump(2) << "\n";
    return 0;
}

int run_ainf(const FieldOpts& fo, const std::string& wspec, int k, std::size_t samples,
             std::uint64_t seed, const std::string& out) {
    auto fp = fo.make();
    AInfResult r = a_infty_probe(*fp, parse_weight(wspec), k, samples, seed);
    Json rep{{"schema_version", report_schema_version()},
             {"k", k},
             {"delta", r.delta},
             {"C", r.C}};
    Sink sink(out);
    sink.stream() << rep.dump(2) << "\n";
    return 0;
}

int run_maximal(const std::string& input, const std::string& op, double s, int m,
                const std::string& out) {
    std::ifstream in(input);
    if (!in) throw parameter_error("cannot read function file " + input);
    SampledFunction f = function_from_json(Json::parse(in));
    SampledFunction r = op == "sharp" ? sharp_maximal(f, m)
                        : op == "ms"  ? m_s(f, s, m)
                                      : maximal(f, m);
    Sink sink(out);
    sink.stream() << function_to_json(r).dump(2) << "\n";
    return 0;
}

int run_buckley(const FieldOpts& fo, double p, const std::vector<double>& thetas, int k, int m,
                const std::string& out) {
    auto fp = fo.make();
    Sink sink(out);
    auto& os = sink.stream();
    os << "theta,ap,ratio,paper_bound,slope,pointwise_violations\n";
    bool all = true;
    if (thetas.size() == 1) {
        BuckleyResult r = buckley_experiment(*fp, p, thetas[0], k, m);
        all = r.ratio >= r.paper_bound && r.pointwise_violations == 0;
        os << fmt17(r.theta) << "," << fmt17(r.ap) << "," << fmt17(r.ratio) << ","
           << fmt17(r.paper_bound) << ",," << r.pointwise_violations << "\n";
    } else {
        BuckleySweep sweep = buckley_sweep(*fp, p, thetas, k, m);
        for (const auto& r : sweep.rows) {
            all = all && r.ratio >= r.paper_bound && r.pointwise_violations == 0;
            os << fmt17(r.theta) << "," << fmt17(r.ap) << "," << fmt17(r.ratio) << ","
               << fmt17(r.paper_bound) << "," << fmt17(sweep.slope) << ","
               << r.pointwise_violations << "\n";
        }
    }
    return all ? 0 : 1;
}

int run_msharp(const FieldOpts& fo, const std::string& wspec, double p, int k, int m,
               std::size_t bank, std::uint64_t seed, const std::string& out) {
    auto fp = fo.make();
    MSharpResult r = m_to_sharp_probe(*fp, parse_weight(wspec), p, k, m, bank, seed);
    Json rep{{"schema_version", report_schema_version()},
             {"p", p},
             {"k", k},
             {"max_ratio", r.max_ratio},
             {"bank_used", r.used},
             {"bank_skipped", r.skipped}};
    Sink sink(out);
    sink.stream() << rep.dump(2) << "\n";
    return 0;
}

int run_schauder(const std::string& phi_file, const std::string& klist, std::uint64_t N,
                 const std::string& out) {
    std::ifstream in(phi_file);
    if (!in) throw parameter_error("cannot read phi file " + phi_file);
    Json j = Json::parse(in);
    PhiSpec spec;
    spec.phi_hat = function_from_json(j);
    if (j.contains("declared_total")) spec.declared_total = j["declared_total"].get<double>();
    std::vector<int> ks;
    std::stringstream ss(klist);
    std::string tok;
    while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
    SchauderReport rep = schauder_verdict(spec, ks, N);
    Sink sink(out);
    sink.stream() << schauder_report_to_json(rep).dump(2) << "\n";
    return 0;
}

std::vector<LocalElement> elements_from_json(const FieldParams& f, const Json& j) {
    std::vector<LocalElement> out;
    for (const auto& e : j.at("elements")) {
        if (e.contains("u")) {
            out.push_back(u_of(f, e["u"].get<std::uint64_t>()));
        } else {
            int v = e.at("valuation").get<int>();
            std::vector<FqElem> digits;
            for (auto d : e.at("digits")) digits.push_back(FqElem{d.get<std::uint32_t>()});
            out.push_back(LocalElement::make(v, std::move(digits)));
        }
    }
    return out;
}

int run_tiling(const FieldOpts& fo, const std::string& omega_file, const std::string& t_file,
               const std::string& gamma_file, const std::string& format,
               const std::string& out) {
    auto fp = fo.make();
    std::ifstream in(omega_file);
    if (!in) throw parameter_error("cannot read omega file " + omega_file);
    Json jo = Json::parse(in);
    TilingSpec spec;
    spec.window_m = jo.value("window_m", 0);
    spec.level = jo.at("level").get<int>();
    for (auto c : jo.at("cells")) spec.omega_cells.push_back(c.get<std::uint64_t>());

    bool ok = true;
    Json rep;
    rep["schema_version"] = report_schema_version();
    TilingResult tiling;
    if (!t_file.empty()) {
        std::ifstream tin(t_file);
        if (!tin) throw parameter_error("cannot read translation file " + t_file);
        spec.translations = elements_from_json(*fp, Json::parse(tin));
        tiling = tiling_check(*fp, spec);
        rep["tiles"] = tiling.tiles;
        ok = ok && tiling.tiles;
    }
    if (!gamma_file.empty()) {
        std::ifstream gin(gamma_file);
        if (!gin) throw parameter_error("cannot read spectrum file " + gamma_file);
        spec.spectrum = elements_from_json(*fp, Json::parse(gin));
        SpectralResult sr = spectral_gram(*fp, spec);
        rep["spectral"] = Json{{"max_offdiag", sr.max_offdiag},
                               {"max_diag_dev", sr.max_diag_dev},
                               {"complete", sr.complete},
                               {"parseval_residual", sr.parseval_residual}};
        if (sr.exact_offdiag) rep["spectral"]["max_offdiag_exact"] = rat_str(*sr.exact_offdiag);
        ok = ok && sr.max_offdiag < 1e-9 && sr.complete;
    }

    Sink sink(out);
    if (format == "csv" && !t_file.empty()) {
        auto& os = sink.stream();
        os << "tiles," << (tiling.tiles ? 1 : 0) << "\n";
        os << "coverage,count\n";
        std::map<std::uint64_t, std::uint64_t> hist;
        for (auto c : tiling.coverage) ++hist[c];
        for (const auto& [cov, count] : hist) os << cov << "," << count << "\n";
    } else {
        if (!t_file.empty()) {
            Json hist = Json::object();
            for (auto c : tiling.coverage) {
                std::string key = std::to_string(c);
                hist[key] = hist.value(key, 0) + 1;
            }
            rep["coverage_histogram"] = hist;
        }
        sink.stream() << rep.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis on the ring of integers of a local field"};
    app.require_subcommand(1);
    app.set_version_flag("--version", report_schema_version());

    FieldOpts fo;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    int k = 4, m = 3;
    std::uint64_t n = 1, nmax = 16, N = 32;
    double p = 2.0, s = 2.0;
    std::string wspec = "POWER:0.0";
    std::string input, t_file, gamma_file, klist = "3,4,5";
    std::vector<double> thetas{0.25};
    std::size_t samples = 6, bank = 50;
    bool recursion = false;

    auto add_common = [&](CLI::App* cmd, bool p_is_prime = true) {
        add_field_opts(cmd, fo, p_is_prime);
        cmd->add_option("--out", out, "output file (default stdout; LFA_OUT_DIR prefixes relative paths)");
        cmd->add_option("--seed", seed, "seed for every randomized bank");
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        return cmd;
    };

    auto* selftest = add_common(app.add_subcommand("field-selftest", "field arithmetic invariant battery"));
    selftest->add_option("--k", k, "character resolution for the orthonormality check");

    auto* characters = add_common(app.add_subcommand("characters", "emit the q^k x q^k character table as CSV"));
    characters->add_option("--table,--k", k, "resolution k")->required();

    auto* dirichlet_cmd = add_common(app.add_subcommand("dirichlet", "Dirichlet kernel cells or the splitting identity"));
    dirichlet_cmd->add_option("--n", n, "kernel index")->required();
    dirichlet_cmd->add_option("--k", k, "resolution");
    dirichlet_cmd->add_flag("--recursion-check", recursion, "verify every valid splitting of n");

    auto* audit = add_common(app.add_subcommand("kernel-audit", "kernel bound, coefficient mask and constancy for n <= nmax"));
    audit->add_option("--nmax", nmax, "largest kernel index")->required();
    int audit_k = 0;
    audit->add_option("--k", audit_k, "resolution (default: smallest with q^k > nmax)");

    auto* snnorms = add_common(app.add_subcommand("sn-norms", "weighted partial-sum operator norms"), false);
    snnorms->add_option("--w", wspec, "weight: POWER:alpha or SAMPLED:file.json");
    snnorms->add_option("--p", p, "Lebesgue exponent (exact SVD norms at p=2, certified lower bounds otherwise)");
    snnorms->add_option("--k", k, "resolution");
    snnorms->add_option("--nmax", nmax, "largest operator index");

    auto* ap_cmd = add_common(app.add_subcommand("ap", "A_p characteristic with witness ball"), false);
    ap_cmd->add_option("--w", wspec, "weight spec")->required();
    ap_cmd->add_option("--p", p, "exponent");
    ap_cmd->add_option("--k", k, "deepest ball level");

    auto* doubling = add_common(app.add_subcommand("doubling", "doubling ratio of a weight"));
    doubling->add_option("--w", wspec, "weight spec")->required();
    doubling->add_option("--k", k, "deepest level");

    auto* rhi = add_common(app.add_subcommand("rhi-probe", "reverse Holder exponent probe"), false);
    rhi->add_option("--w", wspec, "weight spec")->required();
    rhi->add_option("--p", p, "A_p exponent checked before probing");
    rhi->add_option("--k", k, "deepest ball level");

    auto* ainf = add_common(app.add_subcommand("ainf-probe", "A_infty comparison probe"));
    ainf->add_option("--w", wspec, "weight spec")->required();
    ainf->add_option("--k", k, "deepest ball level");
    ainf->add_option("--samples", samples, "sampled cell unions per ball");

    auto* maximal_cmd = add_common(app.add_subcommand("maximal", "maximal / sharp / M_s of a function file"));
    maximal_cmd->add_option("--input", input, "function JSON")->required();
    std::string maxop = "maximal";
    maximal_cmd->add_option("--op", maxop, "operator")->check(CLI::IsMember({"maximal", "sharp", "ms"}));
    maximal_cmd->add_option("--s", s, "exponent for ms");
    maximal_cmd->add_option("--m", m, "window depth");

    auto* buckley = add_common(app.add_subcommand("buckley", "maximal-operator sharpness experiment"), false);
    buckley->add_option("--p", p, "exponent");
    buckley->add_option("--theta", thetas, "theta value(s); several values form a sweep with a slope column");
    buckley->add_option("--k", k, "resolution");
    buckley->add_option("--m", m, "window depth");

    auto* msharp = add_common(app.add_subcommand("m-sharp-probe", "||Mf|| / ||f#|| over a seeded bank"), false);
    msharp->add_option("--w", wspec, "weight spec")->required();
    msharp->add_option("--p", p, "exponent");
    msharp->add_option("--k", k, "resolution");
    msharp->add_option("--m", m, "window depth");
    msharp->add_option("--bank", bank, "bank size");

    auto* schauder = add_common(app.add_subcommand("schauder", "Schauder-basis verdict for translates of phi"));
    schauder->add_option("--phi", input, "phi_hat function JSON")->required();
    schauder->add_option("--klist", klist, "comma-separated resolution levels");
    schauder->add_option("--N", N, "partial-sum trace length");

    auto* tiling = add_common(app.add_subcommand("tiling", "tiling and spectral checkers"));
    tiling->add_option("--omega", input, "omega JSON {window_m, level, cells}")->required();
    tiling->add_option("--t", t_file, "translations JSON {elements: [{u: n} | {valuation, digits}]}");
    tiling->add_option("--gamma", gamma_file, "spectrum candidates JSON");
    tiling->add_option("--k", k, "unused when omega carries its level; kept for symmetry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2
    }

    try {
        if (selftest->parsed()) return run_field_selftest(fo, k, out);
        if (characters->parsed()) return run_characters(fo, k, out);
        if (dirichlet_cmd->parsed()) return run_dirichlet(fo, n, k, recursion, out);
        if (audit->parsed()) return run_kernel_audit(fo, nmax, audit_k, out);
        if (snnorms->parsed()) return run_sn_norms(fo, wspec, p, k, nmax, seed, out);
        if (ap_cmd->parsed()) return run_ap(fo, wspec, p, k, out);
        if (doubling->parsed()) return run_doubling(fo, wspec, k, out);
        if (rhi->parsed()) return run_rhi(fo, wspec, p, k, out);
        if (ainf->parsed()) return run_ainf(fo, wspec, k, samples, seed, out);
        if (maximal_cmd->parsed()) return run_maximal(input, maxop, s, m, out);
        if (buckley->parsed()) return run_buckley(fo, p, thetas, k, m, out);
        if (msharp->parsed()) return run_msharp(fo, wspec, p, k, m, bank, seed, out);
        if (schauder->parsed()) return run_schauder(input, klist, N, out);
        if (tiling->parsed()) return run_tiling(fo, input, t_file, gamma_file, format, out);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
