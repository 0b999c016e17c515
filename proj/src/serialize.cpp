#include "lfa/serialize.hpp"

#include <cstdio>

namespace lfa {

std::string report_schema_version() { return "1.0.0"; }

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json params_to_json(const FieldParams& f) {
    Json j;
    j["q"] = f.q();
    j["p"] = f.p();
    j["c"] = f.c();
    j["char"] = f.characteristic() == Characteristic::zero ? 0 : f.p();
    if (f.c() > 1) j["modulus"] = f.modulus();
    return j;
}

std::shared_ptr<FieldParams> params_from_json(const Json& j) {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t c = j.value("c", 1u);
    std::uint32_t chr = j.at("char").get<std::uint32_t>();
    std::vector<std::uint32_t> modulus;
    if (j.contains("modulus")) modulus = j["modulus"].get<std::vector<std::uint32_t>>();
    return std::make_shared<FieldParams>(chr == 0 ? Characteristic::zero
                                                  : Characteristic::positive,
                                         p, c, std::move(modulus));
}

Json function_to_json(const SampledFunction& f) {
    Json j = params_to_json(f.field());
    j["schema_version"] = report_schema_version();
    j["level"] = f.level();
    if (f.win_lo() != 0) j["window"] = -f.win_lo();
    j["domain"] = f.domain() == Domain::periodic ? "periodic"
                  : f.domain() == Domain::windowed ? "windowed"
                                                   : "on_D";
    Json vals = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Cplx v = f.cval(i);
        vals.push_back(Json::array({v.real(), v.imag()}));
    }
    j["values"] = std::move(vals);
    return j;
}

SampledFunction function_from_json(const Json& j) {
    auto params = params_from_json(j);
    int level = j.at("level").get<int>();
    int m = j.value("window", 0);
    std::string dom = j.value("domain", "on_D");
    Domain d = dom == "periodic" ? Domain::periodic
               : dom == "windowed" ? Domain::windowed
                                   : Domain::on_D;
    std::vector<Cplx> cells;
    for (const auto& v : j.at("values"))
        cells.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return SampledFunction::from_complex(params, -m, level, d, std::move(cells));
}

Json ap_report_to_json(const ApReport& rep) {
    Json j;
    j["schema_version"] = report_schema_version();
    j["p"] = rep.p;
    j["level"] = rep.level;
    j["value"] = rep.value;
    if (rep.exact) j["value_exact"] = rat_str(*rep.exact);
    j["witness"] = {{"ambient", rep.witness.ambient},
                    {"level", rep.witness.level},
                    {"center", rep.witness.center}};
    return j;
}

Json schauder_report_to_json(const SchauderReport& rep) {
    Json j;
    j["schema_version"] = report_schema_version();
    j["verdict"] = to_string(rep.verdict);
    j["levels"] = rep.levels;
    j["a2_values"] = rep.a2_values;
    j["sup_norm_trace"] = rep.sup_norm_trace;
    j["norm_trace"] = rep.norm_trace;
    j["dual_integrable"] = rep.dual_integrable;
    j["tail_mass"] = rep.tail_mass;
    return j;
}

} // namespace lfa
