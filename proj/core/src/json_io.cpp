#include "skewcall/json_io.hpp"

#include <limits>

namespace skewcall {

using nlohmann::json;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

json finite_or_string(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double from_finite_or_string(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw DomainError("unexpected numeric string: " + s);
    }
    return j.get<double>();
}
}  // namespace

json to_json(const SkewGbmParams& p) {
    return {{"r", p.r}, {"b", p.b}, {"sigma", p.sigma}, {"K", p.K}, {"z", p.z}, {"beta", p.beta}};
}

SkewGbmParams params_from_json(const json& j) {
    SkewGbmParams p{};
    p.r = j.at("r").get<double>();
    p.b = j.at("b").get<double>();
    p.sigma = j.at("sigma").get<double>();
    p.K = j.at("K").get<double>();
    p.z = j.at("z").get<double>();
    p.beta = j.at("beta").get<double>();
    return p;
}

json to_json(const CaseProfile& pr) {
    json j{{"params", to_json(pr.params)},
           {"case", to_string(pr.cse)},
           {"m", pr.m},
           {"n", pr.n},
           {"A", pr.A},
           {"B", pr.B_at(pr.params.z)},
           {"beta_c", pr.beta_c},
           {"zc", pr.zc},
           {"z0", pr.z0}};
    j["zbeta"] = pr.zbeta ? json(*pr.zbeta) : json(nullptr);
    j["frakC"] = pr.frakC ? json(*pr.frakC) : json(nullptr);
    return j;
}

json to_json(const PiecewiseValueFunction& vf) {
    json pieces = json::array();
    for (const auto& pc : vf.pieces) {
        json form = pc.affine ? json{{"type", "affine"}}
                              : json{{"type", "power"}, {"cn", pc.cn}, {"cm", pc.cm}};
        pieces.push_back({{"lo", pc.lo}, {"hi", finite_or_string(pc.hi)}, {"form", form}});
    }
    json region = json::array();
    for (const auto& c : vf.region.components)
        region.push_back({{"lo", c.lo}, {"hi", finite_or_string(c.hi)}});
    return {{"params", to_json(vf.params)},
            {"regime", to_string(vf.regime)},
            {"pieces", pieces},
            {"stopping_region", region},
            {"constants", vf.constants}};
}

PiecewiseValueFunction vf_from_json(const json& j) {
    PiecewiseValueFunction vf;
    vf.params = params_from_json(j.at("params"));
    vf.profile = classify(vf.params);
    const auto reg = j.at("regime").get<std::string>();
    if (reg == "OneSidedAlpha") vf.regime = Regime::OneSidedAlpha;
    else if (reg == "OneSidedAtZ") vf.regime = Regime::OneSidedAtZ;
    else if (reg == "OneSidedZ0") vf.regime = Regime::OneSidedZ0;
    else if (reg == "PointPlusRay") vf.regime = Regime::PointPlusRay;
    else if (reg == "TwoIntervals") vf.regime = Regime::TwoIntervals;
    else throw DomainError("unknown regime tag: " + reg);
    for (const auto& pj : j.at("pieces")) {
        Piece pc;
        pc.lo = pj.at("lo").get<double>();
        pc.hi = from_finite_or_string(pj.at("hi"));
        const auto& form = pj.at("form");
        pc.affine = form.at("type").get<std::string>() == "affine";
        if (!pc.affine) {
            pc.cn = form.at("cn").get<double>();
            pc.cm = form.at("cm").get<double>();
        }
        vf.pieces.push_back(pc);
    }
    for (const auto& cj : j.at("stopping_region")) {
        Component c;
        c.lo = cj.at("lo").get<double>();
        c.hi = from_finite_or_string(cj.at("hi"));
        vf.region.components.push_back(c);
    }
    if (j.contains("constants"))
        vf.constants = j.at("constants").get<std::map<std::string, double>>();
    return vf;
}

json to_json(const VerificationReport& rep) {
    return {{"obstacle_violation", rep.obstacle_violation},
            {"gen_resid_continuation", rep.gen_resid_continuation},
            {"gen_pos_stopping", rep.gen_pos_stopping},
            {"skew_resid", rep.skew_resid},
            {"z_is_stopping", rep.z_is_stopping},
            {"continuity_defect", rep.continuity_defect},
            {"smooth_fit_defect", rep.smooth_fit_defect},
            {"growth_ratio_lo", rep.growth_ratio_lo},
            {"growth_ratio_lo_inner", rep.growth_ratio_lo_inner},
            {"growth_ratio_hi", rep.growth_ratio_hi},
            {"growth_ratio_hi_inner", rep.growth_ratio_hi_inner},
            {"pass",
             {{"obstacle", rep.pass_obstacle},
              {"generator", rep.pass_generator},
              {"skew", rep.pass_skew},
              {"continuity", rep.pass_continuity},
              {"smooth_fit", rep.pass_smooth_fit},
              {"growth", rep.pass_growth},
              {"all", rep.pass}}}};
}

json to_json(const McResult& res) {
    return {{"mean", res.mean}, {"se", res.se},           {"paths", res.paths},
            {"dt", res.dt},     {"horizon", res.horizon}, {"seed", res.seed}};
}

}  // namespace skewcall
