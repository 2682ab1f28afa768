#pragma once

#include "skewcall/fd_solver.hpp"
#include "skewcall/model.hpp"
#include "skewcall/monte_carlo.hpp"
#include "skewcall/value_function.hpp"
#include "skewcall/vi_verifier.hpp"

#include <json.hpp>

namespace skewcall {

nlohmann::json to_json(const SkewGbmParams& p);
SkewGbmParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CaseProfile& pr);

/// Exact round trip: from_json(to_json(vf)) reproduces every double bit
/// for bit.
nlohmann::json to_json(const PiecewiseValueFunction& vf);
PiecewiseValueFunction vf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& rep);
nlohmann::json to_json(const McResult& res);

}  // namespace skewcall
