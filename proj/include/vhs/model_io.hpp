#pragma once

#include "vhs/hyperkahler.hpp"

#include <json.hpp>

#include <string>

namespace vhs {

struct LoadedModel {
    enum class Kind { cy3, abstract_vhs, hyperkahler };
    Kind kind;
    bool rational_mode;
    VHSModel vhs;
    int hk_half_dim = 0;  // hyperkahler only
    nlohmann::json echo;  // sanitized input digest for reports
};

/// Parse and validate a schema_version-1 model file. Rational entries are
/// integer pairs [num, den]; floats are decimal strings. Throws Error with
/// the offending field named.
LoadedModel load_model(const std::string& path);
LoadedModel load_model_json(const nlohmann::json& j, const std::string& origin);

HKModel as_hk(const LoadedModel& m);

/// Scalar <-> JSON with exactness preserved: rationals as [num, den] pairs
/// (objects {re, im} when complex), floats as decimal strings.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, bool rational_mode, const std::string& field);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json series_to_json(const TruncatedSeries& s);

struct Report {
    nlohmann::json doc;

    Report(const std::string& command, const nlohmann::json& inputs);
    void verdict(const std::string& name, const nlohmann::json& value);
    void table(const std::string& name, const nlohmann::json& value);
    void residual(const std::string& name, double value, double tol);
    void convention(const std::string& note);
    /// True when every boolean verdict passed and no verdict string reads as
    /// a failure (used for --strict exit codes).
    bool all_passed() const;
    std::string json_text() const;
    std::string plain_text() const;
};

}  // namespace vhs
