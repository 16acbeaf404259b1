#include "vhs/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vhs {

using nlohmann::json;

namespace {

json rational_to_json(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    static const boost::multiprecision::cpp_int limit = (boost::multiprecision::cpp_int(1) << 53);
    if (num > -limit && num < limit && den < limit)
        return json::array({static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)});
    return json(num.str() + "/" + den.str());
}

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

long long int_field(const json& j, const std::string& field) {
    if (!j.is_number_integer())
        throw Error(field, "expected an integer");
    return j.get<long long>();
}

Rational rational_field(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_array() && j.size() == 2) {
        long long num = int_field(j[0], field);
        long long den = int_field(j[1], field);
        if (den == 0) throw Error(field, "zero denominator");
        return Rational(num, den);
    }
    throw Error(field, "expected an integer or a [numerator, denominator] pair");
}

double float_field(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            std::size_t used = 0;
            double v = std::stod(j.get<std::string>(), &used);
            if (used == j.get<std::string>().size()) return v;
        } catch (...) {
        }
    }
    throw Error(field, "expected a decimal number string");
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    if (s.exact()) {
        if (s.im_rat() == 0) return rational_to_json(s.re_rat());
        return json{{"re", rational_to_json(s.re_rat())}, {"im", rational_to_json(s.im_rat())}};
    }
    std::complex<double> v = s.to_complex();
    if (v.imag() == 0.0) return json(double_str(v.real()));
    return json{{"re", double_str(v.real())}, {"im", double_str(v.imag())}};
}

Scalar scalar_from_json(const json& j, bool rational_mode, const std::string& field) {
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im"))
            throw Error(field, "complex values need re and im");
        if (rational_mode)
            return Scalar(rational_field(j["re"], field), rational_field(j["im"], field));
        return Scalar(std::complex<double>(float_field(j["re"], field), float_field(j["im"], field)));
    }
    if (rational_mode) return Scalar(rational_field(j, field));
    return Scalar(float_field(j, field));
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json series_to_json(const TruncatedSeries& s) {
    json terms = json::array();
    for (const auto& [key, value] : s.terms()) {
        json t{{"holo", json::array()}, {"anti", json::array()}};
        for (std::size_t v = 0; v < s.num_vars(); ++v) {
            t["holo"].push_back(key.first[v]);
            t["anti"].push_back(key.second[v]);
        }
        t["coeff"] = s.scalar_valued() ? scalar_to_json(value(0, 0)) : matrix_to_json(value);
        terms.push_back(t);
    }
    return terms;
}

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("path", "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("parse", std::string(e.what()));
    }
    return load_model_json(j, path);
}

LoadedModel load_model_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw Error("model", "top level must be an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1)
        throw Error("schema_version", "unrecognized schema version; only 1 is supported");
    std::string kind = j.value("kind", std::string());
    std::string mode = j.value("number_mode", std::string("rational"));
    if (mode != "rational" && mode != "float")
        throw Error("number_mode", "must be rational or float");
    bool rational = mode == "rational";
    int n = static_cast<int>(int_field(j.value("N", json(0)), "N"));
    if (n < 1) throw Error("N", "need at least one deformation direction");
    int order = static_cast<int>(int_field(j.value("order", json(6)), "order"));
    if (order < 2 || order > 12) throw Error("order", "supported range is 2..12");

    LoadedModel out{LoadedModel::Kind::cy3, rational,
                    VHSModel{HodgeData::cy3(1), PolarizationForm::cy3_reference(1), 1, {}, {}, order}};
    out.echo = json{{"origin", origin}, {"kind", kind}, {"N", n}, {"order", order},
                    {"number_mode", mode}};

    if (kind == "hyperkahler") {
        out.kind = LoadedModel::Kind::hyperkahler;
        out.hk_half_dim = static_cast<int>(int_field(j.value("n", json(0)), "n"));
        out.echo["n"] = out.hk_half_dim;
        out.vhs = build_hk_model(n, out.hk_half_dim, order).vhs;
        return out;
    }
    if (kind != "cy3" && kind != "abstract_vhs")
        throw Error("kind", "must be cy3, abstract_vhs, or hyperkahler");
    out.kind = kind == "cy3" ? LoadedModel::Kind::cy3 : LoadedModel::Kind::abstract_vhs;

    std::vector<Matrix> c(n, Matrix(n, n));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(static_cast<std::size_t>(n) * n));
    if (!j.contains("yukawa") || !j["yukawa"].is_array())
        throw Error("yukawa", "missing entry list");
    for (const auto& entry : j["yukawa"]) {
        if (!entry.is_object() || !entry.contains("indices") || !entry.contains("value"))
            throw Error("yukawa", "each entry needs indices and value");
        const auto& idx = entry["indices"];
        if (!idx.is_array() || idx.size() != 3) throw Error("yukawa", "indices must be a triple");
        int a[3];
        for (int v = 0; v < 3; ++v) {
            a[v] = static_cast<int>(int_field(idx[v], "yukawa.indices")) - 1;
            if (a[v] < 0 || a[v] >= n) throw Error("yukawa", "index out of range");
        }
        Scalar value = scalar_from_json(entry["value"], rational, "yukawa.value");
        int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perms) {
            int i = a[p[0]], jj = a[p[1]], k = a[p[2]];
            if (seen[i][static_cast<std::size_t>(jj) * n + k] && c[i](jj, k) != value)
                throw Error("yukawa", "conflicting values at indices (" + std::to_string(i + 1) +
                                          "," + std::to_string(jj + 1) + "," +
                                          std::to_string(k + 1) + ")");
            c[i](jj, k) = value;
            seen[i][static_cast<std::size_t>(jj) * n + k] = true;
        }
    }
    out.vhs = build_cy3_model(c, order);

    if (out.kind == LoadedModel::Kind::abstract_vhs && j.contains("gram")) {
        const auto& g = j["gram"];
        std::size_t dim = out.vhs.dim();
        if (!g.is_array() || g.size() != dim) throw Error("gram", "wrong shape");
        Matrix gm(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (!g[r].is_array() || g[r].size() != dim) throw Error("gram", "wrong shape");
            for (std::size_t cc = 0; cc < dim; ++cc)
                gm(r, cc) = scalar_from_json(g[r][cc], rational, "gram");
        }
        out.vhs.polarization = PolarizationForm(
            3, gm, PolarizationForm::cy3_reference(n).real_structure_swap());
    }

    if (j.contains("extra_coeffs")) {
        if (!j["extra_coeffs"].is_array()) throw Error("extra_coeffs", "must be a list");
        for (const auto& entry : j["extra_coeffs"]) {
            if (!entry.is_object() || !entry.contains("index") || !entry.contains("vector"))
                throw Error("extra_coeffs", "each entry needs index and vector");
            const auto& ij = entry["index"];
            if (!ij.is_array() || static_cast<int>(ij.size()) != n)
                throw Error("extra_coeffs", "index must list one exponent per variable");
            std::vector<int> exps(n);
            for (int v = 0; v < n; ++v) {
                exps[v] = static_cast<int>(int_field(ij[v], "extra_coeffs.index"));
                if (exps[v] < 0) throw Error("extra_coeffs", "negative exponent");
            }
            const auto& vec = entry["vector"];
            std::size_t dim = out.vhs.dim();
            if (!vec.is_array() || vec.size() != dim)
                throw Error("extra_coeffs", "vector must have the basis dimension");
            Matrix row(1, dim);
            for (std::size_t v = 0; v < dim; ++v)
                row(0, v) = scalar_from_json(vec[v], rational, "extra_coeffs.vector");
            out.vhs.extra_coeffs[MultiIndex(exps)] = row;
        }
        out.vhs.validate();
    }
    return out;
}

HKModel as_hk(const LoadedModel& m) {
    if (m.kind != LoadedModel::Kind::hyperkahler)
        throw Error("kind", "this command needs a hyperkahler model");
    return {m.vhs.num_vars, m.hk_half_dim, m.vhs};
}

Report::Report(const std::string& command, const json& inputs) {
    doc = json{{"command", command},       {"inputs", inputs},
               {"verdicts", json::object()}, {"tables", json::object()},
               {"residuals", json::object()}, {"conventions", json::array()}};
}

void Report::verdict(const std::string& name, const json& value) { doc["verdicts"][name] = value; }
void Report::table(const std::string& name, const json& value) { doc["tables"][name] = value; }
void Report::residual(const std::string& name, double value, double tol) {
    doc["residuals"][name] = json{{"value", double_str(value)}, {"tol", double_str(tol)}};
}
void Report::convention(const std::string& note) { doc["conventions"].push_back(note); }

bool Report::all_passed() const {
    for (const auto& [name, value] : doc["verdicts"].items()) {
        if (value.is_boolean()) {
            if (!value.get<bool>()) return false;
        } else if (value.is_string()) {
            std::string s = value.get<std::string>();
            if (s != "in_D" && s != "symmetric_on_samples" && s != "symmetric_at_base" &&
                s != "pass")
                return false;
        }
    }
    for (const auto& [name, value] : doc["residuals"].items()) {
        double v = std::stod(value["value"].get<std::string>());
        double t = std::stod(value["tol"].get<std::string>());
        if (!(v <= t)) return false;
    }
    return true;
}

std::string Report::json_text() const { return doc.dump(2); }

std::string Report::plain_text() const {
    std::ostringstream out;
    out << "command: " << doc["command"].get<std::string>() << "\n";
    for (const auto& [name, value] : doc["verdicts"].items())
        out << "verdict " << name << ": " << value.dump() << "\n";
    for (const auto& [name, value] : doc["residuals"].items())
        out << "residual " << name << ": " << value["value"].get<std::string>()
            << " (tol " << value["tol"].get<std::string>() << ")\n";
    for (const auto& [name, value] : doc["tables"].items())
        out << "table " << name << ": " << value.dump() << "\n";
    for (const auto& note : doc["conventions"])
        out << "note: " << note.get<std::string>() << "\n";
    return out.str();
}

}  // namespace vhs
