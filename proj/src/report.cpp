#include "framegeo/report.hpp"

#include <cstdio>
#include <sstream>

namespace framegeo {

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump_rec(const nlohmann::json& v, std::string& out, int indent, int depth) {
    auto pad = [&](int d) {
        if (indent > 0) out.append(static_cast<std::size_t>(indent) * d, ' ');
    };
    auto newline = [&] {
        if (indent > 0) out += '\n';
    };
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            newline();
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) {
                    out += ',';
                    newline();
                }
                first = false;
                pad(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += indent > 0 ? ": " : ":";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            newline();
            pad(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += indent > 0 ? ", " : ",";
                first = false;
                dump_rec(item, out, indent, depth + 1);
            }
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

// ---- text rendering -------------------------------------------------------

std::string scalar_text(const nlohmann::json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_check_table(std::ostream& os, const nlohmann::json& checks,
                        const std::string& head) {
    if (checks.is_null() || checks.empty()) return;
    os << head << "\n";
    for (auto it = checks.begin(); it != checks.end(); ++it) {
        const auto& entry = it.value();
        if (entry.is_object()) {
            os << "  " << it.key() << ": defect " << scalar_text(entry["defect"])
               << (entry["pass"].get<bool>() ? "  [pass]" : "  [FAIL]") << "\n";
        } else {
            os << "  " << it.key() << ": " << scalar_text(entry) << "\n";
        }
    }
}

void render_soliton(std::ostream& os, const nlohmann::json& s) {
    if (s.is_null()) return;
    os << "soliton fit (V = " << s["potential"].get<std::string>() << ")\n";
    os << "  lambda = " << scalar_text(s["lambda"]) << ", mu = " << scalar_text(s["mu"]) << "\n";
    os << "  residual_max = " << scalar_text(s["residual_max"])
       << ", residual_rms = " << scalar_text(s["residual_rms"])
       << ", spread = " << scalar_text(s["spread"]) << "\n";
    os << "  classification: " << s["classification"].get<std::string>() << "\n";
    os << "  eta-Ricci soliton: " << (s["is_soliton"].get<bool>() ? "yes" : "no") << "\n";
}

void render_classification(std::ostream& os, const nlohmann::json& c) {
    if (c.is_null()) return;
    os << "classification\n";
    const char* keys[] = {"codazzi_defect",   "cyclic_defect", "nabla_s_closed_form_defect",
                          "phi_ricci_defect", "rr_qsr_defect", "einstein_defect",
                          "nabla_q_paths_defect"};
    for (const char* k : keys) {
        if (!c.contains(k) || c[k].is_null()) continue;
        os << "  " << k << " = " << scalar_text(c[k]) << "\n";
    }
    if (c.contains("space_form") && !c["space_form"].is_null()) {
        const auto& sf = c["space_form"];
        os << "  space form: kappa = " << scalar_text(sf["kappa"]) << ", defect = "
           << scalar_text(sf["defect"]) << ", verdict: " << sf["verdict"].get<std::string>()
           << "\n";
    }
    if (c.contains("verdicts")) {
        os << "  verdicts:";
        for (auto it = c["verdicts"].begin(); it != c["verdicts"].end(); ++it)
            os << " " << it.key() << "=" << (it.value().get<bool>() ? "yes" : "no");
        os << "\n";
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& value, int indent) {
    std::string out;
    dump_rec(value, out, indent, 0);
    if (indent > 0) out += '\n';
    return out;
}

std::string Report::render_json() const { return dump_json(record, 2); }

std::string Report::render_text() const {
    std::ostringstream os;
    const auto& r = record;

    if (r["command"] == "random-audit") {
        os << "random audit: " << r["count"].get<int>() << " frames, seed "
           << r["seed"].get<unsigned long long>() << "\n";
        render_check_table(os, r["max_defects"], "max defects over all frames");
        os << "verdict: " << (r["all_pass"].get<bool>() ? "all identities hold" : "FAILURES")
           << "\n";
        return os.str();
    }

    os << "manifold: " << r["name"].get<std::string>() << "  (command: "
       << r["command"].get<std::string>() << ", mode: " << r["mode"].get<std::string>()
       << ", degree " << r["degree"].get<int>() << ", tol " << format_double(r["tol"].get<double>())
       << ")\n";

    const auto& points = r["points"];
    os << "evaluation points: " << points.size() << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        os << "\npoint " << (i + 1) << ": [";
        const auto& coords = pt["point"];
        for (std::size_t k = 0; k < coords.size(); ++k)
            os << (k ? ", " : "") << format_double(coords[k].get<double>());
        os << "]\n";
        os << "  scalar curvature r = " << scalar_text(pt["scalar_curvature"]) << "\n";
        const auto& ricci = pt["ricci"];
        os << "  ricci rows:";
        for (const auto& row : ricci) {
            os << " [";
            for (std::size_t k = 0; k < row.size(); ++k)
                os << (k ? ", " : "") << scalar_text(row[k]);
            os << "]";
        }
        os << "\n";
        if (pt.contains("soliton") && !pt["soliton"].is_null()) {
            os << "  pointwise soliton: lambda = " << scalar_text(pt["soliton"]["lambda"])
               << ", mu = " << scalar_text(pt["soliton"]["mu"]) << ", residual_max = "
               << scalar_text(pt["soliton"]["residual_max"]) << "\n";
        }
    }
    os << "\n";
    render_check_table(os, r["global"]["checks"], "checks (max defect over points)");
    render_soliton(os, r["global"]["soliton"]);
    render_classification(os, r["global"]["classification"]);
    os << "overall: " << (r["all_pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace framegeo
