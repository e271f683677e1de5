#ifndef FRAMEGEO_REPORT_HPP
#define FRAMEGEO_REPORT_HPP

#include <string>

#include <json.hpp>

namespace framegeo {

/// One structured record per run; both renderings read the same record
/// so they cannot drift. Doubles serialize with 17 significant digits,
/// which round-trips IEEE values exactly; exact rationals are "p/q"
/// strings.
struct Report {
    nlohmann::json record;

    std::string render_json() const;
    std::string render_text() const;
};

/// Deterministic JSON writer: object keys in sorted order (nlohmann's
/// default storage), doubles through "%.17g".
std::string dump_json(const nlohmann::json& value, int indent = 0);

}  // namespace framegeo

#endif
