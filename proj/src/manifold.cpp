#include "framegeo/manifold.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "framegeo/audit.hpp"

namespace framegeo {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// split on a separator at parenthesis depth zero
std::vector<std::string> split_depth0(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

struct Line {
    int no;
    std::string key;
    std::string value;
};

struct StructureEntry {
    int line;
    int i, j, k;  // zero-based
    Expr value;
};

}  // namespace

ManifoldSpec parse_spec_text(const std::string& text, const std::string& source_name) {
    std::vector<Line> lines;
    {
        std::istringstream iss(text);
        std::string raw;
        int no = 0;
        while (std::getline(iss, raw)) {
            ++no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            raw = trim(raw);
            if (raw.empty()) continue;
            auto colon = raw.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected 'key: value'", no);
            lines.push_back({no, trim(raw.substr(0, colon)), trim(raw.substr(colon + 1))});
        }
    }

    ManifoldSpec spec;
    spec.name = source_name;
    Chart chart;
    bool saw_coords = false;

    for (const auto& ln : lines) {
        if (ln.key == "name") spec.name = ln.value;
        if (ln.key == "coords") {
            if (saw_coords) throw ParseError("duplicate coords line", ln.no);
            saw_coords = true;
            chart.coord_names = split_ws(ln.value);
            if (chart.coord_names.empty()) throw ParseError("coords line is empty", ln.no);
            for (std::size_t i = 0; i < chart.coord_names.size(); ++i)
                for (std::size_t j = i + 1; j < chart.coord_names.size(); ++j)
                    if (chart.coord_names[i] == chart.coord_names[j])
                        throw ParseError("duplicate coordinate name '" + chart.coord_names[i] +
                                             "'",
                                         ln.no);
        }
    }

    bool saw_frame = false, saw_structure = false;
    for (const auto& ln : lines) {
        if (ln.key == "frame") saw_frame = true;
        if (ln.key == "structure") saw_structure = true;
    }
    if (saw_frame && saw_structure)
        throw ValidationError(
            "exactly one of 'frame:' and 'structure:' may be present, not both");
    if (!saw_frame && !saw_structure)
        throw ValidationError("a manifold needs either 'frame:' lines or 'structure:' lines");
    if (saw_frame && !saw_coords)
        throw ValidationError("'frame:' requires a 'coords:' line");
    if (saw_structure && saw_coords)
        throw ValidationError("'structure:' constants take no chart; remove 'coords:'");

    // domain constraints need the chart
    for (const auto& ln : lines) {
        if (ln.key != "domain") continue;
        if (!saw_coords) throw ParseError("'domain:' requires a 'coords:' line", ln.no);
        try {
            chart.constraints.push_back(parse_constraint(ln.value, chart));
        } catch (const SyntaxError& e) {
            throw ParseError(std::string("bad domain constraint: ") + e.what(), ln.no);
        }
    }

    FrameSpec& fr = spec.frame;
    fr.chart = chart;

    auto parse_expr_at = [&](const std::string& s, int line_no) {
        try {
            return parse(s, fr.chart);
        } catch (const SyntaxError& e) {
            throw ParseError(e.what(), line_no);
        }
    };

    if (saw_frame) {
        fr.mode = FrameSpec::Mode::ChartFrame;
        fr.dim = chart.dim();
        std::map<int, std::vector<Expr>> rows;
        for (const auto& ln : lines) {
            if (ln.key != "frame") continue;
            auto eq = ln.value.find('=');
            if (eq == std::string::npos)
                throw ParseError("frame line needs 'e<k> = <expr>, ...'", ln.no);
            std::string lhs = trim(ln.value.substr(0, eq));
            if (lhs.size() < 2 || lhs[0] != 'e')
                throw ParseError("frame vector must be named e1..e" + std::to_string(fr.dim),
                                 ln.no);
            int idx = 0;
            try {
                idx = std::stoi(lhs.substr(1));
            } catch (...) {
                throw ParseError("bad frame vector name '" + lhs + "'", ln.no);
            }
            if (idx < 1 || idx > fr.dim)
                throw ParseError("frame vector index out of range: " + lhs, ln.no);
            if (rows.count(idx - 1))
                throw ParseError("duplicate frame vector " + lhs, ln.no);
            auto parts = split_depth0(ln.value.substr(eq + 1), ',');
            if (static_cast<int>(parts.size()) != fr.dim)
                throw ParseError("frame vector needs exactly " + std::to_string(fr.dim) +
                                     " coefficients",
                                 ln.no);
            std::vector<Expr> row;
            for (const auto& p : parts) row.push_back(parse_expr_at(p, ln.no));
            rows[idx - 1] = std::move(row);
        }
        if (static_cast<int>(rows.size()) != fr.dim)
            throw ValidationError("expected " + std::to_string(fr.dim) +
                                  " frame vectors, found " + std::to_string(rows.size()));
        for (int i = 0; i < fr.dim; ++i) fr.frame.push_back(rows.at(i));
    } else {
        fr.mode = FrameSpec::Mode::StructureConstants;
        std::vector<StructureEntry> entries;
        int dim = 0;
        for (const auto& ln : lines) {
            if (ln.key != "structure") continue;
            auto eq = ln.value.find('=');
            if (eq == std::string::npos)
                throw ParseError("structure line needs 'c i j k = <expr>'", ln.no);
            auto head = split_ws(ln.value.substr(0, eq));
            if (head.size() != 4 || head[0] != "c")
                throw ParseError("structure line needs 'c i j k = <expr>'", ln.no);
            int i = 0, j = 0, k = 0;
            try {
                i = std::stoi(head[1]);
                j = std::stoi(head[2]);
                k = std::stoi(head[3]);
            } catch (...) {
                throw ParseError("bad structure indices", ln.no);
            }
            if (i < 1 || j < 1 || k < 1) throw ParseError("structure indices are 1-based", ln.no);
            dim = std::max({dim, i, j, k});
            entries.push_back({ln.no, i - 1, j - 1, k - 1,
                               parse_expr_at(trim(ln.value.substr(eq + 1)), ln.no)});
        }
        if (dim < 2) throw ValidationError("structure constants need dimension >= 2");
        fr.dim = dim;
        Expr zero = Expr::number("0");
        fr.structure.assign(static_cast<std::size_t>(dim) * dim * dim, zero);
        std::vector<bool> assigned(fr.structure.size(), false);
        auto flat = [dim](int i, int j, int k) {
            return static_cast<std::size_t>((i * dim + j)) * dim + k;
        };
        for (const auto& e : entries) {
            if (e.i == e.j)
                throw ParseError("c with repeated lower indices is identically zero", e.line);
            if (assigned[flat(e.i, e.j, e.k)])
                throw ParseError("duplicate structure constant assignment", e.line);
            fr.structure[flat(e.i, e.j, e.k)] = e.value;
            fr.structure[flat(e.j, e.i, e.k)] = Expr::neg(e.value);
            assigned[flat(e.i, e.j, e.k)] = true;
            assigned[flat(e.j, e.i, e.k)] = true;
        }

        // Jacobi identity, checked once and exactly when possible
        bool jacobi_ok;
        try {
            std::vector<Rational> origin(dim, Rational(0));
            jacobi_ok = structure_constants_satisfy_jacobi<Rational>(fr, origin);
        } catch (const DomainError&) {
            std::vector<double> origin(dim, 0.0);
            jacobi_ok = structure_constants_satisfy_jacobi<double>(fr, origin);
        }
        if (!jacobi_ok)
            throw ValidationError("structure constants violate the Jacobi identity");
    }

    // metric
    bool metric_seen = false;
    std::vector<std::vector<Expr>> metric;
    for (const auto& ln : lines) {
        if (ln.key != "metric") continue;
        if (ln.value == "orthonormal") {
            if (metric_seen)
                throw ParseError("'metric: orthonormal' conflicts with earlier metric lines",
                                 ln.no);
            fr.orthonormal_metric = true;
            metric_seen = true;
            continue;
        }
        auto eq = ln.value.find('=');
        if (eq == std::string::npos)
            throw ParseError("metric line needs 'orthonormal' or 'g<i><j> = <expr>'", ln.no);
        std::string lhs = trim(ln.value.substr(0, eq));
        if (lhs.size() != 3 || lhs[0] != 'g' || !isdigit(lhs[1]) || !isdigit(lhs[2]))
            throw ParseError("metric entry must look like g11, g12, ...", ln.no);
        int i = lhs[1] - '0', j = lhs[2] - '0';
        if (i < 1 || j < 1 || i > fr.dim || j > fr.dim)
            throw ParseError("metric indices out of range", ln.no);
        if (i > j) throw ParseError("metric entries are given with i <= j", ln.no);
        if (metric.empty()) {
            if (metric_seen)
                throw ParseError("metric entries conflict with 'metric: orthonormal'", ln.no);
            metric_seen = true;
            // start from the identity; entries override
            Expr zero = Expr::number("0");
            Expr one = Expr::number("1");
            metric.assign(fr.dim, std::vector<Expr>(fr.dim, zero));
            for (int d = 0; d < fr.dim; ++d) metric[d][d] = one;
        }
        Expr e = parse_expr_at(trim(ln.value.substr(eq + 1)), ln.no);
        metric[i - 1][j - 1] = e;
        metric[j - 1][i - 1] = e;
    }
    if (!metric.empty()) {
        fr.orthonormal_metric = false;
        fr.metric = std::move(metric);
    }

    // contact block
    std::optional<std::vector<Expr>> xi;
    std::optional<std::vector<std::vector<Expr>>> phi;
    for (const auto& ln : lines) {
        if (ln.key == "xi") {
            auto parts = split_depth0(ln.value, ',');
            if (static_cast<int>(parts.size()) != fr.dim)
                throw ParseError("xi needs exactly " + std::to_string(fr.dim) + " components",
                                 ln.no);
            std::vector<Expr> v;
            for (const auto& p : parts) v.push_back(parse_expr_at(p, ln.no));
            xi = std::move(v);
        }
        if (ln.key == "phi") {
            auto rows = split_depth0(ln.value, '/');
            if (static_cast<int>(rows.size()) != fr.dim)
                throw ParseError("phi needs " + std::to_string(fr.dim) + " rows", ln.no);
            std::vector<std::vector<Expr>> m;
            for (const auto& row : rows) {
                std::vector<Expr> r;
                for (const auto& entry : split_ws(row)) r.push_back(parse_expr_at(entry, ln.no));
                if (static_cast<int>(r.size()) != fr.dim)
                    throw ParseError("each phi row needs " + std::to_string(fr.dim) +
                                         " entries",
                                     ln.no);
                m.push_back(std::move(r));
            }
            phi = std::move(m);
        }
    }
    if (xi.has_value() != phi.has_value())
        throw ValidationError("phi and xi must be given together or not at all");
    if (xi) {
        ContactSpec cs;
        cs.phi = std::move(*phi);
        cs.xi = std::move(*xi);
        spec.contact = std::move(cs);
    }

    // explicit points
    for (const auto& ln : lines) {
        if (ln.key != "points") continue;
        for (const auto& chunk : split_depth0(ln.value, ';')) {
            auto comps = split_ws(chunk);
            if (static_cast<int>(comps.size()) != fr.dim)
                throw ParseError("each point needs " + std::to_string(fr.dim) + " coordinates",
                                 ln.no);
            std::vector<double> p;
            for (const auto& c : comps) {
                try {
                    p.push_back(std::stod(c));
                } catch (...) {
                    throw ParseError("bad point coordinate '" + c + "'", ln.no);
                }
            }
            spec.points.push_back(std::move(p));
        }
    }

    for (const auto& ln : lines) {
        static const std::vector<std::string> known{"name",   "coords", "domain",
                                                    "frame",  "metric", "structure",
                                                    "xi",     "phi",    "points"};
        bool ok = false;
        for (const auto& k : known) ok = ok || k == ln.key;
        if (!ok) throw ParseError("unknown key '" + ln.key + "'", ln.no);
    }
    return spec;
}

ManifoldSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string fallback = path;
    auto slash = fallback.find_last_of('/');
    if (slash != std::string::npos) fallback = fallback.substr(slash + 1);
    auto dot = fallback.rfind(".spec");
    if (dot != std::string::npos) fallback = fallback.substr(0, dot);
    return parse_spec_text(buf.str(), fallback);
}

namespace {

const char* kKenmotsuS7 = R"(# Kenmotsu example on the half space z > 0: orthonormal frame
# z d/dx, z d/dy, -z d/dz with the Reeb field e3.
name: kenmotsu-s7
coords: x y z
domain: z > 0
frame: e1 = z, 0, 0
frame: e2 = 0, z, 0
frame: e3 = 0, 0, -z
metric: orthonormal
xi: 0, 0, 1
phi: 0 1 0 / -1 0 0 / 0 0 0
)";

const char* kFlat3 = R"(# Euclidean 3-space in the coordinate frame, with the standard
# rotation phi and xi = d/dz as a Kenmotsu negative control.
name: flat3
coords: x y z
frame: e1 = 1, 0, 0
frame: e2 = 0, 1, 0
frame: e3 = 0, 0, 1
metric: orthonormal
xi: 0, 0, 1
phi: 0 1 0 / -1 0 0 / 0 0 0
)";

const char* kHyperbolic3 = R"(# Hyperbolic space H(-1) as the upper half space with frame
# z d/dx, z d/dy, z d/dz.
name: hyperbolic3
coords: x y z
domain: z > 0
frame: e1 = z, 0, 0
frame: e2 = 0, z, 0
frame: e3 = 0, 0, z
metric: orthonormal
)";

const char* kSphere3 = R"(# The round 3-sphere of curvature +1 from its left-invariant frame:
# [e1,e2] = 2 e3 and cyclic. Not Kenmotsu; used as a negative control.
name: sphere3
structure: c 1 2 3 = 2
structure: c 2 3 1 = 2
structure: c 3 1 2 = 2
metric: orthonormal
xi: 0, 0, 1
phi: 0 1 0 / -1 0 0 / 0 0 0
)";

const char* kKenmotsuWarped = R"(# Warped product dt^2 + e^{2t} g_{S^2}: Kenmotsu with non-constant
# scalar curvature r = 2 exp(-2t) - 6, so it is not Einstein and the
# pointwise soliton constants drift.
name: kenmotsu-warped
coords: x y t
frame: e1 = exp(-t)*(1 + (x^2 + y^2)/4), 0, 0
frame: e2 = 0, exp(-t)*(1 + (x^2 + y^2)/4), 0
frame: e3 = 0, 0, 1
metric: orthonormal
xi: 0, 0, 1
phi: 0 1 0 / -1 0 0 / 0 0 0
)";

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"kenmotsu-s7", "flat3", "hyperbolic3",
                                                "sphere3", "kenmotsu-warped"};
    return names;
}

ManifoldSpec builtin(const std::string& name) {
    const char* text = nullptr;
    if (name == "kenmotsu-s7") text = kKenmotsuS7;
    else if (name == "flat3") text = kFlat3;
    else if (name == "hyperbolic3") text = kHyperbolic3;
    else if (name == "sphere3") text = kSphere3;
    else if (name == "kenmotsu-warped") text = kKenmotsuWarped;
    if (!text) throw UnknownBuiltin("no builtin manifold named '" + name + "'");
    return parse_spec_text(text, name);
}

namespace {

bool expr_eq(const Expr& a, const Expr& b) { return a.structurally_equal(b); }

bool expr_table_eq(const std::vector<std::vector<Expr>>& a,
                   const std::vector<std::vector<Expr>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!expr_eq(a[i][j], b[i][j])) return false;
    }
    return true;
}

}  // namespace

bool spec_equal(const ManifoldSpec& a, const ManifoldSpec& b) {
    if (a.name != b.name) return false;
    const FrameSpec& fa = a.frame;
    const FrameSpec& fb = b.frame;
    if (fa.mode != fb.mode || fa.dim != fb.dim) return false;
    if (fa.chart.coord_names != fb.chart.coord_names) return false;
    if (fa.chart.constraints.size() != fb.chart.constraints.size()) return false;
    for (std::size_t i = 0; i < fa.chart.constraints.size(); ++i) {
        const auto& ca = fa.chart.constraints[i];
        const auto& cb = fb.chart.constraints[i];
        if (ca.greater != cb.greater || !expr_eq(ca.lhs, cb.lhs) || !expr_eq(ca.rhs, cb.rhs))
            return false;
    }
    if (!expr_table_eq(fa.frame, fb.frame)) return false;
    if (fa.structure.size() != fb.structure.size()) return false;
    for (std::size_t i = 0; i < fa.structure.size(); ++i)
        if (!expr_eq(fa.structure[i], fb.structure[i])) return false;
    if (fa.orthonormal_metric != fb.orthonormal_metric) return false;
    if (!fa.orthonormal_metric && !expr_table_eq(fa.metric, fb.metric)) return false;
    if (a.contact.has_value() != b.contact.has_value()) return false;
    if (a.contact) {
        if (!expr_table_eq(a.contact->phi, b.contact->phi)) return false;
        if (a.contact->xi.size() != b.contact->xi.size()) return false;
        for (std::size_t i = 0; i < a.contact->xi.size(); ++i)
            if (!expr_eq(a.contact->xi[i], b.contact->xi[i])) return false;
    }
    return a.points == b.points;
}

std::vector<std::vector<double>> sample_points(const ManifoldSpec& spec, int count,
                                               unsigned long long seed) {
    if (!spec.points.empty()) return spec.points;
    if (count < 1) throw Error("sample count must be at least 1");
    const int dim = spec.frame.dim;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> points;
    long long rejections = 0;
    const long long budget = 1000LL * count;
    while (static_cast<int>(points.size()) < count) {
        std::vector<double> p(dim);
        for (int i = 0; i < dim; ++i) p[i] = uniform_range(rng, -3.0, 3.0);
        if (point_in_domain(spec.frame.chart, p)) {
            points.push_back(std::move(p));
        } else if (++rejections > budget) {
            throw SamplingExhausted("rejected " + std::to_string(rejections) +
                                    " candidate points; the domain looks empty");
        }
    }
    return points;
}

}  // namespace framegeo
