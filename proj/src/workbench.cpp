#include "framegeo/workbench.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <thread>

#include "framegeo/audit.hpp"
#include "framegeo/classify.hpp"
#include "framegeo/identities.hpp"
#include "framegeo/soliton.hpp"

namespace framegeo {

namespace {

using nlohmann::json;

// Chunked fork/join over an index range; exceptions surface in index
// order. Point evaluations are pure, so this is safe by construction.
template <class T, class F>
std::vector<T> parallel_map(int n, F fn) {
    std::vector<T> out;
    out.reserve(n);
    unsigned hw = std::thread::hardware_concurrency();
    if (n <= 1 || hw <= 1) {
        for (int i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }
    int chunks = std::min<int>(n, static_cast<int>(hw));
    std::vector<std::future<std::vector<T>>> futures;
    futures.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        int lo = static_cast<int>(static_cast<long long>(n) * c / chunks);
        int hi = static_cast<int>(static_cast<long long>(n) * (c + 1) / chunks);
        futures.push_back(std::async(std::launch::async, [lo, hi, &fn] {
            std::vector<T> part;
            part.reserve(hi - lo);
            for (int i = lo; i < hi; ++i) part.push_back(fn(i));
            return part;
        }));
    }
    for (auto& f : futures)
        for (auto& item : f.get()) out.push_back(std::move(item));
    return out;
}

template <class S>
json sv(const S& x) {
    if constexpr (ScalarOps<S>::exact) return ScalarOps<S>::to_string(x);
    else return ScalarOps<S>::to_double(x);
}

template <class S>
std::vector<S> to_scalar_point(const std::vector<double>& p) {
    std::vector<S> out;
    out.reserve(p.size());
    for (double x : p) {
        if constexpr (ScalarOps<S>::exact) out.push_back(Rational::from_double(x));
        else out.push_back(x);
    }
    return out;
}

// Everything computed at one evaluation point.
template <class S>
struct PointOutcome {
    json record;
    std::map<std::string, S> checks;
    std::optional<SolitonPointFit<S>> fit;
    std::map<std::string, S> classification;
    std::optional<S> kappa;
    bool nabla_s_prereq_failed = false;
};

struct Wants {
    bool soliton = false;
    bool classification = false;
};

template <class S>
PointOutcome<S> analyze_point(const ManifoldSpec& spec, const std::vector<double>& point_d,
                              const RunOptions& opt, const Wants& wants) {
    PointOutcome<S> out;
    std::vector<S> p = to_scalar_point<S>(point_d);
    auto fd = evaluate_frame<S>(spec.frame, p, opt.degree);
    auto pack = curvature_pack(fd);
    const int n = fd.dim;

    // geometry identity suite
    auto geo = identity_suite(pack, fd);
    out.checks["torsion"] = geo.torsion;
    out.checks["metric_compatibility"] = geo.metric_compatibility;
    out.checks["antisymmetry_first_pair"] = geo.antisymmetry_first_pair;
    out.checks["antisymmetry_last_pair"] = geo.antisymmetry_last_pair;
    out.checks["pair_symmetry"] = geo.pair_symmetry;
    out.checks["bianchi_first"] = geo.bianchi_first;
    out.checks["bianchi_second_contracted"] = geo.bianchi_second_contracted;
    if (geo.has_decomposition_3d) out.checks["decomposition_3d"] = geo.decomposition_3d;

    std::optional<ContactStructure<S>> cs;
    if (spec.contact) {
        cs = evaluate_contact(*spec.contact, fd);
        auto ac = check_almost_contact(*cs, fd);
        out.checks["almost_contact_phi_square"] = ac.phi_square;
        out.checks["almost_contact_eta_unit"] = ac.eta_unit;
        out.checks["almost_contact_phi_xi"] = ac.phi_xi;
        out.checks["almost_contact_eta_phi"] = ac.eta_phi;
        out.checks["almost_contact_compatibility"] = ac.compatibility;
        auto km = check_kenmotsu(*cs, fd, pack);
        out.checks["kenmotsu_nabla_phi"] = km.nabla_phi;
        out.checks["kenmotsu_nabla_xi"] = km.nabla_xi;
        out.checks["kenmotsu_nabla_eta"] = km.nabla_eta;
        auto kc = check_kenmotsu_curvature(*cs, pack, fd);
        out.checks["kenmotsu_r_xy_xi"] = kc.r_xy_xi;
        out.checks["kenmotsu_r_xi_x_y"] = kc.r_xi_x_y;
        out.checks["kenmotsu_r_xi_x_xi"] = kc.r_xi_x_xi;
        out.checks["kenmotsu_ricci_xi"] = kc.ricci_xi;
        if (n == 3) {
            auto cf = check_3d_closed_forms(*cs, pack, fd);
            out.checks["kenmotsu_curvature_closed_form"] = cf.curvature_closed_form;
            out.checks["kenmotsu_ricci_closed_form"] = cf.ricci_closed_form;
        }
    }

    // soliton fit
    if (wants.soliton && cs) {
        std::vector<Jet<S>> v;
        if (opt.potential == "xi") {
            v = cs->xi;
        } else {
            for (const auto& part : [&] {
                     std::vector<std::string> parts;
                     std::string cur;
                     for (char c : opt.potential) {
                         if (c == ',') {
                             parts.push_back(cur);
                             cur.clear();
                         } else cur += c;
                     }
                     parts.push_back(cur);
                     return parts;
                 }()) {
                v.push_back(parse(part, spec.frame.chart).eval_jet<S>(p, opt.degree));
            }
            if (static_cast<int>(v.size()) != n)
                throw Error("--potential needs " + std::to_string(n) + " components");
        }
        out.fit = fit_soliton_point(v, *cs, fd, pack,
                                    opt.mu_zero ? MuMode::FrozenZero : MuMode::Free);
    }

    // classification
    if (wants.classification) {
        out.classification["codazzi_defect"] = codazzi_defect(pack, fd);
        out.classification["cyclic_defect"] = cyclic_parallel_defect(pack, fd);
        out.classification["rr_qsr_defect"] = rr_qsr_defect(pack, fd);
        out.classification["nabla_q_paths_defect"] = nabla_q_paths_disagreement(pack, fd);
        if (cs) {
            out.classification["phi_ricci_defect"] = phi_ricci_defect(pack, *cs, fd);
            if (out.fit) {
                try {
                    out.classification["nabla_s_closed_form_defect"] =
                        nabla_s_closed_form_check(pack, *cs, fd, *out.fit, opt.tol);
                } catch (const SolitonPrereqFailed&) {
                    out.nabla_s_prereq_failed = true;
                }
            }
        }
        if (n == 3) {
            auto sf = space_form_detect(pack, fd);
            out.classification["space_form_defect"] = sf.defect;
            out.classification["einstein_defect"] = sf.einstein_defect;
            out.kappa = sf.kappa;
        }
    }

    // per-point record
    json rec;
    rec["point"] = point_d;
    {
        json c3 = json::array();
        for (int i = 0; i < n; ++i) {
            json ji = json::array();
            for (int j = 0; j < n; ++j) {
                json jj = json::array();
                for (int k = 0; k < n; ++k) jj.push_back(sv(fd.structure(i, j, k).value()));
                ji.push_back(jj);
            }
            c3.push_back(ji);
        }
        rec["structure_functions"] = c3;

        json g3 = json::array();
        for (int i = 0; i < n; ++i) {
            json ji = json::array();
            for (int j = 0; j < n; ++j) {
                json jj = json::array();
                for (int k = 0; k < n; ++k) jj.push_back(sv(pack.Gamma(i, j, k).value()));
                ji.push_back(jj);
            }
            g3.push_back(ji);
        }
        rec["gamma"] = g3;

        json r4 = json::array();
        for (int i = 0; i < n; ++i) {
            json ji = json::array();
            for (int j = 0; j < n; ++j) {
                json jj = json::array();
                for (int k = 0; k < n; ++k) {
                    json jk = json::array();
                    for (int l = 0; l < n; ++l) jk.push_back(sv(pack.R(i, j, k, l).value()));
                    jj.push_back(jk);
                }
                ji.push_back(jj);
            }
            r4.push_back(ji);
        }
        rec["riemann"] = r4;

        json s2 = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(sv(pack.ricci(i, j).value()));
            s2.push_back(row);
        }
        rec["ricci"] = s2;
        rec["scalar_curvature"] = sv(pack.scalar.value());
    }
    {
        json checks;
        for (const auto& [name, defect] : out.checks) checks[name] = sv(defect);
        rec["checks"] = checks;
    }
    if (out.fit) {
        json s;
        s["lambda"] = sv(out.fit->lambda);
        s["mu"] = sv(out.fit->mu);
        s["residual_max"] = sv(out.fit->residual_max);
        s["residual_rms"] = std::sqrt(ScalarOps<S>::to_double(out.fit->residual_rms2));
        rec["soliton"] = s;
    } else {
        rec["soliton"] = nullptr;
    }
    if (!out.classification.empty()) {
        json c;
        for (const auto& [name, defect] : out.classification) c[name] = sv(defect);
        if (out.kappa) c["space_form_kappa"] = sv(*out.kappa);
        if (out.nabla_s_prereq_failed) c["nabla_s_closed_form_defect"] = nullptr;
        rec["classification"] = c;
    } else {
        rec["classification"] = nullptr;
    }
    out.record = std::move(rec);
    return out;
}

template <class S>
RunResult run_typed(const RunOptions& opt, const ManifoldSpec& spec) {
    Wants wants;
    wants.soliton = opt.command == "soliton" || opt.command == "classify" ||
                    opt.command == "report";
    wants.classification = opt.command == "classify" || opt.command == "report";
    if (opt.command == "soliton" && !spec.contact)
        throw ValidationError("'" + spec.name +
                              "' has no contact block; the soliton fit needs xi");

    auto points = sample_points(spec, opt.points, opt.seed);
    auto outcomes = parallel_map<PointOutcome<S>>(
        static_cast<int>(points.size()),
        [&](int i) { return analyze_point<S>(spec, points[i], opt, wants); });

    json record;
    record["command"] = opt.command;
    record["name"] = spec.name;
    record["mode"] = opt.mode;
    record["degree"] = opt.degree;
    record["tol"] = opt.tol;
    record["seed"] = opt.seed;

    json point_records = json::array();
    for (auto& oc : outcomes) point_records.push_back(oc.record);
    record["points"] = point_records;

    // aggregate checks: max over points, verdict at tol
    std::map<std::string, S> max_checks;
    for (const auto& oc : outcomes)
        for (const auto& [name, defect] : oc.checks) {
            auto it = max_checks.find(name);
            if (it == max_checks.end()) max_checks.emplace(name, defect);
            else if (it->second < defect) it->second = defect;
        }
    bool structural_pass = true;
    json global_checks;
    for (const auto& [name, defect] : max_checks) {
        bool pass = ScalarOps<S>::to_double(defect) <= opt.tol;
        structural_pass = structural_pass && pass;
        global_checks[name] = json{{"defect", sv(defect)}, {"pass", pass}};
    }

    json global;
    global["checks"] = global_checks;

    // soliton aggregate
    bool soliton_pass = true;
    if (wants.soliton && spec.contact) {
        std::vector<SolitonPointFit<S>> fits;
        for (auto& oc : outcomes)
            if (oc.fit) fits.push_back(*oc.fit);
        auto agg = combine_soliton_fits(std::move(fits),
                                        opt.mu_zero ? MuMode::FrozenZero : MuMode::Free);
        bool residual_ok = ScalarOps<S>::to_double(agg.residual_max) <= opt.tol;
        bool spread_ok = ScalarOps<S>::to_double(agg.spread) <= opt.tol;
        soliton_pass = residual_ok && spread_ok;
        json s;
        s["potential"] = opt.potential;
        s["mu_frozen_zero"] = opt.mu_zero;
        s["lambda"] = sv(agg.lambda);
        s["mu"] = sv(agg.mu);
        s["residual_max"] = sv(agg.residual_max);
        s["residual_rms"] = std::sqrt(ScalarOps<S>::to_double(agg.residual_rms2));
        s["spread"] = sv(agg.spread);
        s["is_soliton"] = soliton_pass;
        std::string cls = soliton_classification(ScalarOps<S>::to_double(agg.lambda),
                                                 ScalarOps<S>::to_double(agg.mu), opt.tol);
        if (!soliton_pass && !spread_ok && residual_ok)
            cls += " (pointwise only, not a global soliton)";
        s["classification"] = cls;
        json per = json::array();
        for (const auto& f : agg.per_point) {
            json e;
            e["point"] = json::array();
            for (const auto& x : f.point) e["point"].push_back(ScalarOps<S>::to_double(x));
            e["lambda"] = sv(f.lambda);
            e["mu"] = sv(f.mu);
            e["residual_max"] = sv(f.residual_max);
            per.push_back(e);
        }
        s["per_point"] = per;
        global["soliton"] = s;
    } else {
        global["soliton"] = nullptr;
    }

    // classification aggregate
    if (wants.classification) {
        std::map<std::string, S> max_cls;
        bool any_prereq_failed = false;
        bool have_nabla_s = false;
        for (const auto& oc : outcomes) {
            any_prereq_failed = any_prereq_failed || oc.nabla_s_prereq_failed;
            for (const auto& [name, defect] : oc.classification) {
                have_nabla_s = have_nabla_s || name == "nabla_s_closed_form_defect";
                auto it = max_cls.find(name);
                if (it == max_cls.end()) max_cls.emplace(name, defect);
                else if (it->second < defect) it->second = defect;
            }
        }
        json c;
        for (const auto& [name, defect] : max_cls) c[name] = sv(defect);
        if (any_prereq_failed || !have_nabla_s) c["nabla_s_closed_form_defect"] = nullptr;

        auto defect_of = [&](const char* name) {
            auto it = max_cls.find(name);
            return it == max_cls.end() ? 0.0 : ScalarOps<S>::to_double(it->second);
        };
        json verdicts;
        verdicts["codazzi"] = max_cls.count("codazzi_defect") != 0 &&
                              defect_of("codazzi_defect") <= opt.tol;
        verdicts["cyclic_parallel"] = max_cls.count("cyclic_defect") != 0 &&
                                      defect_of("cyclic_defect") <= opt.tol;
        verdicts["phi_ricci_symmetric"] = max_cls.count("phi_ricci_defect") != 0 &&
                                          defect_of("phi_ricci_defect") <= opt.tol;
        verdicts["rr_qsr"] = max_cls.count("rr_qsr_defect") != 0 &&
                             defect_of("rr_qsr_defect") <= opt.tol;
        verdicts["einstein"] = max_cls.count("einstein_defect") != 0 &&
                               defect_of("einstein_defect") <= opt.tol;

        // space form: kappa must agree across points and match the model
        if (spec.frame.dim == 3) {
            double worst_kappa_dev = 0.0;
            double kappa_first = 0.0;
            bool first = true;
            for (const auto& oc : outcomes) {
                if (!oc.kappa) continue;
                double k = ScalarOps<S>::to_double(*oc.kappa);
                if (first) kappa_first = k;
                first = false;
                worst_kappa_dev = std::max(worst_kappa_dev, std::abs(k + 1.0));
            }
            bool model_ok = defect_of("space_form_defect") <= opt.tol;
            std::string verdict = !model_ok ? "none"
                                  : (worst_kappa_dev <= opt.tol ? "H(-1)" : "constant-curvature");
            json sf;
            sf["kappa"] = kappa_first;
            sf["defect"] = c.contains("space_form_defect") ? c["space_form_defect"] : json(nullptr);
            sf["verdict"] = verdict;
            c["space_form"] = sf;
            verdicts["space_form_hyperbolic"] = verdict == "H(-1)";
        }
        c["verdicts"] = verdicts;
        global["classification"] = c;
    } else {
        global["classification"] = nullptr;
    }

    record["global"] = global;

    bool all_pass = true;
    if (opt.command == "soliton") all_pass = soliton_pass;
    else all_pass = structural_pass;
    record["all_pass"] = all_pass;
    record["exit_code"] = all_pass ? 0 : 1;

    RunResult result;
    result.report.record = std::move(record);
    result.exit_code = all_pass ? 0 : 1;
    return result;
}

RunResult run_audit(const RunOptions& opt) {
    if (opt.audit_count < 1) throw Error("--count must be at least 1");
    std::mt19937_64 rng(opt.audit_seed);
    std::vector<AuditCase> cases;
    cases.reserve(opt.audit_count);
    for (int i = 0; i < opt.audit_count; ++i) cases.push_back(make_audit_case(rng));

    struct AuditOutcome {
        GeometryDefects<double> geo;
        double rr_qsr;
    };
    auto outcomes = parallel_map<AuditOutcome>(opt.audit_count, [&](int i) {
        auto fd = evaluate_frame<double>(cases[i].spec, cases[i].point, opt.degree);
        auto pack = curvature_pack(fd);
        return AuditOutcome{identity_suite(pack, fd), rr_qsr_defect(pack, fd)};
    });

    std::map<std::string, std::pair<double, double>> table;  // name -> (max defect, threshold)
    auto fold = [&](const char* name, double value, double threshold) {
        auto& cell = table[name];
        cell.first = std::max(cell.first, value);
        cell.second = threshold;
    };
    for (const auto& oc : outcomes) {
        fold("torsion", oc.geo.torsion, 1e-9);
        fold("metric_compatibility", oc.geo.metric_compatibility, 1e-9);
        fold("antisymmetry_first_pair", oc.geo.antisymmetry_first_pair, 1e-9);
        fold("antisymmetry_last_pair", oc.geo.antisymmetry_last_pair, 1e-9);
        fold("pair_symmetry", oc.geo.pair_symmetry, 1e-9);
        fold("bianchi_first", oc.geo.bianchi_first, 1e-9);
        fold("bianchi_second_contracted", oc.geo.bianchi_second_contracted, 1e-6);
        fold("decomposition_3d", oc.geo.decomposition_3d, 1e-7);
        fold("rr_qsr", oc.rr_qsr, 1e-7);
    }

    json record;
    record["command"] = "random-audit";
    record["count"] = opt.audit_count;
    record["seed"] = opt.audit_seed;
    record["degree"] = opt.degree;
    bool all_pass = true;
    json defects;
    for (const auto& [name, cell] : table) {
        bool pass = cell.first <= cell.second;
        all_pass = all_pass && pass;
        defects[name] = json{{"defect", cell.first}, {"threshold", cell.second}, {"pass", pass}};
    }
    record["max_defects"] = defects;
    record["all_pass"] = all_pass;
    record["exit_code"] = all_pass ? 0 : 1;

    RunResult result;
    result.report.record = std::move(record);
    result.exit_code = all_pass ? 0 : 1;
    return result;
}

}  // namespace

ManifoldSpec resolve_target(const std::string& target) {
    for (const auto& name : builtin_names())
        if (name == target) return builtin(target);
    std::ifstream probe(target);
    if (!probe)
        throw UnknownBuiltin("'" + target +
                             "' is neither a builtin manifold nor a readable spec file");
    return load_spec(target);
}

RunResult run(const RunOptions& options) {
    if (options.command == "random-audit") return run_audit(options);
    if (options.command != "check" && options.command != "soliton" &&
        options.command != "classify" && options.command != "report")
        throw Error("unknown command '" + options.command + "'");
    if (options.degree < 2) throw Error("--degree must be at least 2");
    if (options.mode != "float" && options.mode != "rational")
        throw Error("--mode must be 'float' or 'rational'");
    ManifoldSpec spec = resolve_target(options.target);
    if (options.mode == "rational") return run_typed<Rational>(options, spec);
    return run_typed<double>(options, spec);
}

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        RunResult result = run(options);
        out << (options.json ? result.report.render_json() : result.report.render_text());
        return result.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace framegeo
