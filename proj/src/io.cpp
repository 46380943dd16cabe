#include "equinorm/io.hpp"

#include <chrono>
#include <sstream>

namespace equinorm {

namespace {

Rat rat_from_json_entry(const Json& j) {
    if (j.contains("coeff"))
        return rat_parse(j.at("coeff").get<std::string>());
    return Rat(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

} // namespace

Json pvf_to_json(const PolyVectorField& f) {
    Json terms = Json::array();
    for (const auto& [key, c] : f.terms()) {
        Json t;
        t["component"] = key.comp + 1;
        t["exponents"] = key.mono.exps;
        t["num"] = rat_num_str(c);
        t["den"] = rat_den_str(c);
        terms.push_back(std::move(t));
    }
    return Json{{"dim", f.dim()}, {"terms", std::move(terms)}};
}

PolyVectorField pvf_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    if (dim <= 0)
        throw ValidationError("field dim must be positive");
    PolyVectorField f(dim);
    for (const Json& t : j.at("terms")) {
        const int comp = t.at("component").get<int>();
        if (comp < 1 || comp > dim)
            throw ValidationError("term component out of range 1..dim");
        Monomial m{t.at("exponents").get<std::vector<int>>()};
        if (static_cast<int>(m.exps.size()) != dim)
            throw ValidationError("term exponent list has wrong length");
        for (int e : m.exps)
            if (e < 0)
                throw ValidationError("negative exponent");
        f.add_term(comp - 1, std::move(m), rat_from_json_entry(t));
    }
    return f;
}

Json rep_to_json(const MatrixRep& rep) {
    Json gens = Json::array();
    for (const RatMatrix& h : rep.generators) {
        Json flat = Json::array();
        for (const Rat& v : h.flat())
            flat.push_back(rat_str(v));
        gens.push_back(std::move(flat));
    }
    return Json{{"dim", rep.dim}, {"name", rep.name}, {"generators", std::move(gens)}};
}

MatrixRep rep_from_json(const Json& j) {
    MatrixRep rep;
    rep.dim = j.at("dim").get<int>();
    if (rep.dim <= 0)
        throw ValidationError("representation dim must be positive");
    rep.name = j.value("name", std::string("custom"));
    for (const Json& g : j.at("generators")) {
        if (static_cast<int>(g.size()) != rep.dim * rep.dim)
            throw ValidationError("generator must be a row-major dim*dim list");
        RatMatrix m(rep.dim, rep.dim);
        int idx = 0;
        for (const Json& v : g) {
            m.flat()[static_cast<std::size_t>(idx++)] = rat_parse(v.get<std::string>());
        }
        rep.generators.push_back(std::move(m));
    }
    return rep;
}

Json qf_to_json(const QuasilinearField& q) {
    Json coeffs = Json::array();
    for (const auto& [key, c] : q.coeffs()) {
        Json e;
        e["p"] = key.first;
        e["k"] = key.second;
        e["num"] = rat_num_str(c);
        e["den"] = rat_den_str(c);
        coeffs.push_back(std::move(e));
    }
    return Json{{"group", q.basis().group_name}, {"coeffs", std::move(coeffs)}};
}

QuasilinearField qf_from_json(const Json& j, std::shared_ptr<const CentralizerBasis> basis) {
    QuasilinearField q(std::move(basis));
    for (const Json& e : j.at("coeffs")) {
        const int p = e.at("p").get<int>();
        const int k = e.at("k").get<int>();
        if (p < 0 || p > q.basis().s())
            throw ValidationError("coefficient channel out of range");
        if (k < 0)
            throw ValidationError("negative power of r^2");
        q.add_coeff(p, k, rat_from_json_entry(e));
    }
    return q;
}

Json spectrum_to_json(const SpectrumInfo& spec) {
    Json eigs = Json::array();
    for (const auto& [re, im] : spec.eigenvalues())
        eigs.push_back(Json::array({re, im}));
    return Json{
        {"beta0", rat_str(spec.beta0)},
        {"omega_sq", rat_str(spec.omega_sq)},
        {"eigenvalues", std::move(eigs)},
    };
}

Json diagnostics_to_json(const ConvergenceVerdict& v) {
    Json j{
        {"poincare_domain", v.poincare_domain},
        {"hyperbolic", v.hyperbolic},
        {"condition_a", v.condition_a},
        {"verdict", to_string(v.verdict)},
    };
    if (v.arithmetic_assumption)
        j["assumptions"] = Json::array({"arithmetic condition on the spectrum assumed to hold"});
    return j;
}

Json nf_result_to_json(const NormalFormResult& result) {
    Json gens = Json::array();
    for (const auto& [grade, h] : result.generators) {
        Json g;
        g["grade"] = grade;
        g["field"] = qf_to_json(h);
        gens.push_back(std::move(g));
    }
    return Json{
        {"case", to_string(result.case_tag)},
        {"order", result.order},
        {"spectrum", spectrum_to_json(result.spectrum)},
        {"normal_form", qf_to_json(result.nf)},
        {"generators", std::move(gens)},
        {"diagnostics", diagnostics_to_json(result.diagnostics)},
    };
}

Json renorm_to_json(const RenormalizedForm& form) {
    Json survivors = Json::array();
    for (const SlotValue& s : form.survivors) {
        Json e;
        e["p"] = s.p;
        e["k"] = s.k;
        e["num"] = rat_num_str(s.value);
        e["den"] = rat_den_str(s.value);
        survivors.push_back(std::move(e));
    }
    Json gens = Json::array();
    for (const QuasilinearField& g : form.generators)
        gens.push_back(qf_to_json(g));
    Json nu = Json::array();
    for (const auto& n : form.nu)
        nu.push_back(n ? Json(*n) : Json(nullptr));
    Json j{
        {"case", to_string(form.case_tag)},
        {"mu", form.mu},
        {"nu", std::move(nu)},
        {"order", form.order},
        {"form", qf_to_json(form.form)},
        {"survivors", std::move(survivors)},
        {"generators", std::move(gens)},
        {"converged", form.converged},
    };
    if (form.j_direction) {
        Json dir = Json::array();
        for (const Rat& c : *form.j_direction)
            dir.push_back(rat_str(c));
        j["j_direction"] = std::move(dir);
    }
    if (!form.unreduced.empty()) {
        Json un = Json::array();
        for (const auto& [p, k] : form.unreduced)
            un.push_back(Json{{"p", p}, {"k", k}});
        j["unreduced"] = std::move(un);
    }
    return j;
}

Json flow_report_to_json(const FlowCheckReport& report) {
    Json j{
        {"radii", report.radii},
        {"errors", report.errors},
        {"blowup", report.blowup},
        {"time_horizon", report.time_horizon},
        {"steps", report.steps},
    };
    j["fitted_order"] = report.fitted_order ? Json(*report.fitted_order) : Json(nullptr);
    return j;
}

SystemSpec parse_system_spec(const Json& j) {
    SystemSpec spec;
    if (!j.contains("group"))
        throw ValidationError("spec is missing \"group\"");
    if (j.at("group").is_string()) {
        spec.group_name = j.at("group").get<std::string>();
        if (!is_builtin_rep_name(spec.group_name))
            throw ValidationError("unknown builtin group \"" + spec.group_name +
                                  "\" (expected so2, so3 or su2, or an inline representation)");
    } else {
        spec.custom_rep = rep_from_json(j.at("group"));
    }

    if (!j.contains("field"))
        throw ValidationError("spec is missing \"field\"");
    const Json& field = j.at("field");
    const bool has_q = field.contains("quasilinear");
    const bool has_raw = field.contains("raw");
    if (has_q == has_raw)
        throw ValidationError("field must carry exactly one of \"quasilinear\" or \"raw\"");
    if (has_q) {
        spec.has_quasilinear = true;
        for (const Json& e : field.at("quasilinear")) {
            const int p = e.at("p").get<int>();
            const int k = e.at("k").get<int>();
            if (p < 0 || k < 0)
                throw ValidationError("quasilinear coefficient indices must be non-negative");
            spec.quasilinear.emplace_back(p, k, rat_from_json_entry(e));
        }
    } else {
        spec.raw_field = pvf_from_json(field.at("raw"));
    }

    spec.order = j.value("order", 6);
    if (spec.order < 1)
        throw ValidationError("order must be >= 1");
    spec.renormalize = j.value("renormalize", false);
    spec.flow_check = j.value("flow_check", false);
    spec.out_path = j.value("out", std::string());
    return spec;
}

namespace {

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

AnalysisOutcome analyze_system(const SystemSpec& spec) {
    AnalysisOutcome out;
    Json& report = out.report;
    report["schema"] = "1";
    report["generated_at"] = timestamp_utc();
    std::ostringstream text;

    try {
        MatrixRep rep = spec.custom_rep ? *spec.custom_rep : builtin_rep(spec.group_name);
        const bool builtin = !spec.custom_rep;
        validate_rep(rep);
        report["group"] = rep.name;
        Json warnings = Json::array();
        if (!builtin)
            warnings.push_back("user-supplied representation: transitivity on the sphere is not "
                               "verified, quasilinearity of all equivariant fields is assumed");

        auto basis = std::make_shared<const CentralizerBasis>(compute_centralizer(rep));
        report["schur_type"] = to_string(basis->schur_type);
        report["centralizer_dim"] = basis->s() + 1;
        text << "group " << rep.name << ": commutant dimension " << basis->s() + 1 << " ("
             << to_string(basis->schur_type) << ")\n";

        QuasilinearField q(basis);
        if (spec.raw_field) {
            const EquivarianceReport eq = check_equivariance(*spec.raw_field, rep);
            Json eqj;
            eqj["ok"] = eq.ok;
            if (!eq.ok) {
                Json viols = Json::array();
                for (const auto& [gen, residual] : eq.violations)
                    viols.push_back(Json{{"generator", gen + 1}, {"residual", pvf_to_json(residual)}});
                eqj["violations"] = std::move(viols);
                report["equivariance"] = std::move(eqj);
                report["warnings"] = std::move(warnings);
                out.exit_code = 2;
                text << "field is not equivariant: bracket with generator "
                     << eq.violations.front().first + 1 << " is nonzero\n";
                out.summary = text.str();
                return out;
            }
            report["equivariance"] = std::move(eqj);
            try {
                q = decompose(*spec.raw_field, basis);
            } catch (const NotQuasilinearError& err) {
                report["error"] = std::string("not quasilinear: ") + err.what();
                report["residual"] = pvf_to_json(err.residual);
                report["warnings"] = std::move(warnings);
                out.exit_code = 2;
                text << "field is outside the quasilinear module: " << err.what() << "\n";
                out.summary = text.str();
                return out;
            }
        } else {
            for (const auto& [p, k, c] : spec.quasilinear) {
                if (p > basis->s())
                    throw ValidationError("coefficient channel exceeds commutant dimension");
                q.add_coeff(p, k, c);
            }
            report["equivariance"] = Json{{"ok", true}};
        }
        report["field"] = qf_to_json(q);
        report["warnings"] = std::move(warnings);

        auto [tag, spectrum] = classify_case(q);
        report["case"] = to_string(tag);
        report["spectrum"] = spectrum_to_json(spectrum);
        text << "case " << to_string(tag) << ", beta0 = " << rat_str(spectrum.beta0)
             << ", omega^2 = " << rat_str(spectrum.omega_sq) << "\n";

        std::optional<NormalFormResult> nfr;
        if (tag != CaseTag::ZERO_LINEAR) {
            nfr = normalize(q, spec.order);
            report["normal_form"] = nf_result_to_json(*nfr);
            text << "normal form computed to order " << spec.order << " ("
                 << nfr->generators.size() << " generators), verdict "
                 << to_string(nfr->diagnostics.verdict) << "\n";
        } else {
            report["normal_form"] = nullptr;
            text << "zero linear part: standard normalization does not apply\n";
        }

        if (spec.renormalize) {
            try {
                if (tag == CaseTag::ZERO_LINEAR) {
                    const RenormalizedForm rf = renormalize_zero_linear(q, spec.order);
                    report["renormalized"] = renorm_to_json(rf);
                    text << "renormalized form " << to_string(rf.case_tag) << ", mu = " << rf.mu << "\n";
                } else if (tag == CaseTag::B3 || tag == CaseTag::C3) {
                    const RenormalizedForm rf = renormalize_lemma2(*nfr, spec.order);
                    report["renormalized"] = renorm_to_json(rf);
                    text << "renormalized form " << to_string(rf.case_tag) << ", mu = " << rf.mu << "\n";
                } else {
                    report["renormalized"] = nullptr;
                    report["notes"] = Json::array(
                        {"renormalization not applicable: the normal form is already linear"});
                    text << "renormalization skipped: normal form already linear\n";
                }
            } catch (const IneffectiveError& err) {
                report["renormalized"] = nullptr;
                report["error"] = err.what();
                out.exit_code = 3;
                text << "renormalization ineffective: " << err.what() << "\n";
                out.summary = text.str();
                return out;
            }
        }

        if (spec.flow_check) {
            if (nfr) {
                const std::vector<double> radii{0.1, 0.05, 0.025, 0.0125, 0.00625};
                const PolyVectorField original = expand(q);
                const FlowCheckReport fr = flow_check(original, *nfr, radii, 1.0);
                report["flow_check"] = flow_report_to_json(fr);
                text << "flow check: fitted order "
                     << (fr.fitted_order ? std::to_string(*fr.fitted_order) : std::string("n/a (exact)"))
                     << "\n";
            } else {
                report["flow_check"] = nullptr;
                text << "flow check skipped (no normal form)\n";
            }
        }
    } catch (const ValidationError& err) {
        report["error"] = err.what();
        out.exit_code = 2;
        text << "validation error: " << err.what() << "\n";
    } catch (const UnknownRepError& err) {
        report["error"] = err.what();
        out.exit_code = 2;
        text << "validation error: " << err.what() << "\n";
    } catch (const NotIrreducibleError& err) {
        report["error"] = err.what();
        out.exit_code = 2;
        text << "unsupported representation: " << err.what() << "\n";
    } catch (const DimensionError& err) {
        report["error"] = err.what();
        out.exit_code = 2;
        text << "validation error: " << err.what() << "\n";
    } catch (const ZeroFieldError& err) {
        report["error"] = err.what();
        out.exit_code = 3;
        text << "inapplicable: " << err.what() << "\n";
    } catch (const WrongCaseError& err) {
        report["error"] = err.what();
        out.exit_code = 3;
        text << "inapplicable: " << err.what() << "\n";
    } catch (const std::exception& err) {
        report["error"] = err.what();
        out.exit_code = 1;
        text << "internal error: " << err.what() << "\n";
    }

    out.summary = text.str();
    return out;
}

} // namespace equinorm
