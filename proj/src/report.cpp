#include "bilin2d/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace bilin2d {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void schema_error(const std::string& origin, const std::string& pointer,
                               const std::string& what) {
    throw InputError(origin + ": " + pointer + ": " + what);
}

double finite_number(const json& j, const std::string& origin, const std::string& ptr) {
    if (!j.is_number()) schema_error(origin, ptr, "expected a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) schema_error(origin, ptr, "value must be finite");
    return x;
}

Mat2 matrix_from(const json& j, const std::string& origin, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2)
        schema_error(origin, ptr, "expected a 2x2 array (two rows of two numbers)");
    double v[4];
    for (int r = 0; r < 2; ++r) {
        const json& row = j[r];
        std::string rptr = ptr + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != 2)
            schema_error(origin, rptr, "expected a row of exactly two numbers");
        for (int c = 0; c < 2; ++c)
            v[2 * r + c] = finite_number(row[c], origin, rptr + "[" + std::to_string(c) + "]");
    }
    return Mat2{v[0], v[1], v[2], v[3]};
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string fmt_mat(const Mat2& m) {
    return "[[" + fmt6(m.a11) + ", " + fmt6(m.a12) + "], [" + fmt6(m.a21) + ", " +
           fmt6(m.a22) + "]]";
}

/// Continuation term of a polynomial line: " + c" or " - c".
std::string signed_term(double c) {
    return std::string(c < 0.0 ? " - " : " + ") + fmt6(std::abs(c));
}

std::string fmt_interval(const Interval& it, bool open) {
    std::string lo = std::isinf(it.lo) ? "-inf" : fmt6(it.lo);
    std::string hi = std::isinf(it.hi) ? "+inf" : fmt6(it.hi);
    if (open) return "(" + lo + ", " + hi + ")";
    return "[" + lo + ", " + hi + "]";
}

// --- JSON encoding ---------------------------------------------------------

json mat_json(const Mat2& m) {
    return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})});
}

json vec_json(const Vec2& v) { return json::array({v.x1, v.x2}); }

json endpoint_json(double x) {
    if (std::isinf(x)) return nullptr;
    return x;
}

json interval_json(const Interval& it) {
    return json{{"lo", endpoint_json(it.lo)}, {"hi", endpoint_json(it.hi)}};
}

json intervals_json(const std::vector<Interval>& xs) {
    json out = json::array();
    for (const Interval& it : xs) out.push_back(interval_json(it));
    return out;
}

json control_set_json(const ControlSet& u) {
    if (u.all_reals) return "reals";
    return json::array({u.lo, u.hi});
}

json angular_case_json(const AngularCase& c) {
    json j{{"tag", to_string(c.tag)}, {"delta", c.delta}, {"margin", c.margin}};
    if (c.drift) j["drift"] = *c.drift;
    if (c.rate) j["rate"] = *c.rate;
    if (c.fixed_v) j["fixed_v"] = *c.fixed_v;
    if (c.roots_v) j["roots_v"] = json::array({(*c.roots_v)[0], (*c.roots_v)[1]});
    if (c.omega) j["omega"] = *c.omega;
    return j;
}

// --- JSON decoding ---------------------------------------------------------

const json& need(const json& j, const char* key, const std::string& origin,
                 const std::string& ptr) {
    auto it = j.find(key);
    if (it == j.end()) schema_error(origin, ptr, std::string("missing field \"") + key + "\"");
    return *it;
}

double endpoint_from(const json& j, bool is_lo, const std::string& origin,
                     const std::string& ptr) {
    if (j.is_null()) return is_lo ? -kInf : kInf;
    if (!j.is_number()) schema_error(origin, ptr, "expected a number or null");
    return j.get<double>();
}

Interval interval_from(const json& j, const std::string& origin, const std::string& ptr) {
    Interval it;
    it.lo = endpoint_from(need(j, "lo", origin, ptr), true, origin, ptr + ".lo");
    it.hi = endpoint_from(need(j, "hi", origin, ptr), false, origin, ptr + ".hi");
    return it;
}

std::vector<Interval> intervals_from(const json& j, const std::string& origin,
                                     const std::string& ptr) {
    if (!j.is_array()) schema_error(origin, ptr, "expected an array of intervals");
    std::vector<Interval> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(interval_from(j[i], origin, ptr + "[" + std::to_string(i) + "]"));
    return out;
}

Vec2 vec_from(const json& j, const std::string& origin, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2) schema_error(origin, ptr, "expected [x1, x2]");
    return Vec2{finite_number(j[0], origin, ptr + "[0]"),
                finite_number(j[1], origin, ptr + "[1]")};
}

ControlSet control_set_from(const json& j, const std::string& origin,
                            const std::string& ptr) {
    if (j.is_string()) {
        if (j.get<std::string>() != "reals")
            schema_error(origin, ptr, "expected \"reals\" or [lo, hi]");
        return ControlSet::reals();
    }
    if (!j.is_array() || j.size() != 2)
        schema_error(origin, ptr, "expected \"reals\" or [lo, hi]");
    double lo = finite_number(j[0], origin, ptr + "[0]");
    double hi = finite_number(j[1], origin, ptr + "[1]");
    if (!(lo < hi)) schema_error(origin, ptr, "control interval requires lo < hi");
    return ControlSet::interval(lo, hi);
}

AngularCase angular_case_from(const json& j, const std::string& origin,
                              const std::string& ptr) {
    AngularCase c;
    auto tag = angular_case_from_string(
        need(j, "tag", origin, ptr).get<std::string>());
    if (!tag) schema_error(origin, ptr + ".tag", "unknown case tag");
    c.tag = *tag;
    c.delta = need(j, "delta", origin, ptr).get<double>();
    c.margin = need(j, "margin", origin, ptr).get<double>();
    if (j.contains("drift")) c.drift = j["drift"].get<double>();
    if (j.contains("rate")) c.rate = j["rate"].get<double>();
    if (j.contains("fixed_v")) c.fixed_v = j["fixed_v"].get<double>();
    if (j.contains("roots_v"))
        c.roots_v = std::array<double, 2>{j["roots_v"][0].get<double>(),
                                          j["roots_v"][1].get<double>()};
    if (j.contains("omega")) c.omega = j["omega"].get<double>();
    return c;
}

}  // namespace

SystemDescription parse_system(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // Anchor the message to the source line.
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        byte = std::min(byte, json_text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (json_text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("] ");
        if (pos != std::string::npos) what = what.substr(pos + 2);
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + what);
    } catch (const json::exception& e) {
        // Non-positional lexer failures, e.g. literal number overflow.
        throw InputError(origin + ": " + e.what());
    }

    if (!j.is_object()) schema_error(origin, "$", "expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key != "A" && key != "B" && key != "control_set" && key != "label")
            schema_error(origin, "$." + key, "unknown field");
    }
    SystemDescription sys;
    sys.a = matrix_from(need(j, "A", origin, "$"), origin, "$.A");
    sys.b = matrix_from(need(j, "B", origin, "$"), origin, "$.B");
    if (j.contains("control_set"))
        sys.control_set = control_set_from(j["control_set"], origin, "$.control_set");
    if (j.contains("label")) {
        if (!j["label"].is_string()) schema_error(origin, "$.label", "expected a string");
        sys.label = j["label"].get<std::string>();
    }
    return sys;
}

AnalysisReport analyze(const SystemDescription& sys, const AnalysisOptions& opts) {
    AnalysisReport r;
    r.system = sys;
    r.options = opts;
    Tolerance tol{opts.eps};
    const Mat2& a = sys.a;
    const Mat2& b = sys.b;

    LarcOptions lopts{tol, opts.seed, opts.random_budget};
    r.larc.verdict = decide_larc(a, b, lopts);
    LieAlgebraBasis basis = generate_lie_algebra(a, b, tol);
    r.larc.basis_dim = basis.dim;
    for (int i = 0; i < basis.dim; ++i) r.larc.basis_words.push_back(basis.word_string(i));

    Mat2 br = bracket(a, b);
    Mat2 br_a = bracket(a, br);
    Mat2 br_b = bracket(b, br);
    r.larc.canonical_indicators = {
        {"(A,B)", indicator(a, b)},
        {"(A,[A,B])", indicator(a, br)},
        {"(B,[A,B])", indicator(b, br)},
        {"(A,[A,[A,B]])", indicator(a, br_a)},
        {"(B,[A,[A,B]])", indicator(b, br_a)},
        {"(A,[B,[A,B]])", indicator(a, br_b)},
        {"(B,[B,[A,B]])", indicator(b, br_b)},
        {"([A,B],[A,[A,B]])", indicator(br, br_a)},
        {"([A,B],[B,[A,B]])", indicator(br, br_b)},
    };
    r.larc.shortcut_indicator_ab = indicator(a, b);
    r.larc.shortcut_det_a_bracket = a.det() * br.det();
    r.larc.shortcut_det_b_bracket = b.det() * br.det();

    r.delta.quadratic = delta_quadratic(a, b);
    r.delta.extremum = delta_extremum(r.delta.quadratic, tol);
    r.delta.classification = classify_exists_negative(r.delta.quadratic, tol);

    r.angular.controllability = projective_controllable(a, b, sys.control_set, tol);
    r.angular.case_at_zero = classify_case(pqr(a, b, 0.0), tol);
    if (r.angular.controllability.witness_u)
        r.angular.case_at_witness =
            classify_case(pqr(a, b, *r.angular.controllability.witness_u), tol);

    r.spectrum = summarize_spectrum(a, b, sys.control_set,
                                    r.angular.controllability.controllable, opts.grid_n,
                                    opts.u_max, tol);

    ZeroInteriorResult zi;
    zi.zero_in_interior = r.spectrum.zero_in_interior;
    zi.lemma = r.spectrum.lemma_used;
    zi.trace_zero_test_value = r.spectrum.trace_zero_test_value;
    r.verdict = combine_verdict(r.larc.verdict, r.angular.controllability, zi, b.trace());
    return r;
}

std::string report_to_json(const AnalysisReport& r, int indent) {
    json j;
    j["system"] = {{"A", mat_json(r.system.a)},
                   {"B", mat_json(r.system.b)},
                   {"control_set", control_set_json(r.system.control_set)},
                   {"label", r.system.label}};
    j["options"] = {{"eps", r.options.eps},
                    {"seed", r.options.seed},
                    {"random_budget", r.options.random_budget},
                    {"grid_n", r.options.grid_n},
                    {"u_max", r.options.u_max}};

    json larc;
    larc["holds"] = r.larc.verdict.holds;
    larc["certificate_found"] = r.larc.verdict.certificate_found;
    larc["certificate_route"] = to_string(r.larc.verdict.certificate_route);
    if (r.larc.verdict.certificate) {
        larc["certificate"] = {{"A_tilde", mat_json(r.larc.verdict.certificate->first)},
                               {"B_tilde", mat_json(r.larc.verdict.certificate->second)}};
    }
    if (r.larc.verdict.certificate_indicator)
        larc["certificate_indicator"] = *r.larc.verdict.certificate_indicator;
    if (r.larc.verdict.failure_point)
        larc["failure_point"] = vec_json(*r.larc.verdict.failure_point);
    larc["basis"] = {{"dim", r.larc.basis_dim}, {"words", r.larc.basis_words}};
    json canon = json::array();
    for (const NamedIndicator& ni : r.larc.canonical_indicators)
        canon.push_back({{"pair", ni.pair}, {"value", ni.value}});
    larc["canonical_indicators"] = canon;
    larc["shortcuts"] = {{"indicator_ab", r.larc.shortcut_indicator_ab},
                         {"det_a_det_bracket", r.larc.shortcut_det_a_bracket},
                         {"det_b_det_bracket", r.larc.shortcut_det_b_bracket}};
    j["larc"] = larc;

    json delta;
    delta["alpha"] = r.delta.quadratic.alpha;
    delta["beta"] = r.delta.quadratic.beta;
    delta["gamma"] = r.delta.quadratic.gamma;
    delta["det_bracket"] = r.delta.quadratic.det_bracket;
    if (r.delta.extremum)
        delta["extremum"] = {{"u", r.delta.extremum->first},
                             {"value", r.delta.extremum->second}};
    delta["classification"] = {
        {"label", to_string(r.delta.classification.label)},
        {"exists_negative", r.delta.classification.exists_negative},
        {"negative_set", intervals_json(r.delta.classification.negative_set)},
        {"margin", r.delta.classification.margin}};
    j["delta"] = delta;

    json ang;
    ang["controllable"] = r.angular.controllability.controllable;
    if (r.angular.controllability.witness_u)
        ang["witness_u"] = *r.angular.controllability.witness_u;
    ang["case_at_zero"] = angular_case_json(r.angular.case_at_zero);
    if (r.angular.case_at_witness)
        ang["case_at_witness"] = angular_case_json(*r.angular.case_at_witness);
    j["angular"] = ang;

    j["spectrum"] = {{"trace_b", r.spectrum.trace_b},
                     {"re_range", intervals_json(r.spectrum.re_range)},
                     {"zero_in_interior", r.spectrum.zero_in_interior},
                     {"lemma", to_string(r.spectrum.lemma_used)},
                     {"trace_zero_test_value", r.spectrum.trace_zero_test_value}};

    json reasons = json::array();
    for (const VerdictReason& re : r.verdict.reasons)
        reasons.push_back(
            {{"condition", re.condition}, {"holds", re.holds}, {"evidence", re.evidence}});
    j["verdict"] = {{"status", to_string(r.verdict.status)}, {"reasons", reasons}};
    return j.dump(indent) + "\n";
}

namespace {
AnalysisReport report_from_json_impl(const json& j, const std::string& origin);
}  // namespace

AnalysisReport report_from_json(const std::string& json_text) {
    const std::string origin = "<report>";
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
    try {
        return report_from_json_impl(j, origin);
    } catch (const InputError&) {
        throw;
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
}

namespace {

AnalysisReport report_from_json_impl(const json& j, const std::string& origin) {
    AnalysisReport r;
    const json& sys = need(j, "system", origin, "$");
    r.system.a = matrix_from(need(sys, "A", origin, "$.system"), origin, "$.system.A");
    r.system.b = matrix_from(need(sys, "B", origin, "$.system"), origin, "$.system.B");
    r.system.control_set =
        control_set_from(need(sys, "control_set", origin, "$.system"), origin,
                         "$.system.control_set");
    r.system.label = need(sys, "label", origin, "$.system").get<std::string>();

    const json& opt = need(j, "options", origin, "$");
    r.options.eps = need(opt, "eps", origin, "$.options").get<double>();
    r.options.seed = need(opt, "seed", origin, "$.options").get<std::uint64_t>();
    r.options.random_budget = need(opt, "random_budget", origin, "$.options").get<int>();
    r.options.grid_n = need(opt, "grid_n", origin, "$.options").get<int>();
    r.options.u_max = need(opt, "u_max", origin, "$.options").get<double>();

    const json& larc = need(j, "larc", origin, "$");
    r.larc.verdict.holds = need(larc, "holds", origin, "$.larc").get<bool>();
    r.larc.verdict.certificate_found =
        need(larc, "certificate_found", origin, "$.larc").get<bool>();
    auto route = certificate_route_from_string(
        need(larc, "certificate_route", origin, "$.larc").get<std::string>());
    if (!route) schema_error(origin, "$.larc.certificate_route", "unknown route");
    r.larc.verdict.certificate_route = *route;
    if (larc.contains("certificate")) {
        const json& c = larc["certificate"];
        r.larc.verdict.certificate = std::make_pair(
            matrix_from(need(c, "A_tilde", origin, "$.larc.certificate"), origin,
                        "$.larc.certificate.A_tilde"),
            matrix_from(need(c, "B_tilde", origin, "$.larc.certificate"), origin,
                        "$.larc.certificate.B_tilde"));
    }
    if (larc.contains("certificate_indicator"))
        r.larc.verdict.certificate_indicator = larc["certificate_indicator"].get<double>();
    if (larc.contains("failure_point"))
        r.larc.verdict.failure_point =
            vec_from(larc["failure_point"], origin, "$.larc.failure_point");
    const json& basis = need(larc, "basis", origin, "$.larc");
    r.larc.basis_dim = need(basis, "dim", origin, "$.larc.basis").get<int>();
    for (const json& w : need(basis, "words", origin, "$.larc.basis"))
        r.larc.basis_words.push_back(w.get<std::string>());
    for (const json& ni : need(larc, "canonical_indicators", origin, "$.larc"))
        r.larc.canonical_indicators.push_back(
            {ni.at("pair").get<std::string>(), ni.at("value").get<double>()});
    const json& sc = need(larc, "shortcuts", origin, "$.larc");
    r.larc.shortcut_indicator_ab = sc.at("indicator_ab").get<double>();
    r.larc.shortcut_det_a_bracket = sc.at("det_a_det_bracket").get<double>();
    r.larc.shortcut_det_b_bracket = sc.at("det_b_det_bracket").get<double>();

    const json& delta = need(j, "delta", origin, "$");
    r.delta.quadratic.alpha = delta.at("alpha").get<double>();
    r.delta.quadratic.beta = delta.at("beta").get<double>();
    r.delta.quadratic.gamma = delta.at("gamma").get<double>();
    r.delta.quadratic.det_bracket = delta.at("det_bracket").get<double>();
    if (delta.contains("extremum"))
        r.delta.extremum = std::make_pair(delta["extremum"].at("u").get<double>(),
                                          delta["extremum"].at("value").get<double>());
    const json& cls = need(delta, "classification", origin, "$.delta");
    auto label = delta_case_from_string(cls.at("label").get<std::string>());
    if (!label) schema_error(origin, "$.delta.classification.label", "unknown label");
    r.delta.classification.label = *label;
    r.delta.classification.exists_negative = cls.at("exists_negative").get<bool>();
    r.delta.classification.negative_set =
        intervals_from(cls.at("negative_set"), origin, "$.delta.classification.negative_set");
    r.delta.classification.margin = cls.at("margin").get<double>();

    const json& ang = need(j, "angular", origin, "$");
    r.angular.controllability.controllable = ang.at("controllable").get<bool>();
    if (ang.contains("witness_u"))
        r.angular.controllability.witness_u = ang["witness_u"].get<double>();
    r.angular.case_at_zero =
        angular_case_from(need(ang, "case_at_zero", origin, "$.angular"), origin,
                          "$.angular.case_at_zero");
    if (ang.contains("case_at_witness"))
        r.angular.case_at_witness =
            angular_case_from(ang["case_at_witness"], origin, "$.angular.case_at_witness");

    const json& spect = need(j, "spectrum", origin, "$");
    r.spectrum.trace_b = spect.at("trace_b").get<double>();
    r.spectrum.re_range = intervals_from(spect.at("re_range"), origin, "$.spectrum.re_range");
    r.spectrum.zero_in_interior = spect.at("zero_in_interior").get<bool>();
    auto lemma = lemma_tag_from_string(spect.at("lemma").get<std::string>());
    if (!lemma) schema_error(origin, "$.spectrum.lemma", "unknown lemma tag");
    r.spectrum.lemma_used = *lemma;
    r.spectrum.trace_zero_test_value = spect.at("trace_zero_test_value").get<double>();

    const json& verdict = need(j, "verdict", origin, "$");
    auto status = status_from_string(verdict.at("status").get<std::string>());
    if (!status) schema_error(origin, "$.verdict.status", "unknown status");
    r.verdict.status = *status;
    for (const json& re : verdict.at("reasons"))
        r.verdict.reasons.push_back({re.at("condition").get<std::string>(),
                                     re.at("holds").get<bool>(),
                                     re.at("evidence").get<std::string>()});
    return r;
}

}  // namespace

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    const char* nl = "\n";
    os << "system: " << (r.system.label.empty() ? "(unlabeled)" : r.system.label) << nl;
    os << "  A = " << fmt_mat(r.system.a) << nl;
    os << "  B = " << fmt_mat(r.system.b) << nl;
    if (r.system.control_set.all_reals)
        os << "  controls: all reals" << nl;
    else
        os << "  controls: [" << fmt6(r.system.control_set.lo) << ", "
           << fmt6(r.system.control_set.hi) << "]" << nl;

    os << "rank condition: " << (r.larc.verdict.holds ? "holds" : "fails") << nl;
    os << "  basis dim = " << r.larc.basis_dim << " {";
    for (std::size_t i = 0; i < r.larc.basis_words.size(); ++i)
        os << (i ? ", " : "") << r.larc.basis_words[i];
    os << "}" << nl;
    os << "  indicator(A,B) = " << fmt6(r.larc.shortcut_indicator_ab)
       << ", det(A)det([A,B]) = " << fmt6(r.larc.shortcut_det_a_bracket)
       << ", det(B)det([A,B]) = " << fmt6(r.larc.shortcut_det_b_bracket) << nl;
    if (r.larc.verdict.certificate_found && r.larc.verdict.certificate) {
        os << "  certificate (" << to_string(r.larc.verdict.certificate_route)
           << "): indicator = "
           << fmt6(r.larc.verdict.certificate_indicator.value_or(
                  std::numeric_limits<double>::quiet_NaN()))
           << nl;
        os << "    A~ = " << fmt_mat(r.larc.verdict.certificate->first)
           << ", B~ = " << fmt_mat(r.larc.verdict.certificate->second) << nl;
    }
    if (r.larc.verdict.failure_point)
        os << "  rank drop at (" << fmt6(r.larc.verdict.failure_point->x1) << ", "
           << fmt6(r.larc.verdict.failure_point->x2) << ")" << nl;

    os << "discriminant: Delta(u) = " << fmt6(r.delta.quadratic.alpha) << " u^2"
       << signed_term(r.delta.quadratic.beta) << " u"
       << signed_term(r.delta.quadratic.gamma)
       << ", det([A,B]) = " << fmt6(r.delta.quadratic.det_bracket) << nl;
    if (r.delta.extremum)
        os << "  extremum: Delta(" << fmt6(r.delta.extremum->first + 0.0) << ") = "
           << fmt6(r.delta.extremum->second) << nl;
    os << "  case " << to_string(r.delta.classification.label) << ", negative on ";
    if (r.delta.classification.negative_set.empty()) {
        os << "{}";
    } else {
        for (std::size_t i = 0; i < r.delta.classification.negative_set.size(); ++i)
            os << (i ? " U " : "")
               << fmt_interval(r.delta.classification.negative_set[i], true);
    }
    os << nl;

    os << "projective system: "
       << (r.angular.controllability.controllable ? "controllable" : "not controllable");
    if (r.angular.controllability.witness_u)
        os << " (witness u = " << fmt6(*r.angular.controllability.witness_u) << ")";
    os << nl;
    os << "  case at u = 0: " << to_string(r.angular.case_at_zero.tag)
       << " (margin " << fmt6(r.angular.case_at_zero.margin) << ")" << nl;
    if (r.angular.case_at_witness)
        os << "  case at witness: " << to_string(r.angular.case_at_witness->tag)
           << " (margin " << fmt6(r.angular.case_at_witness->margin) << ")" << nl;

    os << "spectrum: tr(B) = " << fmt6(r.spectrum.trace_b) << ", attainable Re range ";
    for (std::size_t i = 0; i < r.spectrum.re_range.size(); ++i)
        os << (i ? " U " : "") << fmt_interval(r.spectrum.re_range[i], false);
    os << nl;
    os << "  0 in interior: " << (r.spectrum.zero_in_interior ? "yes" : "no") << " ("
       << to_string(r.spectrum.lemma_used)
       << ", trace-zero test value = " << fmt6(r.spectrum.trace_zero_test_value) << ")" << nl;

    os << "verdict: " << to_string(r.verdict.status) << nl;
    for (const VerdictReason& re : r.verdict.reasons)
        os << "  [" << (re.holds ? "ok" : "no") << "] " << re.condition << ": "
           << re.evidence << nl;
    return os.str();
}

int exit_code_for(ControllabilityStatus s) {
    switch (s) {
        case ControllabilityStatus::Controllable: return 0;
        case ControllabilityStatus::NotControllable: return 1;
        case ControllabilityStatus::Inconclusive: return 2;
    }
    return 2;
}

}  // namespace bilin2d
