#include "hybrid/io.hpp"

#include "hybrid/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace hybrid {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Exact-scalar serialization.  Each level of the coefficient tower is written
// explicitly: GQ as "a+b*i" strings, polynomials as coefficient arrays
// (index = power), rational functions as {num, den}.
// ---------------------------------------------------------------------------

json gq_to_json(const GQ& a) { return to_string(a); }

GQ gq_from_json(const json& j) {
    if (!j.is_string()) throw ParseError("expected a complex-rational string");
    try {
        return parse_gq(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad complex rational: ") + e.what());
    }
}

template <class F, class ToJson>
json poly_to_json(const Poly<F>& p, ToJson&& elem) {
    json arr = json::array();
    for (const F& c : p.c) arr.push_back(elem(c));
    return arr;
}

template <class F, class FromJson>
Poly<F> poly_from_json(const json& j, FromJson&& elem) {
    if (!j.is_array()) throw ParseError("expected a coefficient array");
    std::vector<F> c;
    for (const json& e : j) c.push_back(elem(e));
    return Poly<F>(std::move(c));
}

json qgamma_to_json(const QGamma& a) {
    return json{{"num", poly_to_json(a.num, gq_to_json)}, {"den", poly_to_json(a.den, gq_to_json)}};
}

QGamma qgamma_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("expected {num, den}");
    return QGamma(poly_from_json<GQ>(j["num"], gq_from_json),
                  poly_from_json<GQ>(j["den"], gq_from_json));
}

json scalar_to_json(const Scalar& a) {
    return json{{"num", poly_to_json(a.num, qgamma_to_json)},
                {"den", poly_to_json(a.den, qgamma_to_json)}};
}

Scalar scalar_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("expected {num, den}");
    return Scalar(poly_from_json<QGamma>(j["num"], qgamma_from_json),
                  poly_from_json<QGamma>(j["den"], qgamma_from_json));
}

// ---------------------------------------------------------------------------
// Config loading helpers.
// ---------------------------------------------------------------------------

const json& need(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string(where) + ": missing key '" + key + "'");
    return j[key];
}

std::string need_string(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) throw ParseError(std::string(where) + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

long need_int(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer())
        throw ParseError(std::string(where) + ": '" + key + "' must be an integer");
    return v.get<long>();
}

Scalar parse_literal(const std::string& text, const char* where) {
    try {
        return parse_scalar_literal(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string(where) + ": bad scalar literal '" + text + "': " + e.what());
    }
}

GQ parse_gq_checked(const std::string& text, const char* where) {
    try {
        return parse_gq(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string(where) + ": bad complex literal '" + text + "': " + e.what());
    }
}

std::vector<Scalar> scalar_list(const json& j, const char* key, const char* where) {
    std::vector<Scalar> out;
    if (!j.contains(key)) return out;
    const json& arr = j[key];
    if (!arr.is_array()) throw ParseError(std::string(where) + ": '" + key + "' must be an array");
    for (const json& e : arr) {
        if (!e.is_string())
            throw ParseError(std::string(where) + ": entries of '" + key + "' must be strings");
        out.push_back(parse_literal(e.get<std::string>(), where));
    }
    return out;
}

Mat2 mat_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
        j[0].size() != 2 || j[1].size() != 2)
        throw ParseError(std::string(where) + ": matrix must be a 2x2 array of strings");
    auto ent = [&](int r, int c) {
        const json& e = j[r][c];
        if (!e.is_string()) throw ParseError(std::string(where) + ": matrix entries must be strings");
        return parse_gq_checked(e.get<std::string>(), where);
    };
    return Mat2(ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1));
}

Rational rational_from_literal(const std::string& text, const char* where) {
    GQ g = parse_gq_checked(text, where);
    if (!g.is_real()) throw ParseError(std::string(where) + ": expected a real rational");
    return g.re;
}

BoundaryCondition boundary_from_json(const json& j) {
    std::string type = need_string(j, "type", "boundary");
    BoundaryCondition bc;
    if (type == "lambda") {
        SelfAdjointDiagBC diag;
        const json& pts = need(j, "points", "boundary");
        if (!pts.is_array()) throw ParseError("boundary: 'points' must be an array");
        for (const json& p : pts) {
            SelfAdjointDiagBC::Triple t;
            t.lambda_top = rational_from_literal(need_string(p, "top", "boundary point"),
                                                 "boundary point");
            t.lambda_off = parse_gq_checked(need_string(p, "off", "boundary point"),
                                            "boundary point");
            t.lambda_seg = rational_from_literal(need_string(p, "seg", "boundary point"),
                                                 "boundary point");
            diag.points.push_back(std::move(t));
        }
        try {
            return diag.to_boundary_condition();
        } catch (const NotSelfAdjoint& e) {
            throw ParseError(std::string("boundary: ") + e.what());
        }
    }
    if (type == "raw") {
        const json& blocks = need(j, "blocks", "boundary");
        if (!blocks.is_array()) throw ParseError("boundary: 'blocks' must be an array");
        for (const json& b : blocks) {
            BCBlock blk;
            blk.A = mat_from_json(need(b, "A", "boundary block"), "boundary block A");
            blk.B = mat_from_json(need(b, "B", "boundary block"), "boundary block B");
            bc.blocks.push_back(std::move(blk));
        }
        return bc;
    }
    if (type == "canonical") {
        const json& blocks = need(j, "blocks", "boundary");
        if (!blocks.is_array()) throw ParseError("boundary: 'blocks' must be an array");
        GQ i_unit(Rational(0), Rational(1));
        for (const json& b : blocks) {
            Mat2 phi = mat_from_json(need(b, "Phi", "boundary block"), "boundary block Phi");
            BCBlock blk;
            blk.A = Mat2::identity() - phi;
            blk.B = (Mat2::identity() + phi) * i_unit;
            blk.Phi = phi;
            bc.blocks.push_back(std::move(blk));
        }
        return bc;
    }
    throw ParseError("boundary: unknown type '" + type + "' (want lambda | raw | canonical)");
}

// ---------------------------------------------------------------------------
// Real50 rendering: fixed 40 significant digits, deterministic.
// ---------------------------------------------------------------------------

std::string real_str(const Real50& x) {
    std::ostringstream os;
    os.precision(40);
    os << x;
    return os.str();
}

json scalar_views(const Scalar& s) {
    return json{{"exact", scalar_to_json(s)},
                {"pretty", to_pretty(s)},
                {"value", real_str(eval_scalar(s).re)}};
}

}  // namespace

LoadedConfig load_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config root must be an object");
    long ver = need_int(doc, "schema_version", "config");
    if (ver != kSchemaVersion)
        throw ParseError("unsupported schema_version " + std::to_string(ver));

    LoadedConfig out;
    const json& manifolds = need(doc, "manifold", "config");
    if (!manifolds.is_array() || manifolds.empty())
        throw ParseError("config: 'manifold' must be a non-empty array");
    for (const json& m : manifolds) {
        ManifoldSpec spec;
        spec.name = need_string(m, "name", "manifold");
        spec.volume = parse_literal(need_string(m, "volume", "manifold"), "manifold volume");
        spec.euler_char = need_int(m, "euler_char", "manifold");
        spec.global_heat = scalar_list(m, "global_heat", "manifold");
        if (m.contains("points")) {
            const json& pts = m["points"];
            if (!pts.is_array()) throw ParseError("manifold: 'points' must be an array");
            for (const json& p : pts) {
                GluingPointSpec gp;
                gp.label = need_string(p, "label", "gluing point");
                gp.local_heat = scalar_list(p, "local_heat", "gluing point");
                spec.gluing_points.push_back(std::move(gp));
            }
        }
        out.hybrid.manifolds.push_back(std::move(spec));
    }

    if (doc.contains("segment")) {
        const json& segments = doc["segment"];
        if (!segments.is_array()) throw ParseError("config: 'segment' must be an array");
        for (const json& s : segments) {
            SegmentSpec spec;
            spec.name = need_string(s, "name", "segment");
            spec.length = parse_literal(need_string(s, "length", "segment"), "segment length");
            out.hybrid.segments.push_back(std::move(spec));
        }
    }

    if (doc.contains("gluing")) {
        const json& glue = doc["gluing"];
        if (!glue.is_array()) throw ParseError("config: 'gluing' must be an array");
        for (const json& g : glue) {
            if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
                !g[1].is_number_integer())
                throw ParseError("config: each gluing entry must be [manifold_index, point_index]");
            out.hybrid.endpoints.push_back({g[0].get<int>(), g[1].get<int>()});
        }
    }

    if (doc.contains("boundary"))
        out.bc = boundary_from_json(doc["boundary"]);
    else if (!out.hybrid.segments.empty())
        throw ParseError("config: 'boundary' is required when segments are present");
    return out;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    return load_config(in);
}

std::string expansion_to_json(const ExpansionResult& result, int l_tail_order) {
    json coeffs = json::array();
    for (const auto& [q, c] : result.series.coeffs) {
        json rec{{"q", q},
                 {"num_coeffs", poly_to_json(c.num, scalar_to_json)},
                 {"den_coeffs", poly_to_json(c.den, scalar_to_json)}};
        if (l_tail_order >= 0 && c.num_degree() <= c.den_degree()) {
            LTail tail = ps_l_tail(c, l_tail_order);
            json t = json::array();
            for (const Scalar& s : tail.coeffs) t.push_back(scalar_views(s));
            rec["l_tail"] = std::move(t);
        }
        coeffs.push_back(std::move(rec));
    }
    json doc{{"schema_version", kSchemaVersion},
             {"metadata",
              {{"order", result.order},
               {"n_zero", result.n_zero},
               {"num_points", result.num_points},
               {"sum_euler", result.sum_euler},
               {"sum_vol", scalar_views(result.sum_vol)},
               {"sum_len", scalar_views(result.sum_len)}}},
             {"coefficients", std::move(coeffs)}};
    return doc.dump(2) + "\n";
}

ExpansionResult expansion_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("expansion file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("expansion root must be an object");
    long ver = need_int(doc, "schema_version", "expansion");
    if (ver != kSchemaVersion)
        throw ParseError("unsupported schema_version " + std::to_string(ver));
    const json& meta = need(doc, "metadata", "expansion");

    ExpansionResult out;
    out.order = static_cast<int>(need_int(meta, "order", "metadata"));
    out.n_zero = static_cast<int>(need_int(meta, "n_zero", "metadata"));
    out.num_points = static_cast<int>(need_int(meta, "num_points", "metadata"));
    out.sum_euler = need_int(meta, "sum_euler", "metadata");
    out.sum_vol = scalar_from_json(need(need(meta, "sum_vol", "metadata"), "exact", "sum_vol"));
    out.sum_len = scalar_from_json(need(need(meta, "sum_len", "metadata"), "exact", "sum_len"));

    out.series = PseudoSeries(out.order);
    const json& coeffs = need(doc, "coefficients", "expansion");
    if (!coeffs.is_array()) throw ParseError("expansion: 'coefficients' must be an array");
    for (const json& rec : coeffs) {
        int q = static_cast<int>(need_int(rec, "q", "coefficient"));
        if (q < 0 || q > out.order) throw ParseError("coefficient power out of range");
        RatL c(poly_from_json<Scalar>(need(rec, "num_coeffs", "coefficient"), scalar_from_json),
               poly_from_json<Scalar>(need(rec, "den_coeffs", "coefficient"), scalar_from_json));
        out.series.set(q, std::move(c));
    }
    return out;
}

std::string inverse_report_to_json(const InverseReport& report) {
    auto real_list = [](const std::vector<Real50>& v) {
        json arr = json::array();
        for (const Real50& x : v) arr.push_back(real_str(x));
        return arr;
    };
    json stages = json::array();
    for (const auto& d : report.conditioning)
        stages.push_back(json{{"stage", d.stage},
                              {"status", d.status},
                              {"condition", real_str(d.condition)},
                              {"residual", real_str(d.residual)}});
    json doc{{"schema_version", kSchemaVersion},
             {"is_hybrid", report.is_hybrid},
             {"sum_vol", scalar_views(report.sum_vol)},
             {"sum_len", scalar_views(report.sum_len)},
             {"n_segments", report.n_segments},
             {"sum_euler", report.sum_euler},
             {"euler_hybrid", report.euler_hybrid},
             {"lambda_seg", real_list(report.lambda_seg)},
             {"lambda_off_abs", real_list(report.lambda_off_abs)},
             {"lambda_top", real_list(report.lambda_top)},
             {"stages", std::move(stages)}};
    return doc.dump(2) + "\n";
}

}  // namespace hybrid
