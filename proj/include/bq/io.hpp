#pragma once

// JSON and CSV interchange: the biquaternion text form, point records,
// transform configurations, source specifications and grid-sample files.
// Parsing is strict; malformed input raises parse_error with a line number
// when one is known.

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bq/fields.hpp"
#include "bq/transforms.hpp"

namespace bq {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// number formatting (deterministic output)

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Biquaternion text form: {"s":[re,im],"v":[[re,im],[re,im],[re,im]]}

inline Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const Biquaternion& f) {
    return Json{{"s", to_json(f.s)},
                {"v", Json::array({to_json(f.v.x), to_json(f.v.y), to_json(f.v.z)})}};
}

inline Complex complex_from_json(const Json& j, long line = 0) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error("expected a complex number as [re, im]", line);
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Biquaternion biquaternion_from_json(const Json& j, long line = 0) {
    if (!j.is_object() || j.size() != 2 || !j.contains("s") || !j.contains("v"))
        throw parse_error("expected a biquaternion as {\"s\":[re,im],\"v\":[[re,im]x3]}", line);
    const Json& v = j.at("v");
    if (!v.is_array() || v.size() != 3)
        throw parse_error("biquaternion vector part must have three components", line);
    return {complex_from_json(j.at("s"), line),
            {complex_from_json(v[0], line), complex_from_json(v[1], line),
             complex_from_json(v[2], line)}};
}

// ---------------------------------------------------------------------------
// spacetime points: {"tau":t,"x":[x1,x2,x3]}

inline Json to_json(const SpacetimePoint& p) {
    return Json{{"tau", p.tau}, {"x", Json::array({p.x.x, p.x.y, p.x.z})}};
}

inline Vec3 vec3_from_json(const Json& j, long line = 0) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number())
        throw parse_error("expected a 3-vector as [x1, x2, x3]", line);
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline SpacetimePoint point_from_json(const Json& j, long line = 0) {
    if (!j.is_object() || !j.contains("tau") || !j.contains("x") || !j.at("tau").is_number())
        throw parse_error("expected a point as {\"tau\":t,\"x\":[x1,x2,x3]}", line);
    return {j.at("tau").get<double>(), vec3_from_json(j.at("x"), line)};
}

inline Json parse_json_line(const std::string& text, long line) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON record", line);
    return j;
}

// ---------------------------------------------------------------------------
// transform configuration: {"rotor":{"phi":..,"e":[..]},"boost":{"v":..,"e":[..]}}

struct TransformConfig {
    std::optional<Rotor> rotor;
    std::optional<LorentzBoost> boost;

    /// Boost first, then rotor (the Poincaré factorization P = U∘L).
    SpacetimePoint apply(const SpacetimePoint& p) const {
        SpacetimePoint out = p;
        if (boost) out = apply_boost(*boost, out);
        if (rotor) out = apply_rotation(*rotor, out);
        return out;
    }
};

inline TransformConfig transform_from_json(const Json& j) {
    if (!j.is_object()) throw parse_error("transform config must be an object");
    TransformConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "rotor") {
            if (!value.contains("phi") || !value.contains("e"))
                throw parse_error("rotor needs {\"phi\":..,\"e\":[..]}");
            cfg.rotor = Rotor{value.at("phi").get<double>(), vec3_from_json(value.at("e"))};
        } else if (key == "boost") {
            if (!value.contains("v") || !value.contains("e"))
                throw parse_error("boost needs {\"v\":..,\"e\":[..]}");
            cfg.boost = LorentzBoost::from_velocity(value.at("v").get<double>(),
                                                    vec3_from_json(value.at("e")));
        } else {
            throw parse_error("unknown transform key: " + key);
        }
    }
    if (!cfg.rotor && !cfg.boost) throw parse_error("transform config is empty");
    return cfg;
}

// ---------------------------------------------------------------------------
// grid-sample files: one header line, then one biquaternion record per node
// in row-major order (tau slowest)

inline void write_grid(std::ostream& os, const GridBqField& g) {
    Json header{{"schema", "1"},
                {"origin", Json::array({g.origin.tau, g.origin.x.x, g.origin.x.y, g.origin.x.z})},
                {"spacing", Json::array({g.spacing[0], g.spacing[1], g.spacing[2], g.spacing[3]})},
                {"extents", Json::array({g.extents[0], g.extents[1], g.extents[2], g.extents[3]})}};
    os << header.dump() << '\n';
    for (const Biquaternion& f : g.data) os << to_json(f).dump() << '\n';
}

inline GridBqField read_grid(std::istream& is) {
    std::string line;
    long line_no = 0;
    if (!std::getline(is, line)) throw parse_error("empty grid file");
    ++line_no;
    const Json header = parse_json_line(line, line_no);
    if (!header.contains("schema") || header.at("schema") != "1")
        throw parse_error("unsupported grid schema", line_no);
    GridBqField g;
    const Json& origin = header.at("origin");
    if (!origin.is_array() || origin.size() != 4) throw parse_error("bad origin", line_no);
    g.origin = {origin[0].get<double>(),
                {origin[1].get<double>(), origin[2].get<double>(), origin[3].get<double>()}};
    const Json& spacing = header.at("spacing");
    const Json& extents = header.at("extents");
    if (!spacing.is_array() || spacing.size() != 4 || !extents.is_array() || extents.size() != 4)
        throw parse_error("bad spacing/extents", line_no);
    std::size_t total = 1;
    for (int a = 0; a < 4; ++a) {
        g.spacing[a] = spacing[a].get<double>();
        g.extents[a] = extents[a].get<int>();
        if (!(g.spacing[a] > 0.0) || g.extents[a] < 1)
            throw parse_error("spacing must be positive and extents at least 1", line_no);
        total *= static_cast<std::size_t>(g.extents[a]);
    }
    g.data.reserve(total);
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        g.data.push_back(biquaternion_from_json(parse_json_line(line, line_no), line_no));
    }
    if (g.data.size() != total)
        throw parse_error("grid record count does not match the extents", line_no);
    return g;
}

// ---------------------------------------------------------------------------
// source specifications: {"type":"gaussian|plane|table", ...}

struct Source {
    BqField field;
    // spatial support hint for convolution quadratures (zero radius: none)
    Vec3 support_center;
    double support_radius = 0.0;
    bool compact = false;
};

inline Source source_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw parse_error("source needs a \"type\"");
    const std::string type = j.at("type").get<std::string>();
    Source out;
    if (type == "gaussian") {
        GaussianPulse g;
        if (j.contains("amplitude")) g.amplitude = biquaternion_from_json(j.at("amplitude"));
        if (j.contains("center")) g.center = vec3_from_json(j.at("center"));
        if (j.contains("sigma")) g.sigma = j.at("sigma").get<double>();
        if (j.contains("t0")) g.t0 = j.at("t0").get<double>();
        if (j.contains("sigma_t")) g.sigma_t = j.at("sigma_t").get<double>();
        if (!(g.sigma > 0.0) || !(g.sigma_t > 0.0))
            throw parse_error("gaussian widths must be positive");
        out.field = g.as_field();
        out.support_center = g.center;
        out.support_radius = 6.0 * g.sigma;  // effective support
        out.compact = true;
    } else if (type == "plane") {
        if (!j.contains("xi")) throw parse_error("plane source needs \"xi\"");
        const Vec3 xi = vec3_from_json(j.at("xi"));
        const int omega_sign = j.value("omega_sign", 1);
        const int equation_sign = j.contains("sign") && j.at("sign") == "-" ? -1 : 1;
        Biquaternion C = Biquaternion::unit();
        if (j.contains("C")) C = biquaternion_from_json(j.at("C"));
        out.field = biwave_plane_wave(equation_sign, xi, omega_sign, C);
        out.compact = false;
    } else if (type == "table") {
        if (!j.contains("path")) throw parse_error("table source needs \"path\"");
        std::ifstream in(j.at("path").get<std::string>());
        if (!in) throw parse_error("cannot open grid file: " + j.at("path").get<std::string>());
        auto grid = std::make_shared<GridBqField>(read_grid(in));
        // multilinear evaluation anywhere; the grid stays alive in the closure
        out.field.value = [grid](const SpacetimePoint& p) { return interpolate(*grid, p); };
        Vec3 lo = grid->origin.x;
        Vec3 hi{lo.x + (grid->extents[1] - 1) * grid->spacing[1],
                lo.y + (grid->extents[2] - 1) * grid->spacing[2],
                lo.z + (grid->extents[3] - 1) * grid->spacing[3]};
        out.support_center = 0.5 * (lo + hi);
        out.support_radius = 0.5 * norm(hi - lo) + 1e-12;
        out.compact = true;
    } else {
        throw parse_error("unknown source type: " + type);
    }
    return out;
}

// ---------------------------------------------------------------------------
// sampling grids: {"tau":{"min":..,"max":..,"n":..}, "x1":{...}, ...}

struct AxisSpec {
    double min = 0.0, max = 0.0;
    int n = 1;

    double at(int i) const { return n < 2 ? min : min + (max - min) * i / (n - 1); }
};

struct SampleGrid {
    AxisSpec axes[4];

    std::size_t size() const {
        return static_cast<std::size_t>(axes[0].n) * axes[1].n * axes[2].n * axes[3].n;
    }
    SpacetimePoint point(std::size_t flat) const {
        const int n3 = axes[3].n, n2 = axes[2].n, n1 = axes[1].n;
        const int i3 = static_cast<int>(flat % n3);
        const int i2 = static_cast<int>((flat / n3) % n2);
        const int i1 = static_cast<int>((flat / n3 / n2) % n1);
        const int i0 = static_cast<int>(flat / n3 / n2 / n1);
        return {axes[0].at(i0), {axes[1].at(i1), axes[2].at(i2), axes[3].at(i3)}};
    }
};

inline AxisSpec axis_from_json(const Json& j, bool required) {
    if (j.is_null()) {
        if (required) throw parse_error("missing grid axis");
        return {};
    }
    AxisSpec a;
    a.min = j.value("min", 0.0);
    a.max = j.value("max", a.min);
    a.n = j.value("n", 1);
    if (a.n < 1 || (a.n > 1 && !(a.max > a.min)))
        throw parse_error("grid axis needs n >= 1 and max > min when n > 1");
    return a;
}

inline SampleGrid sample_grid_from_json(const Json& j, bool need_tau) {
    if (!j.is_object()) throw parse_error("grid spec must be an object");
    SampleGrid g;
    g.axes[0] = axis_from_json(j.contains("tau") ? j.at("tau") : Json{}, need_tau);
    const char* names[3] = {"x1", "x2", "x3"};
    for (int k = 0; k < 3; ++k)
        g.axes[k + 1] = axis_from_json(j.contains(names[k]) ? j.at(names[k]) : Json{}, false);
    return g;
}

}  // namespace bq
