#include "geoflow/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "geoflow/errors.hpp"

namespace geoflow {

namespace {

struct CsvData {
    std::map<std::string, std::string> meta;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> header;
};

CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    CsvData data;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(" \t"));
                key.erase(key.find_last_not_of(" \t") + 1);
                data.meta[key] = line.substr(eq + 1);
            }
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(ss, cell, ',')) data.header.push_back(cell);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        data.rows.push_back(std::move(row));
    }
    return data;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::stringstream ss(s);
    std::vector<double> out;
    double v;
    while (ss >> v) out.push_back(v);
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) fail(ErrorCode::IoError, "cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string file_checksum(const std::string& path) {
    const std::string bytes = read_text(path);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DiscreteCurve read_curve_csv(const std::string& path) {
    const CsvData data = read_csv(path);
    DiscreteCurve c;
    if (data.rows.empty()) fail(ErrorCode::IoError, "no samples in " + path);
    for (const auto& row : data.rows) {
        if (row.size() < 4) fail(ErrorCode::IoError, "curve rows need s,x,y,z");
        c.points.push_back({row[1], row[2], row[3]});
    }
    c.closed = data.meta.count("closed") ? std::stoi(data.meta.at("closed")) != 0 : false;
    if (data.meta.count("spacing"))
        c.spacing = std::stod(data.meta.at("spacing"));
    else if (data.rows.size() > 1)
        c.spacing = data.rows[1][0] - data.rows[0][0];
    c.param_kind = ParamKind::General;
    if (data.meta.count("param") && data.meta.at("param").find("arclength") != std::string::npos)
        c.param_kind = ParamKind::Arclength;
    if (data.meta.count("mon_R")) {
        const auto r = parse_doubles(data.meta.at("mon_R"));
        if (r.size() != 9) fail(ErrorCode::IoError, "mon_R needs 9 values");
        for (int i = 0; i < 9; ++i) c.monodromy.rot.m[i] = r[i];
    }
    if (data.meta.count("mon_d")) {
        const auto d = parse_doubles(data.meta.at("mon_d"));
        if (d.size() != 3) fail(ErrorCode::IoError, "mon_d needs 3 values");
        c.monodromy.shift = {d[0], d[1], d[2]};
    }
    return c;
}

void write_curve_csv(const std::string& path, const DiscreteCurve& curve) {
    std::ostringstream out;
    out << "# closed=" << (curve.closed ? 1 : 0) << "\n";
    out << "# spacing=" << format_double(curve.spacing) << "\n";
    out << "# param=" << (curve.param_kind == ParamKind::Arclength ? "arclength" : "general")
        << "\n";
    if (curve.closed && !curve.monodromy.is_identity()) {
        out << "# mon_R=";
        for (int i = 0; i < 9; ++i) out << (i ? " " : "") << format_double(curve.monodromy.rot.m[i]);
        out << "\n# mon_d=" << format_double(curve.monodromy.shift.x) << " "
            << format_double(curve.monodromy.shift.y) << " "
            << format_double(curve.monodromy.shift.z) << "\n";
    }
    out << "s,x,y,z\n";
    for (int i = 0; i < curve.size(); ++i) {
        const Vec3& p = curve.points[i];
        out << format_double(i * curve.spacing) << "," << format_double(p.x) << ","
            << format_double(p.y) << "," << format_double(p.z) << "\n";
    }
    write_text_atomic(path, out.str());
}

IntrinsicProfile read_profile_csv(const std::string& path) {
    const CsvData data = read_csv(path);
    IntrinsicProfile p;
    for (const auto& row : data.rows) {
        if (row.size() < 3) fail(ErrorCode::IoError, "profile rows need s,k,tau");
        p.k.push_back(row[1]);
        p.tau.push_back(row[2]);
    }
    if (p.k.empty()) fail(ErrorCode::IoError, "no samples in " + path);
    p.closed = data.meta.count("closed") ? std::stoi(data.meta.at("closed")) != 0 : false;
    p.spacing = data.meta.count("spacing") ? std::stod(data.meta.at("spacing"))
                                           : (data.rows.size() > 1 ? data.rows[1][0] - data.rows[0][0]
                                                                   : 1.0);
    p.degenerate_mask.assign(p.k.size(), false);
    const double kmin = degeneracy_threshold(p.k);
    for (size_t i = 0; i < p.k.size(); ++i) p.degenerate_mask[i] = p.k[i] < kmin;
    return p;
}

void write_profile_csv(const std::string& path, const IntrinsicProfile& profile) {
    std::ostringstream out;
    out << "# closed=" << (profile.closed ? 1 : 0) << "\n";
    out << "# spacing=" << format_double(profile.spacing) << "\n";
    out << "s,k,tau\n";
    for (int i = 0; i < profile.size(); ++i)
        out << format_double(i * profile.spacing) << "," << format_double(profile.k[i]) << ","
            << format_double(profile.tau[i]) << "\n";
    write_text_atomic(path, out.str());
}

SurfaceOfRevolution read_surface_csv(const std::string& path) {
    const CsvData data = read_csv(path);
    std::vector<std::array<double, 6>> rows;
    for (const auto& row : data.rows) {
        if (row.size() < 6) fail(ErrorCode::IoError, "surface rows need r,f,f_r,f_rr,g,g_r");
        rows.push_back({row[0], row[1], row[2], row[3], row[4], row[5]});
    }
    return SurfaceOfRevolution::from_table(rows);
}

json chart_curve_to_json(const ChartCurve& c) {
    json j;
    j["kind"] = "chart";
    j["spacing"] = c.spacing;
    j["closed"] = c.closed;
    j["r_per"] = c.r_per;
    j["theta_per"] = c.th_per;
    j["r_drift"] = c.r_drift;
    j["theta_drift"] = c.th_drift;
    return j;
}

ChartCurve chart_curve_from_json(const json& j) {
    ChartCurve c;
    c.spacing = j.at("spacing").get<double>();
    c.closed = j.at("closed").get<bool>();
    c.r_per = j.at("r_per").get<std::vector<double>>();
    c.th_per = j.at("theta_per").get<std::vector<double>>();
    const auto rd = j.at("r_drift").get<std::vector<double>>();
    const auto td = j.at("theta_drift").get<std::vector<double>>();
    for (int i = 0; i < 4; ++i) {
        c.r_drift[i] = rd[i];
        c.th_drift[i] = td[i];
    }
    return c;
}

json discrete_curve_to_json(const DiscreteCurve& c) {
    json j;
    j["kind"] = "curve";
    j["spacing"] = c.spacing;
    j["closed"] = c.closed;
    j["param"] = c.param_kind == ParamKind::Arclength ? "arclength" : "general";
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({p.x, p.y, p.z});
    j["points"] = pts;
    if (c.closed && !c.monodromy.is_identity()) {
        j["mon_R"] = c.monodromy.rot.m;
        j["mon_d"] = {c.monodromy.shift.x, c.monodromy.shift.y, c.monodromy.shift.z};
    }
    return j;
}

DiscreteCurve discrete_curve_from_json(const json& j) {
    DiscreteCurve c;
    c.spacing = j.at("spacing").get<double>();
    c.closed = j.at("closed").get<bool>();
    c.param_kind = j.value("param", "general") == std::string("arclength")
                       ? ParamKind::Arclength
                       : ParamKind::General;
    for (const auto& p : j.at("points")) c.points.push_back({p[0], p[1], p[2]});
    if (j.contains("mon_R")) {
        const auto r = j.at("mon_R").get<std::vector<double>>();
        for (int i = 0; i < 9; ++i) c.monodromy.rot.m[i] = r[i];
        const auto d = j.at("mon_d").get<std::vector<double>>();
        c.monodromy.shift = {d[0], d[1], d[2]};
    }
    return c;
}

json surface_to_json(const SurfaceOfRevolution& s) {
    json j;
    j["kind"] = s.name();
    if (s.name() == "cylinder") j["r0"] = s.f(0.0);
    return j;
}

std::shared_ptr<SurfaceOfRevolution> surface_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "sphere")
        return std::make_shared<SurfaceOfRevolution>(SurfaceOfRevolution::sphere());
    if (kind == "cylinder")
        return std::make_shared<SurfaceOfRevolution>(
            SurfaceOfRevolution::cylinder(j.value("r0", 1.0)));
    if (kind == "bump")
        return std::make_shared<SurfaceOfRevolution>(
            SurfaceOfRevolution::gaussian_bump(j.value("amplitude", 0.3), j.value("width", 1.0)));
    if (kind == "custom" && j.contains("table"))
        return std::make_shared<SurfaceOfRevolution>(
            read_surface_csv(j.at("table").get<std::string>()));
    fail(ErrorCode::ConfigError, "unknown surface kind " + kind);
}

json soliton_spec_to_json(const SolitonSpec& spec) {
    json j;
    j["flow_kind"] = flow_name(spec.flow);
    j["c"] = spec.c;
    j["killing"] = {{"omega", spec.killing.omega}, {"sigma", spec.killing.sigma}};
    if (spec.ambient) {
        j["ambient_killing"] = {
            {"rotation", {spec.ambient->rotation.x, spec.ambient->rotation.y, spec.ambient->rotation.z}},
            {"translation",
             {spec.ambient->translation.x, spec.ambient->translation.y, spec.ambient->translation.z}}};
    }
    if (spec.surface) j["surface"] = surface_to_json(*spec.surface);
    if (std::holds_alternative<ChartCurve>(spec.generator))
        j["generator"] = chart_curve_to_json(std::get<ChartCurve>(spec.generator));
    else
        j["generator"] = discrete_curve_to_json(std::get<DiscreteCurve>(spec.generator));
    j["family"] = {{"name", spec.family_name}};
    for (const auto& [k, v] : spec.family) j["family"][k] = v;
    j["verified"] = spec.verified;
    j["verify_residual"] = spec.verify_residual;
    return j;
}

SolitonSpec soliton_spec_from_json(const json& j) {
    SolitonSpec spec;
    const std::string fk = j.at("flow_kind").get<std::string>();
    if (fk == "kdv") spec.flow = FlowKind::Kdv;
    else if (fk == "schrodinger") spec.flow = FlowKind::Schrodinger;
    else if (fk == "lie") spec.flow = FlowKind::Lie;
    else if (fk == "axial") spec.flow = FlowKind::AxialLie;
    else fail(ErrorCode::ConfigError, "unknown flow kind " + fk);
    spec.c = j.at("c").get<double>();
    spec.killing.omega = j.at("killing").at("omega").get<double>();
    spec.killing.sigma = j.at("killing").at("sigma").get<double>();
    if (j.contains("ambient_killing")) {
        AmbientKilling ak;
        const auto& r = j["ambient_killing"]["rotation"];
        const auto& t = j["ambient_killing"]["translation"];
        ak.rotation = {r[0], r[1], r[2]};
        ak.translation = {t[0], t[1], t[2]};
        spec.ambient = ak;
    }
    if (j.contains("surface")) spec.surface = surface_from_json(j.at("surface"));
    const auto& gen = j.at("generator");
    if (gen.at("kind").get<std::string>() == "chart")
        spec.generator = chart_curve_from_json(gen);
    else
        spec.generator = discrete_curve_from_json(gen);
    if (j.contains("family")) {
        for (const auto& [k, v] : j.at("family").items()) {
            if (k == "name")
                spec.family_name = v.get<std::string>();
            else
                spec.family[k] = v.get<double>();
        }
    }
    spec.verified = j.value("verified", false);
    spec.verify_residual = j.value("verify_residual", 0.0);
    return spec;
}

json frame_record(const FlowState& state) {
    json j;
    j["t"] = state.time;
    if (std::holds_alternative<DiscreteCurve>(state.payload)) {
        const auto& c = std::get<DiscreteCurve>(state.payload);
        json pts = json::array();
        for (const auto& p : c.points) pts.push_back({p.x, p.y, p.z});
        j["points"] = pts;
    } else if (std::holds_alternative<SphereMap>(state.payload)) {
        const auto& m = std::get<SphereMap>(state.payload);
        json pts = json::array();
        for (const auto& p : m.u) pts.push_back({p.x, p.y, p.z});
        j["u"] = pts;
    } else {
        j["chart"] = chart_curve_to_json(std::get<ChartCurve>(state.payload));
    }
    j["e1"] = energy_e1(state);
    j["e2"] = energy_e2(state);
    return j;
}

} // namespace geoflow
