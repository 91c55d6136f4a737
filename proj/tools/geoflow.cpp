// geoflow: simulate Hamiltonian curve flows, construct and verify geometric
// solitons, and run the Hasimoto pipeline. Artifacts are CSV / JSON lines /
// JSON; every command with outputs also writes a .manifest.json next to them.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "geoflow/elliptic.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/hasimoto.hpp"
#include "geoflow/io.hpp"
#include "geoflow/soliton.hpp"

namespace gf = geoflow;
using gf::json;

namespace {

const char* kVersion = "geoflow 0.1.0";

int log_level() {
    const char* env = std::getenv("GEOFLOW_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "error") return 0;
    if (v == "debug") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[geoflow] " << msg << "\n";
}

struct Manifest {
    json params = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    void write(const std::string& anchor_output) const {
        json j;
        j["version"] = kVersion;
        j["params"] = params;
        j["inputs"] = json::object();
        for (const auto& p : inputs) j["inputs"][p] = gf::file_checksum(p);
        j["outputs"] = outputs;
        gf::write_text_atomic(anchor_output + ".manifest.json", j.dump(2) + "\n");
    }
};

std::shared_ptr<gf::SurfaceOfRevolution> make_surface(const std::string& kind, double r0,
                                                      const std::string& table) {
    if (kind == "sphere")
        return std::make_shared<gf::SurfaceOfRevolution>(gf::SurfaceOfRevolution::sphere());
    if (kind == "cylinder")
        return std::make_shared<gf::SurfaceOfRevolution>(gf::SurfaceOfRevolution::cylinder(r0));
    if (kind == "bump")
        return std::make_shared<gf::SurfaceOfRevolution>(
            gf::SurfaceOfRevolution::gaussian_bump(0.3, 1.0));
    if (kind == "custom") {
        if (table.empty()) gf::fail(gf::ErrorCode::ConfigError, "custom surface needs --table");
        return std::make_shared<gf::SurfaceOfRevolution>(gf::read_surface_csv(table));
    }
    gf::fail(gf::ErrorCode::ConfigError, "unknown surface kind " + kind);
}

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) gf::fail(gf::ErrorCode::IoError, "cannot open " + path);
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(json::parse(line));
    }
    return out;
}

gf::DiscreteCurve curve_from_frame(const json& rec) {
    gf::DiscreteCurve c;
    for (const auto& p : rec.at("points")) c.points.push_back({p[0], p[1], p[2]});
    c.closed = true;
    c.param_kind = gf::ParamKind::Arclength;
    if (rec.contains("spacing")) c.spacing = rec["spacing"].get<double>();
    if (rec.contains("mon_R")) {
        const auto r = rec["mon_R"].get<std::vector<double>>();
        for (int i = 0; i < 9; ++i) c.monodromy.rot.m[i] = r[i];
        const auto d = rec["mon_d"].get<std::vector<double>>();
        c.monodromy.shift = {d[0], d[1], d[2]};
    }
    return c;
}

// ---------------- simulate ----------------

struct SimulateArgs {
    std::string flow = "lie";
    std::string input, out;
    double dt = 0.0, t_end = 0.0, alpha = 1.0, beta = 0.0;
    int save_every = 1;
    std::string surface_kind = "sphere";
    double surface_r0 = 1.0;
    std::string surface_table;
};

int run_simulate(const SimulateArgs& a) {
    gf::FlowState state;
    if (a.flow == "lie" || a.flow == "axial") {
        gf::DiscreteCurve c = gf::read_curve_csv(a.input);
        c.param_kind = gf::ParamKind::Arclength;
        state.kind = a.flow == "lie" ? gf::FlowKind::Lie : gf::FlowKind::AxialLie;
        state.alpha = a.alpha;
        state.beta = a.beta;
        state.payload = std::move(c);
    } else if (a.flow == "schrodinger" || a.flow == "kdv") {
        gf::DiscreteCurve c = gf::read_curve_csv(a.input);
        gf::SphereMap m;
        m.spacing = c.spacing;
        m.u = c.points;
        if (m.max_norm_defect() > 1e-6)
            gf::fail(gf::ErrorCode::InvalidSpec, "input samples are not unit vectors");
        m.renormalize();
        state.kind = a.flow == "schrodinger" ? gf::FlowKind::Schrodinger : gf::FlowKind::Kdv;
        state.payload = std::move(m);
    } else {
        gf::fail(gf::ErrorCode::ConfigError, "unknown flow " + a.flow);
    }

    std::ostringstream traj;
    gf::StepControl ctl{a.dt, a.t_end, a.save_every, true};
    long frames = 0;
    gf::run_flow(state, ctl, [&](const gf::FlowState& st) {
        json rec = gf::frame_record(st);
        if (std::holds_alternative<gf::DiscreteCurve>(st.payload)) {
            const auto& c = std::get<gf::DiscreteCurve>(st.payload);
            rec["spacing"] = c.spacing;
            if (c.closed && !c.monodromy.is_identity()) {
                rec["mon_R"] = c.monodromy.rot.m;
                rec["mon_d"] = {c.monodromy.shift.x, c.monodromy.shift.y, c.monodromy.shift.z};
            }
        } else if (std::holds_alternative<gf::SphereMap>(st.payload)) {
            rec["spacing"] = std::get<gf::SphereMap>(st.payload).spacing;
        }
        traj << rec.dump() << "\n";
        ++frames;
    });
    gf::write_text_atomic(a.out, traj.str());
    log_info("wrote " + std::to_string(frames) + " frames to " + a.out);

    Manifest man;
    man.params = {{"command", "simulate"}, {"flow", a.flow},  {"input", a.input},
                  {"dt", a.dt},            {"t_end", a.t_end}, {"save_every", a.save_every},
                  {"alpha", a.alpha},      {"beta", a.beta}};
    man.inputs = {a.input};
    man.outputs = {a.out};
    man.write(a.out);
    return 0;
}

// ---------------- hasimoto ----------------

int run_hasimoto(const std::string& traj_path, const std::string& out_path) {
    const auto frames = read_jsonl(traj_path);
    if (frames.size() < 3) gf::fail(gf::ErrorCode::TooFewFrames, "need at least 3 frames");
    std::vector<gf::ComplexProfile> profiles;
    std::vector<double> times;
    for (const auto& rec : frames) {
        const auto analysis = gf::frenet_analyze(curve_from_frame(rec));
        profiles.push_back(gf::hasimoto_transform(analysis.profile));
        times.push_back(rec.at("t").get<double>());
    }
    const double frame_dt = times.size() > 1 ? times[1] - times[0] : 1.0;
    const auto fit = gf::fit_gauge(profiles, frame_dt);

    std::ostringstream out;
    for (size_t j = 0; j < profiles.size(); ++j) {
        json rec;
        rec["t"] = times[j];
        std::vector<double> s(profiles[j].size()), re(profiles[j].size()), im(profiles[j].size());
        for (int i = 0; i < profiles[j].size(); ++i) {
            s[i] = i * profiles[j].spacing;
            re[i] = profiles[j].phi[i].real();
            im[i] = profiles[j].phi[i].imag();
        }
        rec["s"] = s;
        rec["re"] = re;
        rec["im"] = im;
        rec["A"] = fit.a_of_t[j];
        rec["spacing"] = profiles[j].spacing;
        rec["closed"] = profiles[j].closed;
        rec["holonomy"] = profiles[j].holonomy;
        out << rec.dump() << "\n";
    }
    gf::write_text_atomic(out_path, out.str());
    log_info("gauge residual norm " + gf::format_double(fit.residual_norm));

    Manifest man;
    man.params = {{"command", "hasimoto"}, {"traj", traj_path}};
    man.inputs = {traj_path};
    man.outputs = {out_path};
    man.write(out_path);
    return 0;
}

// ---------------- residual ----------------

struct PhiFrames {
    std::vector<gf::ComplexProfile> profiles;
    double frame_dt = 0.0;
};

PhiFrames load_phi(const std::string& traj_path) {
    const auto recs = read_jsonl(traj_path);
    if (recs.size() < 3) gf::fail(gf::ErrorCode::TooFewFrames, "need at least 3 frames");
    PhiFrames out;
    std::vector<double> times;
    for (const auto& rec : recs) {
        times.push_back(rec.at("t").get<double>());
        if (rec.contains("re")) {
            gf::ComplexProfile p;
            const auto re = rec.at("re").get<std::vector<double>>();
            const auto im = rec.at("im").get<std::vector<double>>();
            p.spacing = rec.at("spacing").get<double>();
            p.closed = rec.value("closed", true);
            p.holonomy = rec.value("holonomy", 0.0);
            for (size_t i = 0; i < re.size(); ++i) p.phi.emplace_back(re[i], im[i]);
            out.profiles.push_back(std::move(p));
        } else {
            const auto analysis = gf::frenet_analyze(curve_from_frame(rec));
            out.profiles.push_back(gf::hasimoto_transform(analysis.profile));
        }
    }
    out.frame_dt = times[1] - times[0];
    return out;
}

PhiFrames coarsen(const PhiFrames& fine, int step) {
    PhiFrames out;
    out.frame_dt = fine.frame_dt * step;
    for (size_t j = 0; j < fine.profiles.size(); j += step) {
        const auto& p = fine.profiles[j];
        gf::ComplexProfile q;
        q.spacing = p.spacing * step;
        q.closed = p.closed;
        q.holonomy = p.holonomy;
        for (int i = 0; i < p.size(); i += step) q.phi.push_back(p.phi[i]);
        out.profiles.push_back(std::move(q));
    }
    return out;
}

int run_residual(const std::string& kind, const std::string& traj_path) {
    const PhiFrames fine = load_phi(traj_path);
    auto eval = [&](const PhiFrames& f) -> double {
        if (f.profiles.size() < 3) return std::nan("");
        if (kind == "nls") {
            const auto fit = gf::fit_gauge(f.profiles, f.frame_dt);
            return gf::nls_residual(f.profiles, f.frame_dt, fit.a_of_t).sup;
        }
        return gf::mkdv_residual(f.profiles, f.frame_dt).sup;
    };
    const double r1 = eval(fine);
    std::cout << gf::format_double(r1) << "\n";
    std::cout << "# refinement table (grid, residual, ratio)\n";
    double prev = 0.0;
    const int n = fine.profiles.front().size();
    for (int step : {4, 2, 1}) {
        if (n % step != 0 || static_cast<int>(fine.profiles.size()) < 2 * step + 1) continue;
        const double r = eval(coarsen(fine, step));
        std::cout << "h*" << step << " " << gf::format_double(r);
        if (prev > 0.0 && r > 0.0) std::cout << " ratio " << gf::format_double(prev / r);
        std::cout << "\n";
        prev = r;
    }
    return 0;
}

// ---------------- soliton ----------------

struct SolitonMakeArgs {
    std::string family = "cylinder";
    std::string out = "spec.json";
    double r = 1.0, k = 1.0, sigma = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0;
    int n = 512;
    std::string surface_kind = "sphere";
    double surface_r0 = 1.0;
    std::string surface_table;
    double c = 0.0, omega = 0.0, C = 0.0;
    double k0 = 1.0, p = 0.3, w = 0.9;
    double length = 0.0, r0 = 1.0471975511965976; // pi/3
};

int run_soliton_make(const SolitonMakeArgs& a) {
    gf::SolitonSpec spec;
    if (a.family == "cylinder") {
        spec = gf::cylinder_kdv_soliton(a.r, a.k, a.sigma, a.C1, a.C2, a.C3, a.n);
    } else if (a.family == "parallel") {
        auto surf = make_surface(a.surface_kind, a.surface_r0, a.surface_table);
        const double root = gf::parallel_soliton_find(*surf, a.c, a.omega, a.C);
        spec.flow = gf::FlowKind::Kdv;
        spec.surface = surf;
        spec.c = a.c;
        spec.killing = {a.omega, 0.0};
        spec.generator = gf::make_parallel(*surf, root, a.n, 1);
        spec.family_name = "parallel";
        spec.family = {{"r0", root}, {"C", a.C}};
        const auto rep = gf::kdv_reduced_residual(*surf, std::get<gf::ChartCurve>(spec.generator),
                                                  spec.killing, spec.c);
        spec.verify_residual = rep.sup_residual;
        spec.verified = rep.sup_residual < 1e-8;
        const auto roots = gf::parallel_soliton_roots(*surf, a.c, a.omega, a.C);
        std::cout << "roots:";
        for (double rr : roots) std::cout << " " << gf::format_double(rr);
        std::cout << "\n";
    } else if (a.family == "elastic") {
        const auto params = gf::ElasticParams::from_kpw(a.k0, a.p, a.w);
        const double length = a.length > 0.0 ? a.length : params.curvature_period();
        const auto profile = gf::elastic_profile(params, length, a.n);
        const gf::FrenetFrame frame0{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        const auto curve = gf::reconstruct_from_intrinsics(profile, {0, 0, 0}, frame0);
        const auto fit = gf::fit_ambient_killing(curve, true);
        spec.flow = gf::FlowKind::Lie;
        spec.ambient = fit.killing;
        spec.c = 0.0;
        spec.generator = curve;
        spec.family_name = "elastic";
        spec.family = {{"k0", a.k0},          {"p", a.p},           {"w", a.w},
                       {"lambda", params.lambda}, {"c_elastic", params.c},
                       {"fit_c", fit.c},      {"fit_rms", fit.rms}};
        const auto rep = gf::lie_soliton_residual(curve, fit.killing, 0.0);
        spec.verify_residual = rep.sup_residual;
        spec.verified = rep.sup_residual < 1e-3;
    } else if (a.family == "magnetic") {
        auto surf = make_surface(a.surface_kind, a.surface_r0, a.surface_table);
        const double omega = a.omega, c = a.c;
        gf::MagneticFieldSpec field{
            [surf, omega, c](double r, double) { return c - omega * surf->f(r); }};
        const double f0 = surf->f(a.r0);
        const double length = a.length > 0.0 ? a.length : 2.0 * M_PI * f0;
        const auto chart = gf::magnetic_geodesic_integrate(*surf, field, a.r0, 0.0,
                                                           gf::Chart2{0.0, 1.0 / f0}, length, a.n);
        spec.flow = gf::FlowKind::Schrodinger;
        spec.surface = surf;
        spec.c = c;
        spec.killing = {omega, 0.0};
        spec.generator = chart;
        spec.family_name = "magnetic";
        spec.family = {{"r0", a.r0}, {"length", length}};
        const auto rep = gf::schrodinger_reduced_residual(
            *surf, std::get<gf::ChartCurve>(spec.generator), spec.killing, spec.c);
        spec.verify_residual = rep.sup_residual;
        spec.verified = rep.sup_residual < 1e-5;
    } else {
        gf::fail(gf::ErrorCode::ConfigError, "unknown family " + a.family);
    }

    gf::write_text_atomic(a.out, gf::soliton_spec_to_json(spec).dump(2) + "\n");
    log_info(std::string("spec verified=") + (spec.verified ? "true" : "false") +
             " residual=" + gf::format_double(spec.verify_residual));

    Manifest man;
    man.params = {{"command", "soliton-make"}, {"family", a.family}, {"n", a.n}};
    man.outputs = {a.out};
    man.write(a.out);
    return 0;
}

struct SolitonVerifyArgs {
    std::string spec_path;
    std::string report = "report.json";
    bool flow_check = false;
    double t_end = 0.05;
};

int run_soliton_verify(const SolitonVerifyArgs& a) {
    const auto spec = gf::soliton_spec_from_json(json::parse(gf::read_text(a.spec_path)));
    json report;
    report["spec"] = a.spec_path;

    gf::ResidualReport rep;
    if (spec.flow == gf::FlowKind::Kdv) {
        rep = gf::kdv_reduced_residual(*spec.surface, std::get<gf::ChartCurve>(spec.generator),
                                       spec.killing, spec.c);
    } else if (spec.flow == gf::FlowKind::Schrodinger) {
        rep = gf::schrodinger_reduced_residual(
            *spec.surface, std::get<gf::ChartCurve>(spec.generator), spec.killing, spec.c);
    } else {
        if (!spec.ambient) gf::fail(gf::ErrorCode::InvalidSpec, "lie spec lacks ambient killing");
        rep = gf::lie_soliton_residual(std::get<gf::DiscreteCurve>(spec.generator), *spec.ambient,
                                       spec.c);
    }
    report["residual"] = {{"equation", rep.equation_id},
                          {"sup", rep.sup_residual},
                          {"l2", rep.l2_residual}};
    for (const auto& [k, v] : rep.extras) report["residual"][k] = v;

    if (a.flow_check) {
        double sup_err = 0.0;
        if (spec.flow == gf::FlowKind::Kdv) {
            const auto& gen = std::get<gf::ChartCurve>(spec.generator);
            gf::FlowState st;
            st.kind = gf::FlowKind::Kdv;
            st.payload = gen;
            st.surface = spec.surface;
            const double h = gen.spacing;
            gf::StepControl ctl{0.2 * h * h * h, a.t_end, 1 << 30, true};
            gf::run_flow(st, ctl);
            const auto& evolved = std::get<gf::ChartCurve>(st.payload);
            const auto closed_form = std::get<gf::ChartCurve>(gf::evolve_soliton(spec, st.time));
            for (int i = 0; i < gen.size(); ++i) {
                const gf::Vec3 pa = spec.surface->embed(evolved.r(i), evolved.theta(i));
                const gf::Vec3 pb = spec.surface->embed(closed_form.r(i), closed_form.theta(i));
                sup_err = std::max(sup_err, gf::norm(pa - pb));
            }
        } else if (spec.flow == gf::FlowKind::Lie) {
            auto gen = std::get<gf::DiscreteCurve>(spec.generator);
            gf::FlowState st;
            st.kind = gf::FlowKind::Lie;
            st.payload = gen;
            const double h = gen.spacing;
            gf::StepControl ctl{0.1 * h * h, a.t_end, 1 << 30, true};
            gf::run_flow(st, ctl);
            const auto& evolved = std::get<gf::DiscreteCurve>(st.payload);
            const auto closed_form = std::get<gf::DiscreteCurve>(gf::evolve_soliton(spec, st.time));
            for (int i = 0; i < gen.size(); ++i)
                sup_err = std::max(sup_err, gf::norm(evolved.points[i] - closed_form.points[i]));
        } else {
            gf::fail(gf::ErrorCode::InvalidSpec,
                     "flow-check supports kdv chart and lie curve specs");
        }
        report["flow_check"] = {{"t_end", a.t_end}, {"sup_error", sup_err}};
    }

    gf::write_text_atomic(a.report, report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";

    Manifest man;
    man.params = {{"command", "soliton-verify"}, {"flow_check", a.flow_check}, {"t_end", a.t_end}};
    man.inputs = {a.spec_path};
    man.outputs = {a.report};
    man.write(a.report);
    return 0;
}

// ---------------- elastic / report ----------------

int run_elastic(double k0, double p, double w, double length, int n, const std::string& out) {
    const auto params = gf::ElasticParams::from_kpw(k0, p, w);
    const double span = length > 0.0 ? length : std::max(params.curvature_period(), 1.0);
    const auto profile = gf::elastic_profile(params, span, n);
    gf::write_profile_csv(out, profile);
    std::cout << "lambda " << gf::format_double(params.lambda) << "\n";
    std::cout << "c " << gf::format_double(params.c) << "\n";
    std::cout << "period " << gf::format_double(params.curvature_period()) << "\n";

    Manifest man;
    man.params = {{"command", "elastic"}, {"k0", k0}, {"p", p}, {"w", w},
                  {"length", span},       {"n", n}};
    man.outputs = {out};
    man.write(out);
    return 0;
}

int run_report(const std::string& traj_path, const std::string& out_path) {
    const auto recs = read_jsonl(traj_path);
    if (recs.empty()) gf::fail(gf::ErrorCode::IoError, "empty trajectory");
    json rep;
    rep["frames"] = recs.size();
    rep["t0"] = recs.front().at("t").get<double>();
    rep["t1"] = recs.back().at("t").get<double>();
    double e1_0 = recs.front().value("e1", 0.0), e2_0 = recs.front().value("e2", 0.0);
    double e1_dev = 0.0, e2_dev = 0.0, norm_defect = 0.0;
    for (const auto& rec : recs) {
        e1_dev = std::max(e1_dev, std::abs(rec.value("e1", 0.0) - e1_0));
        e2_dev = std::max(e2_dev, std::abs(rec.value("e2", 0.0) - e2_0));
        if (rec.contains("u")) {
            for (const auto& p : rec["u"]) {
                const gf::Vec3 v{p[0], p[1], p[2]};
                norm_defect = std::max(norm_defect, std::abs(gf::norm(v) - 1.0));
            }
        }
    }
    rep["e1"] = e1_0;
    rep["e2"] = e2_0;
    rep["e1_drift_abs"] = e1_dev;
    rep["e2_drift_abs"] = e2_dev;
    rep["e1_drift_rel"] = e1_0 != 0.0 ? e1_dev / std::abs(e1_0) : e1_dev;
    rep["e2_drift_rel"] = e2_0 != 0.0 ? e2_dev / std::abs(e2_0) : e2_dev;
    if (norm_defect > 0.0) rep["max_norm_defect"] = norm_defect;
    gf::write_text_atomic(out_path, rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";

    Manifest man;
    man.params = {{"command", "report"}};
    man.inputs = {traj_path};
    man.outputs = {out_path};
    man.write(out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{kVersion};
    app.set_config("--config", "", "flat key = value config file");
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "integrate a flow");
    simulate->add_option("--flow", sim.flow, "lie|axial|schrodinger|kdv")->required();
    simulate->add_option("--input", sim.input, "curve csv")->required();
    simulate->add_option("--out", sim.out, "trajectory jsonl")->required();
    simulate->add_option("--dt", sim.dt)->required();
    simulate->add_option("--t-end", sim.t_end)->required();
    simulate->add_option("--save-every", sim.save_every);
    simulate->add_option("--alpha", sim.alpha);
    simulate->add_option("--beta", sim.beta);

    std::string h_traj, h_out = "phi.jsonl";
    auto* has = app.add_subcommand("hasimoto", "curve trajectory -> Hasimoto field");
    has->add_option("--traj", h_traj)->required();
    has->add_option("--out", h_out);

    std::string r_kind = "nls", r_traj;
    auto* res = app.add_subcommand("residual", "NLS/mKdV residual and refinement table");
    res->add_option("--kind", r_kind, "nls|mkdv");
    res->add_option("--traj", r_traj)->required();

    auto* sol = app.add_subcommand("soliton", "construct / verify geometric solitons");
    sol->require_subcommand(1);
    SolitonMakeArgs mk;
    auto* mksub = sol->add_subcommand("make", "construct a soliton spec");
    mksub->add_option("--family", mk.family, "cylinder|parallel|elastic|magnetic")->required();
    mksub->add_option("--out", mk.out);
    mksub->add_option("--r", mk.r);
    mksub->add_option("--k", mk.k);
    mksub->add_option("--sigma", mk.sigma);
    mksub->add_option("--C1", mk.C1);
    mksub->add_option("--C2", mk.C2);
    mksub->add_option("--C3", mk.C3);
    mksub->add_option("--n", mk.n);
    mksub->add_option("--surface", mk.surface_kind, "sphere|cylinder|bump|custom");
    mksub->add_option("--r0", mk.r0);
    mksub->add_option("--surface-r0", mk.surface_r0);
    mksub->add_option("--table", mk.surface_table);
    mksub->add_option("--c", mk.c);
    mksub->add_option("--omega", mk.omega);
    mksub->add_option("--C", mk.C);
    mksub->add_option("--k0", mk.k0);
    mksub->add_option("--p", mk.p);
    mksub->add_option("--w", mk.w);
    mksub->add_option("--length", mk.length);

    SolitonVerifyArgs vf;
    auto* vfsub = sol->add_subcommand("verify", "verify a soliton spec");
    vfsub->add_option("--spec", vf.spec_path)->required();
    vfsub->add_option("--report", vf.report);
    vfsub->add_flag("--flow-check", vf.flow_check);
    vfsub->add_option("--t-end", vf.t_end);

    double e_k0 = 1.0, e_p = 0.3, e_w = 0.9, e_len = 0.0;
    int e_n = 1024;
    std::string e_out = "profile.csv";
    auto* ela = app.add_subcommand("elastic", "elastic curvature/torsion profile");
    ela->add_option("--k0", e_k0);
    ela->add_option("--p", e_p);
    ela->add_option("--w", e_w);
    ela->add_option("--length", e_len);
    ela->add_option("--n", e_n);
    ela->add_option("--out", e_out);

    std::string rp_traj, rp_out = "report.json";
    auto* rpt = app.add_subcommand("report", "trajectory conservation summary");
    rpt->add_option("--traj", rp_traj)->required();
    rpt->add_option("--out", rp_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*has) return run_hasimoto(h_traj, h_out);
        if (*res) return run_residual(r_kind, r_traj);
        if (*sol) {
            if (*mksub) return run_soliton_make(mk);
            if (*vfsub) return run_soliton_verify(vf);
        }
        if (*ela) return run_elastic(e_k0, e_p, e_w, e_len, e_n, e_out);
        if (*rpt) return run_report(rp_traj, rp_out);
    } catch (const gf::Error& e) {
        const bool config = e.code() == gf::ErrorCode::ConfigError;
        std::cerr << "{\"error\": \"" << gf::error_name(e.code()) << "\", \"message\": \""
                  << e.what() << "\"}\n";
        return config ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"Unhandled\", \"message\": \"" << e.what() << "\"}\n";
        return 1;
    }
    return 0;
}
