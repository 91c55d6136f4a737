#ifndef GEOFLOW_FLOWS_HPP
#define GEOFLOW_FLOWS_HPP

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "geoflow/curve.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

// Closed map S^1 -> S^2, sampled on a uniform periodic grid.
struct SphereMap {
    std::vector<Vec3> u;
    double spacing = 0.0;

    int size() const { return static_cast<int>(u.size()); }
    Vec3 at(int i) const { const int n = size(); return u[(i % n + n) % n]; }
    Vec3 d1(int i) const { return (at(i + 1) - at(i - 1)) / (2.0 * spacing); }
    Vec3 d2(int i) const {
        return (at(i + 1) - at(i) * 2.0 + at(i - 1)) / (spacing * spacing);
    }
    double max_norm_defect() const;
    void renormalize();
};

enum class FlowKind { Lie, AxialLie, Schrodinger, Kdv };

const char* flow_name(FlowKind k);

struct StepControl {
    double dt = 0.0;
    double t_end = 0.0;
    int save_every = 1;
    bool project = true; // renormalize sphere maps after each step
};

struct FlowState {
    double time = 0.0;
    FlowKind kind = FlowKind::Lie;
    double alpha = 1.0, beta = 0.0; // axial-flow weights
    std::variant<DiscreteCurve, SphereMap, ChartCurve> payload;
    std::shared_ptr<const SurfaceOfRevolution> surface; // chart payloads only

    double grid_spacing() const;
};

// Explicit RK4 stability ceilings (empirical constants, pinned by tests).
double max_stable_dt(FlowKind kind, double h);

void step_lie(DiscreteCurve& curve, double dt);
void step_axial_lie(DiscreteCurve& curve, double dt, double alpha, double beta);
void step_schrodinger_map(SphereMap& map, double dt, bool project = true);
void step_kdv_map(SphereMap& map, double dt, bool project = true);
void step_kdv_map(ChartCurve& curve, const SurfaceOfRevolution& surf, double dt);

// One step of the state's own flow.
void step(FlowState& state, double dt, bool project = true);

// March to t_end, invoking on_frame at t = 0, after every save_every-th
// step, and at the final step.
void run_flow(FlowState& state, const StepControl& control,
              const std::function<void(const FlowState&)>& on_frame = {});

double energy_e1(const FlowState& state);
double energy_e2(const FlowState& state);
double energy_e1(const SphereMap& map);
double energy_e2(const SphereMap& map);
double energy_e1(const ChartCurve& c, const SurfaceOfRevolution& surf);
double energy_e2(const ChartCurve& c, const SurfaceOfRevolution& surf);

} // namespace geoflow

#endif
