#ifndef GEOFLOW_IO_HPP
#define GEOFLOW_IO_HPP

#include <string>

#include "json.hpp"

#include "geoflow/curve.hpp"
#include "geoflow/flows.hpp"
#include "geoflow/soliton.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

using json = nlohmann::json;

// Curve CSV: "# key=value" metadata comments, then header s,x,y,z.
// Metadata keys: closed, spacing, param (arclength|general), and the optional
// monodromy mon_R (9 values) / mon_d (3 values).
DiscreteCurve read_curve_csv(const std::string& path);
void write_curve_csv(const std::string& path, const DiscreteCurve& curve);

// Profile CSV: header s,k,tau plus the same comment conventions.
IntrinsicProfile read_profile_csv(const std::string& path);
void write_profile_csv(const std::string& path, const IntrinsicProfile& profile);

// Surface profile CSV with header r,f,f_r,f_rr,g,g_r.
SurfaceOfRevolution read_surface_csv(const std::string& path);

// Atomic text write (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

// FNV-1a 64-bit checksum of a file's bytes, hex-encoded.
std::string file_checksum(const std::string& path);

std::string format_double(double v); // 17 significant digits

json chart_curve_to_json(const ChartCurve& c);
ChartCurve chart_curve_from_json(const json& j);
json discrete_curve_to_json(const DiscreteCurve& c);
DiscreteCurve discrete_curve_from_json(const json& j);

json surface_to_json(const SurfaceOfRevolution& s);
std::shared_ptr<SurfaceOfRevolution> surface_from_json(const json& j);

json soliton_spec_to_json(const SolitonSpec& spec);
SolitonSpec soliton_spec_from_json(const json& j);

// One trajectory frame as a JSON-lines record {t, points|u|chart, e1, e2}.
json frame_record(const FlowState& state);

} // namespace geoflow

#endif
