#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nodal/lattice.hpp"
#include "nodal/theorems.hpp"

namespace nodal {

using ordered_json = nlohmann::ordered_json;

ordered_json surface_to_json(const SurfaceDescriptor& s);
ordered_json eigenfunction_to_json(const Eigenfunction& u);
ordered_json graph_to_json(const NodalGraph& g);
ordered_json verdict_to_json(const Verdict& v);
ordered_json report_to_json(const AnalysisReport& r);
ordered_json certificate_to_json(const VanishingCertificate& c, const Eigenfunction& u);

/// Verdict table: `theorem,lhs,rhs,holds,equality,equality_predicted,consistent`.
void write_verdict_csv(std::ostream& os, const std::vector<Verdict>& verdicts);

/// Chart drawing: sign-shaded domains, arcs, class-coded vertices.
std::string render_svg(const AnalysisReport& r);

/// Eigenfunction from a JSON mode list ([{l:[l1,l2],re,im},...] or
/// {"modes": [...]}).
Eigenfunction modes_from_json(const ordered_json& j);

} // namespace nodal
