#include "nodal/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace nodal {

ordered_json surface_to_json(const SurfaceDescriptor& s) {
    return ordered_json{
        {"kind", surface_kind_name(s.kind)},
        {"chart_extent", {{s.x_min, s.x_max}, {s.y_min, s.y_max}}},
        {"chi", s.euler_characteristic},
        {"q", s.contour_count},
        {"genus", s.genus},
        {"orientable", s.orientable},
    };
}

ordered_json eigenfunction_to_json(const Eigenfunction& u) {
    ordered_json modes = ordered_json::array();
    for (const auto& md : u.modes)
        modes.push_back(ordered_json{{"l", {md.l1, md.l2}},
                                     {"re", md.mu.real()},
                                     {"im", md.mu.imag()}});
    return ordered_json{
        {"family", family_name(u.family)},
        {"modes", modes},
        {"ell", u.ell},
        {"m", u.m},
        {"j", u.j},
        {"k", u.k},
        {"a", u.a},
        {"b", u.b},
        {"lambda", u.lambda},
    };
}

ordered_json graph_to_json(const NodalGraph& g) {
    ordered_json vertices = ordered_json::array();
    for (const auto& v : g.vertices)
        vertices.push_back(ordered_json{
            {"id", v.id},
            {"pos", {v.pos.x, v.pos.y}},
            {"class", vertex_class_name(v.cls)},
            {"degree", v.degree},
            {"order", v.vanishing_order},
        });
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) {
        ordered_json poly = ordered_json::array();
        for (const auto& p : e.polyline) poly.push_back({p.x, p.y});
        edges.push_back(ordered_json{
            {"id", e.id},
            {"v_from", e.v_from},
            {"v_to", e.v_to},
            {"polyline", poly},
            {"on_boundary", e.on_boundary},
        });
    }
    ordered_json faces = ordered_json::array();
    for (const auto& fc : g.faces)
        faces.push_back(ordered_json{
            {"id", fc.id},
            {"sign", fc.sign},
            {"area_estimate", fc.area_estimate},
            {"is_disc", fc.is_disc},
        });
    return ordered_json{
        {"vertices", vertices},
        {"edges", edges},
        {"faces", faces},
        {"counts",
         {{"V", g.V}, {"E", g.E}, {"F", g.F}, {"n", g.n_components}, {"c", g.c_circles},
          {"V_graph", g.V_graph}, {"E_graph", g.E_graph}, {"cellular", g.cellular}}},
    };
}

ordered_json verdict_to_json(const Verdict& v) {
    ordered_json j{
        {"theorem", v.theorem},
        {"lhs", v.lhs.value()},
        {"rhs", v.rhs.value()},
        {"holds", v.holds},
        {"equality", v.equality},
    };
    if (v.equality_predicted.has_value())
        j["equality_predicted"] = *v.equality_predicted;
    else
        j["equality_predicted"] = nullptr;
    j["consistent"] = v.consistent;
    return j;
}

ordered_json report_to_json(const AnalysisReport& r) {
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v));
    ordered_json j{
        {"surface", surface_to_json(r.surface)},
        {"eigenfunction", eigenfunction_to_json(r.eigenfunction)},
        {"lambda", r.lambda},
        {"k", r.k_index},
        {"counts",
         {{"V", r.V}, {"E", r.E}, {"F", r.F}, {"n", r.n}, {"c", r.c},
          {"V_graph", r.V_graph}, {"E_graph", r.E_graph},
          {"c_int", r.c_int}, {"c_bnd", r.c_bnd}}},
        {"degree_histogram", ordered_json::object()},
        {"c4_split",
         {{"interior", r.c4.interior},
          {"boundary_in_c4", r.c4.boundary_in_c4},
          {"boundary_out_c4", r.c4.boundary_out_c4}}},
        {"orders",
         {{"sum_interior", r.sum_gamma_int},
          {"sum_boundary", r.sum_gamma_bnd},
          {"all_two", r.all_orders_two}}},
        {"euler", {{"slack", r.slack}, {"cellular", r.cellular}}},
    };
    for (const auto& [deg, cnt] : r.degree_hist)
        j["degree_histogram"][std::to_string(deg)] = cnt;
    if (r.has_seed) j["seed"] = r.seed;
    else j["seed"] = nullptr;
    j["graph"] = graph_to_json(r.graph);
    j["verdicts"] = verdicts;
    return j;
}

ordered_json certificate_to_json(const VanishingCertificate& c, const Eigenfunction& u) {
    ordered_json mu = ordered_json::array();
    for (const auto& md : u.modes)
        mu.push_back(ordered_json{{"l", {md.l1, md.l2}},
                                  {"re", md.mu.real()},
                                  {"im", md.mu.imag()}});
    return ordered_json{
        {"n", c.n},
        {"lambda", c.lambda},
        {"C", c.equations},
        {"r2", c.r2},
        {"mu", mu},
        {"residual_max", c.residual_max},
        {"attained_order", c.attained_order},
        {"arcs_at_origin", c.arcs_at_origin},
        {"paper_lambda", c.used_paper_lambda},
    };
}

void write_verdict_csv(std::ostream& os, const std::vector<Verdict>& verdicts) {
    os << "# nodal-atlas verdicts v1\n";
    os << "theorem,lhs,rhs,holds,equality,equality_predicted,consistent\n";
    for (const auto& v : verdicts) {
        os << v.theorem << ',' << v.lhs.str() << ',' << v.rhs.str() << ','
           << (v.holds ? 1 : 0) << ',' << (v.equality ? 1 : 0) << ',';
        if (v.equality_predicted.has_value()) os << (*v.equality_predicted ? 1 : 0);
        os << ',' << (v.consistent ? 1 : 0) << '\n';
    }
}

Eigenfunction modes_from_json(const ordered_json& j) {
    const ordered_json* arr = &j;
    if (j.is_object() && j.contains("modes")) arr = &j["modes"];
    if (!arr->is_array() || arr->empty())
        throw std::invalid_argument("mode list: expected a non-empty JSON array");
    std::vector<TorusMode> modes;
    for (const auto& m : *arr) {
        TorusMode md;
        md.l1 = m.at("l").at(0).get<int>();
        md.l2 = m.at("l").at(1).get<int>();
        double re = m.value("re", 0.0);
        double im = m.value("im", 0.0);
        md.mu = {re, im};
        modes.push_back(md);
    }
    return torus_combination(std::move(modes));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string render_svg(const AnalysisReport& r) {
    const SurfaceDescriptor& s = r.surface;
    const double w = s.width(), h = s.height();
    const double pad = 0.05 * std::max(w, h);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
       << fmt(s.x_min - pad) << ' ' << fmt(-s.y_max - pad) << ' '
       << fmt(w + 2 * pad) << ' ' << fmt(h + 2 * pad) << "\">\n";

    // sign shading on a coarse raster (chart y points up; SVG y down)
    const int ns = 64;
    const Eigenfunction& u = r.eigenfunction;
    for (int j = 0; j < ns; ++j) {
        for (int i = 0; i < ns; ++i) {
            double x = s.x_min + w * (i + 0.5) / ns;
            double y = s.y_min + h * (j + 0.5) / ns;
            double v = eval(u, {x, y});
            const char* color = v >= 0 ? "#d7191c" : "#2c7bb6";
            os << "<rect x=\"" << fmt(s.x_min + w * i / ns) << "\" y=\""
               << fmt(-(s.y_min + h * (j + 1) / ns)) << "\" width=\"" << fmt(w / ns)
               << "\" height=\"" << fmt(h / ns) << "\" fill=\"" << color
               << "\" fill-opacity=\"0.18\"/>\n";
        }
    }

    // chart frame
    os << "<rect x=\"" << fmt(s.x_min) << "\" y=\"" << fmt(-s.y_max) << "\" width=\""
       << fmt(w) << "\" height=\"" << fmt(h)
       << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"" << fmt(0.004 * w) << "\"/>\n";

    // arcs; split across seam jumps
    for (const auto& e : r.graph.edges) {
        const char* stroke = e.on_boundary ? "#777777" : "#111111";
        std::ostringstream pts;
        bool open = false;
        Vec2 prev{};
        auto flush = [&]() {
            if (open)
                os << "<polyline fill=\"none\" stroke=\"" << stroke
                   << "\" stroke-width=\"" << fmt(0.006 * w) << "\" points=\""
                   << pts.str() << "\"/>\n";
            pts.str("");
            open = false;
        };
        for (const auto& p : e.polyline) {
            if (open) {
                bool jump = (s.periodic_x() && std::fabs(p.x - prev.x) > 0.5 * w) ||
                            (s.periodic_y() && std::fabs(p.y - prev.y) > 0.5 * h);
                if (jump) flush();
            }
            pts << fmt(p.x) << ',' << fmt(-p.y) << ' ';
            open = true;
            prev = p;
        }
        flush();
    }

    // vertices, class-coded
    for (const auto& v : r.graph.vertices) {
        const char* fill = "#000000";
        switch (v.cls) {
        case VertexClass::Interior: fill = "#e31a1c"; break;
        case VertexClass::Boundary: fill = "#ff7f00"; break;
        case VertexClass::Corner: fill = "#969696"; break;
        case VertexClass::Dummy: fill = "#1f78b4"; break;
        }
        os << "<circle cx=\"" << fmt(v.pos.x) << "\" cy=\"" << fmt(-v.pos.y)
           << "\" r=\"" << fmt(0.009 * w) << "\" fill=\"" << fill
           << "\" stroke=\"#000\" stroke-width=\"" << fmt(0.0015 * w) << "\"/>\n";
    }

    os << "<text x=\"" << fmt(s.x_min) << "\" y=\"" << fmt(-s.y_max - 0.3 * pad)
       << "\" font-size=\"" << fmt(0.035 * w) << "\">"
       << family_name(u.family) << "  V=" << r.V << " E=" << r.E << " F=" << r.F
       << " n=" << r.n << " c=" << r.c << " slack=" << r.slack << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace nodal
