#include "nodal/nodal_graph.hpp"

#include <numeric>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct ComponentStats {
    int n = 0;                 // connected components of the graph
    int c = 0;                 // circle components (dummy loop or bare corner cycle)
    int bare_corner_cycles = 0;
};

ComponentStats component_stats(const NodalGraph& g) {
    const int nv = (int)g.vertices.size();
    ComponentStats st;
    if (nv == 0) return st;

    UnionFind uf(nv);
    for (const auto& e : g.edges) uf.unite(e.v_from, e.v_to);

    std::vector<int> comp_of(nv);
    std::vector<int> roots;
    for (int v = 0; v < nv; ++v) {
        int r = uf.find(v);
        comp_of[v] = r;
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    st.n = (int)roots.size();

    for (int root : roots) {
        bool all_corner = true;
        bool single_dummy = true;
        int members = 0;
        for (int v = 0; v < nv; ++v) {
            if (comp_of[v] != root) continue;
            ++members;
            if (g.vertices[v].cls != VertexClass::Corner) all_corner = false;
            if (g.vertices[v].cls != VertexClass::Dummy) single_dummy = false;
        }
        if (all_corner) {
            ++st.bare_corner_cycles;
            ++st.c;
        } else if (single_dummy && members == 1) {
            ++st.c;
        }
    }
    return st;
}

} // namespace

std::pair<int, int> components(const NodalGraph& g) {
    ComponentStats st = component_stats(g);
    return {st.n, st.c};
}

long long euler_slack(const NodalGraph& g, const SurfaceDescriptor& s) {
    long long degsum = 0;
    for (const auto& v : g.vertices) degsum += v.degree;
    if (degsum != 2 * (long long)g.edges.size())
        throw ExtractionError("euler_slack: handshake sum deg != 2E");
    return (g.V - g.E + g.F) - s.euler_characteristic - (g.n_components - 1);
}

std::map<int, long long> degree_histogram(const NodalGraph& g) {
    std::map<int, long long> hist;
    for (const auto& v : g.vertices) {
        if (v.cls != VertexClass::Interior && v.cls != VertexClass::Boundary) continue;
        ++hist[v.degree];
    }
    return hist;
}

C4Split c4_split(const NodalGraph& g) {
    C4Split split;
    for (const auto& v : g.vertices) {
        if (v.cls == VertexClass::Interior) {
            ++split.interior;
        } else if (v.cls == VertexClass::Boundary) {
            if (v.degree >= 4) ++split.boundary_in_c4;
            else ++split.boundary_out_c4;
        }
    }
    return split;
}

void finalize_counts(NodalGraph& g) {
    ComponentStats st = component_stats(g);
    long long corners = 0;
    for (const auto& v : g.vertices)
        if (v.cls == VertexClass::Corner) ++corners;

    for (const auto& v : g.vertices)
        if (v.cls == VertexClass::Corner && v.degree != 2)
            throw ExtractionError("corner vertex with degree != 2 is outside the corner policy");

    g.V_graph = (long long)g.vertices.size();
    g.E_graph = (long long)g.edges.size();
    // suppressing a degree-2 corner removes one vertex and one edge;
    // a contour made of corners only keeps one of them as the dummy
    g.V = g.V_graph - corners + st.bare_corner_cycles;
    g.E = g.E_graph - corners + st.bare_corner_cycles;
    g.F = (long long)g.faces.size();
    g.n_components = st.n;
    g.c_circles = st.c;
    g.cellular = !g.faces.empty();
    for (const auto& face : g.faces)
        if (!face.is_disc) g.cellular = false;
}

} // namespace nodal
