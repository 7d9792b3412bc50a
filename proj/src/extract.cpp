#include "nodal/extract.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>

#include "nodal/errors.hpp"

namespace nodal {

// ----------------------------------------------------------- vanishing order

namespace {

int order_by_exact_partials(const Eigenfunction& u, Vec2 z, int cap) {
    const double scale0 = coeff_scale(u);
    const double lam = std::max(1.0, u.lambda);
    for (int s = 1; s <= cap; ++s) {
        double mx = 0.0;
        for (int a1 = 0; a1 <= s; ++a1)
            mx = std::max(mx, std::fabs(partial(u, z, a1, s - a1)));
        if (mx > 1e-7 * std::pow(lam, 0.5 * s) * scale0) return s;
    }
    throw ExtractionError("vanishing_order: no nonzero derivative up to order cap");
}

double ring_amplitude(const Eigenfunction& u, Vec2 z, double r) {
    double mx = 0.0;
    for (int i = 0; i < 256; ++i) {
        double t = 2 * kPi * i / 256.0;
        Vec2 q = sphere_orthographic_to_chart(z, {r * std::cos(t), r * std::sin(t)});
        mx = std::max(mx, std::fabs(eval(u, q)));
    }
    return mx;
}

int order_by_ring_decay(const Eigenfunction& u, Vec2 z, int cap, double rmax) {
    // Amplitude on shrinking rings decays like r^order; two ratio exponents
    // with one Richardson step cancel the leading correction.  Larger radii
    // rescue high orders from the noise floor, smaller ones shrink the
    // correction, so both directions are tried.  The rings must stay below
    // the distance to any other gradient zero, hence the optional cap.
    std::vector<double> radii;
    if (rmax > 0.0)
        radii = {rmax, 0.5 * rmax, 0.25 * rmax, 0.125 * rmax};
    else
        radii = {0.04, 0.02, 0.08, 0.01, 0.16};
    for (double r : radii) {
        double a0 = ring_amplitude(u, z, r);
        double a1 = ring_amplitude(u, z, r / 2);
        double a2 = ring_amplitude(u, z, r / 4);
        if (a2 < 1e-13 * coeff_scale(u) || a1 == 0.0 || a0 == 0.0) continue;
        double e1 = std::log2(a0 / a1);
        double e2 = std::log2(a1 / a2);
        double e = 2 * e2 - e1;
        int s = (int)std::lround(e);
        if (s >= 1 && s <= cap && std::fabs(e - s) < 0.25) return s;
    }
    throw ExtractionError("vanishing_order: ring amplitude decay did not stabilize");
}

} // namespace

int vanishing_order_capped(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                           int cap, double max_ring_radius) {
    (void)s;
    if (std::fabs(eval(u, z)) > 1e-5 * coeff_scale(u))
        throw std::invalid_argument("vanishing_order: point is not on the nodal set");
    if (u.family == Family::SphereHarmonic)
        return order_by_ring_decay(u, z, cap, max_ring_radius);
    return order_by_exact_partials(u, z, cap);
}

int vanishing_order(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z, int cap) {
    return vanishing_order_capped(u, s, z, cap, 0.0);
}

// ----------------------------------------------------------------- pipeline

namespace {

uint64_t edge_key(int axis, int i, int j) {
    return ((uint64_t)axis << 48) | ((uint64_t)(uint32_t)j << 24) | (uint32_t)i;
}

struct VertexRec {
    Vec2 pos;
    VertexClass cls = VertexClass::Interior;
    bool is_pole = false;
    bool joiner = false;    // regular point that collects through-arcs, spliced away
    bool seeded = false;
    bool alive = true;
    double r_cut = 0.0;
};

struct ArcPiece {
    int v_from = -1;
    int v_to = -1;
    std::vector<Vec2> pts;  // interior points only; endpoints added on assembly
    bool on_boundary = false;
    bool alive = true;
};

struct Extractor {
    const Eigenfunction& u;
    const ScalarField& f;
    const SurfaceDescriptor& s;
    const GridSpec& spec;
    double hx, hy, diag, r_snap;
    double umax;
    bool pole_nodal[2] = {false, false};  // north (theta=0), south (theta=pi)

    std::unordered_map<uint64_t, int> root_of_key;
    std::vector<Vec2> root_pos;
    std::vector<std::array<int, 3>> segs_at;  // [0],[1] seg ids, [2] count
    std::vector<std::array<int, 2>> segments;

    std::vector<VertexRec> verts;
    std::vector<ArcPiece> pieces;

    Extractor(const Eigenfunction& u_, const ScalarField& f_)
        : u(u_), f(f_), s(f_.surface), spec(f_.spec) {
        hx = f.hx();
        hy = f.hy();
        diag = std::hypot(hx, hy);
        r_snap = spec.snap_factor * diag;
        umax = f.max_abs;
    }

    int wrap_i(int i) const { return f.x_periodic ? ((i % f.nx) + f.nx) % f.nx : i; }
    int wrap_j(int j) const { return f.y_periodic ? ((j % f.ny) + f.ny) % f.ny : j; }

    // Shortest-delta interpolation; valid for segments across periodic seams.
    Vec2 seam_lerp(Vec2 a, Vec2 b, double t) const {
        double dx = b.x - a.x, dy = b.y - a.y;
        if (s.periodic_x()) {
            double w = s.width();
            if (dx > 0.5 * w) dx -= w;
            if (dx < -0.5 * w) dx += w;
        }
        if (s.periodic_y()) {
            double h = s.height();
            if (dy > 0.5 * h) dy -= h;
            if (dy < -0.5 * h) dy += h;
        }
        return wrap_point(s, {a.x + t * dx, a.y + t * dy});
    }

    // ---- marching squares -------------------------------------------------

    void edge_geometry(int axis, int i, int j, Vec2& p0, Vec2& p1) const {
        p0 = f.node_pos(i, j);
        if (axis == 0) {
            double x1 = (f.x_periodic && i == f.nx - 1) ? f.node_x(i) + hx : f.node_x(i + 1);
            p1 = {x1, p0.y};
        } else {
            double y1 = (f.y_periodic && j == f.ny - 1) ? f.node_y(j) + hy : f.node_y(j + 1);
            p1 = {p0.x, y1};
        }
    }

    // Function traced along a grid edge: u itself, or the inward normal
    // derivative when the edge lies inside the rectangle boundary, where u
    // vanishes identically.
    double edge_fun(int axis, int i, int j, Vec2 p) const {
        if (s.kind == SurfaceKind::Rectangle) {
            if (axis == 0 && j == 0) return partial(u, p, 0, 1);
            if (axis == 0 && j == f.ny - 1) return -partial(u, p, 0, 1);
            if (axis == 1 && i == 0) return partial(u, p, 1, 0);
            if (axis == 1 && i == f.nx - 1) return -partial(u, p, 1, 0);
        }
        return eval(u, p);
    }

    int root_id(int axis, int i, int j) {
        i = (axis == 1) ? wrap_i(i) : wrap_i(i);
        j = wrap_j(j);
        uint64_t key = edge_key(axis, i, j);
        auto it = root_of_key.find(key);
        if (it != root_of_key.end()) return it->second;

        Vec2 p0, p1;
        edge_geometry(axis, i, j, p0, p1);
        bool s0 = f.positive(i, j);
        double len = std::hypot(p1.x - p0.x, p1.y - p0.y);
        double t0 = 0.0, t1 = 1.0;
        while ((t1 - t0) * len > spec.eps_root) {
            double tm = 0.5 * (t0 + t1);
            Vec2 pm{p0.x + tm * (p1.x - p0.x), p0.y + tm * (p1.y - p0.y)};
            if ((edge_fun(axis, i, j, pm) >= 0.0) == s0) t0 = tm;
            else t1 = tm;
        }
        double tm = 0.5 * (t0 + t1);
        Vec2 pos = wrap_point(s, {p0.x + tm * (p1.x - p0.x), p0.y + tm * (p1.y - p0.y)});
        int id = (int)root_pos.size();
        root_pos.push_back(pos);
        segs_at.push_back({-1, -1, 0});
        root_of_key.emplace(key, id);
        return id;
    }

    void add_segment(int ra, int rb) {
        int sid = (int)segments.size();
        segments.push_back({ra, rb});
        for (int r : {ra, rb}) {
            auto& sa = segs_at[r];
            if (sa[2] >= 2)
                throw ExtractionError("marching: more than two arcs share one edge root");
            sa[sa[2]++] = sid;
        }
    }

    Vec2 cell_center(int ci, int cj) const {
        double cx = f.node_x(ci);
        double cxn = (f.x_periodic && ci == f.nx - 1) ? cx + hx : f.node_x(ci + 1);
        double cy = f.node_y(cj);
        double cyn = (f.y_periodic && cj == f.ny - 1) ? cy + hy : f.node_y(cj + 1);
        return {0.5 * (cx + cxn), 0.5 * (cy + cyn)};
    }

    void march() {
        const int cx = f.cells_x(), cy = f.cells_y();
        for (int cj = 0; cj < cy; ++cj) {
            for (int ci = 0; ci < cx; ++ci) {
                int i1 = wrap_i(ci + 1), j1 = wrap_j(cj + 1);
                bool s00 = f.positive(ci, cj);
                bool s10 = f.positive(i1, cj);
                bool s11 = f.positive(i1, j1);
                bool s01 = f.positive(ci, j1);
                if (s00 == s10 && s10 == s11 && s11 == s01) continue;

                std::optional<int> rS, rE, rN, rW;
                if (s00 != s10) rS = root_id(0, ci, cj);
                if (s10 != s11) rE = root_id(1, ci + 1, cj);
                if (s01 != s11) rN = root_id(0, ci, cj + 1);
                if (s00 != s01) rW = root_id(1, ci, cj);

                int count = (int)rS.has_value() + (int)rE.has_value() +
                            (int)rN.has_value() + (int)rW.has_value();
                if (count == 2) {
                    std::array<int, 2> rr{};
                    int t = 0;
                    for (const auto& r : {rS, rE, rN, rW})
                        if (r) rr[t++] = *r;
                    add_segment(rr[0], rr[1]);
                } else if (count == 4) {
                    Vec2 cc = cell_center(ci, cj);
                    double cval = eval(u, cc);
                    // A zero centre value is only fatal away from vertices;
                    // inside a snap disk the pairing is immaterial because
                    // the disk cut rebuilds the local topology from ring
                    // crossings.
                    if (std::fabs(cval) <= 1e-14 * umax && nearest_vertex(cc) < 0)
                        throw ExtractionError("marching: ambiguous cell unresolvable at (" +
                                              std::to_string(ci) + "," + std::to_string(cj) + ")");
                    if ((cval >= 0.0) == s00) {
                        add_segment(*rS, *rE);
                        add_segment(*rW, *rN);
                    } else {
                        add_segment(*rS, *rW);
                        add_segment(*rE, *rN);
                    }
                } else {
                    throw ExtractionError("marching: inconsistent sign configuration in cell");
                }
            }
        }
    }

    // ---- chains ------------------------------------------------------------

    struct Chain {
        std::vector<int> roots;
        bool closed = false;
    };

    std::vector<Chain> build_chains() const {
        std::vector<Chain> chains;
        std::vector<char> seg_done(segments.size(), 0);

        auto walk = [&](int start_root, int first_seg) {
            Chain ch;
            ch.roots.push_back(start_root);
            int cur = start_root;
            int sid = first_seg;
            while (sid >= 0) {
                seg_done[sid] = 1;
                const auto& sg = segments[sid];
                cur = (sg[0] == cur) ? sg[1] : sg[0];
                ch.roots.push_back(cur);
                sid = -1;
                const auto& sa = segs_at[cur];
                for (int t = 0; t < sa[2]; ++t)
                    if (!seg_done[sa[t]]) { sid = sa[t]; break; }
            }
            return ch;
        };

        for (int r = 0; r < (int)root_pos.size(); ++r) {
            if (segs_at[r][2] != 1) continue;
            int sid = segs_at[r][0];
            if (seg_done[sid]) continue;
            chains.push_back(walk(r, sid));
        }
        for (int sid = 0; sid < (int)segments.size(); ++sid) {
            if (seg_done[sid]) continue;
            Chain ch = walk(segments[sid][0], sid);
            if (ch.roots.size() >= 2 && ch.roots.front() == ch.roots.back())
                ch.roots.pop_back();
            ch.closed = true;
            chains.push_back(ch);
        }
        return chains;
    }

    // ---- vertices ------------------------------------------------------------

    void build_vertices(const std::vector<CriticalPoint>& cps) {
        for (const auto& cp : cps) {
            VertexRec v;
            v.pos = cp.position;
            v.cls = cp.location_class;
            v.is_pole = cp.is_pole;
            v.seeded = cp.seeded;
            // high-order vertices need a wider disk so the marching grid can
            // still separate the arc branches at the cut circle
            v.r_cut = (cp.seeded || cp.is_pole) ? 2.0 * r_snap : r_snap;
            if (cp.is_pole) v.r_cut = std::max(v.r_cut, 4.0 * hy);
            verts.push_back(v);
        }
        if (s.kind == SurfaceKind::Sphere) {
            int pole_idx = 0;
            for (double theta : {0.0, kPi}) {
                Vec2 pole{0.0, theta};
                bool nodal = std::fabs(eval(u, pole)) <= spec.eps_val * umax;
                pole_nodal[pole_idx++] = nodal;
                if (!nodal) continue;
                bool already = false;
                for (const auto& v : verts)
                    if (v.is_pole && chart_distance(s, v.pos, pole) < 1e-9) already = true;
                if (already) continue;
                // nodal but not critical: one smooth arc runs through the cap
                int arcs = ring_arc_count(u, s, pole, std::max(2.0 * r_snap, 4.0 * hy),
                                          VertexClass::Interior);
                if (arcs != 2)
                    throw ExtractionError("sphere pole with unexpected arc count");
                VertexRec v;
                v.pos = pole;
                v.cls = VertexClass::Interior;
                v.is_pole = true;
                v.joiner = true;
                v.r_cut = std::max(2.0 * r_snap, 4.0 * hy);
                verts.push_back(v);
            }
        }
        if (s.kind == SurfaceKind::Rectangle) {
            for (Vec2 c : {Vec2{s.x_min, s.y_min}, Vec2{s.x_max, s.y_min},
                           Vec2{s.x_max, s.y_max}, Vec2{s.x_min, s.y_max}}) {
                VertexRec v;
                v.pos = c;
                v.cls = VertexClass::Corner;
                v.r_cut = r_snap;
                verts.push_back(v);
            }
        }
    }

    int nearest_vertex(Vec2 p) const {
        int best = -1;
        double bd = 1e300;
        for (int vi = 0; vi < (int)verts.size(); ++vi) {
            double d = chart_distance(s, p, verts[vi].pos);
            if (d < verts[vi].r_cut && d < bd) {
                bd = d;
                best = vi;
            }
        }
        return best;
    }

    Vec2 circle_cut(Vec2 outside, Vec2 inside, int v) const {
        double da = chart_distance(s, outside, verts[v].pos);
        double db = chart_distance(s, inside, verts[v].pos);
        double r = verts[v].r_cut;
        double t = (da == db) ? 0.5 : (da - r) / (da - db);
        return seam_lerp(outside, inside, std::clamp(t, 0.0, 1.0));
    }

    // Removes the parts of a chain lying in vertex disks; each crossing of a
    // cut circle becomes an arc endpoint at that vertex.  Closed chains that
    // meet no disk are circle components.
    void cut_chain(const Chain& ch, std::vector<std::vector<Vec2>>& circles) {
        std::vector<Vec2> pts;
        pts.reserve(ch.roots.size());
        for (int r : ch.roots) pts.push_back(root_pos[r]);
        const size_t n = pts.size();
        if (n < 2) return;

        std::vector<int> owner(n);
        bool any_inside = false, all_inside = true;
        for (size_t i = 0; i < n; ++i) {
            owner[i] = nearest_vertex(pts[i]);
            any_inside |= owner[i] >= 0;
            all_inside &= owner[i] >= 0;
        }

        if (ch.closed && !any_inside) {
            circles.push_back(std::move(pts));
            return;
        }
        if (all_inside) {
            if (ch.closed)
                throw ExtractionError("closed arc lies entirely inside vertex snap disks");
            return;  // sub-resolution stub between adjacent disks; ring checks guard
        }

        size_t start = 0;
        if (ch.closed)
            while (owner[start] >= 0) ++start;

        std::vector<ArcPiece> local;
        ArcPiece cur;
        bool outside;
        int cur_v = -1;
        if (owner[start] < 0) {
            outside = true;
            cur.v_from = ch.closed ? -2 : -1;  // -2: to be joined with the tail
            cur.pts.push_back(pts[start]);
        } else {
            outside = false;
            cur_v = owner[start];
        }

        const size_t steps = ch.closed ? n : n - 1;
        for (size_t step = 0; step < steps; ++step) {
            size_t ia = (start + step) % n;
            size_t ib = (start + step + 1) % n;
            Vec2 A = pts[ia], B = pts[ib];
            int vb = owner[ib];
            if (outside) {
                if (vb < 0) {
                    cur.pts.push_back(B);
                } else {
                    cur.pts.push_back(circle_cut(A, B, vb));
                    cur.v_to = vb;
                    local.push_back(std::move(cur));
                    cur = ArcPiece{};
                    outside = false;
                    cur_v = vb;
                }
            } else {
                if (vb < 0) {
                    cur = ArcPiece{};
                    cur.v_from = cur_v;
                    cur.pts.push_back(circle_cut(B, A, cur_v));
                    cur.pts.push_back(B);
                    outside = true;
                } else if (vb != cur_v) {
                    // overlapping disks: direct connector between the vertices
                    ArcPiece conn;
                    conn.v_from = cur_v;
                    conn.v_to = vb;
                    conn.pts = {circle_cut(B, A, cur_v), circle_cut(A, B, vb)};
                    local.push_back(std::move(conn));
                    cur_v = vb;
                }
            }
        }

        if (ch.closed) {
            // walk started and ended at an outside point: the trailing open
            // piece and the leading one are halves of a single arc
            if (!outside || local.empty() || local.front().v_from != -2)
                throw ExtractionError("closed-chain cut bookkeeping failure");
            ArcPiece lead = std::move(local.front());
            local.erase(local.begin());
            ArcPiece tail = std::move(cur);
            // tail currently ends at pts[start] == lead.pts.front()
            tail.pts.insert(tail.pts.end(), lead.pts.begin() + 1, lead.pts.end());
            tail.v_to = lead.v_to;
            if (tail.v_from < 0)
                throw ExtractionError("closed-chain cut bookkeeping failure");
            local.push_back(std::move(tail));
        } else if (outside) {
            cur.v_to = -1;
            local.push_back(std::move(cur));
        }

        for (auto& p : local) pieces.push_back(std::move(p));
    }
};

// Nodal domains by sign flood fill over grid nodes, with a per-face disc
// test by cubical Euler characteristic V - E + Q of the node region.  A
// sphere cap whose pole is not in the nodal set closes the adjacent face,
// adding one to its characteristic.
void build_faces(NodalGraph& g, const ScalarField& f,
                 const std::unordered_map<uint64_t, int>& root_of_key,
                 const bool pole_nodal[2]) {
    const SurfaceDescriptor& s = g.surface;
    const int nx = f.nx, ny = f.ny;
    auto idx = [&](int i, int j) { return (size_t)j * nx + i; };
    auto is_real = [&](int i, int j) { return !f.virtual_node(i, j); };
    auto has_root = [&](int axis, int i, int j) {
        return root_of_key.count(edge_key(axis, i, j)) > 0;
    };

    std::vector<int> label((size_t)nx * ny, -1);
    int nlab = 0;
    std::deque<std::pair<int, int>> queue;

    for (int j0 = 0; j0 < ny; ++j0) {
        for (int i0 = 0; i0 < nx; ++i0) {
            if (!is_real(i0, j0) || label[idx(i0, j0)] >= 0) continue;
            const int L = nlab++;
            const bool sign0 = f.positive(i0, j0);
            label[idx(i0, j0)] = L;
            queue.push_back({i0, j0});
            while (!queue.empty()) {
                auto [i, j] = queue.front();
                queue.pop_front();
                struct Nb { int i, j, eaxis, ei, ej; bool valid; };
                Nb nbs[4];
                // right
                nbs[0] = {i + 1, j, 0, i, j, true};
                if (i + 1 >= nx) {
                    if (f.x_periodic) nbs[0].i = 0;
                    else nbs[0].valid = false;
                }
                // left
                nbs[1] = {i - 1, j, 0, i - 1, j, true};
                if (i - 1 < 0) {
                    if (f.x_periodic) { nbs[1].i = nx - 1; nbs[1].ei = nx - 1; }
                    else nbs[1].valid = false;
                }
                // up
                nbs[2] = {i, j + 1, 1, i, j, true};
                if (j + 1 >= ny) {
                    if (f.y_periodic) nbs[2].j = 0;
                    else nbs[2].valid = false;
                }
                // down
                nbs[3] = {i, j - 1, 1, i, j - 1, true};
                if (j - 1 < 0) {
                    if (f.y_periodic) { nbs[3].j = ny - 1; nbs[3].ej = ny - 1; }
                    else nbs[3].valid = false;
                }
                for (const Nb& nb : nbs) {
                    if (!nb.valid || !is_real(nb.i, nb.j)) continue;
                    if (label[idx(nb.i, nb.j)] >= 0) continue;
                    if (f.positive(nb.i, nb.j) != sign0) continue;
                    if (has_root(nb.eaxis, nb.ei, nb.ej)) continue;
                    label[idx(nb.i, nb.j)] = L;
                    queue.push_back({nb.i, nb.j});
                }
            }
        }
    }

    std::vector<long long> vcount(nlab, 0), ecount(nlab, 0), qcount(nlab, 0);
    std::vector<double> area(nlab, 0.0);
    std::vector<int> sign(nlab, 0);
    const double hx = f.hx(), hy = f.hy();

    auto label_at = [&](int i, int j) -> int {
        if (i >= nx) { if (!f.x_periodic) return -1; i -= nx; }
        if (j >= ny) { if (!f.y_periodic) return -1; j -= ny; }
        if (!is_real(i, j)) return -1;
        return label[idx(i, j)];
    };

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int L = label_at(i, j);
            if (L < 0) continue;
            ++vcount[L];
            sign[L] = f.positive(i, j) ? +1 : -1;
            double w = hx * hy;
            if (s.kind == SurfaceKind::Sphere) w *= std::sin(f.node_y(j));
            area[L] += w;
            if (label_at(i + 1, j) == L) ++ecount[L];
            if (label_at(i, j + 1) == L) ++ecount[L];
            if (label_at(i + 1, j) == L && label_at(i, j + 1) == L &&
                label_at(i + 1, j + 1) == L)
                ++qcount[L];
        }
    }

    std::vector<long long> chi(nlab, 0);
    for (int L = 0; L < nlab; ++L) chi[L] = vcount[L] - ecount[L] + qcount[L];
    if (s.kind == SurfaceKind::Sphere) {
        if (!pole_nodal[0]) ++chi[label[idx(0, 0)]];
        if (!pole_nodal[1]) ++chi[label[idx(0, ny - 1)]];
    }

    g.faces.clear();
    for (int L = 0; L < nlab; ++L) {
        GraphFace face;
        face.id = L;
        face.sign = sign[L];
        face.area_estimate = area[L];
        face.is_disc = (chi[L] == 1);
        g.faces.push_back(face);
    }
}

} // namespace

NodalGraph extract_nodal_graph(const Eigenfunction& u, const SurfaceDescriptor& s,
                               const GridSpec& grid, const ExtractOptions& opts) {
    ScalarField field = sample_field(u, s, grid);
    if (field.max_abs < 1e-12 * coeff_scale(u))
        throw std::invalid_argument("extract_nodal_graph: function is numerically zero");

    std::vector<CriticalPoint> cps = detect_critical_points(u, field, opts.detect);

    Extractor ex(u, field);
    ex.build_vertices(cps);
    ex.march();
    auto chains = ex.build_chains();

    std::vector<std::vector<Vec2>> circles;
    for (const auto& ch : chains) ex.cut_chain(ch, circles);

    for (const auto& p : ex.pieces)
        if (p.v_from < 0 || p.v_to < 0)
            throw ExtractionError("dangling nodal arc (open end away from any vertex)");

    // --- splice joiners and spurious degree-2 interior detections ---------
    auto incidence = [&](int v) {
        std::vector<std::pair<int, int>> slots;  // (piece, end: 0=from 1=to)
        for (int pi = 0; pi < (int)ex.pieces.size(); ++pi) {
            if (!ex.pieces[pi].alive) continue;
            if (ex.pieces[pi].v_from == v) slots.push_back({pi, 0});
            if (ex.pieces[pi].v_to == v) slots.push_back({pi, 1});
        }
        return slots;
    };

    for (int vi = 0; vi < (int)ex.verts.size(); ++vi) {
        VertexRec& v = ex.verts[vi];
        if (!v.alive) continue;
        bool splice = v.joiner;
        if (!splice && v.cls == VertexClass::Interior && !v.seeded && !v.is_pole) {
            auto slots = incidence(vi);
            if (slots.size() == 2) splice = true;  // a real one has >= 4 arcs
        }
        if (!splice) continue;

        auto slots = incidence(vi);
        if (slots.size() != 2)
            throw ExtractionError("splice vertex does not have exactly two arc ends");
        auto [p1, e1] = slots[0];
        auto [p2, e2] = slots[1];
        if (p1 == p2) {
            // single arc entering and leaving: the component is a circle
            // through this regular point; keep it as the dummy vertex
            v.cls = VertexClass::Dummy;
            v.joiner = false;
            continue;
        }
        ArcPiece& a = ex.pieces[p1];
        ArcPiece& b = ex.pieces[p2];
        if (e1 == 0) {  // orient a to end at vi
            std::reverse(a.pts.begin(), a.pts.end());
            std::swap(a.v_from, a.v_to);
        }
        if (e2 == 1) {  // orient b to start at vi
            std::reverse(b.pts.begin(), b.pts.end());
            std::swap(b.v_from, b.v_to);
        }
        a.pts.push_back(v.pos);
        a.pts.insert(a.pts.end(), b.pts.begin(), b.pts.end());
        a.v_to = b.v_to;
        b.alive = false;
        v.alive = false;
    }

    // --- dummy vertices on untouched circle components --------------------
    for (auto& circ : circles) {
        size_t best = 0;
        for (size_t i = 1; i < circ.size(); ++i)
            if (lex_less(circ[i], circ[best])) best = i;
        std::rotate(circ.begin(), circ.begin() + best, circ.end());

        VertexRec v;
        v.pos = circ.front();
        v.cls = VertexClass::Dummy;
        v.r_cut = 0.0;
        int vid = (int)ex.verts.size();
        ex.verts.push_back(v);

        ArcPiece loop;
        loop.v_from = vid;
        loop.v_to = vid;
        loop.pts.assign(circ.begin() + 1, circ.end());
        ex.pieces.push_back(std::move(loop));
    }

    // --- rectangle boundary decomposition ----------------------------------
    if (s.kind == SurfaceKind::Rectangle) {
        struct BV { double along; int vid; };
        auto side_edges = [&](auto along_of, auto on_side, Vec2 from, Vec2 to) {
            std::vector<BV> onside;
            for (int vi = 0; vi < (int)ex.verts.size(); ++vi) {
                const VertexRec& v = ex.verts[vi];
                if (!v.alive) continue;
                if (v.cls != VertexClass::Boundary && v.cls != VertexClass::Corner) continue;
                if (!on_side(v.pos)) continue;
                onside.push_back({along_of(v.pos), vi});
            }
            std::sort(onside.begin(), onside.end(),
                      [](const BV& a, const BV& b) { return a.along < b.along; });
            (void)from;
            (void)to;
            for (size_t t = 0; t + 1 < onside.size(); ++t) {
                ArcPiece e;
                e.v_from = onside[t].vid;
                e.v_to = onside[t + 1].vid;
                e.on_boundary = true;
                Vec2 a = ex.verts[e.v_from].pos, b = ex.verts[e.v_to].pos;
                e.pts = {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}};
                ex.pieces.push_back(std::move(e));
            }
        };
        const double eps = 1e-9;
        side_edges([](Vec2 p) { return p.x; },
                   [&](Vec2 p) { return std::fabs(p.y - s.y_min) < eps; },
                   Vec2{s.x_min, s.y_min}, Vec2{s.x_max, s.y_min});
        side_edges([](Vec2 p) { return p.y; },
                   [&](Vec2 p) { return std::fabs(p.x - s.x_max) < eps; },
                   Vec2{s.x_max, s.y_min}, Vec2{s.x_max, s.y_max});
        side_edges([](Vec2 p) { return -p.x; },
                   [&](Vec2 p) { return std::fabs(p.y - s.y_max) < eps; },
                   Vec2{s.x_max, s.y_max}, Vec2{s.x_min, s.y_max});
        side_edges([](Vec2 p) { return -p.y; },
                   [&](Vec2 p) { return std::fabs(p.x - s.x_min) < eps; },
                   Vec2{s.x_min, s.y_max}, Vec2{s.x_min, s.y_min});
    }

    // --- final graph --------------------------------------------------------
    NodalGraph g;
    g.surface = s;

    std::vector<int> vmap(ex.verts.size(), -1);
    std::vector<int> order_ids;
    for (int vi = 0; vi < (int)ex.verts.size(); ++vi)
        if (ex.verts[vi].alive) order_ids.push_back(vi);
    std::sort(order_ids.begin(), order_ids.end(), [&](int a, int b) {
        return lex_less(ex.verts[a].pos, ex.verts[b].pos);
    });
    for (int t = 0; t < (int)order_ids.size(); ++t) {
        const VertexRec& v = ex.verts[order_ids[t]];
        vmap[order_ids[t]] = t;
        GraphVertex gv;
        gv.id = t;
        gv.pos = v.pos;
        gv.cls = v.cls;
        gv.is_pole = v.is_pole;
        g.vertices.push_back(gv);
    }

    std::vector<int> piece_ids;
    for (int pi = 0; pi < (int)ex.pieces.size(); ++pi)
        if (ex.pieces[pi].alive) piece_ids.push_back(pi);
    std::sort(piece_ids.begin(), piece_ids.end(), [&](int a, int b) {
        const ArcPiece& pa = ex.pieces[a];
        const ArcPiece& pb = ex.pieces[b];
        int a_lo = std::min(vmap[pa.v_from], vmap[pa.v_to]);
        int a_hi = std::max(vmap[pa.v_from], vmap[pa.v_to]);
        int b_lo = std::min(vmap[pb.v_from], vmap[pb.v_to]);
        int b_hi = std::max(vmap[pb.v_from], vmap[pb.v_to]);
        if (a_lo != b_lo) return a_lo < b_lo;
        if (a_hi != b_hi) return a_hi < b_hi;
        Vec2 ma = pa.pts.empty() ? ex.verts[pa.v_from].pos : pa.pts[pa.pts.size() / 2];
        Vec2 mb = pb.pts.empty() ? ex.verts[pb.v_from].pos : pb.pts[pb.pts.size() / 2];
        return lex_less(ma, mb);
    });
    for (int t = 0; t < (int)piece_ids.size(); ++t) {
        const ArcPiece& p = ex.pieces[piece_ids[t]];
        GraphEdge e;
        e.id = t;
        e.v_from = vmap[p.v_from];
        e.v_to = vmap[p.v_to];
        e.on_boundary = p.on_boundary;
        e.polyline.push_back(g.vertices[e.v_from].pos);
        for (const Vec2& q : p.pts) e.polyline.push_back(q);
        e.polyline.push_back(g.vertices[e.v_to].pos);
        g.edges.push_back(std::move(e));
        g.vertices[g.edges.back().v_from].degree += 1;
        g.vertices[g.edges.back().v_to].degree += 1;
    }

    // ring-count cross-check on every critical vertex
    for (const GraphVertex& gv : g.vertices) {
        if (gv.cls != VertexClass::Interior && gv.cls != VertexClass::Boundary) continue;
        double r0 = 0.0;
        for (int vi = 0; vi < (int)ex.verts.size(); ++vi)
            if (ex.verts[vi].alive && vmap[vi] == gv.id) r0 = ex.verts[vi].r_cut;
        int arcs = ring_arc_count(u, s, gv.pos, r0, gv.cls);
        if (arcs != gv.degree)
            throw ExtractionError("vertex degree disagrees with ring arc count (" +
                                  std::to_string(gv.degree) + " vs " + std::to_string(arcs) + ")");
        if (gv.cls == VertexClass::Interior && gv.degree % 2 != 0)
            throw ExtractionError("interior vertex with odd degree");
        if (gv.cls == VertexClass::Interior && gv.degree < 4)
            throw ExtractionError("interior critical vertex with degree below four");
        if (gv.cls == VertexClass::Boundary && gv.degree < 3)
            throw ExtractionError("boundary critical vertex with degree below three");
    }

    // vanishing orders (independent of arc counting)
    for (GraphVertex& gv : g.vertices)
        gv.vanishing_order = vanishing_order(u, s, gv.pos);

    build_faces(g, field, ex.root_of_key, ex.pole_nodal);
    finalize_counts(g);
    return g;
}

} // namespace nodal
