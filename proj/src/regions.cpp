#include "trilat/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "trilat/errors.hpp"

namespace trilat {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Vertex {
  Point2 p;
  int ci, cj;
  bool tangent;
  std::vector<int> out;  // outgoing half-edges, ccw order
};

struct HalfEdge {
  int circle;
  bool ccw;
  double th0, th1;
  int origin, dest;  // -1 for a vertex-free circle
  int twin = -1;
  int next = -1;
};

struct Arrangement {
  std::vector<Circle> circles;  // positive radius only
  std::vector<int> ids;         // original disk index of each circle
  std::vector<Vertex> verts;
  std::vector<HalfEdge> edges;
};

Point2 on_circle(const Circle& c, double th) {
  return c.center + Point2{std::cos(th), std::sin(th)} * c.radius;
}

Point2 start_direction(const HalfEdge& h) {
  Point2 t{-std::sin(h.th0), std::cos(h.th0)};
  return h.ccw ? t : -t;
}

void build_vertices(Arrangement& a, double tol) {
  int n = static_cast<int>(a.circles.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Circle &ci = a.circles[i], &cj = a.circles[j];
      if (distance(ci.center, cj.center) <= tol && std::abs(ci.radius - cj.radius) <= tol)
        fail(ErrorKind::DegenerateArrangement, "two range circles coincide");
      IntersectionPair ip = circle_circle_intersect(ci, cj, ci.center, tol);
      if (ip.count >= 1) a.verts.push_back({ip.plus, i, j, ip.count == 1, {}});
      if (ip.count == 2) a.verts.push_back({ip.minus, i, j, false, {}});
    }
  for (const Vertex& v : a.verts)
    for (int k = 0; k < n; ++k) {
      if (k == v.ci || k == v.cj) continue;
      if (std::abs(distance(v.p, a.circles[k].center) - a.circles[k].radius) <= tol)
        fail(ErrorKind::DegenerateArrangement, "three range circles share a point");
    }
}

void build_edges(Arrangement& a) {
  int n = static_cast<int>(a.circles.size());
  for (int c = 0; c < n; ++c) {
    std::vector<std::pair<double, int>> on;
    for (int v = 0; v < static_cast<int>(a.verts.size()); ++v)
      if (a.verts[v].ci == c || a.verts[v].cj == c) {
        Point2 d = a.verts[v].p - a.circles[c].center;
        on.push_back({std::atan2(d.y, d.x), v});
      }
    std::sort(on.begin(), on.end());
    if (on.empty()) {
      int k = static_cast<int>(a.edges.size());
      a.edges.push_back({c, true, 0.0, kTwoPi, -1, -1, k + 1, k});
      a.edges.push_back({c, false, kTwoPi, 0.0, -1, -1, k, k + 1});
      continue;
    }
    int m = static_cast<int>(on.size());
    for (int e = 0; e < m; ++e) {
      double t0 = on[e].first;
      double t1 = e + 1 < m ? on[e + 1].first : on[0].first + kTwoPi;
      int v0 = on[e].second, v1 = on[(e + 1) % m].second;
      int k = static_cast<int>(a.edges.size());
      a.edges.push_back({c, true, t0, t1, v0, v1, k + 1});
      a.edges.push_back({c, false, t1, t0, v1, v0, k});
      a.verts[v0].out.push_back(k);
      a.verts[v1].out.push_back(k + 1);
    }
  }
}

void order_vertex(Arrangement& a, Vertex& v) {
  auto curvature = [&](int h) {
    const HalfEdge& e = a.edges[h];
    return (e.ccw ? 1.0 : -1.0) / a.circles[e.circle].radius;
  };
  auto by_curvature = [&](int l, int r) { return curvature(l) < curvature(r); };
  if (!v.tangent) {
    std::sort(v.out.begin(), v.out.end(), [&](int l, int r) {
      Point2 dl = start_direction(a.edges[l]), dr = start_direction(a.edges[r]);
      return std::atan2(dl.y, dl.x) < std::atan2(dr.y, dr.x);
    });
    return;
  }
  // tangent circles leave along one line; split by side, then order each side by curvature
  Point2 ref = start_direction(a.edges[v.out[0]]);
  std::vector<int> fwd, back;
  for (int h : v.out) (dot(start_direction(a.edges[h]), ref) > 0 ? fwd : back).push_back(h);
  std::sort(fwd.begin(), fwd.end(), by_curvature);
  std::sort(back.begin(), back.end(), by_curvature);
  v.out = fwd;
  v.out.insert(v.out.end(), back.begin(), back.end());
}

void link_edges(Arrangement& a) {
  for (Vertex& v : a.verts) order_vertex(a, v);
  for (HalfEdge& h : a.edges) {
    if (h.dest < 0) continue;
    const Vertex& v = a.verts[h.dest];
    auto it = std::find(v.out.begin(), v.out.end(), h.twin);
    int idx = static_cast<int>(it - v.out.begin());
    int k = static_cast<int>(v.out.size());
    h.next = v.out[(idx + k - 1) % k];
  }
}

struct Cycle {
  double area = 0.0;
  std::uint8_t bits = 0;
  std::vector<int> verts;
};

std::vector<Cycle> trace_cycles(const Arrangement& a) {
  std::vector<Cycle> cycles;
  std::vector<bool> seen(a.edges.size(), false);
  for (int start = 0; start < static_cast<int>(a.edges.size()); ++start) {
    if (seen[start]) continue;
    Cycle cyc;
    int h = start;
    do {
      seen[h] = true;
      const HalfEdge& e = a.edges[h];
      const Circle& c = a.circles[e.circle];
      double rho = c.radius;
      cyc.area += 0.5 * (rho * rho * (e.th1 - e.th0) +
                         rho * c.center.x * (std::sin(e.th1) - std::sin(e.th0)) -
                         rho * c.center.y * (std::cos(e.th1) - std::cos(e.th0)));
      if (e.origin >= 0) cyc.verts.push_back(e.origin);
      h = e.next;
    } while (h != start);

    const HalfEdge& e = a.edges[start];
    Point2 mid = on_circle(a.circles[e.circle], 0.5 * (e.th0 + e.th1));
    for (int k = 0; k < static_cast<int>(a.circles.size()); ++k) {
      bool inside = k == e.circle ? e.ccw : distance(mid, a.circles[k].center) < a.circles[k].radius;
      if (inside) cyc.bits |= static_cast<std::uint8_t>(1u << a.ids[k]);
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

// topology over labels whose point-circle bits are zero
std::array<LabelTopology, 8> arrangement_topology(const SensorConfig& c, const std::vector<int>& positive,
                                                  double tol) {
  std::array<LabelTopology, 8> out{};
  if (positive.empty()) {
    out[0] = {true, true, 1};
    return out;
  }
  Arrangement a;
  for (int j : positive) {
    a.circles.push_back(c.circle(j));
    a.ids.push_back(j);
  }
  build_vertices(a, tol);
  build_edges(a);
  link_edges(a);
  std::vector<Cycle> cycles = trace_cycles(a);

  int n = static_cast<int>(a.circles.size());
  UnionFind graph(n);
  for (const Vertex& v : a.verts) graph.unite(v.ci, v.cj);
  int parts = 0;
  for (int i = 0; i < n; ++i) parts += graph.find(i) == i;

  // faces: with one component each positive cycle bounds its own face and the negative
  // cycle is the outer face; with several components a label owns at most one face
  int nc = static_cast<int>(cycles.size());
  UnionFind faces(nc);
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      bool both_outer = cycles[i].area < 0 && cycles[j].area < 0;
      if (cycles[i].bits == cycles[j].bits && (parts > 1 || both_outer)) faces.unite(i, j);
    }

  int nv = static_cast<int>(a.verts.size());
  for (int label = 0; label < 8; ++label) {
    bool uses_point_circle = false;
    for (int j = 0; j < 3; ++j)
      if (((label >> j) & 1) && std::find(positive.begin(), positive.end(), j) == positive.end())
        uses_point_circle = true;
    if (uses_point_circle) continue;

    // nodes: faces (by representative cycle) then vertices
    UnionFind uf(nc + nv);
    std::vector<bool> present(nc + nv, false);
    for (int i = 0; i < nc; ++i)
      if (cycles[i].bits == label) present[faces.find(i)] = true;
    for (int v = 0; v < nv; ++v) {
      const Vertex& vx = a.verts[v];
      std::uint8_t free = static_cast<std::uint8_t>((1u << a.ids[vx.ci]) | (1u << a.ids[vx.cj]));
      std::uint8_t fixed = 0;
      for (int k = 0; k < n; ++k) {
        if (k == vx.ci || k == vx.cj) continue;
        if (distance(vx.p, a.circles[k].center) < a.circles[k].radius)
          fixed |= static_cast<std::uint8_t>(1u << a.ids[k]);
      }
      if ((label & ~free) == fixed) present[nc + v] = true;
    }
    for (int i = 0; i < nc; ++i) {
      if (cycles[i].bits != label) continue;
      int f = faces.find(i);
      for (int v : cycles[i].verts)
        if (present[nc + v]) uf.unite(f, nc + v);
    }
    int comps = 0;
    for (int k = 0; k < nc + nv; ++k)
      if (present[k] && uf.find(k) == k) ++comps;
    out[label] = {comps > 0, comps == 1, comps};
  }
  return out;
}

}  // namespace

RegionTopology region_topology(const SensorConfig& c, double tol) {
  c.validate();
  if (!(tol > 0)) tol = 1e-9 * c.scale();

  std::vector<int> positive, points;
  for (int j = 0; j < 3; ++j) (c.d[j] > tol ? positive : points).push_back(j);
  std::array<LabelTopology, 8> base = arrangement_topology(c, positive, tol);

  RegionTopology topo;
  for (int label = 0; label < 8; ++label) {
    int anchor = -1;
    for (int j : points)
      if ((label >> j) & 1) anchor = j;
    if (anchor < 0) {
      topo.labels[label] = base[label];
      continue;
    }
    // a zero-radius disk pins the region to its center
    Point2 p = c.z[anchor];
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      if (k == anchor) continue;
      double dist = distance(p, c.z[k]);
      bool inside = (label >> k) & 1;
      if (inside && dist > c.d[k] + tol) ok = false;
      if (!inside && dist < c.d[k] - tol) ok = false;
    }
    topo.labels[label] = ok ? LabelTopology{true, true, 1} : LabelTopology{};
  }
  return topo;
}

bool outside_region_meets_triangle(const SensorConfig& c, double tol) {
  c.validate();
  if (!(tol > 0)) tol = 1e-9 * c.scale();
  const auto& z = c.z;
  double orient = cross(z[1] - z[0], z[2] - z[0]) > 0 ? 1.0 : -1.0;

  auto in_triangle = [&](Point2 p) {
    for (int i = 0; i < 3; ++i) {
      Point2 a = z[i], b = z[(i + 1) % 3];
      if (orient * cross(b - a, p - a) < -tol * distance(a, b)) return false;
    }
    return true;
  };
  auto outside_all = [&](Point2 p) {
    for (int j = 0; j < 3; ++j)
      if (distance(p, z[j]) < c.d[j] - tol) return false;
    return true;
  };

  // a component of the set is bounded by edge pieces and arcs, so one of these witnesses lies in it
  std::vector<Point2> probes(z.begin(), z.end());
  for (int i = 0; i < 3; ++i) {
    Point2 a = z[i], b = z[(i + 1) % 3];
    Point2 dir = b - a;
    double len2 = norm2(dir);
    for (int j = 0; j < 3; ++j) {
      Point2 f = a - z[j];
      double bq = dot(f, dir), cq = norm2(f) - c.d[j] * c.d[j];
      double disc = bq * bq - len2 * cq;
      if (disc < 0) continue;
      for (double sgn : {-1.0, 1.0}) {
        double t = (-bq + sgn * std::sqrt(disc)) / len2;
        if (t >= 0 && t <= 1) probes.push_back(a + dir * t);
      }
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (c.d[i] <= 0 || c.d[j] <= 0) continue;
      if (distance(z[i], z[j]) <= tol && std::abs(c.d[i] - c.d[j]) <= tol) continue;
      IntersectionPair ip = circle_circle_intersect(c.circle(i), c.circle(j), z[3 - i - j], tol);
      if (ip.count >= 1) probes.push_back(ip.plus);
      if (ip.count == 2) probes.push_back(ip.minus);
    }
  for (Point2 p : probes)
    if (in_triangle(p) && outside_all(p)) return true;
  return false;
}

}  // namespace trilat
