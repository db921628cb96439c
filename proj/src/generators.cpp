#include <algorithm>
#include <cmath>
#include <numbers>

#include "retract/core.hpp"

namespace retract {

Instance gen_cycle(int k) {
  if (k < 3) fail(ErrorKind::Input, "cycle needs k >= 3");
  std::vector<Edge> e;
  std::vector<int> a;
  for (int i = 0; i < k; ++i) {
    e.push_back({i, (i + 1) % k});
    a.push_back(i);
  }
  return Instance(k, e, a);
}

Instance gen_wheel(int k) {
  if (k < 3) fail(ErrorKind::Input, "wheel needs k >= 3");
  std::vector<Edge> e;
  std::vector<int> a;
  for (int i = 0; i < k; ++i) {
    e.push_back({i, (i + 1) % k});
    a.push_back(i);
  }
  for (int i = 0; i < k; ++i) e.push_back({k, i});
  return Instance(k + 1, e, a);
}

namespace {

std::vector<int> grid_boundary(int m) {
  std::vector<int> a;
  for (int c = 0; c < m - 1; ++c) a.push_back(c);                    // top, left to right
  for (int r = 0; r < m - 1; ++r) a.push_back(r * m + (m - 1));      // right column, down
  for (int c = m - 1; c > 0; --c) a.push_back((m - 1) * m + c);      // bottom, right to left
  for (int r = m - 1; r > 0; --r) a.push_back(r * m);                // left column, up
  return a;
}

Instance grid_impl(int m, bool keep_interior_columns) {
  if (m < 3) fail(ErrorKind::Input, "grid side must be >= 3");
  std::vector<Edge> e;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c + 1 < m; ++c) e.push_back({r * m + c, r * m + c + 1});
  for (int r = 0; r + 1 < m; ++r)
    for (int c = 0; c < m; ++c)
      if (keep_interior_columns || c == 0 || c == m - 1) e.push_back({r * m + c, (r + 1) * m + c});
  return Instance(m * m, e, grid_boundary(m));
}

}  // namespace

Instance gen_grid(int m) { return grid_impl(m, true); }
Instance gen_column_deleted_grid(int m) { return grid_impl(m, false); }

// Faces are kept as vertex cycles; each step drops a new vertex into a face and joins it to a
// subsequence of the face's vertices, or adds a chord. Face 0 is the unbounded side of H.
Instance gen_random_planar(std::uint64_t seed, int k, int free_vertices, double keep) {
  if (k < 3) fail(ErrorKind::Input, "random planar needs k >= 3");
  if (free_vertices < 0) fail(ErrorKind::Input, "free vertex count must be >= 0");
  Rng rng(seed);
  std::vector<std::vector<int>> faces;
  std::vector<int> cyc;
  for (int i = 0; i < k; ++i) cyc.push_back(i);
  faces.push_back(std::vector<int>(cyc.rbegin(), cyc.rend()));
  faces.push_back(cyc);
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  int n = k;
  int pendants = 0;
  for (int step = 0; step < free_vertices; ++step) {
    if (free_vertices - step >= 1 && rng.unit() < 0.08) {
      ++pendants;
      continue;
    }
    // outer face is picked rarely so some components must sit outside H
    std::size_t fi = (rng.unit() < 0.12) ? 0 : static_cast<std::size_t>(rng.uniform(1, static_cast<int>(faces.size()) - 1));
    auto face = faces[fi];
    int y = static_cast<int>(face.size());
    std::vector<int> pos;
    for (int i = 0; i < y; ++i)
      if (rng.unit() < keep) pos.push_back(i);
    while (pos.size() < 2) {
      int p = rng.uniform(0, y - 1);
      if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end());
    int v = n++;
    for (int p : pos) edges.push_back({v, face[static_cast<std::size_t>(p)]});
    std::vector<std::vector<int>> split;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      int from = pos[j], to = pos[(j + 1) % pos.size()];
      std::vector<int> f{v};
      for (int i = from;; i = (i + 1) % y) {
        f.push_back(face[static_cast<std::size_t>(i)]);
        if (i == to) break;
      }
      split.push_back(f);
    }
    faces[fi] = split[0];
    for (std::size_t j = 1; j < split.size(); ++j) faces.push_back(split[j]);
    // occasional chord inside a bounded face
    if (rng.unit() < 0.15) {
      std::size_t ci = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(faces.size()) - 1));
      auto& cf = faces[ci];
      int cy = static_cast<int>(cf.size());
      if (cy >= 4) {
        int a = rng.uniform(0, cy - 1);
        int b = (a + rng.uniform(2, cy - 2)) % cy;
        int u = cf[static_cast<std::size_t>(a)], w = cf[static_cast<std::size_t>(b)];
        bool exists = false;
        for (auto [p, q] : edges)
          if ((p == u && q == w) || (p == w && q == u)) exists = true;
        if (!exists) {
          edges.push_back({u, w});
          std::vector<int> f1, f2;
          for (int i = a;; i = (i + 1) % cy) {
            f1.push_back(cf[static_cast<std::size_t>(i)]);
            if (i == b) break;
          }
          for (int i = b;; i = (i + 1) % cy) {
            f2.push_back(cf[static_cast<std::size_t>(i)]);
            if (i == a) break;
          }
          cf = f1;
          faces.push_back(f2);
        }
      }
    }
  }
  for (int p = 0; p < pendants; ++p) {
    int v = n++;
    edges.push_back({v, rng.uniform(0, v - 1)});
  }
  std::vector<int> anchors(cyc);
  return Instance(n, edges, anchors);
}

namespace {

// rational point on the circle of radius r at angle theta, via t = tan(half angle)
Point circle_point(const Q& r, double theta) {
  bool flip = false;
  double th = std::remainder(theta, 2 * std::numbers::pi);
  if (std::fabs(th) > std::numbers::pi / 2) {
    flip = true;
    th = std::remainder(th - std::numbers::pi, 2 * std::numbers::pi);
  }
  const long den = 100000000;
  Q t(static_cast<long>(std::llround(std::tan(th / 2) * static_cast<double>(den))), den);
  t.canonicalize();
  Q one(1);
  Q x = r * (one - t * t) / (one + t * t);
  Q y = r * 2 * t / (one + t * t);
  if (flip) {
    x = -x;
    y = -y;
  }
  return {x, y};
}

Q sq_dist(const Point& a, const Point& b) {
  Q dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

Instance gen_random_points(std::uint64_t seed, int k, int interior) {
  if (k < 3) fail(ErrorKind::Input, "point set needs k >= 3");
  if (interior < 0) fail(ErrorKind::Input, "interior count must be >= 0");
  Rng rng(seed);
  double R = 1.0 / (2.0 * std::sin(std::numbers::pi / k));
  double Rp = R * (1.0 + 1.0 / (2.0 * k * k));
  Q r(static_cast<long>(std::llround(Rp * 1e9)), 1000000000L);
  r.canonicalize();
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(circle_point(r, 2 * std::numbers::pi * i / k));
  Q lo(1), hi = Q(1) + Q(1, static_cast<unsigned long>(k) * static_cast<unsigned long>(k));
  hi.canonicalize();
  for (int i = 0; i < k; ++i) {
    Q d2 = sq_dist(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>((i + 1) % k)]);
    if (d2 < lo || d2 > hi * hi) fail(ErrorKind::Invariant, "anchor spacing outside [1, 1+1/k^2]");
  }
  const long grid = 1000;
  long lim = static_cast<long>(std::floor(0.85 * R * grid));
  for (int i = 0; i < interior; ++i) {
    for (;;) {
      long x = rng.uniform(static_cast<int>(-lim), static_cast<int>(lim));
      long y = rng.uniform(static_cast<int>(-lim), static_cast<int>(lim));
      if (x * x + y * y > lim * lim) continue;
      Q qx(x, grid), qy(y, grid);
      qx.canonicalize();
      qy.canonicalize();
      pts.push_back({qx, qy});
      break;
    }
  }
  std::vector<Edge> e;
  std::vector<int> a;
  for (int i = 0; i < k; ++i) {
    e.push_back({i, (i + 1) % k});
    a.push_back(i);
  }
  return Instance(k + interior, e, a, pts);
}

}  // namespace retract
