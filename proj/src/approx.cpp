#include "retract/approx.hpp"

#include <algorithm>
#include <optional>

namespace retract::approx {

Point boundary_point(const Q& side, const Q& tau_in) {
  Q per = 4 * side;
  Q tau = tau_in;
  while (tau < 0) tau += per;
  while (tau >= per) tau -= per;
  if (tau <= side) return {tau, 0};
  if (tau <= 2 * side) return {side, tau - side};
  if (tau <= 3 * side) return {side - (tau - 2 * side), side};
  return {0, side - (tau - 3 * side)};
}

Q boundary_param(const Q& side, const Point& p) {
  if (p.y == 0) return p.x;
  if (p.x == side) return side + p.y;
  if (p.y == side) return 2 * side + (side - p.x);
  if (p.x == 0) return 3 * side + (side - p.y);
  fail(ErrorKind::Invariant, "point is not on the boundary of M");
}

Q linf(const Point& a, const Point& b) {
  Q dx = abs(a.x - b.x), dy = abs(a.y - b.y);
  return dx > dy ? dx : dy;
}

GridEmbedding grid_embed(const Instance& inst) {
  require_connected(inst);
  auto ell = distance_lower_bound(inst);
  if (!ell) fail(ErrorKind::Validation, "anchor pair disconnected");
  GridEmbedding emb;
  int k = inst.k(), n = inst.n();
  emb.side = rat(k, 4);
  emb.ell = *ell;
  emb.placement.assign(static_cast<std::size_t>(n), Point{});
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  for (int i = 0; i < k; ++i) {
    int a = inst.anchors()[static_cast<std::size_t>(i)];
    Point p = boundary_point(emb.side, Q(i));
    emb.anchor_pos.push_back(p);
    emb.placement[static_cast<std::size_t>(a)] = p;
    placed[static_cast<std::size_t>(a)] = 1;
    order.push_back(a);
  }
  // BFS order away from the anchors
  std::vector<char> seen(placed);
  for (std::size_t h = 0; h < order.size(); ++h)
    for (int w : inst.graph().neighbors(order[h]))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        order.push_back(w);
      }
  Q half = emb.side / 2;
  std::vector<int> done(order.begin(), order.begin() + k);
  for (std::size_t h = static_cast<std::size_t>(k); h < order.size(); ++h) {
    int v = order[h];
    const auto& dv = inst.dist_from(v);
    Q xlo = 0, xhi = emb.side, ylo = 0, yhi = emb.side;
    for (int u : done) {
      Q rad = emb.ell * dv[static_cast<std::size_t>(u)];
      const Point& p = emb.placement[static_cast<std::size_t>(u)];
      xlo = std::max(xlo, Q(p.x - rad));
      xhi = std::min(xhi, Q(p.x + rad));
      ylo = std::max(ylo, Q(p.y - rad));
      yhi = std::min(yhi, Q(p.y + rad));
    }
    if (xlo > xhi || ylo > yhi) fail(ErrorKind::Invariant, "empty box intersection while placing vertex " + std::to_string(v));
    emb.placement[static_cast<std::size_t>(v)] = {std::clamp(half, xlo, xhi), std::clamp(half, ylo, yhi)};
    done.push_back(v);
  }
  return emb;
}

bool embedding_valid(const Instance& inst, const GridEmbedding& emb) {
  for (int u = 0; u < inst.n(); ++u) {
    const auto& du = inst.dist_from(u);
    for (int v = u + 1; v < inst.n(); ++v)
      if (linf(emb.placement[static_cast<std::size_t>(u)], emb.placement[static_cast<std::size_t>(v)]) > emb.ell * du[static_cast<std::size_t>(v)])
        return false;
  }
  return true;
}

Q hole_base(int k, int n) {
  int q = 1;
  while ((q + 1) * (q + 1) <= n) ++q;
  return rat(k, 8 * q);
}

bool hole_feasible(const GridEmbedding& emb, int k, const Q& r, Point* center) {
  Q c0 = emb.side / 2, off = rat(k, 16), h = r / 2;
  Q lo = c0 - off, hi = c0 + off;
  std::vector<const Point*> pts;
  for (const auto& p : emb.placement)
    if (p.x > lo - h && p.x < hi + h && p.y > lo - h && p.y < hi + h) pts.push_back(&p);
  // the center first, then the left/bottom-aligned candidates
  {
    bool empty = true;
    for (const Point* p : pts)
      if (abs(p->x - c0) < h && abs(p->y - c0) < h) {
        empty = false;
        break;
      }
    if (empty) {
      if (center) *center = {c0, c0};
      return true;
    }
  }
  std::vector<Q> xs{lo}, ys{lo};
  for (const Point* p : pts) {
    Q x = p->x + h, y = p->y + h;
    if (x >= lo && x <= hi) xs.push_back(x);
    if (y >= lo && y <= hi) ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (const Q& x : xs) {
    std::vector<const Point*> col;
    for (const Point* p : pts)
      if (abs(p->x - x) < h) col.push_back(p);
    for (const Q& y : ys) {
      bool empty = true;
      for (const Point* p : col)
        if (abs(p->y - y) < h) {
          empty = false;
          break;
        }
      if (empty) {
        if (center) *center = {x, y};
        return true;
      }
    }
  }
  return false;
}

Hole find_largest_hole(const GridEmbedding& emb, int k) {
  int n = static_cast<int>(emb.placement.size());
  Q base = hole_base(k, n), cap = rat(k, 8);
  auto cand = [&](long j) {
    Q r = base * rat(n + j, n);
    return r < cap ? r : cap;
  };
  // largest j with cand(j) < cap, plus one more for the cap itself
  long jmax = 0;
  {
    Q need = (cap / base - 1) * n;
    jmax = static_cast<long>(q_ceil(need).get_si());
    jmax = std::clamp(jmax, 0L, static_cast<long>(n) * n);
  }
  Point c;
  if (!hole_feasible(emb, k, cand(0), &c)) fail(ErrorKind::Invariant, "guaranteed hole size not found");
  long lo = 0, hi = jmax;
  Point best = c;
  while (lo < hi) {
    long mid = lo + (hi - lo + 1) / 2;
    Point m;
    if (hole_feasible(emb, k, cand(mid), &m)) {
      lo = mid;
      best = m;
    } else {
      hi = mid - 1;
    }
  }
  if (!hole_feasible(emb, k, cand(lo), &best)) fail(ErrorKind::Invariant, "hole search lost its witness");
  return {best, cand(lo) / 2};
}

Retraction project_to_cycle(const GridEmbedding& emb, const Hole& hole, const Instance& inst) {
  int k = inst.k();
  const Q& S = emb.side;
  Retraction f;
  f.assignment.resize(static_cast<std::size_t>(inst.n()));
  for (int v = 0; v < inst.n(); ++v) {
    if (inst.is_anchor(v)) {
      f.assignment[static_cast<std::size_t>(v)] = v;
      continue;
    }
    const Point& g = emb.placement[static_cast<std::size_t>(v)];
    Q dx = g.x - hole.center.x, dy = g.y - hole.center.y;
    if (dx == 0 && dy == 0) fail(ErrorKind::Invariant, "vertex sits at the hole center");
    // first boundary hit of center + t*(dx,dy), t > 0
    std::optional<Q> t;
    auto offer = [&](const Q& cand) {
      if (cand > 0 && (!t || cand < *t)) t = cand;
    };
    if (dx > 0) offer((S - hole.center.x) / dx);
    if (dx < 0) offer((0 - hole.center.x) / dx);
    if (dy > 0) offer((S - hole.center.y) / dy);
    if (dy < 0) offer((0 - hole.center.y) / dy);
    Point p{hole.center.x + *t * dx, hole.center.y + *t * dy};
    Q tau = boundary_param(S, p);
    Z c = q_ceil(tau);
    long idx = c.get_si() % k;
    f.assignment[static_cast<std::size_t>(v)] = inst.anchors()[static_cast<std::size_t>(idx)];
  }
  return f;
}

bool projection_bound_holds(const Instance& inst, const GridEmbedding& emb, const Hole& hole, const Retraction& f, Edge* bad) {
  int k = inst.k();
  Q r = hole.side();
  for (auto [u, v] : inst.edges()) {
    int dh = cycle_distance(inst, inst.anchor_index(f.assignment[static_cast<std::size_t>(u)]), inst.anchor_index(f.assignment[static_cast<std::size_t>(v)]));
    if (dh <= 1) continue;
    Q d = linf(emb.placement[static_cast<std::size_t>(u)], emb.placement[static_cast<std::size_t>(v)]);
    // (dh - 1)^2 <= 200 k^2 d^2 / r^2
    Q lhs = Q((dh - 1) * (dh - 1)) * r * r;
    Q rhs = Q(200) * k * k * d * d;
    if (lhs > rhs) {
      if (bad) *bad = {u, v};
      return false;
    }
  }
  return true;
}

bool guarantee_holds(int s, int k, int n, const Q& ell) {
  if (s > k / 2) return false;
  if (s <= 1) return true;
  Q lhs = Q((s - 1) * (s - 1));
  return lhs <= Q(12800) * n * ell * ell;
}

ApproxResult approx_retract(const Instance& inst) {
  ApproxResult out;
  out.embedding = grid_embed(inst);
  out.hole = find_largest_hole(out.embedding, inst.k());
  out.f = project_to_cycle(out.embedding, out.hole, inst);
  out.report = stretch(inst, out.f);
  return out;
}

}  // namespace retract::approx
