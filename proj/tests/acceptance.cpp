// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "families.hpp"
#include "retract/approx.hpp"
#include "retract/bounds.hpp"
#include "retract/euclid.hpp"
#include "retract/oracle.hpp"
#include "retract/planar.hpp"
#include "retract/treewidth.hpp"

using namespace retract;

namespace {

struct Produced {
  std::string who;
  Instance inst;
  int s;
};
std::vector<Produced> produced;  // every solver retraction from criteria 1-5

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void failv(const std::string& why) {
    if (ok) note << why;
    else if (note.str().size() < 400) note << "; " << why;
    ok = false;
  }
};

std::vector<fam::Named> criterion1_family() {
  std::vector<fam::Named> v{{"grid(3)", gen_grid(3)}, {"grid(4)", gen_grid(4)}};
  for (auto& x : fam::small_planar(50)) v.push_back(std::move(x));
  return v;
}

void crit1(Outcome& o, std::string& summary) {
  int agree = 0;
  for (auto& [name, inst] : criterion1_family()) {
    auto p = planar::optimal_retract_planar(inst);
    auto b = oracle::brute_force_optimal(inst);
    check_retraction(inst, p.f);
    produced.push_back({"planar " + name, inst, p.report.max_stretch});
    produced.push_back({"oracle " + name, inst, b.report.max_stretch});
    if (p.report.max_stretch != stretch(inst, p.f).max_stretch) o.failv(name + ": reported stretch disagrees with recomputation");
    if (p.report.max_stretch == b.report.max_stretch) ++agree;
    else o.failv(name + ": planar " + std::to_string(p.report.max_stretch) + " vs oracle " + std::to_string(b.report.max_stretch));
  }
  summary = std::to_string(agree) + "/52 instances agree with the oracle";
}

void crit2(Outcome& o, std::string& summary) {
  for (int m : {3, 4, 5, 8}) {
    Instance g = gen_grid(m);
    int b = bounds::distance_stretch_bound(g);
    summary += "m=" + std::to_string(m) + ":" + std::to_string(b) + " (ratio " + q_to_string(*distance_lower_bound(g)) + ") ";
    if (b != 2) o.failv("grid(" + std::to_string(m) + ") gives " + std::to_string(b));
  }
}

void crit3(Outcome& o, std::string& summary) {
  int certs = 0;
  for (int m = 3; m <= 6; ++m) {
    Instance g = gen_grid(m);
    std::vector<std::pair<std::string, Retraction>> rs;
    rs.push_back({"planar", planar::optimal_retract_planar(g).f});
    rs.push_back({"approx", approx::approx_retract(g).f});
    if (m <= 4) {
      rs.push_back({"oracle", oracle::brute_force_optimal(g).f});
      rs.push_back({"treewidth", {treewidth::optimal_retract_tw(g).assignment}});
    }
    for (auto& [who, f] : rs) {
      auto col = bounds::coloring_from_retraction(g, f);
      try {
        auto t = bounds::sperner_certificate(m, col);
        std::set<int> cs{col[static_cast<std::size_t>(t[0])], col[static_cast<std::size_t>(t[1])], col[static_cast<std::size_t>(t[2])]};
        if (cs.size() != 3) o.failv(who + " m=" + std::to_string(m) + ": returned triangle is not trichromatic");
        else ++certs;
      } catch (const Error& e) {
        o.failv(who + " m=" + std::to_string(m) + ": " + e.what());
      }
    }
  }
  int opt4 = oracle::brute_force_optimal(gen_grid(4)).report.max_stretch;
  int need = static_cast<int>(std::ceil(2.0 * 4 / 3));
  if (opt4 < need) o.failv("oracle optimum on grid(4) is " + std::to_string(opt4));
  summary = std::to_string(certs) + " trichromatic certificates, oracle(grid4)=" + std::to_string(opt4) + " >= " + std::to_string(need);
}

void crit4(Outcome& o, std::string& summary) {
  for (int m : {5, 8}) {
    Instance g = gen_column_deleted_grid(m);
    auto p = planar::optimal_retract_planar(g);
    auto a = approx::approx_retract(g);
    produced.push_back({"planar colgrid(" + std::to_string(m) + ")", g, p.report.max_stretch});
    produced.push_back({"approx colgrid(" + std::to_string(m) + ")", g, a.report.max_stretch});
    summary += "m=" + std::to_string(m) + ": planar " + std::to_string(p.report.max_stretch) + ", approx " + std::to_string(a.report.max_stretch) + "; ";
    if (p.report.max_stretch != 2) o.failv("planar gives " + std::to_string(p.report.max_stretch) + " at m=" + std::to_string(m));
    if (4 * a.report.max_stretch < m) o.failv("approx gives " + std::to_string(a.report.max_stretch) + " < m/4 at m=" + std::to_string(m));
  }
}

std::vector<fam::Named> criterion5_family() {
  std::vector<fam::Named> v;
  for (int m = 3; m <= 7; ++m) {
    v.push_back({"grid(" + std::to_string(m) + ")", gen_grid(m)});
    v.push_back({"colgrid(" + std::to_string(m) + ")", gen_column_deleted_grid(m)});
  }
  for (int i = 0; static_cast<int>(v.size()) < 100; ++i) {
    std::uint64_t seed = 5000 + static_cast<std::uint64_t>(i);
    Rng r(seed);
    int k = r.uniform(3, 24), fr = r.uniform(1, 100 - k);
    v.push_back({"planar(seed=" + std::to_string(seed) + ",k=" + std::to_string(k) + ",free=" + std::to_string(fr) + ")",
                 gen_random_planar(seed, k, fr, 0.3 + 0.6 * r.unit())});
  }
  return v;
}

void crit5(Outcome& o, std::string& summary) {
  int checked = 0, worst_gap = 0;
  for (auto& [name, inst] : criterion5_family()) {
    auto a = approx::approx_retract(inst);
    check_retraction(inst, a.f);
    produced.push_back({"approx " + name, inst, a.report.max_stretch});
    int s = a.report.max_stretch;
    if (!approx::embedding_valid(inst, a.embedding)) o.failv(name + ": embedding violates the distance inequality");
    if (!approx::projection_bound_holds(inst, a.embedding, a.hole, a.f, nullptr)) o.failv(name + ": per-edge projection bound violated");
    if (!approx::guarantee_holds(s, inst.k(), inst.n(), a.embedding.ell)) o.failv(name + ": stretch " + std::to_string(s) + " exceeds the guarantee");
    worst_gap = std::max(worst_gap, s);
    ++checked;
  }
  summary = std::to_string(checked) + " instances, zero violations required, max stretch " + std::to_string(worst_gap);
}

void crit6(Outcome& o, std::string& summary) {
  int sound = 0;
  for (const auto& p : produced) {
    int ell = (p.inst.k() + p.s - 1) / p.s;
    auto r = bounds::lp_feasible(p.inst, ell);
    if (r.feasible) ++sound;
    else o.failv(p.who + ": LP infeasible at ell=" + std::to_string(ell) + " for stretch " + std::to_string(p.s));
  }
  int lb_ok = 0;
  for (auto& [name, inst] : criterion1_family()) {
    auto lb = bounds::lp_stretch_lower_bound(inst);
    int opt = oracle::brute_force_optimal(inst).report.max_stretch;
    if (lb.value <= opt) ++lb_ok;
    else o.failv(name + ": lp bound " + std::to_string(lb.value) + " > optimum " + std::to_string(opt));
  }
  Instance w4 = gen_wheel(4);
  auto r = bounds::lp_feasible(w4, 4);
  bool cert_ok = !r.feasible && r.certificate.size() == 4;
  for (const auto& c : r.certificate) cert_ok = cert_ok && c.cycle.size() == 3 && c.sum != 0;
  if (r.feasible) o.failv("W4 feasible at ell=4");
  else if (!cert_ok) o.failv("W4 certificate has " + std::to_string(r.certificate.size()) + " cycles, expected 4 triangles");
  summary = std::to_string(sound) + "/" + std::to_string(produced.size()) + " retractions LP-feasible, " + std::to_string(lb_ok) +
            "/52 lp bounds <= optimum, W4 certificate " + (cert_ok ? "4 triangles" : "bad");
}

void crit7(Outcome& o, std::string& summary) {
  int agree = 0, trees = 0;
  for (int i = 0; i < 30; ++i) {
    auto c = fam::random_host_case(7000 + static_cast<std::uint64_t>(i), i % 3 == 0);
    auto t = treewidth::optimal_retract_tw(c.g, c.h);
    auto b = oracle::brute_force_optimal(c.g, c.h);
    int ts = stretch_under(c.g, c.h, t.assignment);
    if (ts != t.stretch) o.failv(c.name + ": reported stretch disagrees with recomputation");
    if (t.stretch == b.report.max_stretch) ++agree;
    else o.failv(c.name + ": tw " + std::to_string(t.stretch) + " vs oracle " + std::to_string(b.report.max_stretch));
    trees += c.tree;
  }
  summary = std::to_string(agree) + "/30 agree (" + std::to_string(trees) + " tree hosts)";
}

void crit8(Outcome& o, std::string& summary) {
  double worst = 0;
  int done = 0, fallback = 0;
  for (int i = 0; i < 20; ++i) {
    int k = 10 + i % 5, interior = 4 + i % 5;
    Instance inst = gen_random_points(8000 + static_cast<std::uint64_t>(i), k, interior);
    auto ps = euclid::point_set(inst);
    std::string name = "points(k=" + std::to_string(k) + ",interior=" + std::to_string(interior) + ",seed=" + std::to_string(8000 + i) + ")";
    euclid::EuclidResult r;
    try {
      r = euclid::euclid_retract(ps);
    } catch (const Error& e) {
      o.failv(name + ": " + e.what());
      continue;
    }
    fallback += r.hull_host;
    for (int a : ps.anchors)
      if (r.f.assignment[static_cast<std::size_t>(a)] != a) o.failv(name + ": anchor moved");
    int n = static_cast<int>(ps.points.size());
    Q cap = rat(static_cast<long>(n) * k, 2);
    if (r.ratio_sq > cap * cap) o.failv(name + ": ratio above nk/2");
    auto b = euclid::brute_force_ratio(ps);
    if (b.ratio_sq <= 0) {
      o.failv(name + ": brute-force optimum is zero");
      continue;
    }
    Q rel = r.ratio_sq / b.ratio_sq;
    double c = std::sqrt(rel.get_d());
    if (!(rel <= 200 * 200)) o.failv(name + ": ratio vs optimum " + std::to_string(c));
    worst = std::max(worst, c);
    ++done;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/20 sets, worst ratio vs brute force %.3f, hull host used %d times", done, worst, fallback);
  summary = buf;
}

// union of two faces sharing exactly one edge, as a vertex cycle, or empty
std::vector<int> face_union(const std::vector<int>& f1, const std::vector<int>& f2) {
  std::vector<Edge> shared;
  std::size_t a = f1.size(), b = f2.size();
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      if (f1[i] == f2[(j + 1) % b] && f1[(i + 1) % a] == f2[j]) shared.push_back({static_cast<int>(i), static_cast<int>(j)});
  if (shared.size() != 1) return {};
  auto [i, j] = shared[0];
  std::vector<int> cyc;
  for (std::size_t t = 1; t <= a; ++t) cyc.push_back(f1[(static_cast<std::size_t>(i) + t) % a]);  // f1 from v round to u
  for (std::size_t t = 1; t + 1 < b; ++t) cyc.push_back(f2[(static_cast<std::size_t>(j) + 1 + t) % b]);
  std::set<int> uniq(cyc.begin(), cyc.end());
  if (uniq.size() != cyc.size()) return {};
  return cyc;
}

void crit9(Outcome& o, std::string& summary) {
  // (a) curve retractions have stretch <= 1, and (c) scores, on subdivided instances at the optimal l
  std::vector<fam::Named> fam9;
  for (int m = 3; m <= 6; ++m) fam9.push_back({"grid(" + std::to_string(m) + ")", gen_grid(m)});
  for (std::uint64_t seed = 9000; fam9.size() < 20; ++seed) {
    Instance inst = gen_random_planar(seed, 3 + static_cast<int>(seed % 6), 3 + static_cast<int>(seed % 7), 0.8);
    if (planar::plane_embed(inst).embedded) fam9.push_back({"planar(seed=" + std::to_string(seed) + ")", inst});
  }
  int curve_maps = 0, score_checks = 0;
  for (auto& [name, inst] : fam9) {
    int l = planar::optimal_retract_planar(inst).report.max_stretch;
    auto si = subdivide(inst, l);
    auto er = planar::plane_embed(si.inst);
    if (!er.embedded) {
      o.failv(name + ": subdivided instance did not embed as one piece");
      continue;
    }
    const auto& emb = er.embedding;
    auto s1 = planar::stretch1_retract(si.inst);
    if (!s1) {
      o.failv(name + ": no stretch-1 map at the optimal l");
      continue;
    }
    for (int f = 0; f < emb.face_count(); ++f) {
      if (f == emb.outer_face() || static_cast<int>(emb.face_vertices(f).size()) < si.inst.k()) continue;
      for (int route = 0; route < 2; ++route) {
        try {
          auto arena = route == 0 ? planar::triangulate_for_face(emb, f, si.inst) : planar::arena_for_face(emb, f, si.inst);
          auto cs = route == 0 ? planar::max_disjoint_paths(arena) : planar::face_hub_curves(arena);
          if (static_cast<int>(cs.paths.size()) != si.inst.k()) continue;
          auto fr = planar::retraction_from_curves(arena, cs);
          ++curve_maps;
          if (stretch(si.inst, fr).max_stretch > 1) o.failv(name + ": curve retraction with stretch > 1");
        } catch (const Error& e) {
          o.failv(name + " l=" + std::to_string(l) + " face " + std::to_string(f) + (route == 0 ? " triangulated: " : " face-hub: ") + e.what());
        }
      }
    }
    // score of H is k and equals the sum over bounded faces; adjacent face pairs add up
    int k = si.inst.k();
    int sh = planar::cycle_score(si.inst, si.inst.anchors(), *s1);
    int total = 0;
    std::vector<int> fs;
    for (int f = 0; f < emb.face_count(); ++f)
      if (f != emb.outer_face()) {
        fs.push_back(f);
        total += planar::cycle_score(si.inst, emb.face_vertices(f), *s1);
      }
    if (sh != k) o.failv(name + ": score(H)=" + std::to_string(sh));
    if (total != k) o.failv(name + ": face scores sum to " + std::to_string(total));
    ++score_checks;
    int pairs = 0;
    for (std::size_t x = 0; x < fs.size() && pairs < 40; ++x)
      for (std::size_t y = x + 1; y < fs.size() && pairs < 40; ++y) {
        auto fx = emb.face_vertices(fs[x]), fy = emb.face_vertices(fs[y]);
        auto c = face_union(fx, fy);
        if (c.empty()) continue;
        ++pairs;
        int lhs = planar::cycle_score(si.inst, c, *s1);
        int rhs = planar::cycle_score(si.inst, fx, *s1) + planar::cycle_score(si.inst, fy, *s1);
        if (lhs != rhs) o.failv(name + ": union score " + std::to_string(lhs) + " != " + std::to_string(rhs));
      }
  }
  // (b) max disjoint path count equals the minimum surrounding cycle on 30 small instances
  int flow_cases = 0, faces_checked = 0;
  for (std::uint64_t seed = 9500; flow_cases < 30; ++seed) {
    Rng r(seed);
    int k = r.uniform(3, 7), fr = r.uniform(2, 14 - k);
    Instance inst = gen_random_planar(seed, k, fr, 0.5 + 0.4 * r.unit());
    auto er = planar::plane_embed(inst);
    if (!er.embedded) continue;
    ++flow_cases;
    const auto& emb = er.embedding;
    for (int f = 0; f < emb.face_count(); ++f) {
      if (f == emb.outer_face()) continue;
      int want = oracle::enumerate_min_surrounding_cycle(emb, f);
      auto arena = planar::triangulate_for_face(emb, f, inst);
      int got = static_cast<int>(planar::max_disjoint_paths(arena).paths.size());
      auto arena2 = planar::arena_for_face(emb, f, inst);
      int got2 = static_cast<int>(planar::face_hub_curves(arena2).paths.size());
      ++faces_checked;
      if (got != want || got2 != want)
        o.failv("seed " + std::to_string(seed) + " face " + std::to_string(f) + ": flow " + std::to_string(got) + "/" + std::to_string(got2) + " vs cycle " + std::to_string(want));
    }
  }
  // (d) subdivide duality on criterion-1 instances
  int dual = 0;
  for (auto& [name, inst] : criterion1_family()) {
    int s = oracle::brute_force_optimal(inst).report.max_stretch;
    auto at = [&](int l) {
      auto si = subdivide(inst, l);
      return oracle::feasible_at(si.inst.graph(), HostMetric::cycle(si.inst), 1, oracle::SearchBudget{1 << 20, 2000000000ULL, 600});
    };
    bool ok = at(s) && (s == 1 || !at(s - 1));
    if (ok) ++dual;
    else o.failv(name + ": smallest stretch-1 subdivision differs from optimum " + std::to_string(s));
  }
  summary = std::to_string(curve_maps) + " curve maps, " + std::to_string(score_checks) + " score instances, " + std::to_string(faces_checked) +
            " faces on " + std::to_string(flow_cases) + " flow instances, duality " + std::to_string(dual) + "/52";
}

}  // namespace

int main() {
  struct Crit {
    int id;
    const char* title;
    std::function<void(Outcome&, std::string&)> run;
  };
  std::vector<Crit> cs{
      {1, "planar exact equals oracle", crit1},
      {2, "distance bound is 2 on grids", crit2},
      {3, "sperner certificates", crit3},
      {4, "column-deleted grid gap", crit4},
      {5, "approximation guarantee", crit5},
      {6, "cycle LP soundness", crit6},
      {7, "treewidth DP equals oracle", crit7},
      {8, "euclidean pipeline", crit8},
      {9, "structural invariants", crit9},
  };
  int failed = 0;
  for (auto& c : cs) {
    Outcome o;
    std::string summary;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o, summary);
    } catch (const std::exception& e) {
      o.failv(std::string("exception: ") + e.what());
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[128];
    std::snprintf(head, sizeof head, "%s criterion %d (%s) [%.1fs]: ", o.ok ? "PASS" : "FAIL", c.id, c.title, sec);
    std::cout << head << summary;
    if (!o.ok) std::cout << " -- " << o.note.str();
    std::cout << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
