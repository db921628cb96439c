#include "retract/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "retract/approx.hpp"
#include "retract/bounds.hpp"
#include "retract/core.hpp"
#include "retract/euclid.hpp"
#include "retract/oracle.hpp"
#include "retract/planar.hpp"
#include "retract/treewidth.hpp"

namespace retract::cli {

namespace {

using json = nlohmann::json;
constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Input, "cannot write " + path);
  out << text;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input:
    case ErrorKind::Validation:
    case ErrorKind::InvalidRetraction:
    case ErrorKind::NotPlanar:
      return 2;
    default:
      return 3;
  }
}

json cycles_json(const std::vector<bounds::ViolatedCycle>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"cycle", c.cycle}, {"sum", q_to_string(c.sum)}});
  return a;
}

struct SolveArgs {
  std::string algo = "planar", input, output, curves, host_edges, record;
};

int do_solve(const SolveArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(a.input);
  Retraction f;
  int s = 0;
  json extra = json::object();
  std::string digest;
  json lbs = json::object();
  if (a.algo == "treewidth" && !a.host_edges.empty()) {
    RawGraph raw = parse_graph(text);
    HostFile hf = parse_host(read_file(a.host_edges));
    HostMetric h = HostMetric::subgraph(raw.g.n(), hf.anchors, hf.edges);
    auto r = treewidth::optimal_retract_tw(raw.g, h);
    f.assignment = r.assignment;
    s = r.stretch;
    extra["width"] = r.width;
    digest = instance_digest(text + read_file(a.host_edges));
  } else {
    Instance inst = parse_instance(text);
    digest = instance_digest(serialize_instance(inst));
    if (auto d = distance_lower_bound(inst)) lbs["distance"] = q_to_string(*d);
    if (a.algo == "planar") {
      auto r = planar::optimal_retract_planar(inst);
      f = r.f;
      s = r.report.max_stretch;
      if (!a.curves.empty()) {
        json cj = json::array();
        for (const auto& c : r.curves) cj.push_back({{"face", c.face_vertices}, {"curves", c.paths}});
        write_out(a.curves, cj.dump() + "\n");
      }
    } else if (a.algo == "approx") {
      auto r = approx::approx_retract(inst);
      f = r.f;
      s = r.report.max_stretch;
      extra["hole_side"] = q_to_string(r.hole.side());
    } else if (a.algo == "treewidth") {
      auto r = treewidth::optimal_retract_tw(inst);
      f.assignment = r.assignment;
      s = r.stretch;
      extra["width"] = r.width;
    } else if (a.algo == "oracle") {
      auto r = oracle::brute_force_optimal(inst);
      f = r.f;
      s = r.report.max_stretch;
    } else if (a.algo == "euclid") {
      auto ps = euclid::point_set(inst);
      auto r = euclid::euclid_retract(ps);
      f = r.f;
      s = stretch(inst, f).max_stretch;
      extra["euclid_ratio_sq"] = q_to_string(r.ratio_sq);
      extra["euclid_ratio"] = std::sqrt(r.ratio_sq.get_d());
      extra["planar_stretch"] = r.planar_stretch;
      extra["spanner_edges"] = r.spanner_edges;
      extra["contracted_n"] = r.contracted_n;
      extra["unweighted_n"] = r.unweighted_n;
      extra["host_length"] = r.host_length;
      extra["hull_host"] = r.hull_host;
    } else {
      fail(ErrorKind::Input, "unknown algorithm " + a.algo);
    }
  }
  json out = json::parse(serialize_retraction(f, s));
  for (auto& [k, v] : extra.items())
    if (k.rfind("euclid_", 0) == 0) out[k] = v;
  write_out(a.output, out.dump() + "\n");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  json rec{{"algorithm", a.algo}, {"instance_digest", digest}, {"stretch", s}, {"lower_bounds", lbs},
           {"details", extra},     {"wall_time_ms", ms},         {"version", kVersion}};
  std::string rtext = rec.dump() + "\n";
  if (a.record.empty()) std::cerr << rtext;
  else write_out(a.record, rtext);
  return 0;
}

int do_lb(const std::string& method, const std::string& input, const std::string& cert) {
  Instance inst = parse_instance(read_file(input));
  json c{{"method", method}};
  std::string value;
  if (method == "distance") {
    value = std::to_string(bounds::distance_stretch_bound(inst));
    c["ratio"] = q_to_string(*distance_lower_bound(inst));
  } else if (method == "lp") {
    auto r = bounds::lp_stretch_lower_bound(inst);
    value = std::to_string(r.value);
    c["ell_min"] = r.ell_min;
    c["certificate"] = cycles_json(r.at_min.certificate);
  } else if (method == "sperner") {
    auto m = bounds::grid_side(inst);
    if (!m) fail(ErrorKind::Validation, "sperner bound needs a grid instance");
    value = std::to_string(bounds::sperner_lower_bound(*m));
    c["m"] = *m;
  } else {
    fail(ErrorKind::Input, "unknown method " + method);
  }
  c["bound"] = value;
  std::cout << value << "\n";
  if (!cert.empty()) write_out(cert, c.dump() + "\n");
  return 0;
}

int do_verify(const std::string& input, const std::string& rfile) {
  Instance inst = parse_instance(read_file(input));
  int claimed = 0;
  Retraction f = parse_retraction(read_file(rfile), &claimed);
  if (static_cast<int>(f.assignment.size()) != inst.n()) fail(ErrorKind::Validation, "assignment length differs from vertex count");
  check_retraction(inst, f);
  int s = stretch(inst, f).max_stretch;
  if (s != claimed) fail(ErrorKind::Validation, "stretch is " + std::to_string(s) + ", file claims " + std::to_string(claimed));
  std::cout << "ok stretch " << s << "\n";
  return 0;
}

}  // namespace

std::string instance_digest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"minimum-stretch retraction toolkit"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "compute a retraction");
  solve->add_option("--algo", sa.algo)->check(CLI::IsMember({"planar", "approx", "treewidth", "euclid", "oracle"}));
  solve->add_option("-i,--input", sa.input)->required();
  solve->add_option("-o,--output", sa.output);
  solve->add_option("--emit-curves", sa.curves, "write winning faces and curves to this file");
  solve->add_option("--host-edges", sa.host_edges, "host subgraph file (treewidth)");
  solve->add_option("--record", sa.record, "RunRecord path (default stderr)");

  std::string method = "distance", lb_in, lb_out;
  auto* lb = app.add_subcommand("lb", "lower bound");
  lb->add_option("--method", method)->check(CLI::IsMember({"distance", "lp", "sperner"}));
  lb->add_option("-i,--input", lb_in)->required();
  lb->add_option("-o,--output", lb_out, "certificate file");

  std::string kind, gen_out;
  int m = 3, n = 4, k = 8;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("kind", kind)->required()->check(CLI::IsMember({"grid", "colgrid", "random-planar", "random-points"}));
  gen->add_option("--m", m);
  gen->add_option("--n", n, "free or interior vertices");
  gen->add_option("--k", k);
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", gen_out);

  std::string v_in, v_r;
  auto* verify = app.add_subcommand("verify", "check a retraction file");
  verify->add_option("-i,--input", v_in)->required();
  verify->add_option("-r,--retraction", v_r)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (*solve) return do_solve(sa);
    if (*lb) return do_lb(method, lb_in, lb_out);
    if (*verify) return do_verify(v_in, v_r);
    if (*gen) {
      Instance inst;
      if (kind == "grid") inst = gen_grid(m);
      else if (kind == "colgrid") inst = gen_column_deleted_grid(m);
      else if (kind == "random-planar") inst = gen_random_planar(seed, k, n);
      else inst = gen_random_points(seed, k, n);
      write_out(gen_out, serialize_instance(inst));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace retract::cli
