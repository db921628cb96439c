#include <json.hpp>

#include "retract/core.hpp"

namespace retract {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorKind::Input, "field " + where + ": expected integer");
  auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) fail(ErrorKind::Input, "field " + where + ": integer out of range");
  return static_cast<int>(v);
}

Z get_big(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Z(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Z z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::Input, "field " + where + ": bad integer string");
    return z;
  }
  fail(ErrorKind::Input, "field " + where + ": expected integer or decimal string");
}

json big_to_json(const Z& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) fail(ErrorKind::Input, "top level must be a JSON object");
  auto it = obj.find(name);
  if (it == obj.end()) fail(ErrorKind::Input, std::string("missing field \"") + name + "\"");
  return *it;
}

std::vector<Edge> get_edges(const json& e, const std::string& where) {
  if (!e.is_array()) fail(ErrorKind::Input, "field " + where + ": expected array");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& p = e[i];
    std::string w = where + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::Input, "field " + w + ": expected [u,v]");
    out.push_back({get_int(p[0], w + "[0]"), get_int(p[1], w + "[1]")});
  }
  return out;
}

std::vector<int> get_ints(const json& a, const std::string& where) {
  if (!a.is_array()) fail(ErrorKind::Input, "field " + where + ": expected array");
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_int(a[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = parse_json(text);
  int n = get_int(field(j, "n"), "n");
  auto edges = get_edges(field(j, "edges"), "edges");
  auto anchors = get_ints(field(j, "anchors"), "anchors");
  std::vector<Point> pts;
  if (j.contains("points")) {
    const auto& p = j["points"];
    if (!p.is_array()) fail(ErrorKind::Input, "field points: expected array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string w = "points[" + std::to_string(i) + "]";
      if (!p[i].is_array() || p[i].size() != 4) fail(ErrorKind::Input, "field " + w + ": expected [xn,xd,yn,yd]");
      pts.push_back({q_from_parts(get_big(p[i][0], w), get_big(p[i][1], w)),
                     q_from_parts(get_big(p[i][2], w), get_big(p[i][3], w))});
    }
  }
  return Instance(n, std::move(edges), std::move(anchors), std::move(pts));
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["n"] = inst.n();
  json e = json::array();
  for (auto [u, v] : inst.edges()) e.push_back({u, v});
  j["edges"] = e;
  j["anchors"] = inst.anchors();
  if (inst.has_points()) {
    json p = json::array();
    for (const auto& q : inst.points())
      p.push_back({big_to_json(q.x.get_num()), big_to_json(q.x.get_den()), big_to_json(q.y.get_num()),
                   big_to_json(q.y.get_den())});
    j["points"] = p;
  }
  return j.dump() + "\n";
}

RawGraph parse_graph(const std::string& text) {
  json j = parse_json(text);
  int n = get_int(field(j, "n"), "n");
  RawGraph r{Graph(n, get_edges(field(j, "edges"), "edges")), {}};
  if (j.contains("anchors")) r.anchors = get_ints(j["anchors"], "anchors");
  return r;
}

HostFile parse_host(const std::string& text) {
  json j = parse_json(text);
  return {get_ints(field(j, "anchors"), "anchors"), get_edges(field(j, "edges"), "edges")};
}

std::string serialize_retraction(const Retraction& f, int stretch_value) {
  json j;
  j["assignment"] = f.assignment;
  j["stretch"] = stretch_value;
  return j.dump() + "\n";
}

Retraction parse_retraction(const std::string& text, int* stretch_value) {
  json j = parse_json(text);
  Retraction f{get_ints(field(j, "assignment"), "assignment")};
  if (stretch_value) *stretch_value = get_int(field(j, "stretch"), "stretch");
  return f;
}

}  // namespace retract
