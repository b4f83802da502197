#include "tropdiv/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tropdiv/errors.hpp"

namespace tropdiv {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::string at_index(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

}  // namespace

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j, std::string_view where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(where) + ": " + e.what());
  }
  throw ValidationError(std::string(where) + ": expected a rational string such as \"3/2\"");
}

Json graph_to_json(const MetricGraph& g) {
  const FiniteGraph& m = g.model();
  Json vs = Json::array(), es = Json::array();
  for (VertexId v = 0; v < m.num_vertices(); ++v) vs.push_back({{"id", m.vertex_id(v)}, {"weight", g.weight(v)}});
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    es.push_back({{"id", m.edge_id(e)},
                  {"ends", {m.vertex_id(m.edge(e).tail), m.vertex_id(m.edge(e).head)}},
                  {"length", to_string(g.length(e))}});
  }
  return {{"vertices", vs}, {"edges", es}};
}

MetricGraph graph_from_json(const Json& j) {
  const Json& vs = field(j, "vertices", "graph");
  const Json& es = field(j, "edges", "graph");
  if (!vs.is_array()) throw ValidationError("graph.vertices: expected an array");
  if (!es.is_array()) throw ValidationError("graph.edges: expected an array");
  std::vector<std::string> vids, eids;
  std::vector<int> weights;
  std::map<std::string, VertexId> index;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = at_index("vertices", i);
    std::string id = string_field(vs[i], "id", where);
    if (!index.emplace(id, static_cast<VertexId>(vids.size())).second)
      throw ValidationError(where + ".id: duplicate vertex '" + id + "'");
    vids.push_back(id);
    int w = 0;
    if (vs[i].contains("weight")) {
      if (!vs[i]["weight"].is_number_integer()) throw ValidationError(where + ".weight: expected an integer");
      w = vs[i]["weight"].get<int>();
    }
    weights.push_back(w);
  }
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<Rational> lengths;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = at_index("edges", i);
    eids.push_back(string_field(es[i], "id", where));
    const Json& en = field(es[i], "ends", where);
    if (!en.is_array() || en.size() != 2 || !en[0].is_string() || !en[1].is_string())
      throw ValidationError(where + ".ends: expected two vertex ids");
    VertexId a[2];
    for (int k = 0; k < 2; ++k) {
      auto it = index.find(en[k].get<std::string>());
      if (it == index.end()) throw ValidationError(where + ".ends: unknown vertex '" + en[k].get<std::string>() + "'");
      a[k] = it->second;
    }
    ends.emplace_back(a[0], a[1]);
    lengths.push_back(es[i].contains("length") ? rational_from_json(es[i]["length"], where + ".length") : Rational(1));
  }
  try {
    return MetricGraph(FiniteGraph(vids, eids, ends), lengths, weights);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  }
}

Json point_to_json(const MetricGraph& g, const GraphPoint& p) {
  if (p.is_vertex()) return g.model().vertex_id(p.vertex_id());
  return {{"edge", g.model().edge_id(p.edge_id())}, {"offset", to_string(p.offset())}};
}

GraphPoint point_from_json(const MetricGraph& g, const Json& j) {
  if (j.is_string()) {
    auto v = g.model().find_vertex(j.get<std::string>());
    if (!v) throw ValidationError("unknown vertex '" + j.get<std::string>() + "'");
    return GraphPoint::vertex(*v);
  }
  std::string eid = string_field(j, "edge", "point");
  auto e = g.model().find_edge(eid);
  if (!e) throw ValidationError("unknown edge '" + eid + "'");
  Rational t = rational_from_json(field(j, "offset", "point"), "point.offset");
  if (t < 0 || t > g.length(*e)) throw ValidationError("offset " + to_string(t) + " lies outside edge '" + eid + "'");
  return GraphPoint::on_edge(g, *e, t);
}

Json divisor_to_json(const MetricGraph& g, const Divisor& d) {
  Json chips = Json::array();
  for (const auto& [p, n] : d.chips()) chips.push_back({{"at", point_to_json(g, p)}, {"n", n}});
  return {{"chips", chips}};
}

Divisor divisor_from_json(const MetricGraph& g, const Json& j) {
  const Json& chips = field(j, "chips", "divisor");
  if (!chips.is_array()) throw ValidationError("divisor.chips: expected an array");
  Divisor d;
  for (std::size_t i = 0; i < chips.size(); ++i) {
    const std::string where = at_index("chips", i);
    const Json& n = field(chips[i], "n", where);
    if (!n.is_number_integer()) throw ValidationError(where + ".n: expected an integer");
    try {
      d.add(point_from_json(g, field(chips[i], "at", where)), n.get<std::int64_t>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ".at: " + e.what());
    }
  }
  return d;
}

Json plfunction_to_json(const MetricGraph& g, const PLFunction& f) {
  Json values = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    values.push_back({{"at", g.model().vertex_id(v)}, {"value", to_string(f.vertex_value(v))}});
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    for (const auto& k : f.knots(e)) {
      if (k.offset == 0 || k.offset == g.length(e)) continue;
      values.push_back({{"at", {{"edge", g.model().edge_id(e)}, {"offset", to_string(k.offset)}}},
                        {"value", to_string(k.value)}});
    }
  }
  return {{"values", values}};
}

PLFunction plfunction_from_json(const MetricGraph& g, const Json& j) {
  const Json& values = field(j, "values", "function");
  if (!values.is_array()) throw ValidationError("function.values: expected an array");
  std::vector<std::optional<Rational>> vv(g.num_vertices());
  std::vector<std::map<Rational, Rational>> knots(g.num_edges());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string where = at_index("values", i);
    GraphPoint p;
    try {
      p = point_from_json(g, field(values[i], "at", where));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ".at: " + e.what());
    }
    Rational x = rational_from_json(field(values[i], "value", where), where + ".value");
    if (p.is_vertex()) {
      if (vv[p.vertex_id()]) throw ValidationError(where + ": vertex given twice");
      vv[p.vertex_id()] = x;
    } else if (!knots[p.edge_id()].emplace(p.offset(), x).second) {
      throw ValidationError(where + ": knot given twice");
    }
  }
  std::vector<Rational> vertex_values;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!vv[v]) throw ValidationError("function: no value at vertex '" + g.model().vertex_id(v) + "'");
    vertex_values.push_back(*vv[v]);
  }
  std::vector<std::vector<Knot>> interior(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (const auto& [t, x] : knots[e]) interior[e].push_back({t, x});
  return PLFunction(g, vertex_values, interior);
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offsets are 1-based and point just past the failure.
    std::size_t pos = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": malformed JSON");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace tropdiv
