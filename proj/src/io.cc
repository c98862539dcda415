// Copyright 2026 The Multicut Labeling Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multicut/io.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, path + ": " + what);
}

// Strict view of a JSON object: unknown keys are rejected up front.
class Fields {
 public:
  Fields(const Json& obj, std::string path,
         std::initializer_list<const char*> allowed)
      : obj_(obj), path_(std::move(path)) {
    if (!obj.is_object()) Fail(path_, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      if (!ok.count(key)) Fail(path_, "unknown field '" + key + "'");
    }
  }

  const Json& Required(const std::string& key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) Fail(path_, "missing field '" + key + "'");
    return *it;
  }
  const Json* Optional(const std::string& key) const {
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  std::string Path(const std::string& key) const { return path_ + "." + key; }

 private:
  const Json& obj_;
  std::string path_;
};

std::string AsString(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

double AsNumber(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

int AsInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int>();
}

const Json& AsArray(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

const Json& AsObject(const Json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  return j;
}

Weight AsWeight(const Json& j, const std::string& path) {
  if (j.is_number()) return Weight(j.get<double>());
  if (!j.is_string()) Fail(path, "expected a decimal string or \"inf\"");
  try {
    return Weight::Parse(j.get<std::string>());
  } catch (const Error& e) {
    Fail(path, e.what());
  }
}

void RequireSchema(const Fields& f, const std::string& want) {
  const std::string got = AsString(f.Required("schema"), f.Path("schema"));
  if (got != want) {
    Fail("$.schema", "expected \"" + want + "\", got \"" + got + "\"");
  }
}

int VertexIndex(const std::vector<std::string>& names, const Json& j,
                const std::string& path) {
  const std::string name = AsString(j, path);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw Error(ErrorCode::kValidation,
                path + ": unknown vertex '" + name + "'");
  }
  return static_cast<int>(it - names.begin());
}

int EdgeIndex(const SupplyGraph& g, const std::string& id,
              const std::string& path) {
  auto e = g.FindEdge(id);
  if (!e)
    throw Error(ErrorCode::kValidation, path + ": unknown edge '" + id + "'");
  return *e;
}

Label LabelKey(const std::string& text, int width, const std::string& path) {
  if (static_cast<int>(text.size()) != width) {
    Fail(path,
         "label '" + text + "' should have " + std::to_string(width) + " bits");
  }
  if (width == 0) return 0;
  try {
    return ParseLabel(text);
  } catch (const Error& e) {
    Fail(path, e.what());
  }
}

std::pair<Label, Label> PairKey(const std::string& text, int width,
                                const std::string& path) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) Fail(path, "pair key needs a comma");
  return {LabelKey(text.substr(0, comma), width, path),
          LabelKey(text.substr(comma + 1), width, path)};
}

std::string PairName(Label a, Label b, int width) {
  return LabelToString(a, width) + "," + LabelToString(b, width);
}

Json SparseRow(const std::vector<double>& row, int width) {
  Json out = Json::object();
  for (Label l = 0; l < row.size(); ++l) {
    if (row[l] != 0.0) out[LabelToString(l, width)] = row[l];
  }
  return out;
}

Json SparseJoint(const std::vector<double>& joint, int width) {
  const Label size = Label{1} << width;
  Json out = Json::object();
  for (Label a = 0; a < size; ++a) {
    for (Label b = 0; b < size; ++b) {
      if (joint[a * size + b] != 0.0)
        out[PairName(a, b, width)] = joint[a * size + b];
    }
  }
  return out;
}

std::vector<double> DenseRow(const Json& j, int width,
                             const std::string& path) {
  std::vector<double> row(size_t{1} << width, 0.0);
  for (const auto& [key, value] : AsObject(j, path).items()) {
    row[LabelKey(key, width, path)] = AsNumber(value, path + "." + key);
  }
  return row;
}

std::vector<double> DenseJoint(const Json& j, int width,
                               const std::string& path) {
  const size_t size = size_t{1} << width;
  std::vector<double> joint(size * size, 0.0);
  for (const auto& [key, value] : AsObject(j, path).items()) {
    auto [a, b] = PairKey(key, width, path);
    joint[a * size + b] = AsNumber(value, path + "." + key);
  }
  return joint;
}

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(
        ErrorCode::kParse,
        "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string DumpJson(const Json& doc) { return doc.dump(2) + "\n"; }

std::string SchemaOf(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema")) {
    Fail("$", "missing field 'schema'");
  }
  return AsString(doc["schema"], "$.schema");
}

bool NaturalLess(const std::string& a, const std::string& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])))
        ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])))
        ++je;
      std::string x = a.substr(i, ie - i), y = b.substr(j, je - j);
      x.erase(0, std::min(x.find_first_not_of('0'), x.size()));
      y.erase(0, std::min(y.find_first_not_of('0'), y.size()));
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

MulticutInstance CanonicalInstance(const MulticutInstance& instance) {
  MulticutInstance out = instance;
  std::stable_sort(out.supply.edges.begin(), out.supply.edges.end(),
                   [](const SupplyEdge& x, const SupplyEdge& y) {
                     return NaturalLess(x.id, y.id);
                   });
  return out;
}

Json InstanceToJson(const MulticutInstance& instance) {
  const MulticutInstance canon = CanonicalInstance(instance);
  const SupplyGraph& g = canon.supply;
  Json doc;
  doc["schema"] = kInstanceSchema;
  doc["vertices"] = g.vertices;
  doc["directed_edges"] = Json::array();
  doc["undirected_edges"] = Json::array();
  for (const SupplyEdge& e : g.edges) {
    Json edge = {{"id", e.id},
                 {"tail", g.vertices[e.tail]},
                 {"head", g.vertices[e.head]},
                 {"weight", e.weight.ToString()}};
    doc[e.directed ? "directed_edges" : "undirected_edges"].push_back(edge);
  }
  doc["terminals"] = Json::array();
  for (int v : canon.demand.terminals)
    doc["terminals"].push_back(g.vertices[v]);
  doc["demands"] = Json::array();
  for (auto [s, t] : canon.demand.edges) {
    doc["demands"].push_back(
        {{"source", g.vertices[s]}, {"sink", g.vertices[t]}});
  }
  return doc;
}

MulticutInstance InstanceFromJson(const Json& doc, bool validate) {
  Fields f(doc, "$",
           {"schema", "vertices", "directed_edges", "undirected_edges",
            "terminals", "demands"});
  RequireSchema(f, kInstanceSchema);
  MulticutInstance inst;
  const Json& vertices = AsArray(f.Required("vertices"), f.Path("vertices"));
  for (size_t i = 0; i < vertices.size(); ++i) {
    inst.supply.AddVertex(
        AsString(vertices[i], "$.vertices[" + std::to_string(i) + "]"));
  }
  const std::vector<std::string>& names = inst.supply.vertices;
  for (bool directed : {true, false}) {
    const char* key = directed ? "directed_edges" : "undirected_edges";
    const Json* list = f.Optional(key);
    if (!list) continue;
    AsArray(*list, f.Path(key));
    for (size_t i = 0; i < list->size(); ++i) {
      const std::string path = f.Path(key) + "[" + std::to_string(i) + "]";
      Fields e((*list)[i], path, {"id", "tail", "head", "weight"});
      const std::string id = AsString(e.Required("id"), e.Path("id"));
      const int tail = VertexIndex(names, e.Required("tail"), e.Path("tail"));
      const int head = VertexIndex(names, e.Required("head"), e.Path("head"));
      const Weight w = AsWeight(e.Required("weight"), e.Path("weight"));
      if (directed) {
        inst.supply.AddDirectedEdge(id, tail, head, w);
      } else {
        inst.supply.AddUndirectedEdge(id, tail, head, w);
      }
    }
  }
  std::vector<std::pair<int, int>> demands;
  if (const Json* list = f.Optional("demands")) {
    AsArray(*list, f.Path("demands"));
    for (size_t i = 0; i < list->size(); ++i) {
      const std::string path = "$.demands[" + std::to_string(i) + "]";
      Fields d((*list)[i], path, {"source", "sink"});
      demands.emplace_back(
          VertexIndex(names, d.Required("source"), d.Path("source")),
          VertexIndex(names, d.Required("sink"), d.Path("sink")));
    }
  }
  inst.demand = DemandGraph::FromEdges(demands);
  if (const Json* list = f.Optional("terminals")) {
    AsArray(*list, f.Path("terminals"));
    inst.demand.terminals.clear();
    for (size_t i = 0; i < list->size(); ++i) {
      inst.demand.terminals.push_back(VertexIndex(
          names, (*list)[i], "$.terminals[" + std::to_string(i) + "]"));
    }
  }
  inst = CanonicalInstance(inst);
  if (validate) RequireValid(inst);
  return inst;
}

std::string SerializeInstance(const MulticutInstance& instance) {
  return DumpJson(InstanceToJson(instance));
}

MulticutInstance ParseInstance(const std::string& text) {
  return InstanceFromJson(ParseJson(text));
}

const char* ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownVertex:
      return "unknown-vertex";
    case ViolationKind::kDuplicateVertex:
      return "duplicate-vertex";
    case ViolationKind::kDuplicateEdgeId:
      return "duplicate-edge-id";
    case ViolationKind::kNegativeWeight:
      return "negative-weight";
    case ViolationKind::kSelfLoopDemand:
      return "self-loop-demand";
    case ViolationKind::kDuplicateDemand:
      return "duplicate-demand";
    case ViolationKind::kDemandEndpointNotTerminal:
      return "demand-endpoint-not-terminal";
    case ViolationKind::kDuplicateTerminal:
      return "duplicate-terminal";
  }
  return "unknown";
}

Json CspToJson(const CspInstance& csp) {
  auto one_based = [](const std::vector<std::vector<int>>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) {
      Json row = Json::array();
      for (int i : s) row.push_back(i + 1);
      out.push_back(row);
    }
    return out;
  };
  Json doc;
  doc["schema"] = kCspSchema;
  doc["vertices"] = csp.vertices;
  doc["family"] = {{"p", csp.family.p},
                   {"q", csp.family.q},
                   {"Y", one_based(csp.family.y)},
                   {"Z", one_based(csp.family.z)}};
  doc["tuples"] = Json::array();
  for (const CspTuple& t : csp.tuples) {
    Json vars = Json::array();
    for (int v : t.vars) vars.push_back(csp.vertices[v]);
    doc["tuples"].push_back({{"vars", vars},
                             {"predicate", PredicateName(t.predicate)},
                             {"weight", t.weight.ToString()}});
  }
  return doc;
}

CspInstance CspFromJson(const Json& doc) {
  Fields f(doc, "$", {"schema", "vertices", "family", "tuples"});
  RequireSchema(f, kCspSchema);
  CspInstance csp;
  const Json& vertices = AsArray(f.Required("vertices"), f.Path("vertices"));
  for (size_t i = 0; i < vertices.size(); ++i) {
    csp.vertices.push_back(
        AsString(vertices[i], "$.vertices[" + std::to_string(i) + "]"));
  }
  Fields fam(f.Required("family"), "$.family", {"p", "q", "Y", "Z"});
  const int p = AsInt(fam.Required("p"), fam.Path("p"));
  const int q = AsInt(fam.Required("q"), fam.Path("q"));
  auto zero_based = [&](const char* key) {
    std::vector<std::vector<int>> sets;
    const Json& list = AsArray(fam.Required(key), fam.Path(key));
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string path = fam.Path(key) + "[" + std::to_string(i) + "]";
      std::vector<int>& s = sets.emplace_back();
      for (const Json& x : AsArray(list[i], path))
        s.push_back(AsInt(x, path) - 1);
    }
    return sets;
  };
  csp.family = FamilyFromSets(p, q, zero_based("Y"), zero_based("Z"));
  const Json& tuples = AsArray(f.Required("tuples"), f.Path("tuples"));
  for (size_t i = 0; i < tuples.size(); ++i) {
    const std::string path = "$.tuples[" + std::to_string(i) + "]";
    Fields t(tuples[i], path, {"vars", "predicate", "weight"});
    CspTuple tuple;
    for (const Json& v : AsArray(t.Required("vars"), t.Path("vars"))) {
      tuple.vars.push_back(VertexIndex(csp.vertices, v, t.Path("vars")));
    }
    try {
      tuple.predicate = ParsePredicateName(
          AsString(t.Required("predicate"), t.Path("predicate")));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParse) throw;
      Fail(t.Path("predicate"), e.what());
    }
    if (const Json* w = t.Optional("weight")) {
      tuple.weight = AsWeight(*w, t.Path("weight"));
    }
    csp.tuples.push_back(std::move(tuple));
  }
  ValidateCsp(csp);
  return csp;
}

Json LengthsToJson(const SupplyGraph& supply, const FractionalEdgeSolution& x,
                   double value) {
  Json doc;
  doc["schema"] = kLengthsSchema;
  doc["value"] = value;
  doc["x"] = Json::object();
  for (int e = 0; e < supply.num_edges(); ++e) {
    doc["x"][supply.edges[e].id] = x.x[e];
  }
  return doc;
}

FractionalEdgeSolution LengthsFromJson(const SupplyGraph& supply,
                                       const Json& doc) {
  Fields f(doc, "$", {"schema", "value", "x"});
  RequireSchema(f, kLengthsSchema);
  FractionalEdgeSolution x;
  x.x.assign(supply.num_edges(), 0.0);
  for (const auto& [id, value] : AsObject(f.Required("x"), "$.x").items()) {
    x.x[EdgeIndex(supply, id, "$.x")] = AsNumber(value, "$.x." + id);
  }
  return x;
}

Json LabelSolutionToJson(const MulticutInstance& instance,
                         const LabelSolution& solution, double value) {
  const SupplyGraph& g = instance.supply;
  Json doc;
  doc["schema"] = kLabelSolutionSchema;
  doc["k"] = solution.k;
  doc["value"] = value;
  doc["terminals"] = Json::array();
  for (int v : instance.demand.terminals)
    doc["terminals"].push_back(g.vertices[v]);
  doc["x"] = LengthsToJson(g, solution.x, value)["x"];
  doc["z_vertex"] = Json::object();
  for (int v = 0; v < g.num_vertices(); ++v) {
    doc["z_vertex"][g.vertices[v]] =
        SparseRow(solution.z_vertex[v], solution.k);
  }
  doc["z_edge"] = Json::object();
  for (int e = 0; e < g.num_edges(); ++e) {
    doc["z_edge"][g.edges[e].id] = SparseJoint(solution.z_edge[e], solution.k);
  }
  return doc;
}

LabelSolution LabelSolutionFromJson(const MulticutInstance& instance,
                                    const Json& doc) {
  const SupplyGraph& g = instance.supply;
  Fields f(doc, "$",
           {"schema", "k", "value", "terminals", "x", "z_vertex", "z_edge"});
  RequireSchema(f, kLabelSolutionSchema);
  LabelSolution sol;
  sol.k = AsInt(f.Required("k"), "$.k");
  if (sol.k != instance.demand.num_terminals()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "$.k: solution has " + std::to_string(sol.k) +
                    " terminals, instance has " +
                    std::to_string(instance.demand.num_terminals()));
  }
  if (sol.k > 8) Fail("$.k", "at most 8 terminals");
  sol.x.x.assign(g.num_edges(), 0.0);
  for (const auto& [id, value] : AsObject(f.Required("x"), "$.x").items()) {
    sol.x.x[EdgeIndex(g, id, "$.x")] = AsNumber(value, "$.x." + id);
  }
  sol.z_vertex.assign(g.num_vertices(), std::vector<double>(Label{1} << sol.k));
  for (const auto& [name, row] :
       AsObject(f.Required("z_vertex"), "$.z_vertex").items()) {
    const int v = VertexIndex(g.vertices, name, "$.z_vertex");
    sol.z_vertex[v] = DenseRow(row, sol.k, "$.z_vertex." + name);
  }
  const size_t size = size_t{1} << sol.k;
  sol.z_edge.assign(g.num_edges(), std::vector<double>(size * size, 0.0));
  for (const auto& [id, joint] :
       AsObject(f.Required("z_edge"), "$.z_edge").items()) {
    sol.z_edge[EdgeIndex(g, id, "$.z_edge")] =
        DenseJoint(joint, sol.k, "$.z_edge." + id);
  }
  return sol;
}

Json BasicSolutionToJson(const CspInstance& csp, const BasicSolution& z,
                         double value) {
  const int p = csp.family.p;
  Json doc;
  doc["schema"] = kBasicSolutionSchema;
  doc["value"] = value;
  doc["z_vertex"] = Json::object();
  for (int v = 0; v < csp.num_vertices(); ++v) {
    doc["z_vertex"][csp.vertices[v]] = SparseRow(z.z_vertex[v], p);
  }
  doc["z_tuple"] = Json::array();
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    doc["z_tuple"].push_back(csp.tuples[t].predicate.arity() == 1
                                 ? SparseRow(z.z_tuple[t], p)
                                 : SparseJoint(z.z_tuple[t], p));
  }
  return doc;
}

BasicSolution BasicSolutionFromJson(const CspInstance& csp, const Json& doc) {
  const int p = csp.family.p;
  Fields f(doc, "$", {"schema", "value", "z_vertex", "z_tuple"});
  RequireSchema(f, kBasicSolutionSchema);
  BasicSolution z;
  z.z_vertex.assign(csp.num_vertices(), std::vector<double>(size_t{1} << p));
  for (const auto& [name, row] :
       AsObject(f.Required("z_vertex"), "$.z_vertex").items()) {
    const int v = VertexIndex(csp.vertices, name, "$.z_vertex");
    z.z_vertex[v] = DenseRow(row, p, "$.z_vertex." + name);
  }
  const Json& tuples = AsArray(f.Required("z_tuple"), "$.z_tuple");
  if (tuples.size() != csp.tuples.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "$.z_tuple: expected " + std::to_string(csp.tuples.size()) +
                    " entries");
  }
  for (size_t t = 0; t < tuples.size(); ++t) {
    const std::string path = "$.z_tuple[" + std::to_string(t) + "]";
    z.z_tuple.push_back(csp.tuples[t].predicate.arity() == 1
                            ? DenseRow(tuples[t], p, path)
                            : DenseJoint(tuples[t], p, path));
  }
  return z;
}

Json CutToJson(const SupplyGraph& supply, const CutSolution& cut) {
  return {{"edges", CutEdgeIds(supply, cut)}, {"cost", cut.cost}};
}

}  // namespace multicut
