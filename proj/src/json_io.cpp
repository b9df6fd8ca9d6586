#include "xplain/json_io.hpp"

#include "xplain/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace xplain {

namespace {

[[noreturn]] void bad(const std::string& message) { fail(ErrorKind::ParseError, message); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const auto& a = field(obj, key, where);
  if (!a.is_array()) bad(where + ": field '" + key + "' must be an array");
  return a;
}

// Strings are taken verbatim; numbers by their shortest decimal spelling.
std::string scalar_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float() || v.is_boolean()) return v.dump();
  bad(where + ": expected a string or a number");
}

ExtReal parse_bound(const Json& obj, const char* key, ExtReal fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return ExtReal::parse(scalar_text(*it, where));
}

CategoryIndex parse_category(const FeatureSpace& space, FeatureIndex f, const Json& v, const std::string& where) {
  auto text = scalar_text(v, where);
  auto c = space.category(f, text);
  if (!c) fail(ErrorKind::OutOfDomainValue, where + ": '" + text + "' is not in the domain of '" + space[f].id + "'");
  return *c;
}

ValueSet parse_value_set(const FeatureSpace& space, FeatureIndex f, const Json& a, const std::string& where) {
  if (!space.categorical(f)) bad(where + ": feature '" + space[f].id + "' is numerical");
  if (!a.is_array()) bad(where + ": value set must be an array");
  ValueSet s(space.domain_size(f));
  for (const auto& v : a) s.set(parse_category(space, f, v, where));
  return s;
}

FeatureIndex parse_feature_ref(const FeatureSpace& space, const Json& obj, const std::string& where) {
  return space.index_of(scalar_text(field(obj, "feature", where), where));
}

Rational parse_threshold(const FeatureSpace& space, FeatureIndex f, const Json& v, const std::string& where) {
  if (space.categorical(f)) bad(where + ": feature '" + space[f].id + "' is categorical");
  return parse_rational(scalar_text(v, where));
}

// `{"in": [...]}`, `{"not_in": [...]}`, `{"leq": t}` or `{"gt": t}`, with
// the feature given separately.
Literal parse_test(const FeatureSpace& space, FeatureIndex f, const Json& obj, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected a test object");
  if (auto it = obj.find("in"); it != obj.end()) return Literal::in(f, parse_value_set(space, f, *it, where));
  if (auto it = obj.find("not_in"); it != obj.end()) return Literal::not_in(f, parse_value_set(space, f, *it, where));
  if (auto it = obj.find("leq"); it != obj.end()) return Literal::leq(f, parse_threshold(space, f, *it, where));
  if (auto it = obj.find("gt"); it != obj.end()) return Literal::gt(f, parse_threshold(space, f, *it, where));
  bad(where + ": expected one of 'in', 'not_in', 'leq', 'gt'");
}

ClassLabel parse_label(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    bad(where + ": leaf label must be a non-negative integer");
  }
  return v.get<ClassLabel>();
}

struct RawNode {
  std::string id;
  const Json* json;
  bool leaf;
};

// Node table of a tree or diagram with the root resolved.
struct NodeTable {
  std::vector<RawNode> nodes;
  std::map<std::string, std::size_t> index;
  std::size_t root = 0;

  NodeTable(const Json& model, const std::string& what) {
    const auto& arr = array_field(model, "nodes", what);
    if (arr.empty()) bad(what + ": no nodes");
    for (const auto& n : arr) {
      auto id = scalar_text(field(n, "id", what), what);
      if (!index.emplace(id, nodes.size()).second) bad(what + ": duplicate node id '" + id + "'");
      nodes.push_back({id, &n, n.contains("leaf")});
    }
    std::vector<char> referenced(nodes.size(), 0);
    for (const auto& n : nodes) {
      if (n.leaf) continue;
      referenced[child(n, "left")] = 1;
      referenced[child(n, "right")] = 1;
    }
    if (auto it = model.find("root"); it != model.end()) {
      root = lookup(scalar_text(*it, what), what);
    } else {
      std::vector<std::size_t> roots;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!referenced[i]) roots.push_back(i);
      }
      if (roots.size() != 1) bad(what + ": cannot infer the root; give a 'root' field");
      root = roots.front();
    }
  }

  std::size_t lookup(const std::string& id, const std::string& where) const {
    auto it = index.find(id);
    if (it == index.end()) bad(where + ": unknown node id '" + id + "'");
    return it->second;
  }

  std::size_t child(const RawNode& n, const char* side) const {
    const auto where = "node '" + n.id + "'";
    return lookup(scalar_text(field(*n.json, side, where), where), where);
  }
};

DecisionTree parse_tree(const Json& j, const SpacePtr& space) {
  NodeTable table(j, "tree");
  ClassLabel classes = 2;
  if (auto it = j.find("classes"); it != j.end()) classes = parse_label(*it, "tree classes");

  // Nodes keep their input slots. A leaf referenced again gets a fresh copy
  // appended at the end.
  std::vector<TreeNode> nodes(table.nodes.size());
  std::vector<char> used(table.nodes.size(), 0);
  auto ref = [&](std::size_t i) -> NodeRef {
    const auto& raw = table.nodes[i];
    if (!raw.leaf || !used[i]) {
      used[i] = 1;
      return static_cast<NodeRef>(i);
    }
    TreeNode copy = nodes[i];
    nodes.push_back(std::move(copy));
    return static_cast<NodeRef>(nodes.size() - 1);
  };
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const auto& raw = table.nodes[i];
    if (raw.leaf) nodes[i] = TreeNode::make_leaf(parse_label(raw.json->at("leaf"), "node '" + raw.id + "'"));
  }
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const auto& raw = table.nodes[i];
    if (raw.leaf) continue;
    const auto where = "node '" + raw.id + "'";
    const auto f = parse_feature_ref(*space, *raw.json, where);
    auto test = parse_test(*space, f, field(*raw.json, "test", where), where);
    NodeRef l = ref(table.child(raw, "left"));
    NodeRef r = ref(table.child(raw, "right"));
    nodes[i] = TreeNode::make_internal(std::move(test), l, r);
  }
  NodeRef root = ref(table.root);
  return DecisionTree(DecisionTree::Unchecked{}, space, classes, std::move(nodes), root);
}

Fbdd parse_fbdd(const Json& j, const SpacePtr& space) {
  NodeTable table(j, "fbdd");
  std::vector<FbddNode> nodes;
  for (const auto& raw : table.nodes) {
    const auto where = "node '" + raw.id + "'";
    if (raw.leaf) {
      nodes.push_back(FbddNode::make_leaf(parse_label(raw.json->at("leaf"), where)));
      continue;
    }
    const auto f = parse_feature_ref(*space, *raw.json, where);
    nodes.push_back(FbddNode::make_internal(f, static_cast<NodeRef>(table.child(raw, "left")),
                                            static_cast<NodeRef>(table.child(raw, "right"))));
  }
  return Fbdd(Fbdd::Unchecked{}, space, std::move(nodes), static_cast<NodeRef>(table.root));
}

CnfFormula parse_cnf(const Json& j, const SpacePtr& space) {
  std::vector<Clause> clauses;
  const auto& arr = array_field(j, "clauses", "cnf");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto where = "clause " + std::to_string(i);
    if (!arr[i].is_array()) bad(where + ": expected an array of literals");
    Clause c;
    for (const auto& lit : arr[i]) {
      const auto f = parse_feature_ref(*space, lit, where);
      c.push_back(parse_test(*space, f, lit, where));
    }
    clauses.push_back(std::move(c));
  }
  return CnfFormula(CnfFormula::Unchecked{}, space, std::move(clauses));
}

Json value_json(const FeatureSpace& space, FeatureIndex f, const Value& v) { return value_to_string(space, f, v); }

Json test_json(const FeatureSpace& space, const Literal& lit) {
  auto values = [&](const ValueSet& s) {
    Json a = Json::array();
    for (auto c : members(s)) a.push_back(space[lit.feature].categories()[c]);
    return a;
  };
  Json t = Json::object();
  switch (lit.op) {
    case LiteralOp::In: t["in"] = values(lit.values); break;
    case LiteralOp::NotIn: t["not_in"] = values(lit.values); break;
    case LiteralOp::Leq: t["leq"] = to_string(lit.threshold); break;
    case LiteralOp::Gt: t["gt"] = to_string(lit.threshold); break;
  }
  return t;
}

}  // namespace

SpacePtr parse_feature_space(const Json& j) {
  if (!j.is_array()) bad("feature_space must be an array");
  std::vector<FeatureDecl> decls;
  for (const auto& f : j) {
    const auto id = scalar_text(field(f, "id", "feature"), "feature");
    const auto where = "feature '" + id + "'";
    const auto type = scalar_text(field(f, "type", where), where);
    if (type == "categorical") {
      CategoricalDomain d;
      for (const auto& v : array_field(f, "domain", where)) d.values.push_back(scalar_text(v, where));
      decls.push_back({id, std::move(d)});
    } else if (type == "numerical") {
      decls.push_back({id, NumericalDomain{parse_bound(f, "min", ExtReal::neg_inf(), where),
                                           parse_bound(f, "max", ExtReal::pos_inf(), where)}});
    } else {
      bad(where + ": type must be 'categorical' or 'numerical'");
    }
  }
  return std::make_shared<const FeatureSpace>(std::move(decls));
}

Model parse_model_unchecked(const Json& j, const SpacePtr& space) {
  const auto kind = scalar_text(field(j, "kind", "model"), "model");
  if (kind == "tree") return parse_tree(j, space);
  if (kind == "fbdd") return parse_fbdd(j, space);
  if (kind == "cnf") return parse_cnf(j, space);
  bad("model kind must be 'tree', 'fbdd' or 'cnf'");
}

Model parse_model(const Json& j, const SpacePtr& space) {
  auto m = parse_model_unchecked(j, space);
  validate(m).raise_if_failed(std::string("invalid ") + std::string(kind_name(m)));
  return m;
}

Entity parse_entity(const Json& j, const FeatureSpace& space) {
  const auto& values = field(j, "values", "entity");
  if (!values.is_object()) bad("entity: 'values' must be an object");
  for (auto it = values.begin(); it != values.end(); ++it) {
    if (!space.find(it.key())) fail(ErrorKind::UnknownFeature, "entity: unknown feature '" + it.key() + "'");
  }
  std::vector<Value> out;
  for (FeatureIndex f = 0; f < space.size(); ++f) {
    const auto& id = space[f].id;
    auto it = values.find(id);
    if (it == values.end()) fail(ErrorKind::MissingFeature, "entity: no value for '" + id + "'");
    const auto where = "entity value of '" + id + "'";
    if (space.categorical(f)) {
      out.emplace_back(parse_category(space, f, *it, where));
    } else {
      out.emplace_back(parse_rational(scalar_text(*it, where)));
    }
  }
  return Entity(space, std::move(out));
}

Hypergraph parse_hypergraph(const Json& j) {
  std::vector<std::string> labels;
  std::map<std::string, NodeId> index;
  for (const auto& v : array_field(j, "nodes", "hypergraph")) {
    auto label = scalar_text(v, "hypergraph node");
    if (!index.emplace(label, static_cast<NodeId>(labels.size())).second) bad("hypergraph: duplicate node '" + label + "'");
    labels.push_back(std::move(label));
  }
  std::vector<NodeSet> edges;
  for (const auto& e : array_field(j, "edges", "hypergraph")) {
    if (!e.is_array()) bad("hypergraph: each edge must be an array of nodes");
    NodeSet b(labels.size());
    for (const auto& v : e) {
      auto label = scalar_text(v, "hypergraph edge");
      auto it = index.find(label);
      if (it == index.end()) fail(ErrorKind::UnknownNode, "hypergraph: unknown node '" + label + "'");
      b.set(it->second);
    }
    edges.push_back(std::move(b));
  }
  return Hypergraph(std::move(labels), std::move(edges));
}

Document parse_document(const Json& j, bool validate_model) {
  auto space = parse_feature_space(field(j, "feature_space", "document"));
  const auto& model = field(j, "model", "document");
  Document d{space, validate_model ? parse_model(model, space) : parse_model_unchecked(model, space), std::nullopt};
  if (auto it = j.find("entity"); it != j.end()) d.entity = parse_entity(*it, *space);
  return d;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

Document load_document(const std::string& path, bool validate_model) {
  return parse_document(read_json_file(path), validate_model);
}

Json to_json(const FeatureSpace& space) {
  Json out = Json::array();
  for (const auto& f : space.features()) {
    Json j;
    j["id"] = f.id;
    if (f.categorical()) {
      j["type"] = "categorical";
      j["domain"] = f.categories();
    } else {
      j["type"] = "numerical";
      j["min"] = to_string(f.numerical_domain().min);
      j["max"] = to_string(f.numerical_domain().max);
    }
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const Model& m) {
  const auto& space = *space_of(m);
  Json out;
  out["kind"] = std::string(kind_name(m));
  if (const auto* t = std::get_if<DecisionTree>(&m)) {
    out["classes"] = t->class_count();
    out["root"] = t->root();
    Json nodes = Json::array();
    for (NodeRef v = 0; v < t->size(); ++v) {
      const auto& n = t->node(v);
      Json j;
      j["id"] = v;
      if (n.leaf) {
        j["leaf"] = n.label;
      } else {
        j["feature"] = space[n.test.feature].id;
        j["test"] = test_json(space, n.test);
        j["left"] = n.left;
        j["right"] = n.right;
      }
      nodes.push_back(std::move(j));
    }
    out["nodes"] = std::move(nodes);
  } else if (const auto* d = std::get_if<Fbdd>(&m)) {
    out["root"] = d->root();
    Json nodes = Json::array();
    for (NodeRef v = 0; v < d->size(); ++v) {
      const auto& n = d->node(v);
      Json j;
      j["id"] = v;
      if (n.leaf) {
        j["leaf"] = n.label;
      } else {
        j["feature"] = space[n.feature].id;
        j["left"] = n.left;
        j["right"] = n.right;
      }
      nodes.push_back(std::move(j));
    }
    out["nodes"] = std::move(nodes);
  } else {
    const auto& c = std::get<CnfFormula>(m);
    Json clauses = Json::array();
    for (const auto& clause : c.clauses()) {
      Json lits = Json::array();
      for (const auto& lit : clause) {
        Json j;
        j["feature"] = space[lit.feature].id;
        j.update(test_json(space, lit));
        lits.push_back(std::move(j));
      }
      clauses.push_back(std::move(lits));
    }
    out["clauses"] = std::move(clauses);
  }
  return out;
}

Json to_json(const FeatureSpace& space, const Entity& e) {
  Json values = Json::object();
  for (FeatureIndex f = 0; f < space.size(); ++f) values[space[f].id] = value_json(space, f, e[f]);
  Json out;
  out["values"] = std::move(values);
  return out;
}

Json to_json(const Hypergraph& h) {
  Json out;
  out["nodes"] = h.labels();
  Json edges = Json::array();
  for (const auto& b : h.edges()) {
    Json e = Json::array();
    for (auto v : members(b)) e.push_back(h.labels()[v]);
    edges.push_back(std::move(e));
  }
  out["edges"] = std::move(edges);
  return out;
}

Json document_to_json(const Document& d) {
  Json out;
  out["feature_space"] = to_json(*d.space);
  out["model"] = to_json(d.model);
  if (d.entity) out["entity"] = to_json(*d.space, *d.entity);
  return out;
}

Json feature_set_to_json(const FeatureSpace& space, const FeatureSet& s) {
  Json out = Json::array();
  for (auto f : members(s)) out.push_back(space[f].id);
  return out;
}

FeatureSet parse_feature_set(const Json& j, const FeatureSpace& space) {
  if (!j.is_array()) bad("feature set must be an array of feature ids");
  FeatureSet s(space.size());
  for (const auto& v : j) s.set(space.index_of(scalar_text(v, "feature set")));
  return s;
}

}  // namespace xplain
