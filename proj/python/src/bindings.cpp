#include "cli.hpp"
#include "xplain/error.hpp"
#include "xplain/json_io.hpp"
#include "xplain/necessity.hpp"
#include "xplain/oracle.hpp"
#include "xplain/relevance.hpp"
#include "xplain/usefulness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
#include <sstream>

namespace py = pybind11;
using namespace xplain;

namespace {

using Ids = std::vector<std::string>;

struct Handle {
  Document doc;
};

Json to_json_value(const py::handle& v) {
  if (py::isinstance<py::bool_>(v)) throw py::type_error("entity values must be strings or numbers");
  if (py::isinstance<py::str>(v)) return v.cast<std::string>();
  if (py::isinstance<py::int_>(v) || py::isinstance<py::float_>(v)) return py::str(v).cast<std::string>();
  throw py::type_error("entity values must be strings or numbers");
}

Entity entity_of(const Handle& h, const std::optional<py::dict>& values) {
  if (!values) {
    if (!h.doc.entity) fail(ErrorKind::InvalidArgument, "no entity given and the document has none");
    return *h.doc.entity;
  }
  Json j = Json::object();
  for (auto [k, v] : *values) j[py::str(k).cast<std::string>()] = to_json_value(v);
  return parse_entity(Json{{"values", j}}, *h.doc.space);
}

Ids ids(const FeatureSpace& space, const FeatureSet& s) {
  Ids out;
  for (auto f : members(s)) out.push_back(space[f].id);
  return out;
}

std::vector<Ids> family(const FeatureSpace& space, const std::vector<FeatureSet>& f) {
  std::vector<Ids> out;
  for (const auto& s : f) out.push_back(ids(space, s));
  return out;
}

FeatureSet feature_set(const FeatureSpace& space, const Ids& names) {
  FeatureSet s(space.size());
  for (const auto& n : names) s.set(space.index_of(n));
  return s;
}

Model reason_model(const Model& m) {
  if (const auto* d = std::get_if<Fbdd>(&m)) return fbdd_to_tree(*d);
  return m;
}

DecisionTree score_tree(const Model& m) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return *t;
  return as_tree(m);
}

Hypergraph hypergraph(const Ids& nodes, const std::vector<Ids>& edges) {
  Json j{{"nodes", nodes}, {"edges", edges}};
  return parse_hypergraph(j);
}

py::tuple score_tuple(const FeatureSpace& space, const UsefulnessScore& s) {
  return py::make_tuple(space[s.feature].id, py::int_(py::str(to_string(s.necessary_count))),
                        py::int_(py::str(to_string(s.total_entities))));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sufficient reasons, relevant, necessary and useful features for tree-like models";

  static py::exception<Error> error(m, "XplainError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  py::class_<Handle, std::shared_ptr<Handle>>(m, "Document")
      .def_static(
          "load", [](const std::string& path) { return std::make_shared<Handle>(Handle{load_document(path)}); },
          py::arg("path"))
      .def_static(
          "from_json",
          [](const std::string& text) {
            Json j;
            try {
              j = Json::parse(text);
            } catch (const Json::exception& e) {
              fail(ErrorKind::ParseError, e.what());
            }
            return std::make_shared<Handle>(Handle{parse_document(j)});
          },
          py::arg("text"))
      .def_property_readonly("kind", [](const Handle& h) { return std::string(kind_name(h.doc.model)); })
      .def_property_readonly("features",
                             [](const Handle& h) {
                               Ids out;
                               for (const auto& f : h.doc.space->features()) out.push_back(f.id);
                               return out;
                             })
      .def_property_readonly("has_entity", [](const Handle& h) { return h.doc.entity.has_value(); })
      .def("to_json", [](const Handle& h) { return document_to_json(h.doc).dump(); })
      .def(
          "predict", [](const Handle& h, std::optional<py::dict> e) { return evaluate(h.doc.model, entity_of(h, e)); },
          py::arg("entity") = py::none());

  m.def(
      "sufficient_reasons",
      [](const Handle& h, std::optional<py::dict> e, std::size_t limit) {
        auto got = sufficient_reasons(reason_model(h.doc.model), entity_of(h, e), limit);
        return family(*h.doc.space, got.reasons);
      },
      py::arg("doc"), py::arg("entity") = py::none(), py::arg("limit") = 1000);
  m.def(
      "is_sufficient_reason",
      [](const Handle& h, const Ids& s, std::optional<py::dict> e) {
        return is_sufficient_reason(h.doc.model, entity_of(h, e), feature_set(*h.doc.space, s));
      },
      py::arg("doc"), py::arg("features"), py::arg("entity") = py::none());
  m.def(
      "necessary",
      [](const Handle& h, std::optional<py::dict> e) {
        return ids(*h.doc.space, all_necessary(h.doc.model, entity_of(h, e)));
      },
      py::arg("doc"), py::arg("entity") = py::none());
  m.def(
      "relevant",
      [](const Handle& h, std::optional<py::dict> e) {
        return ids(*h.doc.space, all_relevant(reason_model(h.doc.model), entity_of(h, e)));
      },
      py::arg("doc"), py::arg("entity") = py::none());
  m.def(
      "is_relevant",
      [](const Handle& h, const std::string& feature, std::optional<py::dict> e) {
        auto a = is_relevant(reason_model(h.doc.model), entity_of(h, e), h.doc.space->index_of(feature));
        std::optional<Ids> witness;
        if (a.witness) witness = ids(*h.doc.space, *a.witness);
        return py::make_tuple(a.relevant, witness);
      },
      py::arg("doc"), py::arg("feature"), py::arg("entity") = py::none());
  m.def(
      "is_useful",
      [](const Handle& h, const std::string& feature) {
        return is_useful(h.doc.model, h.doc.space->index_of(feature));
      },
      py::arg("doc"), py::arg("feature"));
  m.def(
      "score",
      [](const Handle& h, const std::string& feature) {
        return score_tuple(*h.doc.space, usefulness_score(score_tree(h.doc.model), h.doc.space->index_of(feature)));
      },
      py::arg("doc"), py::arg("feature"));
  m.def(
      "score_all",
      [](const Handle& h) {
        auto table = score_all(score_tree(h.doc.model));
        py::list out;
        for (auto f : table.ranking) out.append(score_tuple(*h.doc.space, table.scores[f]));
        return out;
      },
      py::arg("doc"));
  m.def(
      "equivalent", [](const Handle& a, const Handle& b) { return equivalent(a.doc.model, b.doc.model); },
      py::arg("a"), py::arg("b"));
  m.def(
      "validate",
      [](const Handle& h) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate(h.doc.model).violations) out.emplace_back(v.code, v.message);
        return out;
      },
      py::arg("doc"));
  m.def(
      "oracle_sufficient_reasons",
      [](const Handle& h, std::optional<py::dict> e) {
        return family(*h.doc.space, enumerate_sufficient_reasons(h.doc.model, entity_of(h, e)));
      },
      py::arg("doc"), py::arg("entity") = py::none());
  m.def(
      "minimal_hitting_sets",
      [](const Ids& nodes, const std::vector<Ids>& edges) {
        auto hg = hypergraph(nodes, edges);
        std::vector<Ids> out;
        for (const auto& s : enumerate_minimal_hitting_sets(hg)) {
          Ids row;
          for (auto v : members(s)) row.push_back(nodes[v]);
          out.push_back(std::move(row));
        }
        return out;
      },
      py::arg("nodes"), py::arg("edges"));
  m.def(
      "minimal_hitting_set_containing",
      [](const Ids& nodes, const std::vector<Ids>& edges, const Ids& required) -> std::optional<Ids> {
        auto hg = hypergraph(nodes, edges);
        NodeSet w = hg.empty_set();
        for (const auto& n : required) {
          auto it = std::find(nodes.begin(), nodes.end(), n);
          if (it == nodes.end()) fail(ErrorKind::UnknownNode, "unknown node '" + n + "'");
          w.set(it - nodes.begin());
        }
        auto found = minimal_hitting_set_containing(hg, w);
        if (!found) return std::nullopt;
        Ids row;
        for (auto v : members(*found)) row.push_back(nodes[v]);
        return row;
      },
      py::arg("nodes"), py::arg("edges"), py::arg("required"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"xplain"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
