#include "cli.hpp"

#include "xplain/error.hpp"
#include "xplain/json_io.hpp"
#include "xplain/necessity.hpp"
#include "xplain/oracle.hpp"
#include "xplain/relevance.hpp"
#include "xplain/usefulness.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace xplain::cli {

namespace {

struct Budgets {
  std::uint64_t search = kDefaultSearchBudget;
  OracleBudget oracle;
};

// XPLAIN_BUDGET is either one integer for every budget or a comma separated
// list of search=N, entities=N, subsets=N.
Budgets budgets_from_env() {
  Budgets b;
  const char* raw = std::getenv("XPLAIN_BUDGET");
  if (!raw || !*raw) return b;
  auto number = [](const std::string& text) -> std::uint64_t {
    try {
      std::size_t used = 0;
      auto v = std::stoull(text, &used);
      if (used == text.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::InvalidArgument, "XPLAIN_BUDGET: bad number '" + text + "'");
  };
  std::string text(raw);
  if (text.find('=') == std::string::npos) {
    auto v = number(text);
    b.search = v;
    b.oracle.max_entities = v;
    b.oracle.max_subsets = v;
    return b;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "XPLAIN_BUDGET: expected key=value in '" + item + "'");
    auto key = item.substr(0, eq);
    auto v = number(item.substr(eq + 1));
    if (key == "search") {
      b.search = v;
    } else if (key == "entities") {
      b.oracle.max_entities = v;
    } else if (key == "subsets") {
      b.oracle.max_subsets = v;
    } else {
      fail(ErrorKind::InvalidArgument, "XPLAIN_BUDGET: unknown key '" + key + "'");
    }
  }
  return b;
}

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport r)
      : Error(ErrorKind::ValidationError, r.violations.front().message), report(std::move(r)) {}
  ValidationReport report;
};

class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json violations_json(const ValidationReport& r) {
  Json a = Json::array();
  for (const auto& v : r.violations) a.push_back(Json{{"code", v.code}, {"message", v.message}});
  return a;
}

Document load(const std::string& path) {
  auto d = load_document(path, false);
  auto report = validate(d.model);
  if (!report.ok()) throw ValidationFailed(std::move(report));
  return d;
}

Entity entity_for(const Document& d, const std::string& entity_path) {
  if (!entity_path.empty()) {
    auto j = read_json_file(entity_path);
    return parse_entity(j.contains("entity") ? j.at("entity") : j, *d.space);
  }
  if (!d.entity) fail(ErrorKind::InvalidArgument, "this command needs an entity: add --entity or an 'entity' field");
  return *d.entity;
}

FeatureIndex feature_for(const FeatureSpace& space, const std::string& id) { return space.index_of(id); }

// Reasons and relevance work on the reason hypergraph, which FBDDs reach by unfolding.
Model hypergraph_model(const Model& m) {
  if (const auto* d = std::get_if<Fbdd>(&m)) return fbdd_to_tree(*d);
  return m;
}

DecisionTree tree_for_scores(const Model& m) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return *t;
  return as_tree(m);
}

FeatureSet parse_id_list(const FeatureSpace& space, const std::vector<std::string>& ids) {
  FeatureSet s(space.size());
  for (const auto& id : ids) s.set(space.index_of(id));
  return s;
}

std::string braces(const FeatureSpace& space, const FeatureSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto f : members(s)) {
    out += (first ? "" : ", ") + space[f].id;
    first = false;
  }
  return out + "}";
}

Json family_json(const FeatureSpace& space, const std::vector<FeatureSet>& family) {
  Json a = Json::array();
  for (const auto& s : family) a.push_back(feature_set_to_json(space, s));
  return a;
}

struct Options {
  std::string output = "human";
  bool oracle_check = false;
  std::string query;
  std::string model;
  std::string model2;
  std::string entity;
  std::string feature;
  std::vector<std::string> containing;
  std::size_t k = 0;
  std::size_t limit = 1000;
  bool all = false;
};

// A finished command: the machine-readable report and its human rendering.
struct Report {
  Json json;
  std::string human;
};

void agree(bool same, const std::string& what) {
  if (!same) throw OracleMismatch("oracle disagrees on " + what);
}

Report explain(const Options& o, const Budgets& b) {
  auto d = load(o.model);
  const auto& space = *d.space;
  auto e = entity_for(d, o.entity);
  const auto label = evaluate(d.model, e);
  Report r;
  r.json["command"] = "explain " + o.query;
  r.json["model"] = std::string(kind_name(d.model));
  r.json["prediction"] = label;
  std::ostringstream h;
  h << "prediction: " << label << "\n";

  if (o.query == "necessary") {
    auto nec = all_necessary(d.model, e);
    if (o.oracle_check) agree(nec == explain_by_oracle(d.model, e, b.oracle).necessary, "necessary features");
    if (!o.feature.empty()) {
      auto x = feature_for(space, o.feature);
      r.json["feature"] = o.feature;
      r.json["necessary"] = bool(nec.test(x));
      h << o.feature << (nec.test(x) ? " is" : " is not") << " necessary\n";
    } else {
      r.json["necessary"] = feature_set_to_json(space, nec);
      h << "necessary: " << braces(space, nec) << "\n";
    }
  } else if (o.query == "relevant") {
    auto m = hypergraph_model(d.model);
    if (!o.feature.empty()) {
      auto x = feature_for(space, o.feature);
      auto ans = is_relevant(m, e, x);
      if (o.oracle_check) agree(ans.relevant == brute_relevant(d.model, e, x, b.oracle), "relevance of " + o.feature);
      r.json["feature"] = o.feature;
      r.json["relevant"] = ans.relevant;
      r.json["witness"] = ans.witness ? feature_set_to_json(space, *ans.witness) : Json(nullptr);
      h << o.feature << (ans.relevant ? " is" : " is not") << " relevant";
      if (ans.witness) h << ", witness " << braces(space, *ans.witness);
      h << "\n";
    } else {
      auto rel = all_relevant(m, e);
      if (o.oracle_check) agree(rel == explain_by_oracle(d.model, e, b.oracle).relevant, "relevant features");
      r.json["relevant"] = feature_set_to_json(space, rel);
      h << "relevant: " << braces(space, rel) << "\n";
    }
  } else if (o.query == "sufficient-reasons") {
    auto m = hypergraph_model(d.model);
    if (!o.containing.empty()) {
      auto y = parse_id_list(space, o.containing);
      auto found = sufficient_reason_containing(m, e, y, b.search);
      if (o.oracle_check) {
        auto all = enumerate_sufficient_reasons(d.model, e, b.oracle);
        bool exists = std::any_of(all.begin(), all.end(), [&](const FeatureSet& s) { return y.is_subset_of(s); });
        agree(exists == found.has_value(), "existence of a reason containing the set");
        if (found) agree(std::find(all.begin(), all.end(), *found) != all.end(), "the returned reason");
      }
      r.json["containing"] = feature_set_to_json(space, y);
      r.json["reason"] = found ? feature_set_to_json(space, *found) : Json(nullptr);
      h << (found ? braces(space, *found) : std::string("no sufficient reason contains ") + braces(space, y)) << "\n";
    } else if (!o.feature.empty()) {
      auto x = feature_for(space, o.feature);
      const std::size_t k = o.k ? o.k : o.limit;
      auto got = count_sufficient_reasons_with(m, e, x, k, b.search);
      if (o.oracle_check) {
        auto all = enumerate_sufficient_reasons(d.model, e, b.oracle);
        auto with = std::count_if(all.begin(), all.end(), [&](const FeatureSet& s) { return s.test(x); });
        agree(got.reasons.size() == std::min<std::size_t>(k, with), "the number of reasons containing " + o.feature);
      }
      sort_family(got.reasons);
      r.json["feature"] = o.feature;
      r.json["k"] = k;
      r.json["reasons"] = family_json(space, got.reasons);
      r.json["at_least_k"] = got.at_least_k;
      for (const auto& s : got.reasons) h << braces(space, s) << "\n";
      if (got.at_least_k) h << "(at least " << k << ")\n";
    } else {
      auto got = sufficient_reasons(m, e, o.k ? o.k : o.limit, b.search);
      if (o.oracle_check && !got.at_least_k) {
        agree(got.reasons == enumerate_sufficient_reasons(d.model, e, b.oracle), "the sufficient reasons");
      }
      r.json["reasons"] = family_json(space, got.reasons);
      r.json["complete"] = !got.at_least_k;
      for (const auto& s : got.reasons) h << braces(space, s) << "\n";
      if (got.at_least_k) h << "(stopped at " << got.reasons.size() << ")\n";
    }
  } else {
    auto rh = reason_hypergraph(hypergraph_model(d.model), e);
    r.json["hypergraph"] = to_json(rh.base);
    r.json["provenance"] = rh.provenance;
    r.json["clauses"] = rh.cnf.clauses().size();
    for (std::size_t i = 0; i < rh.base.edges().size(); ++i) {
      h << braces(space, rh.base.edge(i)) << "  from clause";
      for (auto c : rh.provenance[i]) h << " " << c;
      h << "\n";
    }
  }
  r.human = h.str();
  return r;
}

Json score_json(const FeatureSpace& space, const UsefulnessScore& s) {
  return Json{{"feature", space[s.feature].id},
              {"necessary_count", to_string(s.necessary_count)},
              {"total_entities", to_string(s.total_entities)}};
}

Report score(const Options& o, const Budgets& b) {
  auto d = load(o.model);
  const auto& space = *d.space;
  auto t = tree_for_scores(d.model);
  Report r;
  r.json["command"] = "score";
  std::ostringstream h;
  std::vector<UsefulnessScore> scores;
  std::vector<FeatureIndex> ranking;
  if (!o.feature.empty()) {
    scores.push_back(usefulness_score(t, feature_for(space, o.feature)));
    ranking.push_back(scores.front().feature);
  } else {
    auto table = score_all(t);
    scores = std::move(table.scores);
    ranking = std::move(table.ranking);
  }
  if (o.oracle_check) {
    for (const auto& s : scores) {
      agree(s.necessary_count == brute_score(d.model, s.feature, b.oracle), "the score of " + space[s.feature].id);
    }
  }
  Json a = Json::array();
  for (auto f : ranking) {
    const auto& s = o.feature.empty() ? scores[f] : scores.front();
    a.push_back(score_json(space, s));
    h << space[s.feature].id << " " << s.necessary_count << " / " << s.total_entities << "\n";
  }
  r.json["scores"] = std::move(a);
  r.human = h.str();
  return r;
}

Report useful(const Options& o, const Budgets& b) {
  auto d = load(o.model);
  const auto& space = *d.space;
  Report r;
  r.json["command"] = "useful";
  std::ostringstream h;
  std::vector<FeatureIndex> which;
  if (!o.feature.empty()) {
    which.push_back(feature_for(space, o.feature));
  } else {
    for (FeatureIndex x = 0; x < space.size(); ++x) which.push_back(x);
  }
  Json a = Json::array();
  for (auto x : which) {
    bool u = is_useful(d.model, x);
    if (o.oracle_check) agree(u == brute_useful(d.model, x, b.oracle), "usefulness of " + space[x].id);
    a.push_back(Json{{"feature", space[x].id}, {"useful", u}});
    h << space[x].id << (u ? " useful" : " not useful") << "\n";
  }
  r.json["features"] = std::move(a);
  r.human = h.str();
  return r;
}

Report equiv(const Options& o) {
  auto d1 = load(o.model);
  auto d2 = load(o.model2);
  bool same = equivalent(d1.model, d2.model);
  Report r;
  r.json["command"] = "equiv";
  r.json["equivalent"] = same;
  r.human = same ? "equivalent\n" : "not equivalent\n";
  return r;
}

Report validate_cmd(const Options& o) {
  auto d = load_document(o.model, false);
  auto report = validate(d.model);
  Report r;
  r.json["command"] = "validate";
  r.json["model"] = std::string(kind_name(d.model));
  r.json["valid"] = report.ok();
  r.json["violations"] = violations_json(report);
  std::ostringstream h;
  h << (report.ok() ? "valid" : "invalid") << " " << kind_name(d.model) << "\n";
  for (const auto& v : report.violations) h << v.code << ": " << v.message << "\n";
  r.human = h.str();
  return r;
}

Report oracle(const Options& o, const Budgets& b) {
  Report r;
  r.json["command"] = "oracle " + o.query;
  std::ostringstream h;
  if (o.query == "hitting-sets") {
    auto hg = parse_hypergraph(read_json_file(o.model));
    auto family = enumerate_minimal_hitting_sets(hg, b.oracle);
    Json a = Json::array();
    for (const auto& s : family) {
      Json ids = Json::array();
      std::string line = "{";
      for (auto v : members(s)) {
        ids.push_back(hg.labels()[v]);
        line += (ids.size() > 1 ? ", " : "") + hg.labels()[v];
      }
      a.push_back(std::move(ids));
      h << line << "}\n";
    }
    r.json["hitting_sets"] = std::move(a);
    r.human = h.str();
    return r;
  }
  auto d = load(o.model);
  const auto& space = *d.space;
  if (o.query == "useful" || o.query == "score") {
    Json a = Json::array();
    for (FeatureIndex x = 0; x < space.size(); ++x) {
      if (!o.feature.empty() && space[x].id != o.feature) continue;
      if (o.query == "useful") {
        bool u = brute_useful(d.model, x, b.oracle);
        a.push_back(Json{{"feature", space[x].id}, {"useful", u}});
        h << space[x].id << (u ? " useful" : " not useful") << "\n";
      } else {
        auto c = brute_score(d.model, x, b.oracle);
        a.push_back(Json{{"feature", space[x].id}, {"necessary_count", to_string(c)}});
        h << space[x].id << " " << c << "\n";
      }
    }
    if (!o.feature.empty() && a.empty()) space.index_of(o.feature);
    r.json["features"] = std::move(a);
    r.human = h.str();
    return r;
  }
  auto e = entity_for(d, o.entity);
  auto ex = explain_by_oracle(d.model, e, b.oracle);
  r.json["prediction"] = evaluate(d.model, e);
  if (o.query == "sufficient-reasons") {
    r.json["reasons"] = family_json(space, ex.reasons);
    for (const auto& s : ex.reasons) h << braces(space, s) << "\n";
  } else if (o.query == "necessary") {
    r.json["necessary"] = feature_set_to_json(space, ex.necessary);
    h << "necessary: " << braces(space, ex.necessary) << "\n";
  } else {
    r.json["relevant"] = feature_set_to_json(space, ex.relevant);
    h << "relevant: " << braces(space, ex.relevant) << "\n";
  }
  r.human = h.str();
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Explanation queries over decision trees, FBDDs and CNF formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", o.output, "Report format")->check(CLI::IsMember({"human", "json"}));
  app.add_flag("--oracle-check", o.oracle_check, "Recompute the answer by exhaustive search and fail on mismatch");

  auto* ex = app.add_subcommand("explain", "Sufficient reasons, relevant or necessary features for an entity");
  ex->add_option("query", o.query)
      ->required()
      ->check(CLI::IsMember({"sufficient-reasons", "relevant", "necessary", "hypergraph"}));
  ex->add_option("model", o.model, "Model document")->required();
  ex->add_option("--entity", o.entity, "Entity file; defaults to the document's entity");
  ex->add_option("--feature", o.feature, "Restrict the query to one feature");
  ex->add_option("--k", o.k, "Stop after k sufficient reasons");
  ex->add_option("--containing", o.containing, "Find a sufficient reason containing these features")->delimiter(',');
  ex->add_option("--limit", o.limit, "Maximum number of reasons listed")->check(CLI::PositiveNumber);

  auto* sc = app.add_subcommand("score", "Usefulness scores");
  sc->add_option("model", o.model)->required();
  auto* sf = sc->add_option("--feature", o.feature, "Score one feature");
  auto* sa = sc->add_flag("--all", o.all, "Score and rank every feature");
  sf->excludes(sa);
  sa->excludes(sf);

  auto* us = app.add_subcommand("useful", "Whether features are useful");
  us->add_option("model", o.model)->required();
  us->add_option("--feature", o.feature);

  auto* eq = app.add_subcommand("equiv", "Whether two models agree on every entity");
  eq->add_option("m1", o.model)->required();
  eq->add_option("m2", o.model2)->required();

  auto* orc = app.add_subcommand("oracle", "Exhaustive reference answers");
  orc->add_option("query", o.query)
      ->required()
      ->check(CLI::IsMember({"sufficient-reasons", "relevant", "necessary", "useful", "score", "hitting-sets"}));
  orc->add_option("input", o.model, "Model document, or a hypergraph for hitting-sets")->required();
  orc->add_option("--entity", o.entity);
  orc->add_option("--feature", o.feature);

  auto* va = app.add_subcommand("validate", "Structural checks on a model document");
  va->add_option("model", o.model)->required();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kFailure;
  }
  if (sc->parsed() && o.feature.empty() && !o.all) {
    err << "score: give --feature or --all\n";
    return kFailure;
  }

  const bool json = o.output == "json";
  auto report_error = [&](const std::string& kind, const std::string& message, const Json* violations, int code) {
    if (json) {
      Json e{{"kind", kind}, {"message", message}};
      if (violations) e["violations"] = *violations;
      out << Json{{"error", e}}.dump(2) << "\n";
    } else {
      err << "error (" << kind << "): " << message << "\n";
      if (violations) {
        for (const auto& v : *violations) err << "  " << v["code"].get<std::string>() << ": " << v["message"].get<std::string>() << "\n";
      }
    }
    return code;
  };

  try {
    const auto budgets = budgets_from_env();
    Report r;
    if (ex->parsed()) {
      r = explain(o, budgets);
    } else if (sc->parsed()) {
      r = score(o, budgets);
    } else if (us->parsed()) {
      r = useful(o, budgets);
    } else if (eq->parsed()) {
      r = equiv(o);
    } else if (orc->parsed()) {
      r = oracle(o, budgets);
    } else {
      r = validate_cmd(o);
    }
    if (o.oracle_check) r.json["oracle_check"] = "agree";
    if (json) {
      out << r.json.dump(2) << "\n";
    } else {
      out << r.human;
    }
    if (va->parsed() && !r.json["valid"].get<bool>()) return kInvalid;
    return kOk;
  } catch (const ValidationFailed& e) {
    auto v = violations_json(e.report);
    return report_error("ValidationError", e.what(), &v, kInvalid);
  } catch (const OracleMismatch& e) {
    return report_error("OracleMismatch", e.what(), nullptr, kOracleMismatch);
  } catch (const Error& e) {
    int code = kFailure;
    if (e.kind() == ErrorKind::ValidationError) code = kInvalid;
    if (e.kind() == ErrorKind::BudgetExceeded) code = kBudget;
    if (e.kind() == ErrorKind::ParseError) code = kParse;
    return report_error(std::string(to_string(e.kind())), e.what(), nullptr, code);
  }
}

}  // namespace xplain::cli
