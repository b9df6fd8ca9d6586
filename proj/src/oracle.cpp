#include "xplain/oracle.hpp"

#include "xplain/error.hpp"

#include <bit>

namespace xplain {

namespace {

using Mask = std::uint64_t;

[[noreturn]] void over_budget(const std::string& what) { fail(ErrorKind::BudgetExceeded, "oracle: " + what); }

void check_subsets(std::size_t n, const OracleBudget& budget) {
  if (n > 62 || (Mask{1} << n) > budget.max_subsets) over_budget(std::to_string(n) + " features exceed the subset budget");
}

// Every subset of an n-element universe, by ascending size.
template <class F>
void for_each_subset(std::size_t n, F&& visit) {
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == 0) {
      visit(Mask{0});
      continue;
    }
    Mask s = (Mask{1} << k) - 1;
    const Mask limit = Mask{1} << n;
    while (s < limit) {
      visit(s);
      Mask c = s & (~s + 1);
      Mask r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
}

IndexSet to_set(Mask m, std::size_t n) {
  IndexSet s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m >> i & 1) s.set(i);
  }
  return s;
}

bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// The finite grid of entities the model cannot tell apart any further, with
// every grid point evaluated once.
struct Grid {
  std::vector<std::vector<Value>> axes;
  std::vector<std::size_t> stride;
  std::vector<ClassLabel> labels;
  std::size_t points = 1;

  Grid(const Model& m, const OracleBudget& budget) {
    const auto& space = *space_of(m);
    for (FeatureIndex f = 0; f < space.size(); ++f) {
      axes.push_back(representatives(m, f));
      stride.push_back(points);
      if (points > budget.max_entities / axes.back().size()) over_budget("the entity grid exceeds the entity budget");
      points *= axes.back().size();
    }
    if (points > budget.max_entities) over_budget("the entity grid exceeds the entity budget");
    labels.resize(points);
    std::vector<Value> values(space.size());
    for (std::size_t p = 0; p < points; ++p) {
      for (FeatureIndex f = 0; f < space.size(); ++f) values[f] = axes[f][coordinate(p, f)];
      labels[p] = evaluate(m, Entity(space, values));
    }
  }

  std::size_t coordinate(std::size_t p, FeatureIndex f) const { return p / stride[f] % axes[f].size(); }

  // Grid position of an arbitrary entity: the point in the same cell.
  std::vector<std::size_t> locate(const Model& m, const Entity& e) const {
    const auto& space = *space_of(m);
    std::vector<std::size_t> out;
    for (FeatureIndex f = 0; f < space.size(); ++f) {
      if (space.categorical(f)) {
        out.push_back(e.category(f));
        continue;
      }
      const auto ts = thresholds(m, f);
      const auto cell = cell_index(ts, e.number(f));
      const auto& d = space[f].numerical_domain();
      // Empty cells are skipped by the axis, so count the nonempty ones before.
      auto cells = threshold_cells(d.min, d.max, ts);
      std::size_t index = 0;
      for (std::size_t i = 0; i < cell; ++i) index += cells[i].empty() ? 0 : 1;
      out.push_back(index);
    }
    return out;
  }
};

}  // namespace

std::vector<FeatureSet> enumerate_sufficient_reasons(const Model& m, const Entity& e, const OracleBudget& budget) {
  const auto n = space_of(m)->size();
  check_subsets(n, budget);
  Grid grid(m, budget);
  const ClassLabel label = evaluate(m, e);
  const auto at = grid.locate(m, e);

  // S is a reason iff no differently labeled point agrees with e on all of S.
  // blocked[s] marks the subsets of some rival's agreement set.
  const Mask full = (Mask{1} << n) - 1;
  std::vector<char> blocked(std::size_t{1} << n, 0);
  for (std::size_t p = 0; p < grid.points; ++p) {
    if (grid.labels[p] == label) continue;
    Mask agree = 0;
    for (FeatureIndex f = 0; f < n; ++f) {
      if (grid.coordinate(p, f) == at[f]) agree |= Mask{1} << f;
    }
    blocked[agree] = 1;
  }
  for (FeatureIndex f = 0; f < n; ++f) {
    for (Mask s = 0; s <= full; ++s) {
      if (s >> f & 1) blocked[s ^ (Mask{1} << f)] |= blocked[s];
    }
  }
  std::vector<Mask> found;
  for_each_subset(n, [&](Mask s) {
    if (blocked[s]) return;
    for (auto r : found) {
      if (is_subset(r, s)) return;
    }
    found.push_back(s);
  });
  std::vector<FeatureSet> out;
  for (auto s : found) out.push_back(to_set(s, n));
  sort_family(out);
  return out;
}

OracleExplanation explain_by_oracle(const Model& m, const Entity& e, const OracleBudget& budget) {
  const auto n = space_of(m)->size();
  OracleExplanation out{enumerate_sufficient_reasons(m, e, budget), FeatureSet(n), FeatureSet(n)};
  out.necessary.set();
  for (const auto& s : out.reasons) {
    out.necessary &= s;
    out.relevant |= s;
  }
  if (out.reasons.empty()) out.necessary.reset();
  return out;
}

bool brute_necessary(const Model& m, const Entity& e, FeatureIndex x, const OracleBudget& budget) {
  if (x >= space_of(m)->size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  return explain_by_oracle(m, e, budget).necessary.test(x);
}

bool brute_relevant(const Model& m, const Entity& e, FeatureIndex x, const OracleBudget& budget) {
  if (x >= space_of(m)->size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  return explain_by_oracle(m, e, budget).relevant.test(x);
}

namespace {

// Grid points at which some other value of x changes the label.
template <class F>
void for_each_flip_point(const Grid& grid, FeatureIndex x, F&& visit) {
  const auto size = grid.axes[x].size();
  const auto stride = grid.stride[x];
  for (std::size_t p = 0; p < grid.points; ++p) {
    const auto base = p - grid.coordinate(p, x) * stride;
    for (std::size_t b = 0; b < size; ++b) {
      if (grid.labels[base + b * stride] != grid.labels[p]) {
        visit(p);
        break;
      }
    }
  }
}

}  // namespace

bool brute_useful(const Model& m, FeatureIndex x, const OracleBudget& budget) {
  if (x >= space_of(m)->size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  Grid grid(m, budget);
  bool useful = false;
  for_each_flip_point(grid, x, [&](std::size_t) { useful = true; });
  return useful;
}

Count brute_score(const Model& m, FeatureIndex x, const OracleBudget& budget) {
  const auto& space = *space_of(m);
  if (x >= space.size()) fail(ErrorKind::UnknownFeature, "feature index out of range");
  if (!space.all_categorical()) fail(ErrorKind::NonCategoricalFeature, "scores need a categorical feature space");
  Grid grid(m, budget);
  Count n = 0;
  for_each_flip_point(grid, x, [&](std::size_t) { ++n; });
  return n;
}

std::vector<NodeSet> enumerate_minimal_hitting_sets(const Hypergraph& h, const OracleBudget& budget) {
  const auto n = h.node_count();
  check_subsets(n, budget);
  std::vector<Mask> edges;
  for (const auto& b : h.edges()) {
    Mask m = 0;
    for (auto v : members(b)) m |= Mask{1} << v;
    edges.push_back(m);
  }
  std::vector<Mask> found;
  for_each_subset(n, [&](Mask s) {
    for (auto r : found) {
      if (is_subset(r, s)) return;
    }
    for (auto b : edges) {
      if ((b & s) == 0) return;
    }
    found.push_back(s);
  });
  std::vector<NodeSet> out;
  for (auto s : found) out.push_back(to_set(s, n));
  sort_family(out);
  return out;
}

}  // namespace xplain
