#include "framelab/difference_structure.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "framelab/error.hpp"

namespace framelab {

std::map<long, std::vector<Index>> DiffCounts::levels() const {
  std::map<long, std::vector<Index>> out;
  for (Index x = 1; x < counts.size(); ++x) out[counts[x]].push_back(x);
  return out;
}

std::vector<long> DiffCounts::distinct_values() const {
  std::set<long> values(counts.begin() + 1, counts.end());
  return {values.begin(), values.end()};
}

DiffCounts difference_counts(const AbelianGroup& g, std::span<const Index> subset) {
  if (subset.size() < 2) throw Error(ErrorKind::invalid_subset, "difference counts need |S| >= 2");
  std::vector<char> seen(g.order(), 0);
  for (Index x : subset) {
    if (x >= g.order()) throw Error(ErrorKind::invalid_element, "subset element out of range");
    if (seen[x]) throw Error(ErrorKind::invalid_subset, "duplicate element " + g.format(x));
    seen[x] = 1;
  }
  DiffCounts d{g, {subset.begin(), subset.end()}, std::vector<long>(g.order(), 0)};
  for (Index a : subset)
    for (Index b : subset)
      if (a != b) ++d.counts[g.subtract(a, b)];
  return d;
}

namespace {

bool is_odd_prime(std::size_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::size_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<Index> sorted_copy(std::span<const Index> s) {
  std::vector<Index> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> with_zero(std::vector<Index> s) {
  if (!std::binary_search(s.begin(), s.end(), Index{0})) s.insert(s.begin(), 0);
  return s;
}

BidifferenceParams params_for(const DiffCounts& d, long inside, long outside, std::vector<Index> a) {
  return BidifferenceParams{static_cast<long>(d.group.order()), static_cast<long>(d.subset.size()),
                            static_cast<long>(a.size()), inside, outside, std::move(a)};
}

ClassMembership degenerate(BidifferenceParams p) { return ClassMembership{true, false, std::move(p)}; }

}  // namespace

std::vector<Index> quadratic_residues(const AbelianGroup& g) {
  if (!g.is_cyclic() || !is_odd_prime(g.order())) return {};
  std::set<Index> squares;
  for (Index x = 1; x < g.order(); ++x) squares.insert(g.multiply(x, static_cast<long>(x)));
  return {squares.begin(), squares.end()};
}

std::vector<Index> reversal(const AbelianGroup& g, std::span<const Index> subset) {
  std::vector<Index> out;
  out.reserve(subset.size());
  for (Index x : subset) out.push_back(g.negate(x));
  return out;
}

Classification classify(const AbelianGroup& g, std::span<const Index> subset) {
  return classify(difference_counts(g, subset));
}

Classification classify(const DiffCounts& d) {
  const auto& g = d.group;
  Classification c;
  c.n = static_cast<long>(g.order());
  c.m = static_cast<long>(d.subset.size());
  c.count_values = d.distinct_values();
  c.nested_t_general = c.count_values.size();

  const auto s_sorted = sorted_copy(d.subset);
  c.zero_in_set = std::binary_search(s_sorted.begin(), s_sorted.end(), g.identity_index());
  c.reversible = sorted_copy(reversal(g, s_sorted)) == s_sorted;
  c.regular = c.reversible && !c.zero_in_set;

  const auto s_with_zero = with_zero(s_sorted);
  const auto qr_with_zero = [&] {
    auto qr = quadratic_residues(g);
    return qr.empty() ? qr : with_zero(std::move(qr));
  }();

  if (c.count_values.size() == 1) {
    c.difference_set = true;
    c.lambda = c.count_values.front();
    const long lam = c.lambda;
    auto trivial = params_for(d, lam, lam, {g.identity_index()});
    c.bidifference = degenerate(trivial);
    c.divisible = degenerate(trivial);
    c.relative = degenerate(trivial);
    c.partial = degenerate(params_for(d, lam, lam, s_with_zero));
    if (!qr_with_zero.empty()) c.gaussian = degenerate(params_for(d, lam, lam, qr_with_zero));
  } else if (c.count_values.size() == 2) {
    const auto levels = d.levels();
    for (const auto& [inside, members] : levels) {
      const long outside = inside == c.count_values[0] ? c.count_values[1] : c.count_values[0];
      c.bidifference_assignments.push_back(params_for(d, inside, outside, with_zero(members)));
    }
    // Prefer lambda > mu as the headline assignment.
    std::sort(c.bidifference_assignments.begin(), c.bidifference_assignments.end(),
              [](const auto& a, const auto& b) { return a.lambda > b.lambda; });

    std::optional<BidifferenceParams> preferred;
    for (const auto& p : c.bidifference_assignments) {
      if (is_subgroup(g, p.relative_to)) {
        if (!c.divisible.holds) c.divisible = {true, true, p};
        if (p.lambda == 0 && !c.relative.holds) c.relative = {true, true, p};
      }
      if (p.relative_to == s_with_zero && !c.partial.holds) c.partial = {true, true, p};
      if (!qr_with_zero.empty() && p.relative_to == qr_with_zero && !c.gaussian.holds) {
        c.gaussian = {true, true, p};
      }
      if (p.mu == p.lambda + 1 && !c.almost.holds) c.almost = {true, true, p};
    }
    if (c.divisible.holds) {
      preferred = c.divisible.params;
    } else if (c.partial.holds) {
      preferred = c.partial.params;
    } else if (c.gaussian.holds) {
      preferred = c.gaussian.params;
    } else {
      preferred = c.bidifference_assignments.front();
    }
    c.bidifference = {true, true, preferred};
  }

  try {
    c.nested_divisible = nested_divisible_chain(d);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::capacity) throw;
    c.nested_search_complete = false;
  }
  return c;
}

PdsToggle pds_zero_toggle(const AbelianGroup& g, std::span<const Index> subset) {
  const auto before = classify(g, subset);
  if (!before.partial.holds || !before.reversible) {
    throw Error(ErrorKind::invalid_operation, "zero toggle needs a reversible partial difference set");
  }
  const auto& p = *before.partial.params;
  PdsToggle out;
  out.subset = sorted_copy(subset);
  out.n = before.n;
  out.mu = p.mu;
  if (before.zero_in_set) {
    out.subset.erase(out.subset.begin());
    out.m = before.m - 1;
    out.lambda = p.lambda - 2;
  } else {
    out.subset.insert(out.subset.begin(), g.identity_index());
    out.m = before.m + 1;
    out.lambda = p.lambda + 2;
  }
  if (out.subset.size() < 2) throw Error(ErrorKind::invalid_operation, "toggled set is too small to classify");

  const auto after = classify(g, out.subset);
  const bool ok = after.partial.holds && after.partial.params->lambda == out.lambda &&
                  after.partial.params->mu == out.mu && after.m == out.m;
  if (!ok) throw Error(ErrorKind::invalid_operation, "reclassification disagrees with the toggled parameters");
  return out;
}

namespace {

struct ChainGraph {
  std::vector<std::vector<Index>> nodes;          // member lists
  std::map<std::vector<Index>, std::size_t> ids;  // members -> node id
  std::vector<std::vector<std::pair<std::size_t, long>>> edges;

  std::size_t intern(std::vector<Index> members) {
    auto [it, inserted] = ids.emplace(members, nodes.size());
    if (inserted) {
      if (nodes.size() >= kMaxChainNodes) {
        throw Error(ErrorKind::capacity, "nested chain search explored too many subgroups");
      }
      nodes.push_back(std::move(members));
      edges.emplace_back();
    }
    return it->second;
  }
};

std::vector<char> to_mask(const std::vector<Index>& members, std::size_t n) {
  std::vector<char> mask(n, 0);
  for (Index x : members) mask[x] = 1;
  return mask;
}

// All subgroups K' > K whose new elements K' \ K share one count value.
std::vector<std::pair<std::vector<Index>, long>> successors(const DiffCounts& d,
                                                            const std::vector<Index>& base,
                                                            const std::map<long, std::vector<Index>>& levels) {
  const auto& g = d.group;
  const auto base_mask = to_mask(base, g.order());
  std::vector<std::pair<std::vector<Index>, long>> out;
  for (const auto& [value, members] : levels) {
    std::set<std::vector<Index>> found;
    std::deque<std::vector<Index>> queue{base};
    while (!queue.empty()) {
      const auto current = std::move(queue.front());
      queue.pop_front();
      const auto mask = to_mask(current, g.order());
      for (Index x : members) {
        if (mask[x]) continue;
        std::vector<Index> gens(current.begin(), current.end());
        gens.push_back(x);
        auto joined = subgroup_generated(g, std::span<const Index>(gens)).members;
        const bool uniform = std::all_of(joined.begin(), joined.end(), [&](Index y) {
          return base_mask[y] || d.counts[y] == value;
        });
        if (!uniform) continue;
        if (found.insert(joined).second) queue.push_back(joined);
      }
    }
    for (auto& s : found) out.emplace_back(s, value);
  }
  return out;
}

struct ShortestChains {
  ChainGraph graph;
  std::vector<std::size_t> depth;  // from {0}
  std::optional<std::size_t> target;
};

// Breadth-first over subgroups from {0}, stopping after the layer that reaches G.
ShortestChains explore(const DiffCounts& d) {
  const auto& g = d.group;
  const auto levels = d.levels();
  ShortestChains sc;
  const std::size_t root = sc.graph.intern({g.identity_index()});
  sc.depth.push_back(0);
  std::vector<std::size_t> layer{root};
  std::size_t level = 0;
  while (!layer.empty() && !sc.target) {
    std::vector<std::size_t> next;
    for (std::size_t id : layer) {
      for (auto& [members, value] : successors(d, sc.graph.nodes[id], levels)) {
        const bool whole = members.size() == g.order();
        const std::size_t before = sc.graph.nodes.size();
        const std::size_t to = sc.graph.intern(std::move(members));
        if (to == before) {
          sc.depth.push_back(level + 1);
          if (whole) {
            sc.target = to;
          } else {
            next.push_back(to);
          }
        }
        if (sc.depth[to] == level + 1) sc.graph.edges[id].emplace_back(to, value);
      }
    }
    layer = std::move(next);
    ++level;
  }
  return sc;
}

}  // namespace

std::optional<NestedChain> nested_divisible_chain(const DiffCounts& d) {
  const auto& g = d.group;
  const auto values = d.distinct_values();
  NestedChain chain;
  if (values.size() == 1) {
    std::vector<Index> all(g.order());
    for (Index x = 0; x < g.order(); ++x) all[x] = x;
    chain.sets = {Subgroup{{g.identity_index()}}, Subgroup{std::move(all)}};
    chain.lambdas = {values.front()};
  } else {
    auto sc = explore(d);
    if (!sc.target) return std::nullopt;
    const std::size_t t = sc.depth[*sc.target];

    // Nodes that still reach G in the remaining number of steps.
    std::vector<char> useful(sc.graph.nodes.size(), 0);
    useful[*sc.target] = 1;
    for (std::size_t step = t; step-- > 0;) {
      for (std::size_t id = 0; id < sc.graph.nodes.size(); ++id) {
        if (sc.depth[id] != step) continue;
        for (auto [to, value] : sc.graph.edges[id])
          if (useful[to]) useful[id] = 1;
      }
    }

    std::size_t at = 0;
    chain.sets.push_back(Subgroup{sc.graph.nodes[at]});
    for (std::size_t step = 0; step < t; ++step) {
      std::optional<std::pair<std::size_t, long>> best;
      for (auto [to, value] : sc.graph.edges[at]) {
        if (!useful[to]) continue;
        if (!best || sc.graph.nodes[to] < sc.graph.nodes[best->first]) best = {to, value};
      }
      at = best->first;
      chain.sets.push_back(Subgroup{sc.graph.nodes[at]});
      chain.lambdas.push_back(best->second);
    }
  }
  chain.proper_divisible = true;
  chain.proper_general = chain.t() == values.size();
  return chain;
}

std::optional<NestedChain> nested_divisible_chain(const AbelianGroup& g, std::span<const Index> subset) {
  return nested_divisible_chain(difference_counts(g, subset));
}

bool is_proper(const BidifferenceParams& params) noexcept { return params.lambda != params.mu; }

bool is_proper(const NestedChain& chain, const DiffCounts& counts) {
  for (std::size_t j = 1; j < chain.lambdas.size(); ++j)
    if (chain.lambdas[j] == chain.lambdas[j - 1]) return false;
  const auto shortest = nested_divisible_chain(counts);
  return shortest && shortest->t() >= chain.t();
}

}  // namespace framelab
