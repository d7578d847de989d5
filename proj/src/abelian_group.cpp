#include "framelab/abelian_group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "framelab/error.hpp"

namespace framelab {

namespace {

constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 20;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long parse_long(std::string_view s, std::string_view what) {
  s = trim(s);
  long value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::parse, "expected an integer in " + std::string(what) + ", got '" +
                                      std::string(s) + "'");
  }
  return value;
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw Error(ErrorKind::parse, "unbalanced parentheses in '" + std::string(s) + "'");
    if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorKind::parse, "unbalanced parentheses in '" + std::string(s) + "'");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace

struct AbelianGroup::Tables {
  std::vector<int> factors;
  std::vector<std::size_t> strides;  // last coordinate has stride 1
  std::vector<long> weights;         // N / n_j
  std::size_t order = 1;
  long exponent = 1;
  std::vector<int> coords;  // order x rank, row-major
  std::vector<std::complex<double>> roots;
};

AbelianGroup::AbelianGroup(std::vector<int> factors) {
  if (factors.empty()) throw Error(ErrorKind::invalid_parameters, "a group needs at least one factor");
  auto t = std::make_shared<Tables>();
  t->factors = std::move(factors);
  const std::size_t k = t->factors.size();
  for (int f : t->factors) {
    if (f < 2) throw Error(ErrorKind::invalid_parameters, "cyclic factors must have order >= 2");
    if (t->order > kMaxGroupOrder / static_cast<std::size_t>(f)) {
      throw Error(ErrorKind::capacity, "group order exceeds 2^20");
    }
    t->order *= static_cast<std::size_t>(f);
    t->exponent = std::lcm(t->exponent, static_cast<long>(f));
  }
  t->strides.assign(k, 1);
  for (std::size_t j = k - 1; j > 0; --j) {
    t->strides[j - 1] = t->strides[j] * static_cast<std::size_t>(t->factors[j]);
  }
  for (int f : t->factors) t->weights.push_back(t->exponent / f);

  t->coords.resize(t->order * k);
  for (std::size_t i = 0; i < t->order; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < k; ++j) {
      t->coords[i * k + j] = static_cast<int>(rest / t->strides[j]);
      rest %= t->strides[j];
    }
  }

  t->roots.resize(static_cast<std::size_t>(t->exponent));
  for (long q = 0; q < t->exponent; ++q) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(t->exponent);
    t->roots[static_cast<std::size_t>(q)] = {std::cos(angle), std::sin(angle)};
  }
  // Pin the exact values that cos/sin would otherwise round.
  t->roots[0] = {1.0, 0.0};
  if (t->exponent % 2 == 0) t->roots[static_cast<std::size_t>(t->exponent / 2)] = {-1.0, 0.0};
  if (t->exponent % 4 == 0) {
    t->roots[static_cast<std::size_t>(t->exponent / 4)] = {0.0, 1.0};
    t->roots[static_cast<std::size_t>(3 * t->exponent / 4)] = {0.0, -1.0};
  }
  tables_ = std::move(t);
}

AbelianGroup AbelianGroup::parse(std::string_view text) {
  std::string_view s = trim(text);
  std::vector<int> factors;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find_first_of("xX", start);
    std::string_view part = trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start));
    if (part.size() < 2 || (part.front() != 'Z' && part.front() != 'z')) {
      throw Error(ErrorKind::parse, "bad group spec '" + std::string(text) + "'; expected Z<n1>[xZ<n2>...]");
    }
    const long f = parse_long(part.substr(1), "group spec");
    if (f < 2) throw Error(ErrorKind::parse, "cyclic factor orders must be >= 2 in '" + std::string(text) + "'");
    factors.push_back(static_cast<int>(f));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return AbelianGroup(std::move(factors));
}

const std::vector<int>& AbelianGroup::factors() const noexcept { return tables_->factors; }
std::size_t AbelianGroup::rank() const noexcept { return tables_->factors.size(); }
std::size_t AbelianGroup::order() const noexcept { return tables_->order; }
long AbelianGroup::exponent() const noexcept { return tables_->exponent; }

std::string AbelianGroup::name() const {
  std::string out;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (j) out += 'x';
    out += 'Z' + std::to_string(tables_->factors[j]);
  }
  return out;
}

int AbelianGroup::coord(Index i, std::size_t j) const noexcept {
  return tables_->coords[static_cast<std::size_t>(i) * rank() + j];
}

Element AbelianGroup::element(Index i) const {
  if (i >= order()) throw Error(ErrorKind::invalid_element, "element index out of range");
  Element x;
  x.coords.assign(tables_->coords.begin() + static_cast<std::ptrdiff_t>(i * rank()),
                  tables_->coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank()));
  return x;
}

bool AbelianGroup::contains(const Element& x) const noexcept {
  if (x.coords.size() != rank()) return false;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (x.coords[j] < 0 || x.coords[j] >= tables_->factors[j]) return false;
  }
  return true;
}

Index AbelianGroup::index_of(const Element& x) const {
  if (!contains(x)) {
    throw Error(ErrorKind::invalid_element, "element " + format(x) + " is not in " + name());
  }
  std::size_t idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) idx += static_cast<std::size_t>(x.coords[j]) * tables_->strides[j];
  return static_cast<Index>(idx);
}

std::vector<Element> AbelianGroup::elements() const {
  std::vector<Element> out;
  out.reserve(order());
  for (Index i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

Element AbelianGroup::identity() const { return Element{std::vector<int>(rank(), 0)}; }

Index AbelianGroup::add(Index a, Index b) const noexcept {
  const auto& t = *tables_;
  if (rank() == 1) return static_cast<Index>((a + b) % t.order);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const int c = (coord(a, j) + coord(b, j)) % t.factors[j];
    idx += static_cast<std::size_t>(c) * t.strides[j];
  }
  return static_cast<Index>(idx);
}

Index AbelianGroup::negate(Index a) const noexcept {
  const auto& t = *tables_;
  if (rank() == 1) return static_cast<Index>((t.order - a) % t.order);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const int c = (t.factors[j] - coord(a, j)) % t.factors[j];
    idx += static_cast<std::size_t>(c) * t.strides[j];
  }
  return static_cast<Index>(idx);
}

Index AbelianGroup::subtract(Index a, Index b) const noexcept { return add(a, negate(b)); }

Index AbelianGroup::multiply(Index a, long k) const noexcept {
  const auto& t = *tables_;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    long c = (static_cast<long>(coord(a, j)) * k) % t.factors[j];
    if (c < 0) c += t.factors[j];
    idx += static_cast<std::size_t>(c) * t.strides[j];
  }
  return static_cast<Index>(idx);
}

Element AbelianGroup::add(const Element& a, const Element& b) const {
  return element(add(index_of(a), index_of(b)));
}

Element AbelianGroup::negate(const Element& a) const { return element(negate(index_of(a))); }

std::size_t AbelianGroup::element_order(Index a) const noexcept {
  long ord = 1;
  for (std::size_t j = 0; j < rank(); ++j) {
    const long f = tables_->factors[j];
    ord = std::lcm(ord, f / std::gcd(f, static_cast<long>(coord(a, j))));
  }
  return static_cast<std::size_t>(ord);
}

long AbelianGroup::phase(Index x, Index y) const noexcept {
  const auto& t = *tables_;
  long long acc = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    acc += static_cast<long long>(coord(x, j)) * coord(y, j) % t.factors[j] * t.weights[j];
  }
  return static_cast<long>(acc % t.exponent);
}

std::complex<double> AbelianGroup::root_of_unity(long k) const noexcept {
  long r = k % tables_->exponent;
  if (r < 0) r += tables_->exponent;
  return tables_->roots[static_cast<std::size_t>(r)];
}

Element AbelianGroup::parse_element(std::string_view text) const {
  std::string_view s = trim(text);
  std::vector<long> raw;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw Error(ErrorKind::parse, "unterminated element '" + std::string(text) + "'");
    for (auto part : split_top_level(s.substr(1, s.size() - 2))) raw.push_back(parse_long(part, "element"));
  } else {
    raw.push_back(parse_long(s, "element"));
  }
  if (raw.size() != rank()) {
    throw Error(ErrorKind::invalid_element, "element '" + std::string(text) + "' has " +
                                                std::to_string(raw.size()) + " coordinates; " +
                                                name() + " needs " + std::to_string(rank()));
  }
  Element x;
  for (std::size_t j = 0; j < rank(); ++j) {
    const long f = factors()[j];
    x.coords.push_back(static_cast<int>(((raw[j] % f) + f) % f));
  }
  return x;
}

std::string AbelianGroup::format(const Element& x) const {
  if (x.coords.size() == 1) return std::to_string(x.coords[0]);
  std::string out = "(";
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(x.coords[j]);
  }
  return out + ")";
}

std::string AbelianGroup::format(Index i) const { return format(element(i)); }

std::vector<Index> AbelianGroup::parse_subset(std::string_view text) const {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw Error(ErrorKind::parse, "unterminated set '" + std::string(text) + "'");
    s = trim(s.substr(1, s.size() - 2));
  }
  std::vector<Index> out;
  if (s.empty()) return out;
  for (auto part : split_top_level(s)) out.push_back(index_of(parse_element(part)));
  return out;
}

std::string AbelianGroup::format_subset(std::span<const Index> subset) const {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += format(subset[i]);
  }
  return out + "}";
}

std::vector<Index> to_indices(const AbelianGroup& g, std::span<const Element> elements) {
  std::vector<Index> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(g.index_of(e));
  return out;
}

CharacterValue character_eval(const AbelianGroup& g, const Element& x, const Element& y) {
  const long k = g.phase(g.index_of(x), g.index_of(y));
  const long d = std::gcd(k, g.exponent());
  return CharacterValue{k / d, g.exponent() / d, g.root_of_unity(k)};
}

std::complex<double> character_sum_over(const AbelianGroup& g, Index z, std::span<const Index> set) {
  std::complex<double> acc{0.0, 0.0};
  for (Index xi : set) acc += g.character(z, xi);
  return acc;
}

std::complex<double> character_sum_over(const AbelianGroup& g, const Element& z,
                                        std::span<const Element> set) {
  const auto idx = to_indices(g, set);
  return character_sum_over(g, g.index_of(z), idx);
}

std::complex<double> full_group_sum(const AbelianGroup& g, const Element& x) {
  const Index xi = g.index_of(x);
  std::complex<double> acc{0.0, 0.0};
  for (Index y = 0; y < g.order(); ++y) acc += g.character(xi, y);
  return acc;
}

bool Subgroup::contains(Index i) const noexcept {
  return std::binary_search(members.begin(), members.end(), i);
}

namespace {

// <H, g> for a subgroup H given by membership mask: union of the cosets k*g + H.
std::vector<char> join_with(const AbelianGroup& g, const std::vector<char>& mask, Index gen) {
  std::vector<char> out = mask;
  std::vector<Index> base;
  for (Index i = 0; i < mask.size(); ++i)
    if (mask[i]) base.push_back(i);
  Index shift = gen;
  while (!out[shift]) {
    for (Index h : base) out[g.add(shift, h)] = 1;
    shift = g.add(shift, gen);
  }
  return out;
}

std::vector<Index> mask_members(const std::vector<char>& mask) {
  std::vector<Index> out;
  for (Index i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

std::vector<char> trivial_mask(const AbelianGroup& g) {
  std::vector<char> mask(g.order(), 0);
  mask[g.identity_index()] = 1;
  return mask;
}

}  // namespace

Subgroup subgroup_generated(const AbelianGroup& g, std::span<const Index> gens) {
  auto mask = trivial_mask(g);
  for (Index x : gens) {
    if (x >= g.order()) throw Error(ErrorKind::invalid_element, "generator index out of range");
    mask = join_with(g, mask, x);
  }
  return Subgroup{mask_members(mask)};
}

Subgroup subgroup_generated(const AbelianGroup& g, std::span<const Element> gens) {
  const auto idx = to_indices(g, gens);
  return subgroup_generated(g, std::span<const Index>(idx));
}

bool is_subgroup(const AbelianGroup& g, std::span<const Index> set) {
  std::vector<char> mask(g.order(), 0);
  for (Index x : set) {
    if (x >= g.order()) return false;
    mask[x] = 1;
  }
  if (!mask[g.identity_index()]) return false;
  // Finite and closed under addition implies closed under negation.
  for (Index a : set)
    for (Index b : set)
      if (!mask[g.add(a, b)]) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& g, std::size_t max_order) {
  if (g.order() > max_order) {
    throw Error(ErrorKind::capacity, "subgroup enumeration bound exceeded: order " +
                                         std::to_string(g.order()) + " > " + std::to_string(max_order));
  }
  std::set<std::vector<Index>> seen;
  std::deque<std::vector<char>> queue;
  auto start = trivial_mask(g);
  seen.insert(mask_members(start));
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    auto mask = std::move(queue.front());
    queue.pop_front();
    const auto base = mask_members(mask);
    std::vector<char> covered = mask;
    for (Index x = 0; x < g.order(); ++x) {
      if (covered[x]) continue;
      // Every element of the coset x + H gives the same join.
      for (Index h : base) covered[g.add(x, h)] = 1;
      auto joined = join_with(g, mask, x);
      auto members = mask_members(joined);
      if (seen.insert(members).second) {
        if (seen.size() > kMaxSubgroupCount) {
          throw Error(ErrorKind::capacity, "subgroup lattice of " + g.name() + " exceeds " +
                                               std::to_string(kMaxSubgroupCount) + " subgroups");
        }
        queue.push_back(std::move(joined));
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& m : seen) out.push_back(Subgroup{m});
  std::stable_sort(out.begin(), out.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  return out;
}

Subgroup annihilator(const AbelianGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h.members)) throw Error(ErrorKind::invalid_subgroup, "annihilator needs a subgroup");
  Subgroup out;
  for (Index z = 0; z < g.order(); ++z) {
    bool trivial = true;
    for (Index x : h.members) {
      if (g.phase(z, x) != 0) {
        trivial = false;
        break;
      }
    }
    if (trivial) out.members.push_back(z);
  }
  return out;
}

namespace {

void partitions(int e, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (e == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(e, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(e - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<AbelianGroup> abelian_groups_of_order(std::size_t n) {
  if (n < 2) return {};
  std::vector<std::pair<long, int>> primes;
  std::size_t rest = n;
  for (long p = 2; static_cast<std::size_t>(p * p) <= rest; ++p) {
    int e = 0;
    while (rest % static_cast<std::size_t>(p) == 0) {
      rest /= static_cast<std::size_t>(p);
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  if (rest > 1) primes.emplace_back(static_cast<long>(rest), 1);

  std::vector<std::vector<std::vector<int>>> per_prime;
  for (auto [p, e] : primes) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    per_prime.push_back(std::move(parts));
  }

  std::vector<std::vector<int>> factor_lists;
  std::vector<std::size_t> choice(primes.size(), 0);
  while (true) {
    std::size_t width = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) width = std::max(width, per_prime[i][choice[i]].size());
    // Invariant factors: the largest prime powers multiply into the last factor.
    std::vector<long> inv(width, 1);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto& part = per_prime[i][choice[i]];  // descending exponents
      for (std::size_t r = 0; r < part.size(); ++r) {
        long pe = 1;
        for (int t = 0; t < part[r]; ++t) pe *= primes[i].first;
        inv[width - 1 - r] *= pe;
      }
    }
    factor_lists.emplace_back(inv.begin(), inv.end());

    std::size_t i = 0;
    while (i < primes.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == primes.size()) break;
  }
  std::sort(factor_lists.begin(), factor_lists.end());
  std::vector<AbelianGroup> out;
  for (auto& f : factor_lists) out.emplace_back(std::move(f));
  return out;
}

SubgroupLattice::SubgroupLattice(AbelianGroup g, std::size_t max_order)
    : group_(std::move(g)), subgroups_(all_subgroups(group_, max_order)) {
  masks_.reserve(subgroups_.size());
  for (const auto& h : subgroups_) {
    std::vector<char> mask(group_.order(), 0);
    for (Index x : h.members) mask[x] = 1;
    masks_.push_back(std::move(mask));
  }
}

bool SubgroupLattice::contains(std::size_t outer, std::size_t inner) const {
  const auto& a = subgroups_[outer];
  const auto& b = subgroups_[inner];
  if (a.order() < b.order() || a.order() % b.order() != 0) return false;
  const auto& mask = masks_[outer];
  return std::all_of(b.members.begin(), b.members.end(), [&](Index x) { return mask[x] != 0; });
}

}  // namespace framelab
