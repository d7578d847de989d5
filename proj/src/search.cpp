#include "framelab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "framelab/error.hpp"

namespace framelab {

SearchFilter parse_filter(const std::string& text) {
  SearchFilter f;
  if (text.empty() || text == "none") return f;
  if (text == "btf") {
    f.kind = FilterKind::btf;
  } else if (text == "etf") {
    f.kind = FilterKind::etf;
  } else if (text.rfind("angles=", 0) == 0) {
    f.kind = FilterKind::angles;
    std::stringstream ss(text.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        f.target_angles.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "bad angle '" + item + "' in filter");
      }
    }
    if (f.target_angles.empty()) throw Error(ErrorKind::parse, "angles filter needs at least one value");
    std::sort(f.target_angles.begin(), f.target_angles.end());
  } else {
    static const std::vector<std::string> known{"difference-set", "bidifference", "divisible", "relative",
                                                "partial",        "gaussian",     "almost",    "nested-divisible"};
    if (std::find(known.begin(), known.end(), text) == known.end()) {
      throw Error(ErrorKind::parse, "unknown filter '" + text + "'");
    }
    f.kind = FilterKind::class_name;
    f.class_name = text;
  }
  return f;
}

std::vector<std::string> class_flags(const Classification& c, const Angularity& a) {
  std::vector<std::string> out;
  if (c.difference_set) out.emplace_back("difference-set");
  if (c.bidifference.proper) out.emplace_back("bidifference");
  if (c.divisible.proper) out.emplace_back("divisible");
  if (c.relative.proper) out.emplace_back("relative");
  if (c.partial.proper) out.emplace_back("partial");
  if (c.gaussian.proper) out.emplace_back("gaussian");
  if (c.almost.proper) out.emplace_back("almost");
  if (c.nested_divisible && c.nested_divisible->t() >= 2) out.emplace_back("nested-divisible");
  if (a.etf) out.emplace_back("etf");
  if (a.btf) out.emplace_back("btf");
  return out;
}

std::string angle_set_key(const AngleProfile& profile) {
  std::string key;
  char buf[32];
  for (const auto& a : profile.angles) {
    std::snprintf(buf, sizeof buf, "%.9f", a.value);
    if (!key.empty()) key += ';';
    key += buf;
  }
  return key;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t g = std::gcd(r, i);
    const std::size_t factor = (n - k + i) / (i / g);
    r /= g;
    if (r > kMax / factor) return kMax;
    r *= factor;
  }
  return r;
}

namespace {

// k-subset of {0..n-1} with colex rank r.
std::vector<std::size_t> colex_unrank(std::size_t r, std::size_t k, std::size_t n) {
  std::vector<std::size_t> c(k);
  std::size_t hi = n;
  for (std::size_t i = k; i-- > 0;) {
    std::size_t v = i;
    // Largest v < hi with C(v, i + 1) <= r.
    std::size_t lo_v = i;
    std::size_t hi_v = hi - 1;
    while (lo_v < hi_v) {
      const std::size_t mid = lo_v + (hi_v - lo_v + 1) / 2;
      if (binomial(mid, i + 1) <= r) {
        lo_v = mid;
      } else {
        hi_v = mid - 1;
      }
    }
    v = lo_v;
    c[i] = v;
    r -= binomial(v, i + 1);
    hi = v;
  }
  return c;
}

void colex_next(std::vector<std::size_t>& c) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (i + 1 == k || c[i] + 1 < c[i + 1]) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = j;
      return;
    }
  }
}

bool matches(const SearchFilter& f, const SearchRecord& rec) {
  switch (f.kind) {
    case FilterKind::none: return true;
    case FilterKind::btf: return rec.angularity.btf;
    case FilterKind::etf: return rec.angularity.etf;
    case FilterKind::class_name: {
      const auto flags = class_flags(rec.classification, rec.angularity);
      return std::find(flags.begin(), flags.end(), f.class_name) != flags.end();
    }
    case FilterKind::angles: {
      const auto& angles = rec.profile.angles;
      if (angles.size() != f.target_angles.size()) return false;
      for (std::size_t i = 0; i < angles.size(); ++i) {
        if (std::abs(angles[i].value - f.target_angles[i]) > f.tolerance) return false;
      }
      return true;
    }
  }
  return false;
}

struct BlockResult {
  std::size_t examined = 0;
  std::map<std::string, std::size_t> class_counts;
  std::map<std::string, std::size_t> angle_set_counts;
  std::size_t matched = 0;
  std::vector<SearchRecord> records;
  std::size_t matched_bidifference = 0;
  std::size_t matched_nested_proper = 0;
  std::size_t etf_ds_disagreements = 0;
  std::size_t btf_without_bidifference = 0;
};

void run_block(const SearchJob& job, std::size_t begin, std::size_t end, std::size_t k, std::size_t universe,
               BlockResult& out) {
  const auto& g = job.group;
  const bool reduced = job.mode == SearchMode::reduced;
  auto comb = colex_unrank(begin, k, universe);
  std::vector<Index> subset(job.m);
  const AngleOptions options{job.tolerance, false};
  for (std::size_t rank = begin; rank < end; ++rank) {
    if (reduced) {
      subset[0] = 0;
      for (std::size_t i = 0; i < k; ++i) subset[i + 1] = static_cast<Index>(comb[i] + 1);
    } else {
      for (std::size_t i = 0; i < k; ++i) subset[i] = static_cast<Index>(comb[i]);
    }
    SearchRecord rec;
    rec.subset = subset;
    rec.classification = classify(difference_counts(g, subset));
    const FrameSpec frame(g, subset);
    rec.profile = angle_profile(frame, options);
    // Distinct generators always give a tight harmonic frame.
    rec.angularity = classify_angularity(rec.profile, true);

    ++out.examined;
    for (auto& flag : class_flags(rec.classification, rec.angularity)) ++out.class_counts[flag];
    ++out.angle_set_counts[angle_set_key(rec.profile)];
    if (rec.angularity.etf != rec.classification.difference_set) ++out.etf_ds_disagreements;
    if (rec.angularity.btf && !rec.classification.bidifference.proper) ++out.btf_without_bidifference;

    if (matches(job.filter, rec)) {
      ++out.matched;
      if (rec.classification.bidifference.proper) ++out.matched_bidifference;
      const auto& chain = rec.classification.nested_divisible;
      if (chain && chain->t() >= 2 && chain->proper_divisible) ++out.matched_nested_proper;
      if (out.records.size() < job.max_records) out.records.push_back(std::move(rec));
    }
    if (rank + 1 < end) colex_next(comb);
  }
}

}  // namespace

SearchReport enumerate_and_classify(const SearchJob& job) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = job.group.order();
  if (job.m < 2 || job.m > n) throw Error(ErrorKind::invalid_parameters, "search needs 2 <= m <= n");
  const bool reduced = job.mode == SearchMode::reduced;
  const std::size_t k = reduced ? job.m - 1 : job.m;
  const std::size_t universe = reduced ? n - 1 : n;
  const std::size_t total = binomial(universe, k);
  if (total > job.cap) {
    throw Error(ErrorKind::capacity, std::to_string(total) + " subsets exceed the cap of " + std::to_string(job.cap));
  }

  const std::size_t workers = std::max<std::size_t>(1, std::min(job.jobs, total));
  const std::size_t block_count = std::max<std::size_t>(1, std::min<std::size_t>(total, 64 * workers));
  std::vector<BlockResult> blocks(block_count);
  auto bounds = [&](std::size_t b) { return std::pair{total * b / block_count, total * (b + 1) / block_count}; };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < block_count; b = next++) {
      auto [lo, hi] = bounds(b);
      if (lo < hi) run_block(job, lo, hi, k, universe, blocks[b]);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SearchReport report;
  report.group = job.group.name();
  report.n = n;
  report.m = job.m;
  report.mode = job.mode;
  report.jobs = workers;
  for (auto& b : blocks) {
    report.examined += b.examined;
    for (auto& [key, v] : b.class_counts) report.class_counts[key] += v;
    for (auto& [key, v] : b.angle_set_counts) report.angle_set_counts[key] += v;
    report.matched += b.matched;
    report.matched_bidifference += b.matched_bidifference;
    report.matched_nested_proper += b.matched_nested_proper;
    report.etf_ds_disagreements += b.etf_ds_disagreements;
    report.btf_without_bidifference += b.btf_without_bidifference;
    for (auto& r : b.records) {
      if (report.records.size() < job.max_records) {
        report.records.push_back(std::move(r));
      } else {
        report.truncated = true;
      }
    }
  }
  if (report.matched > report.records.size()) report.truncated = true;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SearchReport find_btfs(const AbelianGroup& group, std::size_t m, std::size_t jobs) {
  SearchJob job(group);
  job.m = m;
  job.filter.kind = FilterKind::btf;
  job.jobs = jobs;
  return enumerate_and_classify(job);
}

std::vector<GroupMatch> cross_group_angle_match(std::size_t n, std::size_t m, std::vector<double> target,
                                                double tolerance, std::size_t jobs) {
  if (n < 2 || n > kMaxCrossGroupOrder) {
    throw Error(ErrorKind::invalid_parameters, "cross-group matching needs 2 <= n <= 64");
  }
  std::sort(target.begin(), target.end());
  std::vector<GroupMatch> out;
  for (const auto& g : abelian_groups_of_order(n)) {
    SearchJob job(g);
    job.m = m;
    job.filter.kind = FilterKind::angles;
    job.filter.target_angles = target;
    job.filter.tolerance = tolerance;
    job.jobs = jobs;
    job.max_records = 0;
    const auto report = enumerate_and_classify(job);
    out.push_back({g.name(), report.matched, report.matched_bidifference, report.matched_nested_proper});
  }
  return out;
}

}  // namespace framelab
