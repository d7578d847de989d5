#include "framelab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "framelab/error.hpp"

namespace framelab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

Json rational_to_json(const Rational& r) { return Json::array({r.num(), r.den()}); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::parse, "rational must be [num, den]");
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

Json surd_to_json(const QuadraticSurd& s) {
  return Json{{"rational", rational_to_json(s.rational)},
              {"radical", rational_to_json(s.radical_coeff)},
              {"radicand", s.radicand}};
}

QuadraticSurd surd_from_json(const Json& j) {
  return QuadraticSurd{rational_from_json(field(j, "rational")), rational_from_json(field(j, "radical")),
                       field(j, "radicand").get<std::int64_t>()};
}

Json params_to_json(const AbelianGroup& g, const BidifferenceParams& p) {
  return Json{{"n", p.n},           {"m", p.m},   {"l", p.l}, {"lambda", p.lambda},
              {"mu", p.mu},         {"relative_to", subset_to_json(g, p.relative_to)}};
}

BidifferenceParams params_from_json(const AbelianGroup& g, const Json& j) {
  BidifferenceParams p;
  p.n = field(j, "n").get<long>();
  p.m = field(j, "m").get<long>();
  p.l = field(j, "l").get<long>();
  p.lambda = field(j, "lambda").get<long>();
  p.mu = field(j, "mu").get<long>();
  p.relative_to = subset_from_json(g, field(j, "relative_to"));
  return p;
}

Json membership_to_json(const AbelianGroup& g, const ClassMembership& c) {
  Json j{{"holds", c.holds}, {"proper", c.proper}};
  j["params"] = c.params ? params_to_json(g, *c.params) : Json(nullptr);
  return j;
}

ClassMembership membership_from_json(const AbelianGroup& g, const Json& j) {
  ClassMembership c;
  c.holds = field(j, "holds").get<bool>();
  c.proper = field(j, "proper").get<bool>();
  if (const auto& p = field(j, "params"); !p.is_null()) c.params = params_from_json(g, p);
  return c;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const char* mode_name(SearchMode m) { return m == SearchMode::full ? "full" : "reduced"; }

}  // namespace

FrameReport make_frame_report(const FrameSpec& f, const AngleOptions& options) {
  FrameReport r;
  r.group = f.group().name();
  r.subset.assign(f.generators().begin(), f.generators().end());
  r.n = f.size();
  r.m = f.dimension();
  r.profile = angle_profile(f, options);
  const auto tight = verify_tightness(f);
  const auto a = classify_angularity(r.profile, tight.tight);
  r.is_tight = tight.tight;
  r.is_etf = a.etf;
  r.is_btf = a.btf;
  r.welch_bound = welch_bound(r.n, r.m);
  r.real_frame = is_real_frame(f);
  r.max_tightness_deviation = tight.max_deviation;
  return r;
}

Json element_to_json(const AbelianGroup& g, Index i) {
  if (g.is_cyclic()) return i;
  return g.element(i).coords;
}

Index element_from_json(const AbelianGroup& g, const Json& j) {
  if (j.is_number_integer()) {
    if (!g.is_cyclic()) throw Error(ErrorKind::invalid_element, "expected a coordinate array");
    return g.index_of(Element{{j.get<int>()}});
  }
  if (!j.is_array()) throw Error(ErrorKind::parse, "element must be an integer or an array");
  return g.index_of(Element{j.get<std::vector<int>>()});
}

Json subset_to_json(const AbelianGroup& g, const std::vector<Index>& subset) {
  Json out = Json::array();
  for (Index i : subset) out.push_back(element_to_json(g, i));
  return out;
}

std::vector<Index> subset_from_json(const AbelianGroup& g, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse, "subset must be an array");
  std::vector<Index> out;
  for (const auto& e : j) out.push_back(element_from_json(g, e));
  return out;
}

Json to_json(const AngleProfile& profile) {
  Json angles = Json::array();
  for (const auto& a : profile.angles) {
    Json e{{"value", a.value}};
    if (a.square) {
      e["symbolic"] = a.square->to_string();
      e["square"] = surd_to_json(*a.square);
    }
    e["multiplicity"] = a.multiplicity;
    angles.push_back(std::move(e));
  }
  return angles;
}

AngleProfile angle_profile_from_json(const Json& j) {
  AngleProfile p;
  for (const auto& e : j) {
    AngleEntry a;
    a.value = field(e, "value").get<double>();
    a.multiplicity = field(e, "multiplicity").get<std::size_t>();
    if (e.contains("square")) a.square = surd_from_json(e.at("square"));
    p.angles.push_back(a);
  }
  return p;
}

Json to_json(const FrameReport& r) {
  const auto g = AbelianGroup::parse(r.group);
  return Json{{"schema", kSchemaVersion},
              {"group", r.group},
              {"subset", subset_to_json(g, r.subset)},
              {"n", r.n},
              {"m", r.m},
              {"angles", to_json(r.profile)},
              {"angle_tolerance", r.profile.tolerance},
              {"ambiguous", r.profile.ambiguous},
              {"is_tight", r.is_tight},
              {"is_etf", r.is_etf},
              {"is_btf", r.is_btf},
              {"welch_bound", r.welch_bound},
              {"real_frame", r.real_frame},
              {"max_tightness_deviation", r.max_tightness_deviation}};
}

FrameReport frame_report_from_json(const Json& j) {
  FrameReport r;
  r.group = field(j, "group").get<std::string>();
  const auto g = AbelianGroup::parse(r.group);
  r.subset = subset_from_json(g, field(j, "subset"));
  r.n = field(j, "n").get<std::size_t>();
  r.m = field(j, "m").get<std::size_t>();
  r.profile = angle_profile_from_json(field(j, "angles"));
  r.profile.n = r.n;
  r.profile.m = r.m;
  r.profile.tolerance = field(j, "angle_tolerance").get<double>();
  r.profile.ambiguous = field(j, "ambiguous").get<bool>();
  r.is_tight = field(j, "is_tight").get<bool>();
  r.is_etf = field(j, "is_etf").get<bool>();
  r.is_btf = field(j, "is_btf").get<bool>();
  r.welch_bound = field(j, "welch_bound").get<double>();
  r.real_frame = field(j, "real_frame").get<bool>();
  r.max_tightness_deviation = field(j, "max_tightness_deviation").get<double>();
  return r;
}

Json to_json(const AbelianGroup& g, const Classification& c) {
  Json assignments = Json::array();
  for (const auto& p : c.bidifference_assignments) assignments.push_back(params_to_json(g, p));
  Json j{{"n", c.n},
         {"m", c.m},
         {"count_values", c.count_values},
         {"difference_set", c.difference_set},
         {"lambda", c.lambda},
         {"bidifference_assignments", std::move(assignments)},
         {"bidifference", membership_to_json(g, c.bidifference)},
         {"divisible", membership_to_json(g, c.divisible)},
         {"relative", membership_to_json(g, c.relative)},
         {"partial", membership_to_json(g, c.partial)},
         {"gaussian", membership_to_json(g, c.gaussian)},
         {"almost", membership_to_json(g, c.almost)},
         {"zero_in_set", c.zero_in_set},
         {"reversible", c.reversible},
         {"regular", c.regular}};
  if (c.nested_divisible) {
    Json sets = Json::array();
    for (const auto& s : c.nested_divisible->sets) sets.push_back(subset_to_json(g, s.members));
    j["nested_divisible"] = Json{{"t", c.nested_divisible->t()},
                                 {"sets", std::move(sets)},
                                 {"lambdas", c.nested_divisible->lambdas},
                                 {"proper_divisible", c.nested_divisible->proper_divisible},
                                 {"proper_general", c.nested_divisible->proper_general}};
  } else {
    j["nested_divisible"] = nullptr;
  }
  j["nested_search_complete"] = c.nested_search_complete;
  j["nested_t_general"] = c.nested_t_general;
  return j;
}

Classification classification_from_json(const AbelianGroup& g, const Json& j) {
  Classification c;
  c.n = field(j, "n").get<long>();
  c.m = field(j, "m").get<long>();
  c.count_values = field(j, "count_values").get<std::vector<long>>();
  c.difference_set = field(j, "difference_set").get<bool>();
  c.lambda = field(j, "lambda").get<long>();
  for (const auto& p : field(j, "bidifference_assignments")) c.bidifference_assignments.push_back(params_from_json(g, p));
  c.bidifference = membership_from_json(g, field(j, "bidifference"));
  c.divisible = membership_from_json(g, field(j, "divisible"));
  c.relative = membership_from_json(g, field(j, "relative"));
  c.partial = membership_from_json(g, field(j, "partial"));
  c.gaussian = membership_from_json(g, field(j, "gaussian"));
  c.almost = membership_from_json(g, field(j, "almost"));
  c.zero_in_set = field(j, "zero_in_set").get<bool>();
  c.reversible = field(j, "reversible").get<bool>();
  c.regular = field(j, "regular").get<bool>();
  if (const auto& nd = field(j, "nested_divisible"); !nd.is_null()) {
    NestedChain chain;
    for (const auto& s : field(nd, "sets")) chain.sets.push_back(Subgroup{subset_from_json(g, s)});
    chain.lambdas = field(nd, "lambdas").get<std::vector<long>>();
    chain.proper_divisible = field(nd, "proper_divisible").get<bool>();
    chain.proper_general = field(nd, "proper_general").get<bool>();
    c.nested_divisible = std::move(chain);
  }
  c.nested_search_complete = field(j, "nested_search_complete").get<bool>();
  c.nested_t_general = field(j, "nested_t_general").get<std::size_t>();
  return c;
}

Json to_json(const AnglePrediction& p) {
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  Json angles = Json::array();
  for (const auto& a : p.angles) {
    Json e{{"value", a.value}, {"symbolic", a.square.to_string()}, {"square", surd_to_json(a.square)}};
    e["stated_multiplicity"] = a.stated_multiplicity ? Json(*a.stated_multiplicity) : Json(nullptr);
    e["derived_multiplicity"] = a.derived_multiplicity ? Json(*a.derived_multiplicity) : Json(nullptr);
    angles.push_back(std::move(e));
  }
  return Json{{"schema", kSchemaVersion},
              {"tag", p.tag},
              {"source", p.source},
              {"params", std::move(params)},
              {"n", p.n},
              {"m", p.m},
              {"applicable", p.applicable},
              {"note", p.note},
              {"equiangular", p.equiangular},
              {"biangular", p.biangular},
              {"angles", std::move(angles)},
              {"multiplicity_disagreement", p.multiplicity_disagreement}};
}

AnglePrediction prediction_from_json(const Json& j) {
  AnglePrediction p;
  p.tag = field(j, "tag").get<std::string>();
  p.source = field(j, "source").get<std::string>();
  for (const auto& [k, v] : field(j, "params").items()) p.params.emplace_back(k, v.get<long>());
  p.n = field(j, "n").get<long>();
  p.m = field(j, "m").get<long>();
  p.applicable = field(j, "applicable").get<bool>();
  p.note = field(j, "note").get<std::string>();
  p.equiangular = field(j, "equiangular").get<bool>();
  p.biangular = field(j, "biangular").get<bool>();
  for (const auto& e : field(j, "angles")) {
    PredictedAngle a;
    a.value = field(e, "value").get<double>();
    a.square = surd_from_json(field(e, "square"));
    if (const auto& s = field(e, "stated_multiplicity"); !s.is_null()) a.stated_multiplicity = s.get<long>();
    if (const auto& d = field(e, "derived_multiplicity"); !d.is_null()) a.derived_multiplicity = d.get<long>();
    p.angles.push_back(std::move(a));
  }
  p.multiplicity_disagreement = field(j, "multiplicity_disagreement").get<bool>();
  return p;
}

Json to_json(const AbelianGroup& g, const SearchReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back(Json{{"subset", subset_to_json(g, rec.subset)},
                           {"flags", class_flags(rec.classification, rec.angularity)},
                           {"angles", to_json(rec.profile)},
                           {"ambiguous", rec.profile.ambiguous},
                           {"classification", to_json(g, rec.classification)}});
  }
  return Json{{"schema", kSchemaVersion},
              {"group", r.group},
              {"n", r.n},
              {"m", r.m},
              {"mode", mode_name(r.mode)},
              {"jobs", r.jobs},
              {"examined", r.examined},
              {"matched", r.matched},
              {"truncated", r.truncated},
              {"matched_bidifference", r.matched_bidifference},
              {"matched_nested_proper", r.matched_nested_proper},
              {"etf_ds_disagreements", r.etf_ds_disagreements},
              {"btf_without_bidifference", r.btf_without_bidifference},
              {"class_counts", r.class_counts},
              {"angle_set_counts", r.angle_set_counts},
              {"seconds", r.seconds},
              {"records", std::move(records)}};
}

SearchReport search_report_from_json(const Json& j) {
  SearchReport r;
  r.group = field(j, "group").get<std::string>();
  const auto g = AbelianGroup::parse(r.group);
  r.n = field(j, "n").get<std::size_t>();
  r.m = field(j, "m").get<std::size_t>();
  const auto mode = field(j, "mode").get<std::string>();
  if (mode != "full" && mode != "reduced") throw Error(ErrorKind::parse, "unknown mode '" + mode + "'");
  r.mode = mode == "full" ? SearchMode::full : SearchMode::reduced;
  r.jobs = field(j, "jobs").get<std::size_t>();
  r.examined = field(j, "examined").get<std::size_t>();
  r.matched = field(j, "matched").get<std::size_t>();
  r.truncated = field(j, "truncated").get<bool>();
  r.matched_bidifference = field(j, "matched_bidifference").get<std::size_t>();
  r.matched_nested_proper = field(j, "matched_nested_proper").get<std::size_t>();
  r.etf_ds_disagreements = field(j, "etf_ds_disagreements").get<std::size_t>();
  r.btf_without_bidifference = field(j, "btf_without_bidifference").get<std::size_t>();
  r.class_counts = field(j, "class_counts").get<std::map<std::string, std::size_t>>();
  r.angle_set_counts = field(j, "angle_set_counts").get<std::map<std::string, std::size_t>>();
  r.seconds = field(j, "seconds").get<double>();
  for (const auto& e : field(j, "records")) {
    SearchRecord rec;
    rec.subset = subset_from_json(g, field(e, "subset"));
    rec.classification = classification_from_json(g, field(e, "classification"));
    rec.profile = angle_profile_from_json(field(e, "angles"));
    rec.profile.n = r.n;
    rec.profile.m = r.m;
    rec.profile.ambiguous = field(e, "ambiguous").get<bool>();
    const auto flags = field(e, "flags").get<std::vector<std::string>>();
    auto has = [&](const char* f) { return std::find(flags.begin(), flags.end(), f) != flags.end(); };
    rec.angularity = Angularity{rec.profile.angularity(), has("etf"), has("btf"), true};
    r.records.push_back(std::move(rec));
  }
  return r;
}

Json to_json(const TableCheck& c) {
  return Json{{"table", c.table},
              {"row", c.row},
              {"sample", c.sample},
              {"skipped", c.skipped},
              {"reason", c.reason},
              {"n", c.instance.n},
              {"m", c.instance.m},
              {"l", c.instance.l},
              {"lambda", c.instance.lambda},
              {"mu", c.instance.mu},
              {"alpha1", c.instance.alpha1},
              {"alpha2", c.instance.alpha2},
              {"predicted", c.predicted},
              {"max_error", c.max_error},
              {"passed", c.passed}};
}

std::string csv_header() { return "group,subset,n,m,flags,lambda,mu,l,t,angles\n"; }

std::string csv_row(const AbelianGroup& g, const SearchRecord& rec) {
  const auto& c = rec.classification;
  std::string lambda, mu, l;
  if (c.difference_set) {
    lambda = std::to_string(c.lambda);
  } else if (c.bidifference.params) {
    lambda = std::to_string(c.bidifference.params->lambda);
    mu = std::to_string(c.bidifference.params->mu);
    l = std::to_string(c.bidifference.params->l);
  }
  const std::string t = c.nested_divisible ? std::to_string(c.nested_divisible->t()) : "";
  std::vector<std::string> angles;
  for (const auto& a : rec.profile.angles) angles.push_back(fixed(a.value));

  std::ostringstream os;
  os << g.name() << ',' << csv_quote(g.format_subset(rec.subset)) << ',' << c.n << ',' << c.m << ','
     << join(class_flags(c, rec.angularity), '|') << ',' << lambda << ',' << mu << ',' << l << ',' << t << ','
     << join(angles, ';') << '\n';
  return os.str();
}

std::string csv_rows(const AbelianGroup& g, const SearchReport& report) {
  std::string out;
  for (const auto& rec : report.records) out += csv_row(g, rec);
  return out;
}

}  // namespace framelab
