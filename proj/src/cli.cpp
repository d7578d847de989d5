#include "framelab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "framelab/error.hpp"
#include "framelab/number_theory.hpp"
#include "framelab/predictions.hpp"
#include "framelab/report.hpp"
#include "framelab/search.hpp"
#include "framelab/verify.hpp"

namespace framelab::cli {

namespace {

std::string fmt(double v, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string params_text(const BidifferenceParams& p) {
  std::ostringstream os;
  os << '(' << p.n << ',' << p.m << ',' << p.l << ',' << p.lambda << ',' << p.mu << ')';
  return os.str();
}

std::string angles_text(const AngleProfile& profile) {
  std::string out;
  for (const auto& a : profile.angles) {
    if (!out.empty()) out += "; ";
    out += fmt(a.value) + " x" + std::to_string(a.multiplicity);
    if (a.square) out += " [alpha^2 = " + a.square->to_string() + "]";
  }
  return out;
}

std::vector<AnglePrediction> predictions_for(const Classification& c) {
  std::vector<AnglePrediction> out;
  auto attempt = [&](auto&& make) {
    try {
      out.push_back(make());
    } catch (const Error&) {
      // A class whose parameters the predictor rejects contributes nothing.
    }
  };
  if (c.difference_set) attempt([&] { return dds_angles(c.n, c.m, 1, c.lambda, c.lambda); });
  if (c.divisible.proper && c.divisible.params) {
    const auto& p = *c.divisible.params;
    if (c.relative.proper) attempt([&] { return rds_angles(p.n, p.m, p.l, p.mu); });
    attempt([&] { return dds_angles(p.n, p.m, p.l, p.lambda, p.mu); });
  }
  if (c.partial.proper && c.partial.params) {
    const auto& p = *c.partial.params;
    attempt([&] { return pds_angles(p.n, p.m, p.lambda, p.mu, c.zero_in_set); });
  }
  if (c.gaussian.proper && c.gaussian.params) {
    const auto& p = *c.gaussian.params;
    attempt([&] { return gaussian_angles(p.n, p.m, p.lambda, p.mu); });
  }
  if (c.nested_divisible && c.nested_divisible->t() >= 2) {
    attempt([&] { return ndds_angles(*c.nested_divisible, c.m); });
  }
  return out;
}

std::string classes_text(const Classification& c) {
  std::vector<std::string> parts;
  if (c.difference_set) parts.push_back("difference set (" + std::to_string(c.n) + "," + std::to_string(c.m) + "," +
                                        std::to_string(c.lambda) + ")");
  auto add = [&](const char* name, const ClassMembership& m) {
    if (m.proper && m.params) parts.push_back(std::string(name) + " " + params_text(*m.params));
  };
  add("bidifference", c.bidifference);
  add("divisible", c.divisible);
  add("relative", c.relative);
  add("partial", c.partial);
  add("gaussian", c.gaussian);
  add("almost", c.almost);
  if (c.nested_divisible && c.nested_divisible->t() >= 2) {
    std::string l;
    for (long v : c.nested_divisible->lambdas) l += (l.empty() ? "" : ",") + std::to_string(v);
    parts.push_back("nested divisible t=" + std::to_string(c.nested_divisible->t()) + " lambdas (" + l + ")");
  }
  if (parts.empty()) return "none";
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

struct FormatOption {
  std::string value = "json";
};

void add_format(CLI::App* cmd, FormatOption& f, std::vector<std::string> allowed, std::string fallback) {
  f.value = fallback;
  cmd->add_option("--format", f.value, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
}

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

int cmd_classify(const std::string& group, const std::string& set, double tol, const std::string& format,
                 std::ostream& out) {
  const auto g = AbelianGroup::parse(group);
  const auto subset = g.parse_subset(set);
  const FrameSpec f(g, subset);
  const auto frame = make_frame_report(f, AngleOptions{tol, true});
  const auto c = classify(g, subset);
  SearchRecord rec{subset, c, frame.profile, classify_angularity(frame.profile, frame.is_tight)};

  if (format == "csv") {
    out << csv_header() << csv_row(g, rec);
  } else if (format == "text") {
    out << "group " << g.name() << "  subset " << g.format_subset(subset) << "  n=" << c.n << " m=" << c.m << '\n'
        << "classes: " << classes_text(c) << '\n'
        << "angles: " << angles_text(frame.profile) << '\n'
        << "tight: " << (frame.is_tight ? "yes" : "no") << "  etf: " << (frame.is_etf ? "yes" : "no")
        << "  btf: " << (frame.is_btf ? "yes" : "no") << "  welch bound: " << fmt(frame.welch_bound) << '\n';
  } else {
    Json preds = Json::array();
    for (const auto& p : predictions_for(c)) preds.push_back(to_json(p));
    Json j{{"schema", kSchemaVersion},
           {"group", g.name()},
           {"subset", subset_to_json(g, subset)},
           {"flags", class_flags(c, rec.angularity)},
           {"classification", to_json(g, c)},
           {"frame", to_json(frame)},
           {"predictions", std::move(preds)}};
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_angles(const std::string& group, const std::string& set, double tol, const std::string& format,
               std::ostream& out) {
  const auto g = AbelianGroup::parse(group);
  const FrameSpec f(g, g.parse_subset(set));
  const auto r = make_frame_report(f, AngleOptions{tol, true});
  if (format == "csv") {
    out << "value,symbolic,multiplicity\n";
    for (const auto& a : r.profile.angles) {
      out << fmt(a.value, 15) << ',' << (a.square ? a.square->to_string() : "") << ',' << a.multiplicity << '\n';
    }
  } else if (format == "text") {
    out << r.profile.angularity() << " angle(s): " << angles_text(r.profile) << '\n';
    if (r.profile.ambiguous) out << "warning: clusters closer than 10x the tolerance\n";
  } else {
    out << to_json(r).dump(2) << '\n';
  }
  return kExitOk;
}

struct PredictArgs {
  std::string tag;
  std::optional<long> n, m, l, lambda, mu, p;
  bool zero = false;
  std::string group, set;
};

long need(const std::optional<long>& v, const char* name, const std::string& tag) {
  if (!v) throw Error(ErrorKind::invalid_parameters, tag + " needs --" + name);
  return *v;
}

int cmd_predict(const PredictArgs& a, const std::string& format, std::ostream& out) {
  AnglePrediction p;
  const auto& t = a.tag;
  if (t == "dds") {
    p = dds_angles(need(a.n, "n", t), need(a.m, "m", t), need(a.l, "l", t), need(a.lambda, "lambda", t),
                   need(a.mu, "mu", t));
  } else if (t == "rds") {
    p = rds_angles(need(a.n, "n", t), need(a.m, "m", t), need(a.l, "l", t), need(a.mu, "mu", t));
  } else if (t == "pds") {
    p = pds_angles(need(a.n, "n", t), need(a.m, "m", t), need(a.lambda, "lambda", t), need(a.mu, "mu", t), a.zero);
  } else if (t == "gaussian") {
    p = gaussian_angles(need(a.p, "p", t), need(a.m, "m", t), need(a.lambda, "lambda", t), need(a.mu, "mu", t));
  } else if (t == "quartic") {
    p = quartic_family_angles(need(a.p, "p", t), a.zero);
  } else {
    if (a.group.empty() || a.set.empty()) throw Error(ErrorKind::invalid_parameters, "ndds needs --group and --set");
    const auto g = AbelianGroup::parse(a.group);
    const auto subset = g.parse_subset(a.set);
    const auto chain = nested_divisible_chain(g, subset);
    if (!chain) throw Error(ErrorKind::invalid_parameters, "the subset has no nested divisible chain");
    p = ndds_angles(*chain, static_cast<long>(subset.size()));
  }
  if (format == "text") {
    out << p.tag << ": " << (p.applicable ? p.source : p.note) << '\n';
    for (const auto& ang : p.angles) {
      out << "  " << fmt(ang.value) << "  alpha^2 = " << ang.square.to_string();
      if (ang.stated_multiplicity) out << "  stated x" << *ang.stated_multiplicity;
      if (ang.derived_multiplicity) out << "  counted x" << *ang.derived_multiplicity;
      out << '\n';
    }
    if (p.multiplicity_disagreement) out << "  stated and counted multiplicities differ\n";
  } else {
    out << to_json(p).dump(2) << '\n';
  }
  return kExitOk;
}

struct SearchArgs {
  std::string group;
  std::optional<std::size_t> order;
  std::size_t m = 0;
  std::string filter = "none";
  std::string mode = "reduced";
  std::size_t jobs = 1;
  std::size_t cap = 10'000'000;
  std::size_t records = 100'000;
  double tolerance = 1e-7;
  std::string out_path;
};

std::string search_text(const SearchReport& r) {
  std::ostringstream os;
  os << r.group << " m=" << r.m << " mode=" << (r.mode == SearchMode::full ? "full" : "reduced") << ": examined "
     << r.examined << ", matched " << r.matched << " (bidifference " << r.matched_bidifference
     << ", proper nested divisible " << r.matched_nested_proper << "), ETF/difference-set disagreements "
     << r.etf_ds_disagreements << ", BTFs without bidifference " << r.btf_without_bidifference << ", "
     << fmt(r.seconds, 4) << " s\n";
  for (const auto& [k, v] : r.class_counts) os << "  " << k << ": " << v << '\n';
  return os.str();
}

int cmd_search(const SearchArgs& a, const std::string& format, std::ostream& out) {
  std::vector<AbelianGroup> groups;
  if (a.order) {
    groups = abelian_groups_of_order(*a.order);
  } else {
    groups.push_back(AbelianGroup::parse(a.group));
  }
  std::string fmt_out = format;
  if (!a.out_path.empty()) {
    const auto ext = a.out_path.substr(a.out_path.find_last_of('.') + 1);
    if (ext == "csv" || ext == "json") fmt_out = ext;
  }

  std::vector<std::pair<AbelianGroup, SearchReport>> reports;
  for (const auto& g : groups) {
    SearchJob job(g);
    job.m = a.m;
    job.filter = parse_filter(a.filter);
    job.filter.tolerance = a.tolerance;
    job.mode = a.mode == "full" ? SearchMode::full : SearchMode::reduced;
    job.jobs = a.jobs;
    job.cap = a.cap;
    job.max_records = a.records;
    job.tolerance = a.tolerance;
    reports.emplace_back(g, enumerate_and_classify(job));
  }

  std::string body;
  if (fmt_out == "csv") {
    body = csv_header();
    for (const auto& [g, r] : reports) body += csv_rows(g, r);
  } else if (fmt_out == "text") {
    for (const auto& [g, r] : reports) body += search_text(r);
  } else if (a.order) {
    Json groups_json = Json::array();
    for (const auto& [g, r] : reports) groups_json.push_back(to_json(g, r));
    body = Json{{"schema", kSchemaVersion}, {"order", *a.order}, {"m", a.m}, {"groups", std::move(groups_json)}}
               .dump(2) +
           '\n';
  } else {
    body = to_json(reports.front().first, reports.front().second).dump(2) + '\n';
  }

  if (a.out_path.empty()) {
    out << body;
  } else {
    std::ofstream file(a.out_path);
    if (!file) throw Error(ErrorKind::invalid_parameters, "cannot write " + a.out_path);
    file << body;
    for (const auto& [g, r] : reports) out << search_text(r);
  }
  return kExitOk;
}

std::string complex_text(std::complex<double> z) { return fmt(z.real(), 12) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag()), 12) + "i"; }

int cmd_gauss(long p, std::optional<long> only_a, const std::string& format, std::ostream& out) {
  if (!is_prime(p) || p == 2) throw Error(ErrorKind::domain, "gauss needs an odd prime p");
  Json sums = Json::array();
  for (long a = 1; a < p; ++a) {
    if (only_a && (*only_a % p + p) % p != a) continue;
    const auto g = gauss_sum(a, p);
    const auto gc = gauss_sum_closed_form(a, p);
    const auto h = half_gauss_sum(a, p);
    const auto hc = half_gauss_sum_closed_form(a, p);
    sums.push_back(Json{{"a", a},
                        {"legendre", legendre(a, p)},
                        {"gauss_sum", {g.real(), g.imag()}},
                        {"gauss_sum_closed_form", {gc.real(), gc.imag()}},
                        {"half_gauss_sum", {h.real(), h.imag()}},
                        {"half_gauss_sum_closed_form", {hc.real(), hc.imag()}}});
  }
  Json j{{"schema", kSchemaVersion},
         {"p", p},
         {"quadratic_residues", power_residues(p, 2)},
         {"gauss_sums", sums}};
  if (p % 4 == 1) {
    const auto cos = quartic_coset_decomposition(p);
    j["quartic_residues"] = power_residues(p, 4);
    j["quartic_cosets"] = Json{{"multiplier", cos.multiplier}, {"cosets", cos.cosets}};
    const auto cases = quartic_special_cases(p);
    auto opt = [](const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); };
    j["quartic_cases"] = Json{{"a_ds", opt(cases.a_ds)},
                              {"a_ds_zero", opt(cases.a_ds_zero)},
                              {"a_almost", opt(cases.a_almost)},
                              {"a_almost_zero", opt(cases.a_almost_zero)},
                              {"consistent", cases.consistent},
                              {"notes", cases.notes}};
  }
  if (format == "text") {
    out << "p=" << p << '\n';
    for (const auto& s : sums) {
      const auto g = s["gauss_sum"];
      out << "  a=" << s["a"] << " (a/p)=" << s["legendre"] << " G="
          << complex_text({g[0].get<double>(), g[1].get<double>()}) << '\n';
    }
  } else {
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

int cmd_tables(const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& row : table_rows()) {
      Json checks = Json::array();
      for (const auto& s : row.samples) checks.push_back(to_json(table_row_check(row.table, row.row, s)));
      rows.push_back(Json{{"table", row.table},
                          {"row", row.row},
                          {"family", row.family},
                          {"conditions", row.conditions},
                          {"variables", row.variables},
                          {"checks", std::move(checks)}});
    }
    out << Json{{"schema", kSchemaVersion}, {"rows", std::move(rows)}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "table,row,family,conditions,sample,status,n,m,l,lambda,mu,alpha1,alpha2,predicted,max_error\n";
  for (const auto& row : table_rows()) {
    for (const auto& s : row.samples) {
      const auto c = table_row_check(row.table, row.row, s);
      std::string sample;
      for (const auto& [k, v] : s) sample += (sample.empty() ? "" : ";") + k + "=" + std::to_string(v);
      std::string pred;
      for (double v : c.predicted) pred += (pred.empty() ? "" : ";") + fmt(v, 15);
      out << row.table << ',' << row.row << ',' << csv_field(row.family) << ',' << csv_field(row.conditions) << ','
          << sample << ',' << (c.skipped ? "skipped" : c.passed ? "pass" : "fail") << ',' << c.instance.n << ','
          << c.instance.m << ',' << c.instance.l << ',' << c.instance.lambda << ',' << c.instance.mu << ','
          << fmt(c.instance.alpha1, 15) << ',' << fmt(c.instance.alpha2, 15) << ',' << pred << ','
          << fmt(c.max_error, 3) << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& options, const std::string& format,
               std::ostream& out) {
  const auto r = run_verify_suite(suite, options);
  if (format == "json") {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    out << Json{{"schema", kSchemaVersion},
                {"suite", r.suite},
                {"passed", r.passed()},
                {"seconds", r.seconds},
                {"checks", std::move(checks)}}
               .dump(2)
        << '\n';
  } else {
    std::size_t ok = 0;
    for (const auto& c : r.checks) {
      ok += c.passed;
      out << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) out << "  (" << c.detail << ")";
      out << '\n';
    }
    out << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << ok << '/' << r.checks.size() << " checks, "
        << fmt(r.seconds, 3) << " s)\n";
  }
  return r.passed() ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"framelab: harmonic frames from abelian group characters and their difference-set taxonomy"};
  app.name("framelab");
  app.require_subcommand(1);
  app.footer(
      "Sets are written as {0,1,3} or 0,1,3; elements of non-cyclic groups as (a,b).\n"
      "FRAMELAB_JOBS sets the default worker count for search and verify.");

  std::string group, set;
  double tolerance = 1e-7;
  FormatOption f_classify, f_angles, f_predict, f_search, f_gauss, f_tables, f_verify;

  auto* classify_cmd = app.add_subcommand("classify", "Classify a subset and profile its harmonic frame");
  classify_cmd->add_option("--group", group, "Group, e.g. Z6 or Z2xZ4")->required();
  classify_cmd->add_option("--set", set, "Generating subset")->required();
  classify_cmd->add_option("--tolerance", tolerance, "Angle clustering tolerance")->capture_default_str();
  add_format(classify_cmd, f_classify, {"json", "csv", "text"}, "json");

  auto* angles_cmd = app.add_subcommand("angles", "Frame angles of a harmonic frame");
  angles_cmd->add_option("--group", group, "Group")->required();
  angles_cmd->add_option("--set", set, "Generating subset")->required();
  angles_cmd->add_option("--tolerance", tolerance, "Angle clustering tolerance")->capture_default_str();
  add_format(angles_cmd, f_angles, {"json", "csv", "text"}, "json");

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "Closed-form angles for a class and parameters");
  predict_cmd->add_option("tag", pa.tag, "dds | rds | pds | gaussian | quartic | ndds")
      ->required()
      ->check(CLI::IsMember({"dds", "rds", "pds", "gaussian", "quartic", "ndds"}));
  predict_cmd->add_option("--n", pa.n, "Group order");
  predict_cmd->add_option("--m", pa.m, "Set size");
  predict_cmd->add_option("--l", pa.l, "Size of H or A");
  predict_cmd->add_option("--lambda", pa.lambda, "Count inside A");
  predict_cmd->add_option("--mu", pa.mu, "Count outside A");
  predict_cmd->add_option("--p", pa.p, "Prime");
  predict_cmd->add_flag("--zero", pa.zero, "pds: 0 is in S; quartic: adjoin 0");
  predict_cmd->add_option("--group", pa.group, "ndds: group");
  predict_cmd->add_option("--set", pa.set, "ndds: subset");
  add_format(predict_cmd, f_predict, {"json", "text"}, "json");

  SearchArgs sa;
  sa.jobs = default_jobs();
  auto* search_cmd = app.add_subcommand("search", "Enumerate and classify all m-subsets");
  auto* g_opt = search_cmd->add_option("--group", sa.group, "Group");
  auto* o_opt = search_cmd->add_option("--order", sa.order, "Search every abelian group of this order");
  g_opt->excludes(o_opt);
  search_cmd->add_option("-m", sa.m, "Subset size")->required();
  search_cmd->add_option("--filter", sa.filter, "none | btf | etf | angles=a,b,... | class name")
      ->capture_default_str();
  search_cmd->add_option("--mode", sa.mode, "full: all subsets; reduced: subsets containing 0")
      ->check(CLI::IsMember({"full", "reduced"}))
      ->capture_default_str();
  search_cmd->add_option("--jobs", sa.jobs, "Worker threads")->envname("FRAMELAB_JOBS")->check(CLI::PositiveNumber);
  search_cmd->add_option("--cap", sa.cap, "Maximum number of subsets")->capture_default_str();
  search_cmd->add_option("--records", sa.records, "Maximum matching records kept")->capture_default_str();
  search_cmd->add_option("--tolerance", sa.tolerance, "Angle tolerance")->capture_default_str();
  search_cmd->add_option("--out", sa.out_path, "Write the report to a .json or .csv file");
  add_format(search_cmd, f_search, {"json", "csv", "text"}, "json");

  long gauss_p = 0;
  std::optional<long> gauss_a;
  auto* gauss_cmd = app.add_subcommand("gauss", "Legendre symbols, Gauss sums and residue classes mod p");
  gauss_cmd->add_option("--p", gauss_p, "Odd prime")->required();
  gauss_cmd->add_option("--a", gauss_a, "Restrict the sums to one a");
  add_format(gauss_cmd, f_gauss, {"json", "text"}, "json");

  auto* tables_cmd = app.add_subcommand("tables", "Parameter-family rows with sample instances and checks");
  add_format(tables_cmd, f_tables, {"csv", "json"}, "csv");

  std::string suite;
  VerifyOptions vo;
  vo.jobs = default_jobs();
  std::string v_group, v_set;
  auto* verify_cmd = app.add_subcommand("verify", "Run a named check suite");
  verify_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suite_names()));
  verify_cmd->add_option("--group", v_group, "modulation, tightness: group");
  verify_cmd->add_option("--set", v_set, "modulation, tightness: subset");
  verify_cmd->add_option("--jobs", vo.jobs, "Worker threads")->envname("FRAMELAB_JOBS")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-order", vo.max_order, "etf-ds: largest group order")->capture_default_str();
  add_format(verify_cmd, f_verify, {"text", "json"}, "text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(group, set, tolerance, f_classify.value, out);
    if (*angles_cmd) return cmd_angles(group, set, tolerance, f_angles.value, out);
    if (*predict_cmd) return cmd_predict(pa, f_predict.value, out);
    if (*search_cmd) {
      if (sa.group.empty() && !sa.order) throw CLI::RequiredError("--group or --order");
      return cmd_search(sa, f_search.value, out);
    }
    if (*gauss_cmd) return cmd_gauss(gauss_p, gauss_a, f_gauss.value, out);
    if (*tables_cmd) return cmd_tables(f_tables.value, out);
    if (*verify_cmd) {
      if (!v_group.empty()) vo.group = v_group;
      if (!v_set.empty()) vo.set = v_set;
      return cmd_verify(suite, vo, f_verify.value, out);
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::parse ? kExitUsage : kExitDomain;
  }
  return kExitUsage;
}

}  // namespace framelab::cli
