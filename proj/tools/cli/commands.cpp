#include "commands.hpp"

#include "corpus.hpp"
#include "verify.hpp"

#include "ringprob/closedform.hpp"
#include "ringprob/error.hpp"
#include "ringprob/probability.hpp"
#include "ringprob/ringspec.hpp"
#include "ringprob/structure.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <limits>
#include <ostream>
#include <sstream>

namespace ringprob::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string ring;
  std::string x;
  std::string method = "auto";
  std::string format;
  std::string suite = "all";
  std::string corpus = "default";
  bool force = false;
  bool explain = false;
  unsigned jobs = 0;
};

Json integer_json(const BigInt& value) {
  if (value <= std::numeric_limits<std::uint64_t>::max()) return value.convert_to<std::uint64_t>();
  return value.str();
}

Index cap_of(const Options& opt) { return opt.force ? std::numeric_limits<Index>::max() : kDefaultSizeCap; }

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::kAuto;
  if (name == "brute") return Method::kBrute;
  if (name == "annsum") return Method::kAnnsum;
  return Method::kFormula;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  return OutputFormat::kTable;
}

int cmd_prob(const Options& opt, std::ostream& out) {
  const Ring ring = parse_ring_spec(opt.ring);
  const Index x = ring.parse(opt.x);
  const auto result = evaluate_probability(ring, x, parse_method(opt.method), cap_of(opt));
  Json doc;
  doc["ring"] = ring.render();
  doc["size"] = ring.size();
  doc["x"] = ring.format(x);
  doc["hits"] = integer_json(result.value.hits);
  doc["total"] = integer_json(result.value.total);
  doc["fraction"] = result.value.hits.str() + "/" + result.value.total.str();
  doc["reduced"] = result.value.to_string();
  doc["decimal"] = result.value.decimal();
  doc["method"] = std::string(formula_name(result.formula));
  if (opt.explain) doc["applicability"] = result.applicability;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_spectrum(const Options& opt, std::ostream& out) {
  const Ring ring = parse_ring_spec(opt.ring);
  require_enumerable(ring, cap_of(opt));
  const auto report = classify_local(ring);
  const auto spec = spectrum(ring, report, opt.jobs, cap_of(opt));
  const auto format = parse_format(opt.format.empty() ? "table" : opt.format);
  if (format == OutputFormat::kJson) {
    Json doc;
    doc["ring"] = ring.render();
    doc["size"] = ring.size();
    doc["classes"] = Json::array();
    for (const auto& e : spec.entries) {
      Json c;
      c["label"] = e.label;
      c["representative"] = ring.format(e.representative);
      c["class_size"] = e.class_size;
      c["hits"] = integer_json(e.prob.hits);
      c["total"] = integer_json(e.prob.total);
      c["fraction"] = e.prob.to_string();
      c["decimal"] = e.prob.decimal();
      doc["classes"].push_back(std::move(c));
    }
    out << doc.dump(2) << "\n";
  } else if (format == OutputFormat::kCsv) {
    out << "label,representative,class_size,hits,total,fraction,decimal\n";
    for (const auto& e : spec.entries) {
      std::string rep = ring.format(e.representative);
      if (rep.find(',') != std::string::npos) rep = "\"" + rep + "\"";
      out << e.label << ',' << rep << ',' << e.class_size << ',' << e.prob.hits << ',' << e.prob.total << ','
          << e.prob.to_string() << ',' << e.prob.decimal() << "\n";
    }
  } else {
    out << ring.render() << "  |R| = " << ring.size() << "\n";
    std::vector<std::vector<std::string>> rows = {{"class", "x", "size", "hits", "Prob", "decimal"}};
    for (const auto& e : spec.entries) {
      rows.push_back({e.label, ring.format(e.representative), std::to_string(e.class_size), e.prob.hits.str(),
                      e.prob.to_string(), e.prob.decimal()});
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) line += row[i] + std::string(width[i] - row[i].size() + 2, ' ');
      out << line.substr(0, line.find_last_not_of(' ') + 1) << "\n";
    }
  }
  return kExitOk;
}

int cmd_structure(const Options& opt, std::ostream& out) {
  const Ring ring = parse_ring_spec(opt.ring);
  require_enumerable(ring, cap_of(opt));
  const auto report = classify_local(ring);
  Json doc;
  doc["ring"] = ring.render();
  doc["size"] = report.size;
  doc["units"] = report.units.size();
  doc["zero_divisors"] = report.zero_divisors.size();
  doc["radical_chain_sizes"] = Json::array();
  for (const auto& ideal : report.radical_chain) doc["radical_chain_sizes"].push_back(ideal.size());
  doc["nilpotency_index"] = report.nilpotency_index;
  doc["is_local"] = report.is_local;
  doc["q"] = report.q ? Json(*report.q) : Json(nullptr);
  doc["n"] = report.n ? Json(*report.n) : Json(nullptr);
  doc["is_max_chain"] = report.is_max_chain;
  doc["is_j2_zero"] = report.is_j_squared_zero;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  std::vector<std::string> ids;
  if (opt.suite == "all") {
    ids = suite_ids();
  } else {
    std::stringstream list(opt.suite);
    for (std::string id; std::getline(list, id, ',');) {
      if (!is_suite_id(id)) fail(ErrorCode::kValidationError, "unknown suite '" + id + "'");
      ids.push_back(id);
    }
  }
  const auto corpus = analyze_corpus(load_corpus(opt.corpus), opt.jobs, cap_of(opt));
  std::vector<SuiteResult> results;
  for (const auto& id : ids) results.push_back(run_suite(id, corpus, opt.jobs));
  std::ostringstream buffer;
  write_results(buffer, results, corpus, parse_format(opt.format.empty() ? "table" : opt.format));
  out << buffer.str();
  const bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& s) { return s.passed(); });
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact multiplication probabilities of finite rings", "ringprob"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"table", "json", "csv"};

  auto* prob = app.add_subcommand("prob", "Prob_x(R) for one element");
  prob->add_option("--ring", opt.ring, "ring spec, e.g. Z6 or M2(GF2) x Z3")->required();
  prob->add_option("--x", opt.x, "element literal, or #i for index i")->required();
  prob->add_option("--method", opt.method, "auto, brute, annsum or formula")
      ->check(CLI::IsMember({"auto", "brute", "annsum", "formula"}));
  prob->add_flag("--explain", opt.explain, "list the hypotheses behind the chosen formula");
  prob->add_flag("--force", opt.force, "lift the size cap");

  auto* spec = app.add_subcommand("spectrum", "all Prob_x grouped into classes");
  spec->add_option("--ring", opt.ring, "ring spec")->required();
  spec->add_option("--format", opt.format, "table, json or csv")->check(CLI::IsMember(formats));
  spec->add_flag("--force", opt.force, "lift the size cap");
  spec->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");

  auto* structure = app.add_subcommand("structure", "units, radical and local invariants as JSON");
  structure->add_option("--ring", opt.ring, "ring spec")->required();
  structure->add_flag("--force", opt.force, "lift the size cap");

  auto* verify = app.add_subcommand("verify", "check every statement against enumeration");
  verify->add_option("--suite", opt.suite, "suite id, comma-separated ids, or all");
  verify->add_option("--corpus", opt.corpus, "default, or a JSON array of ring specs");
  verify->add_option("--format", opt.format, "table, json or csv")->check(CLI::IsMember(formats));
  verify->add_flag("--force", opt.force, "lift the size cap");
  verify->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*prob) return cmd_prob(opt, out);
    if (*spec) return cmd_spectrum(opt, out);
    if (*structure) return cmd_structure(opt, out);
    return cmd_verify(opt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RingError& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::kSizeCapExceeded) return kExitSizeCap;
    if (e.code() == ErrorCode::kInternal) return kExitVerificationFailed;
    return kExitUsage;
  }
}

}  // namespace ringprob::cli
