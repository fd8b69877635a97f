#include "verify.hpp"

#include "ringprob/closedform.hpp"
#include "ringprob/error.hpp"
#include "ringprob/finfield.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace ringprob::cli {

namespace {

constexpr Index kNoCap = std::numeric_limits<Index>::max();

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < count; i = next++) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string frac(const ProbFraction& p) { return p.to_string(); }
std::string frac(const Rational& r) { return to_string(r); }
std::string interval(const Bounds& b) { return "[" + frac(b.lower) + ", " + frac(b.upper) + "]"; }
std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Check {
  bool ok = false;
  std::string expected;
  std::string actual;
};

using Cases = std::vector<CaseResult>;

CaseResult make_case(const RingContext& ctx, std::string name, const Check& check) {
  CaseResult c;
  c.ring = ctx.entry.spec;
  c.name = std::move(name);
  c.status = check.ok ? CaseStatus::kPass : CaseStatus::kFail;
  c.expected = check.expected;
  c.actual = check.actual;
  return c;
}

Cases skip(const RingContext& ctx, std::string reason) {
  CaseResult c;
  c.ring = ctx.entry.spec;
  c.name = "-";
  c.status = CaseStatus::kSkip;
  c.reason = std::move(reason);
  return {c};
}

// One case per spectrum class. Every member is checked; the case shows the
// first failing member, or the representative when all pass.
void per_class(const RingContext& ctx, Cases& out, const std::function<Check(Index)>& check) {
  const Ring& ring = ctx.entry.ring;
  for (const auto& entry : ctx.spectrum.entries) {
    Index shown = entry.members.front();
    Check shown_check = check(shown);
    if (shown_check.ok) {
      for (std::size_t i = 1; i < entry.members.size(); ++i) {
        Check c = check(entry.members[i]);
        if (!c.ok) {
          shown = entry.members[i];
          shown_check = std::move(c);
          break;
        }
      }
    }
    out.push_back(make_case(ctx, entry.label + " x=" + ring.format(shown), shown_check));
  }
}

Check equal_check(const ProbFraction& expected, const ProbFraction& actual) {
  return {expected == actual, frac(expected), frac(actual)};
}

std::optional<std::string> not_local_n2(const StructureReport& report) {
  if (!report.is_local) return "not local";
  if (*report.n < 2) return "n = 1 (residue field)";
  return std::nullopt;
}

// --- suites ------------------------------------------------------------------

Cases lemma21(const RingContext& ctx) {
  const bool ok = left_right_symmetry_check(ctx.entry.ring);
  return {make_case(ctx, "left and right zero-divisors coincide", {ok, "true", yes_no(ok)})};
}

Cases lemma23(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  const auto ann = annsum_counts(ring, kNoCap);
  Cases out;
  per_class(ctx, out, [&](Index x) {
    const auto brute = prob_brute(ring, x, kNoCap);
    const auto annsum = prob_annsum(ring, x, kNoCap);
    Check c = equal_check(brute, annsum);
    if (c.ok && (brute.hits != ctx.spectrum.hits[x] || brute.hits != ann[x])) {
      c.ok = false;
      c.actual = "pair counter " + std::to_string(ctx.spectrum.hits[x]) + ", annihilator counter " +
                 std::to_string(ann[x]);
    }
    return c;
  });
  return out;
}

Cases lemma24(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  const auto& report = ctx.report;
  Cases out;
  std::vector<Index> all(report.units);
  all.insert(all.end(), report.zero_divisors.begin(), report.zero_divisors.end());
  std::sort(all.begin(), all.end());
  const bool partition = all.size() == ring.size() && std::adjacent_find(all.begin(), all.end()) == all.end();
  out.push_back(make_case(ctx, "units and zero-divisors partition R",
                          {partition, std::to_string(ring.size()),
                           std::to_string(report.units.size()) + "+" + std::to_string(report.zero_divisors.size())}));
  const auto unit_value = ProbFraction::over_square(report.units.size(), ring.size());
  per_class(ctx, out, [&](Index x) {
    const auto p = ctx.spectrum.at(x);
    if (report.is_unit(x)) return equal_check(unit_value, p);
    const auto b = general_bounds(ring, report, x == 0 ? XClass::kZero : XClass::kNonzeroZeroDivisor);
    return Check{b.contains(p) && p != unit_value, interval(b) + " and != " + frac(unit_value), frac(p)};
  });
  return out;
}

Cases lemma25(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  std::vector<Ring> factors;
  std::function<std::vector<Index>(Index)> components;
  if (ring.kind() == RingKind::kProduct) {
    factors = ring.factors();
    components = [&ring](Index x) { return ring.split(x); };
  } else if (ring.kind() == RingKind::kZMod && factorize(ring.zmod_modulus()).size() >= 2) {
    std::vector<std::uint64_t> moduli;
    for (const auto& [p, e] : factorize(ring.zmod_modulus())) {
      moduli.push_back(*checked_pow(p, e));
      factors.push_back(Ring::zmod(moduli.back()));
    }
    components = [moduli](Index x) {
      std::vector<Index> parts;
      for (auto m : moduli) parts.push_back(x % m);
      return parts;
    };
  } else {
    return skip(ctx, "not a direct product");
  }
  std::vector<std::vector<std::uint64_t>> factor_hits;
  for (const auto& f : factors) factor_hits.push_back(pair_counts(f, 1, kNoCap));
  Cases out;
  per_class(ctx, out, [&](Index x) {
    const auto parts = components(x);
    ProbFraction expected{1, 1};
    for (std::size_t i = 0; i < factors.size(); ++i) {
      expected = expected * ProbFraction::over_square(factor_hits[i][parts[i]], factors[i].size());
    }
    return equal_check(expected, ctx.spectrum.at(x));
  });
  return out;
}

Cases lemma26(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  Cases out;
  for (const auto& ideal : principal_two_sided_ideals(ring)) {
    if (ideal.is_whole_ring()) continue;
    const Ring q = quotient_make(ring, ideal);
    const auto q_hits = pair_counts(q, 1, kNoCap);
    auto compare = [&](Index x) {
      const auto lhs = ctx.spectrum.at(x);
      const auto rhs = ProbFraction::over_square(q_hits[q.coset_of(x)], q.size());
      return std::pair{lhs <= rhs, std::pair{lhs, rhs}};
    };
    Index shown = 0;
    for (Index x = 0; x < ring.size(); ++x) {
      if (!compare(x).first) {
        shown = x;
        break;
      }
    }
    const auto [ok, values] = compare(shown);
    std::string name = "|I|=" + std::to_string(ideal.size()) + " x=" + ring.format(shown);
    out.push_back(make_case(ctx, std::move(name), {ok, "<= " + frac(values.second), frac(values.first)}));
  }
  if (out.empty()) return skip(ctx, "no proper principal ideal");
  return out;
}

bool is_matrix_like(const Ring& ring) { return ring.kind() == RingKind::kMatrix || ring.kind() == RingKind::kField; }

Cases lemma31(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  if (!is_matrix_like(ring)) return skip(ctx, "not a matrix ring over a field");
  const auto& field = ring.field_descriptor();
  const unsigned n = ring.matrix_dim();
  Cases out;
  for (unsigned r = 0; r <= n; ++r) {
    for (unsigned k = r; k <= n; ++k) {
      const auto brute = enumerate_subspaces_containing(field, n, r, k);
      const auto formula = subspace_count(field.order(), n, r, k);
      out.push_back(make_case(ctx, "q=" + std::to_string(field.order()) + " n=" + std::to_string(n) +
                                       " r=" + std::to_string(r) + " k=" + std::to_string(k),
                              {formula == brute, std::to_string(brute), formula.str()}));
    }
  }
  return out;
}

Cases thm32(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  if (!is_matrix_like(ring)) return skip(ctx, "not a matrix ring over a field");
  const auto q = ring.field_descriptor().order();
  const unsigned dim = ring.matrix_dim();
  Cases out;
  std::map<unsigned, std::set<std::uint64_t>> by_rank;
  for (Index x = 0; x < ring.size(); ++x) by_rank[matrix_rank(ring, x)].insert(ctx.spectrum.hits[x]);
  bool constant = true;
  std::string observed;
  for (const auto& [rank, hits] : by_rank) {
    constant = constant && hits.size() == 1;
    observed += (observed.empty() ? "" : "; ") + std::string("rank ") + std::to_string(rank) + ":";
    for (auto h : hits) observed += " " + std::to_string(h);
  }
  out.push_back(make_case(ctx, "hit count constant on rank classes", {constant, "one count per rank", observed}));
  per_class(ctx, out, [&](Index x) {
    const auto formula = prob_matrix_formula({q, dim, matrix_rank(ring, x)});
    return equal_check(formula.value, ctx.spectrum.at(x));
  });
  return out;
}

Cases lemma41(const RingContext& ctx) {
  if (!ctx.report.is_local) return skip(ctx, "not local");
  const bool ok = ideal_size_power_check(ctx.entry.ring, ctx.report);
  return {make_case(ctx, "ideal orders are powers of q=" + std::to_string(*ctx.report.q), {ok, "true", yes_no(ok)})};
}

Cases thm42(const RingContext& ctx) {
  const auto& report = ctx.report;
  if (auto reason = not_local_n2(report)) return skip(ctx, *reason);
  const BigInt q = *report.q;
  const Rational unit_value(q - 1, ipow(q, *report.n + 1));
  const auto zero_bounds = local_bounds(report, XClass::kZero);
  const auto radical_bounds = local_bounds(report, XClass::kNonzeroZeroDivisor);
  Cases out;
  per_class(ctx, out, [&](Index x) {
    const auto p = ctx.spectrum.at(x);
    if (report.is_unit(x)) return Check{p == unit_value, frac(unit_value), frac(p)};
    const auto& b = x == 0 ? zero_bounds : radical_bounds;
    return Check{b.contains(p), interval(b), frac(p)};
  });
  return out;
}

Cases cor43(const RingContext& ctx) {
  if (auto reason = not_local_n2(ctx.report)) return skip(ctx, *reason);
  const auto preds = corollary_43_predicates(ctx.report, ctx.spectrum);
  const bool ok = std::all_of(preds.begin(), preds.end(), [&](bool b) { return b == preds[0]; });
  std::string actual;
  for (bool b : preds) actual += (actual.empty() ? "" : ",") + yes_no(b);
  return {make_case(ctx, "four statements agree", {ok, "all equal", "[" + actual + "]"})};
}

Cases cor44(const RingContext& ctx) {
  if (!ctx.report.is_local) return skip(ctx, "not local");
  const auto c = corollary_44_predicate(ctx.report, ctx.spectrum);
  return {make_case(ctx, "Prob_0 extremal iff J^2 = 0",
                    {c.lhs == c.rhs, "J^2 = 0: " + yes_no(c.rhs), "Prob_0 extremal: " + yes_no(c.lhs)})};
}

Cases lemma45(const RingContext& ctx) {
  const bool ok = unit_plus_radical_check(ctx.entry.ring, ctx.report);
  return {make_case(ctx, "unit + radical element is a unit", {ok, "true", yes_no(ok)})};
}

Cases thm46(const RingContext& ctx) {
  if (!ctx.report.is_local) return skip(ctx, "not local");
  if (!ctx.report.is_max_chain) return skip(ctx, "J^(n-1) = 0, not a chain ring");
  Cases out;
  per_class(ctx, out, [&](Index x) {
    return equal_check(prob_chain_formula(ctx.entry.ring, ctx.report, x).value, ctx.spectrum.at(x));
  });
  return out;
}

Cases remark_zn(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  if (ring.kind() != RingKind::kZMod) return skip(ctx, "not of the form Z_n");
  Cases out;
  per_class(ctx, out, [&](Index x) { return equal_check(prob_zn(ring.zmod_modulus(), x).value, ctx.spectrum.at(x)); });
  return out;
}

Cases thm48(const RingContext& ctx) {
  const Ring& ring = ctx.entry.ring;
  const auto& report = ctx.report;
  if (!report.is_local) return skip(ctx, "not local");
  if (!report.is_j_squared_zero) return skip(ctx, "J^2 != 0");
  Cases out;
  per_class(ctx, out,
            [&](Index x) { return equal_check(prob_j2zero_formula(ring, report, x).value, ctx.spectrum.at(x)); });
  if (report.is_max_chain && *report.n == 2) {
    Index shown = 0;
    for (Index x = 0; x < ring.size(); ++x) {
      if (prob_j2zero_formula(ring, report, x).value != prob_chain_formula(ring, report, x).value) {
        shown = x;
        break;
      }
    }
    out.push_back(make_case(ctx, "agrees with the chain formula x=" + ring.format(shown),
                            equal_check(prob_chain_formula(ring, report, shown).value,
                                        prob_j2zero_formula(ring, report, shown).value)));
  }
  return out;
}

struct SuiteDef {
  std::string id;
  std::string statement;
  Cases (*run)(const RingContext&);
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs = {
      {"lemma21", "ba = 0 for some b != 0 iff ab' = 0 for some b' != 0", lemma21},
      {"lemma23", "pair count equals the annihilator sum", lemma23},
      {"lemma24", "unit characterization and general bounds", lemma24},
      {"lemma25", "Prob of a direct product is the product of the factor values", lemma25},
      {"lemma26", "Prob_x(R) <= Prob_(x+I)(R/I)", lemma26},
      {"lemma31", "subspaces of GF(q)^n containing a fixed subspace", lemma31},
      {"thm32", "matrix ring formula by rank", thm32},
      {"lemma41", "ideals of a local ring have order a power of q", lemma41},
      {"thm42", "local ring bounds", thm42},
      {"cor43", "equivalent extremal conditions for local rings", cor43},
      {"cor44", "Prob_0 attains the local upper bound iff J^2 = 0", cor44},
      {"lemma45", "units are closed under adding radical elements", lemma45},
      {"thm46", "chain ring formula", thm46},
      {"remark_zn", "Z_n by the Chinese remainder theorem", remark_zn},
      {"thm48", "formula for local rings with J^2 = 0", thm48},
  };
  return defs;
}

const SuiteDef& suite(std::string_view id) {
  for (const auto& def : suites()) {
    if (def.id == id) return def;
  }
  fail(ErrorCode::kValidationError, "unknown suite '" + std::string(id) + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string_view status_name(CaseStatus status) {
  switch (status) {
    case CaseStatus::kPass: return "pass";
    case CaseStatus::kFail: return "FAIL";
    case CaseStatus::kSkip: return "skip";
  }
  return "?";
}

bool SuiteResult::passed() const { return count(CaseStatus::kFail) == 0; }

std::size_t SuiteResult::count(CaseStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [status](const CaseResult& c) { return c.status == status; }));
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& def : suites()) out.push_back(def.id);
    return out;
  }();
  return ids;
}

bool is_suite_id(std::string_view id) {
  return std::find(suite_ids().begin(), suite_ids().end(), id) != suite_ids().end();
}

std::string_view suite_statement(std::string_view id) { return suite(id).statement; }

std::vector<RingContext> analyze_corpus(const std::vector<CorpusRing>& corpus, unsigned workers, Index cap) {
  for (const auto& entry : corpus) require_enumerable(entry.ring, cap);
  std::vector<std::optional<RingContext>> slots(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    const Ring& ring = corpus[i].ring;
    auto report = classify_local(ring);
    auto spec = spectrum(ring, report, 1, kNoCap);
    slots[i].emplace(RingContext{corpus[i], std::move(report), std::move(spec)});
  });
  std::vector<RingContext> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

SuiteResult run_suite(std::string_view id, const std::vector<RingContext>& corpus, unsigned workers) {
  const SuiteDef& def = suite(id);
  std::vector<Cases> per_ring(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) { per_ring[i] = def.run(corpus[i]); });
  SuiteResult result{def.id, def.statement, {}};
  for (auto& cases : per_ring) {
    for (auto& c : cases) result.cases.push_back(std::move(c));
  }
  return result;
}

std::uint64_t enumerate_subspaces_containing(const FieldDescriptor& field, unsigned n, unsigned r, unsigned k) {
  const std::uint64_t q = field.order();
  const auto total = checked_pow(q, n);
  if (!total || *total > 4096) fail(ErrorCode::kSizeCapExceeded, "subspace lattice too large");
  const std::uint64_t size = *total;
  // Vectors are base-q numbers; digit i is coordinate i.
  auto combine = [&](std::uint64_t v, std::uint64_t c, std::uint64_t w) {
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    for (unsigned i = 0; i < n; ++i) {
      out += field.add(v % q, field.mul(c, w % q)) * place;
      v /= q;
      w /= q;
      place *= q;
    }
    return out;
  };
  std::set<std::vector<std::uint64_t>> seen{{0}};
  std::vector<std::vector<std::uint64_t>> queue{{0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto current = queue[head];
    std::vector<char> member(size, 0);
    for (auto v : current) member[v] = 1;
    for (std::uint64_t v = 0; v < size; ++v) {
      if (member[v]) continue;
      std::vector<std::uint64_t> next;
      for (auto s : current) {
        for (std::uint64_t c = 0; c < q; ++c) next.push_back(combine(s, c, v));
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  const std::uint64_t want = *checked_pow(q, k);
  const std::uint64_t fixed = *checked_pow(q, r);  // span of e_0..e_(r-1) is {v < q^r}
  std::uint64_t count = 0;
  for (const auto& s : queue) {
    if (s.size() != want) continue;
    // Sorted, so U is contained iff the first q^r entries are 0..q^r-1.
    if (s.size() >= fixed && s[fixed - 1] == fixed - 1) ++count;
  }
  return count;
}

void write_results(std::ostream& out, const std::vector<SuiteResult>& results, const std::vector<RingContext>& corpus,
                   OutputFormat format) {
  bool all_passed = std::all_of(results.begin(), results.end(), [](const SuiteResult& s) { return s.passed(); });
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json doc;
    doc["corpus"] = nlohmann::ordered_json::array();
    for (const auto& ctx : corpus) doc["corpus"].push_back(ctx.entry.spec);
    doc["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : results) {
      nlohmann::ordered_json suite_doc;
      suite_doc["id"] = s.id;
      suite_doc["statement"] = s.statement;
      suite_doc["passed"] = s.passed();
      suite_doc["cases"] = nlohmann::ordered_json::array();
      for (const auto& c : s.cases) {
        nlohmann::ordered_json case_doc;
        case_doc["ring"] = c.ring;
        case_doc["case"] = c.name;
        case_doc["status"] = std::string(status_name(c.status));
        if (c.status == CaseStatus::kSkip) {
          case_doc["reason"] = c.reason;
        } else {
          case_doc["expected"] = c.expected;
          case_doc["actual"] = c.actual;
        }
        suite_doc["cases"].push_back(std::move(case_doc));
      }
      doc["suites"].push_back(std::move(suite_doc));
    }
    doc["passed"] = all_passed;
    out << doc.dump(2) << "\n";
    return;
  }
  if (format == OutputFormat::kCsv) {
    out << "suite,ring,case,status,expected,actual,reason\n";
    for (const auto& s : results) {
      for (const auto& c : s.cases) {
        out << s.id << ',' << csv_field(c.ring) << ',' << csv_field(c.name) << ',' << status_name(c.status) << ','
            << csv_field(c.expected) << ',' << csv_field(c.actual) << ',' << csv_field(c.reason) << "\n";
      }
    }
    return;
  }

  std::size_t ring_width = 4;
  for (const auto& ctx : corpus) ring_width = std::max(ring_width, ctx.entry.spec.size());
  ring_width += 2;
  auto emit = [&out](std::string line) {
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << "\n";
  };
  std::string header = pad("ring", ring_width);
  for (const auto& s : results) header += pad(s.id, std::max<std::size_t>(s.id.size(), 4) + 2);
  emit(header);
  for (const auto& ctx : corpus) {
    std::string line = pad(ctx.entry.spec, ring_width);
    for (const auto& s : results) {
      bool any_pass = false;
      bool any_fail = false;
      for (const auto& c : s.cases) {
        if (c.ring != ctx.entry.spec) continue;
        any_pass = any_pass || c.status == CaseStatus::kPass;
        any_fail = any_fail || c.status == CaseStatus::kFail;
      }
      const std::string cell = any_fail ? "FAIL" : any_pass ? "pass" : "skip";
      line += pad(cell, std::max<std::size_t>(s.id.size(), 4) + 2);
    }
    emit(line);
  }
  std::size_t passes = 0, fails = 0, skips = 0;
  for (const auto& s : results) {
    passes += s.count(CaseStatus::kPass);
    fails += s.count(CaseStatus::kFail);
    skips += s.count(CaseStatus::kSkip);
  }
  out << "\ncases: " << passes << " pass, " << fails << " fail, " << skips << " skip\n";
  if (skips > 0) {
    out << "\nskipped:\n";
    for (const auto& s : results) {
      for (const auto& c : s.cases) {
        if (c.status == CaseStatus::kSkip) out << "  " << s.id << "  " << c.ring << ": " << c.reason << "\n";
      }
    }
  }
  if (fails > 0) {
    out << "\nfailures:\n";
    for (const auto& s : results) {
      for (const auto& c : s.cases) {
        if (c.status != CaseStatus::kFail) continue;
        out << "  " << s.id << "  " << c.ring << "  " << c.name << ": expected " << c.expected << ", actual "
            << c.actual << "\n";
      }
    }
  }
  out << "\nresult: " << (all_passed ? "PASS" : "FAIL") << "\n";
}

}  // namespace ringprob::cli
