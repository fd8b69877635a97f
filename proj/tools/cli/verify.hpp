#pragma once

#include "corpus.hpp"

#include "ringprob/probability.hpp"
#include "ringprob/structure.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ringprob::cli {

enum class CaseStatus { kPass, kFail, kSkip };

std::string_view status_name(CaseStatus status);

struct CaseResult {
  std::string ring;
  std::string name;
  CaseStatus status = CaseStatus::kPass;
  std::string expected;
  std::string actual;
  std::string reason;  // skips only
};

struct SuiteResult {
  std::string id;
  std::string statement;
  std::vector<CaseResult> cases;

  bool passed() const;
  std::size_t count(CaseStatus status) const;
};

/// Structure and spectrum of one corpus ring, computed once and shared by
/// every suite.
struct RingContext {
  CorpusRing entry;
  StructureReport report;
  SpectrumReport spectrum;
};

const std::vector<std::string>& suite_ids();
bool is_suite_id(std::string_view id);
std::string_view suite_statement(std::string_view id);

/// Rings are processed on up to `workers` threads (0 = hardware concurrency);
/// results keep corpus order.
std::vector<RingContext> analyze_corpus(const std::vector<CorpusRing>& corpus, unsigned workers, Index cap);

SuiteResult run_suite(std::string_view id, const std::vector<RingContext>& corpus, unsigned workers);

/// Number of k-dimensional subspaces of GF(q)^n containing the span of the
/// first r unit vectors, by enumerating the whole subspace lattice.
std::uint64_t enumerate_subspaces_containing(const FieldDescriptor& field, unsigned n, unsigned r, unsigned k);

enum class OutputFormat { kTable, kJson, kCsv };

void write_results(std::ostream& out, const std::vector<SuiteResult>& results, const std::vector<RingContext>& corpus,
                   OutputFormat format);

}  // namespace ringprob::cli
