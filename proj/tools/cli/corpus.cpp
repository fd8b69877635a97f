#include "corpus.hpp"

#include "ringprob/error.hpp"
#include "ringprob/ringspec.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace ringprob::cli {

const std::vector<std::string>& default_corpus_specs() {
  static const std::vector<std::string> specs = {
      "Z2",          "Z3",          "Z4",         "Z6",          "Z8",
      "Z9",          "Z12",         "Z27",        "GF2",         "GF3",
      "GF4",         "GF9",         "chain(2,2)", "chain(2,3)",  "chain(3,2)",
      "chain(3,3)",  "GR(2,2,2)",   "M1(GF2)",    "M2(GF2)",     "M2(GF3)",
      "M3(GF2)",     "triv(2,1)",   "triv(2,2)",  "triv(2,3)",   "triv(3,2)",
      "Z2 x Z4",     "Z2 x M2(GF2)", "table:upper_triangular_f2.json",
  };
  return specs;
}

std::vector<CorpusRing> load_corpus(const std::string& which) {
  std::vector<std::string> specs;
  if (which == "default") {
    specs = default_corpus_specs();
  } else {
    std::ifstream in(which);
    if (!in) fail(ErrorCode::kValidationError, "cannot open corpus file '" + which + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kValidationError, std::string("corpus file: ") + e.what());
    }
    if (!doc.is_array()) fail(ErrorCode::kValidationError, "corpus file must hold a JSON array of ring specs");
    for (const auto& item : doc) {
      if (!item.is_string()) fail(ErrorCode::kValidationError, "corpus entries must be strings");
      specs.push_back(item.get<std::string>());
    }
  }
  std::vector<CorpusRing> corpus;
  corpus.reserve(specs.size());
  for (const auto& spec : specs) corpus.push_back({spec, parse_ring_spec(spec)});
  return corpus;
}

}  // namespace ringprob::cli
