#pragma once

#include "ringprob/ring.hpp"

#include <string>
#include <vector>

namespace ringprob::cli {

struct CorpusRing {
  std::string spec;
  Ring ring;
};

/// Ring specs of the built-in corpus, in output order.
const std::vector<std::string>& default_corpus_specs();

/// "default", or the path of a JSON array of ring specs.
std::vector<CorpusRing> load_corpus(const std::string& which);

}  // namespace ringprob::cli
