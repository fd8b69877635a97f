#include "ringprob/probability.hpp"

#include "ringprob/closedform.hpp"
#include "ringprob/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace ringprob {

ProbFraction ProbFraction::over_square(BigInt hits, Index ring_size) {
  BigInt n = ring_size;
  return ProbFraction{std::move(hits), n * n};
}

std::string ProbFraction::to_string() const { return ringprob::to_string(value()); }

std::string ProbFraction::decimal(int digits) const { return to_decimal(value(), digits); }

ProbFraction ProbFraction::operator*(const ProbFraction& other) const {
  return ProbFraction{hits * other.hits, total * other.total};
}

int delta(const Ring& ring, Index a, Index x) {
  for (Index b = 0; b < ring.size(); ++b) {
    if (ring.mul(a, b) == x) return 1;
  }
  return 0;
}

ProbFraction prob_brute(const Ring& ring, Index x, Index cap) {
  require_enumerable(ring, cap);
  std::uint64_t hits = 0;
  for (Index a = 0; a < ring.size(); ++a) {
    for (Index b = 0; b < ring.size(); ++b) {
      if (ring.mul(a, b) == x) ++hits;
    }
  }
  return ProbFraction::over_square(hits, ring.size());
}

ProbFraction prob_annsum(const Ring& ring, Index x, Index cap) {
  require_enumerable(ring, cap);
  std::uint64_t sum = 0;
  for (Index a = 0; a < ring.size(); ++a) {
    if (delta(ring, a, x) == 0) continue;
    std::uint64_t annihilator = 0;
    for (Index y = 0; y < ring.size(); ++y) {
      if (ring.mul(a, y) == 0) ++annihilator;
    }
    sum += annihilator;
  }
  return ProbFraction::over_square(sum, ring.size());
}

std::vector<std::uint64_t> pair_counts(const Ring& ring, unsigned workers, Index cap) {
  require_enumerable(ring, cap);
  const Index n = ring.size();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<Index>(workers, n));

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n, 0));
  auto count_range = [&ring, n](Index begin, Index end, std::vector<std::uint64_t>& counts) {
    for (Index a = begin; a < end; ++a) {
      for (Index b = 0; b < n; ++b) ++counts[ring.mul(a, b)];
    }
  };
  const Index chunk = (n + workers - 1) / workers;
  if (workers == 1) {
    count_range(0, n, partial[0]);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const Index begin = std::min<Index>(n, w * chunk);
      const Index end = std::min<Index>(n, begin + chunk);
      threads.emplace_back(count_range, begin, end, std::ref(partial[w]));
    }
  }
  std::vector<std::uint64_t> counts(n, 0);
  for (const auto& p : partial) {
    for (Index x = 0; x < n; ++x) counts[x] += p[x];
  }
  return counts;
}

std::vector<std::uint64_t> annsum_counts(const Ring& ring, Index cap) {
  require_enumerable(ring, cap);
  const Index n = ring.size();
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<Index> image;
  std::vector<char> in_image(n, 0);
  for (Index a = 0; a < n; ++a) {
    std::uint64_t annihilator = 0;
    image.clear();
    for (Index b = 0; b < n; ++b) {
      const Index ab = ring.mul(a, b);
      if (ab == 0) ++annihilator;
      if (!in_image[ab]) {
        in_image[ab] = 1;
        image.push_back(ab);
      }
    }
    // Every x in aR has exactly |ann_r(a)| solutions b.
    for (auto x : image) {
      counts[x] += annihilator;
      in_image[x] = 0;
    }
  }
  return counts;
}

std::string class_label(const Ring& ring, const StructureReport& report, Index x) {
  if (x == 0) return "zero";
  if (ring.kind() == RingKind::kMatrix) return "rank " + std::to_string(matrix_rank(ring, x));
  if (report.is_unit(x)) return "unit";
  if (report.is_local && report.is_max_chain && report.n.value_or(0) >= 2) {
    return "layer " + std::to_string(report.radical_layer(x));
  }
  return "zero-divisor";
}

SpectrumReport spectrum(const Ring& ring, const StructureReport& report, unsigned workers, Index cap) {
  SpectrumReport out{ring, pair_counts(ring, workers, cap), {}};
  std::map<std::uint64_t, std::vector<Index>> by_hits;
  for (Index x = 0; x < ring.size(); ++x) by_hits[out.hits[x]].push_back(x);
  for (auto& [hits, members] : by_hits) {
    std::set<std::string> labels;
    for (auto x : members) labels.insert(class_label(ring, report, x));
    std::string label;
    for (const auto& l : labels) label += (label.empty() ? "" : "+") + l;
    SpectrumEntry entry;
    entry.label = std::move(label);
    entry.representative = members.front();
    entry.class_size = members.size();
    entry.prob = ProbFraction::over_square(hits, ring.size());
    entry.members = std::move(members);
    out.entries.push_back(std::move(entry));
  }
  return out;
}

SpectrumReport spectrum(const Ring& ring, unsigned workers, Index cap) {
  require_enumerable(ring, cap);
  return spectrum(ring, classify_local(ring), workers, cap);
}

}  // namespace ringprob
