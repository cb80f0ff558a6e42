#include "fsph/multiindex.hpp"

#include "fsph/core.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace fsph {

MultiIndex sortedIndex(std::vector<int> entries) {
  std::sort(entries.begin(), entries.end());
  return MultiIndex{std::move(entries)};
}

IndexKey keyOf(const MultiIndex& a) {
  IndexKey k = 0;
  for (int c : a.entries) k += keyUnit(c);
  return k;
}

namespace {

void enumerate(int D, int rank, int start, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == rank) {
    out.push_back(MultiIndex{cur});
    return;
  }
  for (int c = start; c < D; ++c) {
    cur.push_back(c);
    enumerate(D, rank, c, cur, out);
    cur.pop_back();
  }
}

}  // namespace

IndexSpace::IndexSpace(int D, int rank) : D_(D), rank_(rank) {
  if (D < 1 || D > 16 || rank < 0 || rank > 15)
    throw ConfigError("index space limited to 1 <= D <= 16, 0 <= rank <= 15");
  std::vector<int> cur;
  enumerate(D, rank, 0, cur, items_);
  keys_.reserve(items_.size());
  mult_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    IndexKey k = keyOf(items_[i]);
    keys_.push_back(k);
    double m = factorial(rank);
    for (int c = 0; c < D; ++c) m /= factorial(countIn(k, c));
    mult_.push_back(m);
    pos_.emplace(k, static_cast<int>(i));
  }
}

int IndexSpace::position(IndexKey key) const {
  // Borrow from a neighbouring nibble means some count went negative.
  int total = 0;
  for (int c = 0; c < 16; ++c) total += countIn(key, c);
  if (total != rank_) return -1;
  auto it = pos_.find(key);
  return it == pos_.end() ? -1 : it->second;
}

std::shared_ptr<const IndexSpace> indexSpace(int D, int rank) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const IndexSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{D, rank}];
  if (!slot) slot = std::make_shared<const IndexSpace>(D, rank);
  return slot;
}

}  // namespace fsph
