#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace fsph {

// Sorted index tuple. Entries are 0-based internally (0..D-1); JSON and the
// CLI use 1-based labels.
struct MultiIndex {
  std::vector<int> entries;

  int rank() const { return static_cast<int>(entries.size()); }
  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex sortedIndex(std::vector<int> entries);

// Occupation numbers packed 4 bits per index value. Limits: D <= 16, rank <= 15.
using IndexKey = std::uint64_t;

IndexKey keyOf(const MultiIndex& a);
inline IndexKey keyUnit(int c) { return IndexKey{1} << (4 * c); }
inline int countIn(IndexKey key, int c) { return static_cast<int>((key >> (4 * c)) & 0xF); }

// All sorted multi-indices of given rank over D values, in lexicographic order.
class IndexSpace {
 public:
  IndexSpace(int D, int rank);

  int dim() const { return D_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(items_.size()); }
  const MultiIndex& operator[](int i) const { return items_[i]; }
  IndexKey key(int i) const { return keys_[i]; }
  // Number of distinct orderings of the tuple, l!/prod(n_c!).
  double multiplicity(int i) const { return mult_[i]; }
  // -1 if absent (e.g. a negative count after subtraction).
  int position(IndexKey key) const;
  int position(const MultiIndex& a) const { return position(keyOf(a)); }

 private:
  int D_;
  int rank_;
  std::vector<MultiIndex> items_;
  std::vector<IndexKey> keys_;
  std::vector<double> mult_;
  std::unordered_map<IndexKey, int> pos_;
};

// Process-wide cache; spaces are immutable once built.
std::shared_ptr<const IndexSpace> indexSpace(int D, int rank);

}  // namespace fsph
