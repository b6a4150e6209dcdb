#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

namespace streopt {

using Vertex = int;

// Exact edge weight. Decimal inputs are scaled to integers at parse time, the
// scale lives on the instance (see StpInstance::decimals).
using Cost = std::int64_t;

using Ratio = boost::rational<std::int64_t>;

inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

// Undirected weighted edge, stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Cost cost = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b, Cost cost) {
  return a < b ? Edge{a, b, cost} : Edge{b, a, cost};
}

// The fixed scan order used by forest addition: ascending (min id, max id).
inline bool canonical_less(const Edge& a, const Edge& b) {
  return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

inline Cost total_cost(std::span<const Edge> edges) {
  Cost sum = 0;
  for (const Edge& e : edges) sum += e.cost;
  return sum;
}

// Membership set over vertex ids 0..n-1 with a sorted item list.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(int universe, std::span<const Vertex> items) : mask_(universe, 0) {
    for (Vertex v : items) insert(v);
  }

  void insert(Vertex v) {
    if (v >= static_cast<Vertex>(mask_.size())) mask_.resize(v + 1, 0);
    if (mask_[v]) return;
    mask_[v] = 1;
    items_.insert(std::lower_bound(items_.begin(), items_.end(), v), v);
  }

  void erase(Vertex v) {
    if (!contains(v)) return;
    mask_[v] = 0;
    items_.erase(std::lower_bound(items_.begin(), items_.end(), v));
  }

  bool contains(Vertex v) const {
    return v >= 0 && v < static_cast<Vertex>(mask_.size()) && mask_[v] != 0;
  }

  const std::vector<Vertex>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<char> mask_;
  std::vector<Vertex> items_;
};

// Renders an integer-scaled cost as a decimal with exactly `decimals` digits.
std::string format_cost(Cost cost, int decimals);

std::string format_ratio(const Ratio& r);

}  // namespace streopt
