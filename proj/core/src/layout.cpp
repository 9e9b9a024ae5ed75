#include "ecot/layout.hpp"

#include <algorithm>

#include "ecot/errors.hpp"

namespace ecot {

Layout Layout::coupling(int T) {
  std::vector<Entry> e;
  e.reserve(2 * static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) e.push_back({Role::Input, t});
  for (int t = 1; t <= T; ++t) e.push_back({Role::Output, t});
  return Layout(std::move(e));
}

Layout Layout::marginal(Role role, int T) {
  std::vector<Entry> e;
  e.reserve(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) e.push_back({role, t});
  return Layout(std::move(e));
}

int Layout::index_of(Role role, int t) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].role == role && entries_[i].t == t) return static_cast<int>(i);
  throw DimensionMismatch("layout has no coordinate for requested (role, t)");
}

bool Layout::contains(Role role, int t) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.role == role && e.t == t; });
}

int Layout::horizon() const {
  int T = 0;
  for (const auto& e : entries_) T = std::max(T, e.t);
  return T;
}

bool Layout::is_full_coupling() const {
  const int T = horizon();
  if (entries_.size() != 2 * static_cast<std::size_t>(T)) return false;
  for (int t = 1; t <= T; ++t)
    if (!contains(Role::Input, t) || !contains(Role::Output, t)) return false;
  return true;
}

std::vector<int> Layout::interleaved_order() const {
  if (!is_full_coupling())
    throw DimensionMismatch("interleaved order requires a full coupling layout");
  const int T = horizon();
  std::vector<int> order;
  order.reserve(entries_.size());
  for (int t = 1; t <= T; ++t) {
    order.push_back(index_of(Role::Input, t));
    order.push_back(index_of(Role::Output, t));
  }
  return order;
}

Layout Layout::select(const std::vector<int>& indices) const {
  std::vector<Entry> e;
  e.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= entries_.size())
      throw DimensionMismatch("layout select index out of range");
    e.push_back(entries_[static_cast<std::size_t>(i)]);
  }
  return Layout(std::move(e));
}

std::vector<int> input_indices(int T, int t_first, int t_last) {
  (void)T;
  std::vector<int> idx;
  for (int t = t_first; t <= t_last; ++t) idx.push_back(t - 1);
  return idx;
}

std::vector<int> output_indices(int T, int t_first, int t_last) {
  std::vector<int> idx;
  for (int t = t_first; t <= t_last; ++t) idx.push_back(T + t - 1);
  return idx;
}

}  // namespace ecot
