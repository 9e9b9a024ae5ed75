#pragma once

#include <cstddef>
#include <vector>

namespace ecot {

/// Role of a coordinate in a joint law over an input-output pair of processes.
enum class Role { Input, Output };

/// Maps each coordinate of a mean/covariance to a (role, time step) pair.
///
/// Couplings are stored in block order (U_1..U_T, Y_1..Y_T); the interleaved
/// temporal order (u_1, y_1, u_2, y_2, ...) is a permutation view computed
/// from the layout, never a second storage format.
class Layout {
public:
  struct Entry {
    Role role;
    int t;  // 1-based time step
    bool operator==(const Entry&) const = default;
  };

  Layout() = default;
  explicit Layout(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  /// Block-ordered coupling layout: U_1..U_T then Y_1..Y_T.
  static Layout coupling(int T);
  /// Single-process marginal layout: role_1..role_T.
  static Layout marginal(Role role, int T);

  std::size_t size() const { return entries_.size(); }
  const Entry& at(std::size_t i) const { return entries_[i]; }

  /// Storage index of a (role, t) coordinate; throws if absent.
  int index_of(Role role, int t) const;
  bool contains(Role role, int t) const;

  /// Horizon: the largest time step present.
  int horizon() const;

  /// True when the layout covers each (role, t) for both roles, t=1..T.
  bool is_full_coupling() const;

  /// Storage indices listed in interleaved temporal order (u_1, y_1, u_2, ...).
  /// Requires a full coupling layout.
  std::vector<int> interleaved_order() const;

  /// Sub-layout restricted to the given storage indices (in the given order).
  Layout select(const std::vector<int>& indices) const;

  bool operator==(const Layout&) const = default;

private:
  std::vector<Entry> entries_;
};

/// Storage indices of U_1..U_t within a block-ordered coupling of horizon T.
std::vector<int> input_indices(int T, int t_first, int t_last);
/// Storage indices of Y_1..Y_t within a block-ordered coupling of horizon T.
std::vector<int> output_indices(int T, int t_first, int t_last);

}  // namespace ecot
