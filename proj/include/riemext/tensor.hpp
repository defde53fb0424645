#pragma once

#include "json.hpp"
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "riemext/expr.hpp"
#include "riemext/zero_test.hpp"

namespace riemext {

/// Ordered list of distinct coordinate symbols.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<Symbol> coords);
  static Chart of(std::initializer_list<std::string_view> names);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Symbol>& coords() const { return coords_; }
  /// 1-based.
  Symbol coord(int i) const { return coords_.at(static_cast<std::size_t>(i - 1)); }
  /// 1-based position of `s`, or 0.
  int position(Symbol s) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Symbol> coords_;
};

enum class Variance { Up, Down };

std::string to_string(Variance v);

/// 1-based index tuple.
using Index = std::vector<int>;

/// Calls f(index) for every tuple of `rank` indices in 1..dim, last index
/// fastest.
void for_each_index(int dim, int rank, const std::function<void(const Index&)>& f);

/// Dense rank-k array of Expressions over a chart. Slots are numbered from 1.
class IndexedTensor {
 public:
  IndexedTensor() = default;
  /// All-zero tensor.
  IndexedTensor(Chart chart, std::vector<Variance> variance);

  static IndexedTensor scalar(Chart chart, Expr value);
  /// delta^i_j, variance (up, down).
  static IndexedTensor identity(Chart chart);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }
  Variance variance(int slot) const;
  std::size_t size() const { return data_.size(); }

  const Expr& operator()(const Index& idx) const { return data_[offset(idx)]; }
  const Expr& at(std::initializer_list<int> idx) const { return (*this)(Index(idx)); }
  void set(const Index& idx, Expr value) { data_[offset(idx)] = std::move(value); }

  /// Flat storage, last index fastest.
  const std::vector<Expr>& data() const { return data_; }
  std::vector<Expr>& data() { return data_; }
  Index index_of(std::size_t offset) const;
  std::size_t offset(const Index& idx) const;

  bool is_zero() const;
  friend bool operator==(const IndexedTensor& a, const IndexedTensor& b);

 private:
  Chart chart_;
  std::vector<Variance> variance_;
  std::vector<Expr> data_;

  void check_slot(int slot) const;
};

/// Sum over the shared index of slots a and b (one up, one down).
IndexedTensor contract(const IndexedTensor& t, int slot_a, int slot_b);

IndexedTensor tensor_add(const IndexedTensor& a, const IndexedTensor& b);
IndexedTensor tensor_sub(const IndexedTensor& a, const IndexedTensor& b);
IndexedTensor tensor_scale(const IndexedTensor& t, const Expr& factor);
/// Variances concatenate: (a slots, then b slots).
IndexedTensor tensor_mul_outer(const IndexedTensor& a, const IndexedTensor& b);

/// Moves slot `from` to position `to`, shifting the slots in between.
IndexedTensor move_slot(const IndexedTensor& t, int from, int to);
/// Slot s of the result is slot perm[s-1] of t (1-based slot numbers).
IndexedTensor permute_slots(const IndexedTensor& t, const std::vector<int>& perm);

/// Contracts slot `slot` (down) with the inverse metric and places the new up
/// index at position `target` of the result (default: where it was).
IndexedTensor raise_index(const IndexedTensor& t, int slot, const IndexedTensor& g_inv,
                          int target = 0);
/// Contracts slot `slot` (up) with the metric. With t = R^m_{ijl}, slot 1 and
/// target 3, this is R_{ijkl} = g_{mk} R^m_{ijl}.
IndexedTensor lower_index(const IndexedTensor& t, int slot, const IndexedTensor& g, int target = 0);

IndexedTensor map_components(const IndexedTensor& t, const std::function<Expr(const Expr&)>& f);

/// Componentwise zero test with the component label filled in.
ZeroVerdict is_zero(const IndexedTensor& t, const ZeroTestOptions& options = {});

/// Symmetry checks on slot pairs. The assert_ forms throw SymmetryError
/// naming the first offending component.
bool is_symmetric(const IndexedTensor& t, int slot_a, int slot_b);
bool is_antisymmetric(const IndexedTensor& t, int slot_a, int slot_b);
void assert_symmetric(const IndexedTensor& t, int slot_a, int slot_b);
void assert_antisymmetric(const IndexedTensor& t, int slot_a, int slot_b);

/// "[1,2]"
std::string index_label(const Index& idx);

/// {"variance": [...], "dim": n, "components": {"[i,j]": "text"}} with zero
/// components omitted and keys in index order.
nlohmann::ordered_json to_json(const IndexedTensor& t);

}  // namespace riemext
