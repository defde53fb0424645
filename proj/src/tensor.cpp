#include "riemext/tensor.hpp"

#include <algorithm>
#include <set>

#include "riemext/render.hpp"

namespace riemext {

Chart::Chart(std::vector<Symbol> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ShapeError("chart needs at least one coordinate");
  std::set<Symbol> seen;
  for (Symbol s : coords_) {
    if (!s.valid()) throw ShapeError("invalid coordinate symbol");
    if (!seen.insert(s).second) throw ShapeError("duplicate coordinate '" + s.name() + "'");
  }
}

Chart Chart::of(std::initializer_list<std::string_view> names) {
  std::vector<Symbol> coords;
  for (auto n : names) coords.emplace_back(n);
  return Chart(std::move(coords));
}

int Chart::position(Symbol s) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == s) return static_cast<int>(i) + 1;
  return 0;
}

std::string to_string(Variance v) { return v == Variance::Up ? "up" : "down"; }

void for_each_index(int dim, int rank, const std::function<void(const Index&)>& f) {
  Index idx(static_cast<std::size_t>(rank), 1);
  if (dim < 1) return;
  while (true) {
    f(idx);
    int s = rank - 1;
    while (s >= 0 && idx[s] == dim) idx[s--] = 1;
    if (s < 0) return;
    ++idx[s];
  }
}

IndexedTensor::IndexedTensor(Chart chart, std::vector<Variance> variance)
    : chart_(std::move(chart)), variance_(std::move(variance)) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < variance_.size(); ++i) n *= static_cast<std::size_t>(chart_.dim());
  data_.resize(n);
}

IndexedTensor IndexedTensor::scalar(Chart chart, Expr value) {
  IndexedTensor t(std::move(chart), {});
  t.data_[0] = std::move(value);
  return t;
}

IndexedTensor IndexedTensor::identity(Chart chart) {
  IndexedTensor t(std::move(chart), {Variance::Up, Variance::Down});
  for (int i = 1; i <= t.dim(); ++i) t.set({i, i}, 1);
  return t;
}

void IndexedTensor::check_slot(int slot) const {
  if (slot < 1 || slot > rank())
    throw ShapeError("slot " + std::to_string(slot) + " out of range for rank " +
                     std::to_string(rank()));
}

Variance IndexedTensor::variance(int slot) const {
  check_slot(slot);
  return variance_[static_cast<std::size_t>(slot - 1)];
}

std::size_t IndexedTensor::offset(const Index& idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw ShapeError("index " + index_label(idx) + " has wrong length for rank " +
                     std::to_string(rank()));
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 1 || i > dim()) throw ShapeError("index " + index_label(idx) + " out of range");
    off = off * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i - 1);
  }
  return off;
}

Index IndexedTensor::index_of(std::size_t off) const {
  Index idx(variance_.size());
  auto n = static_cast<std::size_t>(dim());
  for (std::size_t s = idx.size(); s-- > 0;) {
    idx[s] = static_cast<int>(off % n) + 1;
    off /= n;
  }
  return idx;
}

bool IndexedTensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

bool operator==(const IndexedTensor& a, const IndexedTensor& b) {
  return a.chart_ == b.chart_ && a.variance_ == b.variance_ && a.data_ == b.data_;
}

namespace {

void require_same_shape(const IndexedTensor& a, const IndexedTensor& b, const char* what) {
  if (!(a.chart() == b.chart())) throw ShapeError(std::string(what) + ": charts differ");
  if (a.variance() != b.variance()) throw ShapeError(std::string(what) + ": variances differ");
}

}  // namespace

IndexedTensor contract(const IndexedTensor& t, int a, int b) {
  if (a == b) throw ShapeError("contract: slots must be distinct");
  if (t.variance(a) == t.variance(b)) throw ShapeError("contract: needs one up and one down slot");
  if (a > b) std::swap(a, b);
  std::vector<Variance> var;
  for (int s = 1; s <= t.rank(); ++s)
    if (s != a && s != b) var.push_back(t.variance(s));
  IndexedTensor out(t.chart(), var);
  Index full(static_cast<std::size_t>(t.rank()));
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index idx = out.index_of(off);
    for (int s = 1, k = 0; s <= t.rank(); ++s)
      if (s != a && s != b) full[s - 1] = idx[k++];
    Expr sum;
    for (int m = 1; m <= t.dim(); ++m) {
      full[a - 1] = full[b - 1] = m;
      sum += t(full);
    }
    out.data()[off] = std::move(sum);
  }
  return out;
}

IndexedTensor tensor_add(const IndexedTensor& a, const IndexedTensor& b) {
  require_same_shape(a, b, "tensor_add");
  IndexedTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

IndexedTensor tensor_sub(const IndexedTensor& a, const IndexedTensor& b) {
  require_same_shape(a, b, "tensor_sub");
  IndexedTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

IndexedTensor tensor_scale(const IndexedTensor& t, const Expr& factor) {
  return map_components(t, [&](const Expr& e) { return e * factor; });
}

IndexedTensor tensor_mul_outer(const IndexedTensor& a, const IndexedTensor& b) {
  if (!(a.chart() == b.chart())) throw ShapeError("tensor_mul_outer: charts differ");
  auto var = a.variance();
  var.insert(var.end(), b.variance().begin(), b.variance().end());
  IndexedTensor out(a.chart(), var);
  std::size_t k = 0;
  for (const Expr& x : a.data())
    for (const Expr& y : b.data()) out.data()[k++] = (x.is_zero() || y.is_zero()) ? Expr() : x * y;
  return out;
}

IndexedTensor permute_slots(const IndexedTensor& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.rank()) throw ShapeError("permute_slots: wrong length");
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < t.rank(); ++i)
    if (check[i] != i + 1) throw ShapeError("permute_slots: not a permutation");
  std::vector<Variance> var;
  for (int p : perm) var.push_back(t.variance(p));
  IndexedTensor out(t.chart(), var);
  Index src(perm.size());
  for (std::size_t off = 0; off < out.size(); ++off) {
    Index idx = out.index_of(off);
    for (std::size_t s = 0; s < perm.size(); ++s) src[perm[s] - 1] = idx[s];
    out.data()[off] = t(src);
  }
  return out;
}

IndexedTensor move_slot(const IndexedTensor& t, int from, int to) {
  if (from < 1 || from > t.rank() || to < 1 || to > t.rank())
    throw ShapeError("move_slot: slot out of range");
  std::vector<int> order;
  for (int s = 1; s <= t.rank(); ++s)
    if (s != from) order.push_back(s);
  order.insert(order.begin() + (to - 1), from);
  return permute_slots(t, order);
}

namespace {

// Contracts slot `slot` of t with the first slot of the rank-2 tensor m; the
// new free index (m's second slot) lands at `target`.
IndexedTensor apply_metric(const IndexedTensor& t, int slot, const IndexedTensor& m, int target,
                           Variance from, const char* what) {
  if (t.variance(slot) != from)
    throw ShapeError(std::string(what) + ": slot " + std::to_string(slot) + " is " +
                     to_string(t.variance(slot)));
  if (m.rank() != 2 || !(m.chart() == t.chart()))
    throw ShapeError(std::string(what) + ": metric shape mismatch");
  if (target == 0) target = slot;
  if (target < 1 || target > t.rank()) throw ShapeError(std::string(what) + ": target out of range");
  Variance to = from == Variance::Up ? Variance::Down : Variance::Up;

  std::vector<Variance> var = t.variance();
  var[slot - 1] = to;
  IndexedTensor out(t.chart(), var);
  int n = t.dim();
  Index src;
  for (std::size_t off = 0; off < out.size(); ++off) {
    src = out.index_of(off);
    int free = src[slot - 1];
    Expr sum;
    for (int a = 1; a <= n; ++a) {
      const Expr& w = m({a, free});
      if (w.is_zero()) continue;
      src[slot - 1] = a;
      const Expr& c = t(src);
      if (!c.is_zero()) sum += w * c;
    }
    out.data()[off] = std::move(sum);
  }
  return target == slot ? out : move_slot(out, slot, target);
}

}  // namespace

IndexedTensor raise_index(const IndexedTensor& t, int slot, const IndexedTensor& g_inv, int target) {
  return apply_metric(t, slot, g_inv, target, Variance::Down, "raise_index");
}

IndexedTensor lower_index(const IndexedTensor& t, int slot, const IndexedTensor& g, int target) {
  return apply_metric(t, slot, g, target, Variance::Up, "lower_index");
}

IndexedTensor map_components(const IndexedTensor& t, const std::function<Expr(const Expr&)>& f) {
  IndexedTensor out = t;
  for (auto& e : out.data()) e = f(e);
  return out;
}

std::string index_label(const Index& idx) {
  std::string s = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + "]";
}

ZeroVerdict is_zero(const IndexedTensor& t, const ZeroTestOptions& options) {
  ZeroVerdict unknown{Verdict::Unknown, std::nullopt, 0.0, {}};
  bool any_unknown = false;
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (t.data()[off].is_zero()) continue;
    ZeroVerdict v = is_zero(t.data()[off], options);
    if (v.verdict == Verdict::Zero) continue;
    v.location = index_label(t.index_of(off));
    if (v.verdict == Verdict::NonZero) return v;
    if (!any_unknown) unknown = v;
    any_unknown = true;
  }
  if (any_unknown) return unknown;
  return ZeroVerdict{Verdict::Zero, std::nullopt, 0.0, {}};
}

namespace {

template <typename Pred>
std::optional<Index> first_violation(const IndexedTensor& t, int a, int b, Pred ok) {
  if (a == b || a < 1 || b < 1 || a > t.rank() || b > t.rank())
    throw ShapeError("symmetry check: bad slot pair");
  for (std::size_t off = 0; off < t.size(); ++off) {
    Index idx = t.index_of(off);
    if (idx[a - 1] >= idx[b - 1]) continue;
    Index sw = idx;
    std::swap(sw[a - 1], sw[b - 1]);
    if (!ok(t(idx), t(sw))) return idx;
  }
  // Antisymmetry also constrains the diagonal.
  for (std::size_t off = 0; off < t.size(); ++off) {
    Index idx = t.index_of(off);
    if (idx[a - 1] == idx[b - 1] && !ok(t(idx), t(idx))) return idx;
  }
  return std::nullopt;
}

std::string slots(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

bool is_symmetric(const IndexedTensor& t, int a, int b) {
  return !first_violation(t, a, b, [](const Expr& x, const Expr& y) { return x == y; });
}

bool is_antisymmetric(const IndexedTensor& t, int a, int b) {
  return !first_violation(t, a, b, [](const Expr& x, const Expr& y) { return x == -y; });
}

void assert_symmetric(const IndexedTensor& t, int a, int b) {
  auto bad = first_violation(t, a, b, [](const Expr& x, const Expr& y) { return x == y; });
  if (bad)
    throw SymmetryError("not symmetric in slots " + slots(a, b) + " at component " +
                        index_label(*bad));
}

void assert_antisymmetric(const IndexedTensor& t, int a, int b) {
  auto bad = first_violation(t, a, b, [](const Expr& x, const Expr& y) { return x == -y; });
  if (bad)
    throw SymmetryError("not antisymmetric in slots " + slots(a, b) + " at component " +
                        index_label(*bad));
}

nlohmann::ordered_json to_json(const IndexedTensor& t) {
  nlohmann::ordered_json j;
  j["variance"] = nlohmann::ordered_json::array();
  for (Variance v : t.variance()) j["variance"].push_back(to_string(v));
  j["dim"] = t.dim();
  nlohmann::ordered_json comps = nlohmann::ordered_json::object();
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (t.data()[off].is_zero()) continue;
    comps[index_label(t.index_of(off))] = render(t.data()[off]);
  }
  j["components"] = std::move(comps);
  return j;
}

}  // namespace riemext
