#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace riemext {

/// Interned symbol name. Two symbols with the same spelling share storage, so
/// equality is a pointer compare; ordering is lexicographic on the name, which
/// keeps every canonical form independent of interning order.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  const std::string& name() const { return *name_; }
  bool valid() const { return name_ != nullptr; }

  friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    if (!a.name_) return std::strong_ordering::less;
    if (!b.name_) return std::strong_ordering::greater;
    return a.name_->compare(*b.name_) <=> 0;
  }

  std::size_t hash() const { return std::hash<const void*>{}(name_); }

 private:
  const std::string* name_ = nullptr;
};

bool is_identifier(std::string_view name);

}  // namespace riemext

template <>
struct std::hash<riemext::Symbol> {
  std::size_t operator()(riemext::Symbol s) const noexcept { return s.hash(); }
};
