#include "riemext/symbol.hpp"

#include <cctype>
#include <mutex>
#include <unordered_set>

namespace riemext {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::unordered_set<std::string> names;  // node-based: element addresses are stable
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  auto [it, inserted] = t.names.emplace(name);
  name_ = &*it;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto c0 = static_cast<unsigned char>(name.front());
  if (!std::isalpha(c0) && c0 != '_') return false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return true;
}

}  // namespace riemext
