// txinfer/fresh.hpp - deterministic placeholder names
#pragma once

#include <atomic>
#include <string>

#include "txinfer/type.hpp"

namespace txinfer {

/// Issues A, B, ..., Z, AA, AB, ... Safe to share between threads; names stay
/// unique, though their order then depends on scheduling.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::size_t start) : next_(start) {}

  std::string next_name() { return alpha_name(next_.fetch_add(1)); }
  Type next() { return Type::tph(next_name()); }
  [[nodiscard]] std::size_t issued() const { return next_.load(); }

 private:
  std::atomic<std::size_t> next_{0};
};

}  // namespace txinfer
