#pragma once

// Registry of primitive recursive function symbols usable in `(app <sym> ...)`.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realiz/seqcode.hpp"

namespace realiz {

using SymbolId = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity;
  std::function<Nat(std::span<const Nat>)> eval;
  std::string summary;
};

class SymbolTable {
 public:
  /// The fixed table of built-in symbols. Immutable after first use.
  static const SymbolTable& builtin();

  std::optional<SymbolId> find(std::string_view name) const;
  /// Like find, but throws InvalidArgument for unknown names.
  SymbolId id(std::string_view name) const;
  const Symbol& at(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  Nat apply(SymbolId id, std::span<const Nat> args) const;

 private:
  SymbolTable();
  void add(std::string name, std::size_t arity, std::function<Nat(std::span<const Nat>)> eval,
           std::string summary);
  std::vector<Symbol> symbols_;
};

// Cantor pairing, used by the rational coding.
Nat cantor_pair(Nat a, Nat b);
std::pair<Nat, Nat> cantor_unpair(Nat z);

// Rationals are coded as cantor_pair(zigzag(num), den - 1), zigzag(k) = 2k for
// k >= 0 and -2k - 1 for k < 0. Any code denotes some rational (not
// necessarily in lowest terms).
Nat encode_rational(std::int64_t num, std::uint64_t den);
std::pair<std::int64_t, std::uint64_t> decode_rational(Nat code);

}  // namespace realiz
