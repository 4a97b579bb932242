#pragma once

// Kleene's second algebra on Baire space, with explicit fuel.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "realiz/seqcode.hpp"

namespace realiz {

// A natural number that may not fit in 64 bits. Such numbers only ever show up
// as codes of finite sequences (prefixes whose entries are themselves codes),
// so a large Key stores the sequence rather than the number. The
// representation is canonical: a Key is small whenever its value fits.
class Key {
 public:
  Key(Nat n = 0) : small_(n) {}
  static Key of_seq(std::vector<Key> s);
  static Key of_nats(std::span<const Nat> s);

  bool is_small() const { return !seq_; }
  /// Throws EvaluationFault when the key is large.
  Nat small() const;
  std::vector<Key> as_seq() const;
  std::string str() const;

  bool operator==(const Key& o) const;

  bool odd() const;
  Key times2() const;
  Key times2_plus1() const;
  Key half() const;
  Key inc() const;
  Key dec() const;

 private:
  Nat small_ = 0;
  std::shared_ptr<const std::vector<Key>> seq_;
};

enum class Side { Fst, Snd };

/// A total function N -> N. Values are memoized; copies share the memo.
class Baire {
 public:
  using Oracle = std::function<Nat(const Key&)>;

  Baire();
  explicit Baire(Oracle oracle, std::string label = "fn");

  Nat operator()(Nat n) const { return at(Key(n)); }
  Nat at(const Key& k) const;
  std::vector<Nat> prefix(Nat n) const;
  const std::string& label() const;
  bool same(const Baire& o) const { return impl_ == o.impl_; }

  struct Impl;

 private:
  friend struct BaireAccess;
  std::shared_ptr<Impl> impl_;
};

namespace baire {

Baire constant(Nat c);
Baire zeros();
Baire identity();
Baire successor();
Baire table(std::vector<Nat> values, Nat fallback);
Baire from_function(std::function<Nat(Nat)> f, std::string label = "fn");
/// An element whose value at the code of a finite sequence is given by f.
/// Keys whose entries do not fit in 64 bits get `fallback`.
Baire on_sequences(std::function<Nat(std::span<const Nat>)> f, Nat fallback, std::string label);

Baire cons(Nat n, const Baire& a);
Baire tail(const Baire& a);
Baire pair_fun(const Baire& a, const Baire& b);
Baire proj(const Baire& g, Side side);
Baire pack_seq(std::function<Baire(Nat)> family, std::string label = "pack");
Baire component(const Baire& a, Nat m);

bool equal_to_depth(const Baire& a, const Baire& b, Nat depth);

}  // namespace baire

struct Defined {
  Nat value;
  Nat use;
  bool operator==(const Defined&) const = default;
};

struct FuelExhausted {
  Nat fuel;
  bool operator==(const FuelExhausted&) const = default;
};

using PartialResult = std::variant<Defined, FuelExhausted>;

inline constexpr Nat kDefaultFuel = 4096;

/// alpha(beta): the least n <= fuel with alpha(code(beta-bar n)) != 0.
PartialResult apply_num(const Baire& alpha, const Baire& beta, Nat fuel);
/// alpha(<head> ^ beta), i.e. position `head` of alpha|beta.
PartialResult apply_at(const Baire& alpha, const Key& head, const Baire& beta, Nat fuel);
/// Like apply_at but reading only the given finite prefix of beta; nullopt
/// when the prefix is too short to decide.
std::optional<Defined> apply_at_prefix(const Baire& alpha, const Key& head, std::span<const Nat> beta);
/// alpha|beta, lazily. Forcing an undefined position throws EvaluationFault.
Baire apply_fun(const Baire& alpha, const Baire& beta, Nat fuel = kDefaultFuel);
/// First position below `probe` where alpha|beta is undefined within fuel.
std::optional<Nat> undefined_position(const Baire& alpha, const Baire& beta, Nat probe, Nat fuel);
/// Number of beta positions read by a defined apply_num.
Nat use_trace(const Baire& alpha, const Baire& beta, Nat fuel);

struct ContinuousMap {
  std::string name;
  /// F(input)(n).
  std::function<Nat(const Baire& input, const Key& n)> eval;
  /// Input positions needed for output n; empty when unknown, in which case
  /// the associate measures the use by running eval on a prefix.
  std::function<Nat(const Key& n)> modulus;
};

ContinuousMap pointwise_map(std::string name, std::function<Nat(const Baire&, Nat)> f,
                            std::function<Nat(Nat)> modulus = {});
/// A map whose output does not depend on its input.
ContinuousMap constant_map(std::string name, const Baire& out);

/// Lambda xi. F(xi): phi(<n> ^ s) = 0 while s is too short, else 1 + F(s 0 0 ...)(n).
Baire associate_of(const ContinuousMap& f);

}  // namespace realiz
