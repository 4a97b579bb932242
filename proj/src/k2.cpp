#include "realiz/k2.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "realiz/errors.hpp"

namespace realiz {

namespace {

constexpr Nat kMax = std::numeric_limits<Nat>::max();

std::vector<Key> bump_first(std::vector<Key> s, bool up) {
  Key& h = s.at(0);
  if (up) {
    h = h.inc();
  } else {
    if (h == Key(0)) throw InvalidArgument("bump_first: entry is zero");
    h = h.dec();
  }
  return s;
}

std::vector<Key> zeros_then(Nat count, const std::vector<Key>& rest) {
  std::vector<Key> out(count, Key(0));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

Key Key::of_seq(std::vector<Key> s) {
  bool all_small = true;
  std::vector<Nat> nats;
  for (const auto& k : s) {
    if (!k.is_small()) {
      all_small = false;
      break;
    }
    nats.push_back(k.small_);
  }
  if (all_small)
    if (auto c = seq::encode(nats)) return Key(*c);
  Key k;
  k.seq_ = std::make_shared<const std::vector<Key>>(std::move(s));
  return k;
}

Key Key::of_nats(std::span<const Nat> s) {
  if (auto c = seq::encode(s)) return Key(*c);
  return of_seq(std::vector<Key>(s.begin(), s.end()));
}

Nat Key::small() const {
  if (seq_) throw EvaluationFault(kMax, "index " + str() + " does not fit in 64 bits");
  return small_;
}

std::vector<Key> Key::as_seq() const {
  if (seq_) return *seq_;
  auto d = seq::decode(small_);
  return std::vector<Key>(d.begin(), d.end());
}

std::string Key::str() const {
  if (!seq_) return std::to_string(small_);
  std::string out = "<";
  for (std::size_t i = 0; i < seq_->size(); ++i) {
    if (i) out += ",";
    out += (*seq_)[i].str();
  }
  return out + ">";
}

bool Key::operator==(const Key& o) const {
  if (is_small() != o.is_small()) return false;
  if (is_small()) return small_ == o.small_;
  return *seq_ == *o.seq_;
}

// A large key is the code of a nonempty sequence s; code(s) is odd iff s0 = 0.
bool Key::odd() const { return seq_ ? (*seq_)[0] == Key(0) : (small_ & 1) != 0; }

Key Key::times2() const {
  if (!seq_ && small_ <= kMax / 2) return Key(small_ * 2);
  auto s = as_seq();
  if (s.empty()) return Key(0);
  return of_seq(bump_first(std::move(s), true));
}

Key Key::times2_plus1() const {
  if (!seq_ && small_ < kMax / 2) return Key(small_ * 2 + 1);
  auto s = as_seq();
  s.insert(s.begin(), Key(0));
  return of_seq(std::move(s));
}

Key Key::half() const {
  if (!seq_) return Key(small_ / 2);
  auto s = *seq_;
  if (s[0] == Key(0)) return of_seq(std::vector<Key>(s.begin() + 1, s.end()));
  return of_seq(bump_first(std::move(s), false));
}

Key Key::inc() const {
  if (!seq_ && small_ < kMax) return Key(small_ + 1);
  auto s = as_seq();
  if (!(s[0] == Key(0))) {
    s = bump_first(std::move(s), false);
    s.insert(s.begin(), Key(0));
    return of_seq(std::move(s));
  }
  // s = 0^r t with t0 >= 1 or t empty; code(s) + 1 = <r> t with t0 - 1.
  std::size_t r = 0;
  while (r < s.size() && s[r] == Key(0)) ++r;
  std::vector<Key> t(s.begin() + r, s.end());
  std::vector<Key> out{Key(r)};
  if (!t.empty()) {
    t = bump_first(std::move(t), false);
    out.insert(out.end(), t.begin(), t.end());
  }
  return of_seq(std::move(out));
}

Key Key::dec() const {
  if (!seq_) {
    if (small_ == 0) throw InvalidArgument("Key::dec: zero has no predecessor");
    return Key(small_ - 1);
  }
  const auto& s = *seq_;
  std::vector<Key> rest(s.begin() + 1, s.end());
  if (!rest.empty()) rest = bump_first(std::move(rest), true);
  if (s[0] == Key(0)) return of_seq(std::move(rest));
  return of_seq(zeros_then(s[0].small(), rest));
}

namespace {

// k + 1 = 2^m (2j + 1).
std::pair<Nat, Key> split_pow2(const Key& k) {
  Key t = k.inc();
  if (t.is_small()) {
    Nat v = t.small();
    Nat m = static_cast<Nat>(__builtin_ctzll(v));
    return {m, Key((v >> m) / 2)};
  }
  auto s = t.as_seq();
  Nat m = s[0].small();
  return {m, Key::of_seq(std::vector<Key>(s.begin() + 1, s.end()))};
}

enum class Shape { Opaque, Pair, Cons, Pack, Assoc };

}  // namespace

struct Baire::Impl {
  Oracle oracle;
  std::string label;
  std::mutex mu;
  std::unordered_map<Nat, Nat> memo;
  Shape shape = Shape::Opaque;
  std::vector<Baire> parts;
  std::function<Baire(Nat)> family;
  std::shared_ptr<const ContinuousMap> map;
};

struct BaireAccess {
  static Baire make(Baire::Oracle o, std::string label, Shape shape, std::vector<Baire> parts = {},
                    std::function<Baire(Nat)> family = {}) {
    Baire b(std::move(o), std::move(label));
    b.impl_->shape = shape;
    b.impl_->parts = std::move(parts);
    b.impl_->family = std::move(family);
    return b;
  }
  static const Baire::Impl& impl(const Baire& b) { return *b.impl_; }
  static void set_map(Baire& b, ContinuousMap m) {
    b.impl_->shape = Shape::Assoc;
    b.impl_->map = std::make_shared<const ContinuousMap>(std::move(m));
  }
};

Baire::Baire() : Baire([](const Key&) -> Nat { return 0; }, "0") {}

Baire::Baire(Oracle oracle, std::string label) : impl_(std::make_shared<Impl>()) {
  impl_->oracle = std::move(oracle);
  impl_->label = std::move(label);
}

Nat Baire::at(const Key& k) const {
  if (!k.is_small()) return impl_->oracle(k);
  Nat n = k.small();
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->memo.find(n);
    if (it != impl_->memo.end()) return it->second;
  }
  Nat v = impl_->oracle(k);
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->memo.emplace(n, v);
  return v;
}

std::vector<Nat> Baire::prefix(Nat n) const {
  std::vector<Nat> out;
  out.reserve(n);
  for (Nat i = 0; i < n; ++i) out.push_back((*this)(i));
  return out;
}

const std::string& Baire::label() const { return impl_->label; }

namespace baire {

Baire constant(Nat c) {
  return Baire([c](const Key&) { return c; }, "const " + std::to_string(c));
}

Baire zeros() { return constant(0); }

Baire identity() {
  return Baire([](const Key& k) { return k.small(); }, "id");
}

Baire successor() {
  return Baire([](const Key& k) { return arith::add(k.small(), 1); }, "succ");
}

Baire table(std::vector<Nat> values, Nat fallback) {
  return Baire(
      [values = std::move(values), fallback](const Key& k) {
        if (!k.is_small() || k.small() >= values.size()) return fallback;
        return values[k.small()];
      },
      "table");
}

Baire from_function(std::function<Nat(Nat)> f, std::string label) {
  return Baire([f = std::move(f)](const Key& k) { return f(k.small()); }, std::move(label));
}

Baire on_sequences(std::function<Nat(std::span<const Nat>)> f, Nat fallback, std::string label) {
  return Baire(
      [f = std::move(f), fallback](const Key& k) {
        std::vector<Nat> s;
        for (const auto& e : k.as_seq()) {
          if (!e.is_small()) return fallback;
          s.push_back(e.small());
        }
        return f(s);
      },
      std::move(label));
}

Baire cons(Nat n, const Baire& a) {
  return BaireAccess::make([n, a](const Key& k) { return k == Key(0) ? n : a.at(k.dec()); },
                           "cons(" + std::to_string(n) + "," + a.label() + ")", Shape::Cons, {a});
}

Baire tail(const Baire& a) {
  const auto& impl = BaireAccess::impl(a);
  if (impl.shape == Shape::Cons) return impl.parts[0];
  return Baire([a](const Key& k) { return a.at(k.inc()); }, "tail(" + a.label() + ")");
}

Baire pair_fun(const Baire& a, const Baire& b) {
  return BaireAccess::make([a, b](const Key& k) { return k.odd() ? b.at(k.half()) : a.at(k.half()); },
                           "<" + a.label() + "," + b.label() + ">", Shape::Pair, {a, b});
}

Baire proj(const Baire& g, Side side) {
  const auto& impl = BaireAccess::impl(g);
  if (impl.shape == Shape::Pair) return impl.parts[side == Side::Fst ? 0 : 1];
  if (side == Side::Fst) return Baire([g](const Key& k) { return g.at(k.times2()); }, "fst " + g.label());
  return Baire([g](const Key& k) { return g.at(k.times2_plus1()); }, "snd " + g.label());
}

Baire pack_seq(std::function<Baire(Nat)> family, std::string label) {
  struct Cache {
    std::mutex mu;
    std::unordered_map<Nat, Baire> members;
  };
  auto cache = std::make_shared<Cache>();
  std::function<Baire(Nat)> cached = [family = std::move(family), cache](Nat m) {
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->members.find(m);
      if (it != cache->members.end()) return it->second;
    }
    Baire b = family(m);
    std::lock_guard<std::mutex> lock(cache->mu);
    return cache->members.emplace(m, b).first->second;
  };
  return BaireAccess::make(
      [cached](const Key& k) {
        auto [m, j] = split_pow2(k);
        return cached(m).at(j);
      },
      std::move(label), Shape::Pack, {}, cached);
}

Baire component(const Baire& a, Nat m) {
  const auto& impl = BaireAccess::impl(a);
  if (impl.shape == Shape::Pack) return impl.family(m);
  return Baire(
      [a, m](const Key& k) {
        Key idx = k.times2_plus1();
        for (Nat i = 0; i < m; ++i) idx = idx.times2();
        return a.at(idx.dec());
      },
      a.label() + "_" + std::to_string(m));
}

bool equal_to_depth(const Baire& a, const Baire& b, Nat depth) {
  for (Nat i = 0; i < depth; ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace baire

namespace {

// Code of a growing prefix, kept as a number while it fits.
class PrefixKey {
 public:
  void push(const Key& k) {
    items_.push_back(k);
    if (code_ && k.is_small()) {
      code_ = seq::snoc(*code_, k.small());
    } else {
      code_.reset();
    }
  }
  Key key() const { return code_ ? Key(*code_) : Key::of_seq(items_); }

 private:
  std::vector<Key> items_;
  std::optional<Nat> code_ = Nat{0};
};

}  // namespace

namespace {

std::optional<PartialResult> apply_assoc(const Baire& alpha, const Key& head, std::function<Nat(Nat)> input,
                                         Nat available, Nat fuel);

}  // namespace

PartialResult apply_num(const Baire& alpha, const Baire& beta, Nat fuel) {
  if (fuel > 0 && BaireAccess::impl(alpha).shape == Shape::Assoc)
    return apply_at(alpha, Key(beta(0)), baire::tail(beta), fuel);
  PrefixKey p;
  for (Nat n = 0;; ++n) {
    Nat v = alpha.at(p.key());
    if (v != 0) return Defined{v - 1, n};
    if (n == fuel) return FuelExhausted{fuel};
    p.push(Key(beta(n)));
  }
}

PartialResult apply_at(const Baire& alpha, const Key& head, const Baire& beta, Nat fuel) {
  if (auto r = apply_assoc(alpha, head, [beta](Nat i) { return beta(i); }, kMax, fuel)) return *r;
  PrefixKey p;
  for (Nat n = 0;; ++n) {
    Nat v = alpha.at(p.key());
    if (v != 0) return Defined{v - 1, n};
    if (n == fuel) return FuelExhausted{fuel};
    p.push(n == 0 ? head : Key(beta(n - 1)));
  }
}

std::optional<Defined> apply_at_prefix(const Baire& alpha, const Key& head, std::span<const Nat> beta) {
  if (auto r = apply_assoc(alpha, head, [beta](Nat i) { return beta[i]; }, beta.size(), kMax)) {
    if (auto* d = std::get_if<Defined>(&*r)) return *d;
    return std::nullopt;
  }
  PrefixKey p;
  for (Nat n = 0;; ++n) {
    Nat v = alpha.at(p.key());
    if (v != 0) return Defined{v - 1, n};
    if (n > beta.size()) return std::nullopt;
    p.push(n == 0 ? head : Key(beta[n - 1]));
  }
}

Baire apply_fun(const Baire& alpha, const Baire& beta, Nat fuel) {
  return Baire(
      [alpha, beta, fuel](const Key& k) -> Nat {
        auto r = apply_at(alpha, k, beta, fuel);
        if (auto* d = std::get_if<Defined>(&r)) return d->value;
        throw EvaluationFault(k.is_small() ? k.small() : kMax,
                              "undefined within fuel " + std::to_string(fuel));
      },
      alpha.label() + "|" + beta.label());
}

std::optional<Nat> undefined_position(const Baire& alpha, const Baire& beta, Nat probe, Nat fuel) {
  for (Nat n = 0; n < probe; ++n)
    if (std::holds_alternative<FuelExhausted>(apply_at(alpha, Key(n), beta, fuel))) return n;
  return std::nullopt;
}

Nat use_trace(const Baire& alpha, const Baire& beta, Nat fuel) {
  auto r = apply_num(alpha, beta, fuel);
  if (auto* d = std::get_if<Defined>(&r)) return d->use;
  throw InvalidArgument("use_trace: application undefined within fuel " + std::to_string(fuel));
}

ContinuousMap pointwise_map(std::string name, std::function<Nat(const Baire&, Nat)> f,
                            std::function<Nat(Nat)> modulus) {
  ContinuousMap m;
  m.name = std::move(name);
  m.eval = [f = std::move(f)](const Baire& in, const Key& n) { return f(in, n.small()); };
  if (modulus) m.modulus = [modulus = std::move(modulus)](const Key& n) { return modulus(n.small()); };
  return m;
}

ContinuousMap constant_map(std::string name, const Baire& out) {
  ContinuousMap m;
  m.name = std::move(name);
  m.eval = [out](const Baire&, const Key& n) { return out.at(n); };
  m.modulus = [](const Key&) -> Nat { return 0; };
  return m;
}

namespace {

struct NeedMore {
  std::uint64_t token;
};

std::atomic<std::uint64_t> next_token{1};

}  // namespace

Baire associate_of(const ContinuousMap& f) {
  Baire a(
      [f](const Key& k) -> Nat {
        auto s = k.as_seq();
        if (s.empty()) return 0;
        std::vector<Nat> rest;
        for (std::size_t i = 1; i < s.size(); ++i) {
          if (!s[i].is_small()) return 0;
          rest.push_back(s[i].small());
        }
        const bool declared = static_cast<bool>(f.modulus);
        Nat limit = rest.size();
        if (declared) {
          Nat m = f.modulus(s[0]);
          if (rest.size() < m) return 0;
          limit = m;
        }
        const std::uint64_t token = next_token.fetch_add(1);
        Baire reader(
            [rest, limit, declared, token, name = f.name, out = s[0]](const Key& p) -> Nat {
              Nat i = p.small();
              if (i < limit) return rest[i];
              if (declared)
                throw ModulusViolation("map " + name + " read position " + std::to_string(i) +
                                       " beyond its modulus " + std::to_string(limit) + " at output " + out.str());
              throw NeedMore{token};
            },
            "prefix");
        try {
          return arith::add(f.eval(reader, s[0]), 1);
        } catch (const NeedMore& e) {
          if (e.token != token) throw;
          return 0;
        }
      },
      "assoc(" + f.name + ")");
  BaireAccess::set_map(a, f);
  return a;
}

namespace {

// The application of an associate computed by running its map once: the
// probing loop of apply_at would first succeed with exactly the entries the
// map reads (or its declared modulus), so value and use agree with it. An
// input of `available` entries or a use above `fuel` is undefined.
std::optional<PartialResult> apply_assoc(const Baire& alpha, const Key& head, std::function<Nat(Nat)> input,
                                         Nat available, Nat fuel) {
  const auto& impl = BaireAccess::impl(alpha);
  if (impl.shape != Shape::Assoc) return std::nullopt;
  if (fuel == 0) return PartialResult{FuelExhausted{fuel}};
  const ContinuousMap& f = *impl.map;
  const bool declared = static_cast<bool>(f.modulus);
  Nat limit = std::min(available, fuel == kMax ? kMax : fuel - 1);
  Nat needed = 0;
  if (declared) {
    needed = f.modulus(head);
    if (needed > available) return PartialResult{FuelExhausted{fuel}};
    if (needed > limit) return PartialResult{FuelExhausted{fuel}};
    limit = needed;
  }
  const std::uint64_t token = next_token.fetch_add(1);
  auto used = std::make_shared<std::atomic<Nat>>(needed);
  Baire reader(
      [input, limit, declared, token, used, name = f.name, out = head](const Key& p) -> Nat {
        Nat i = p.small();
        if (i >= limit) {
          if (declared)
            throw ModulusViolation("map " + name + " read position " + std::to_string(i) + " beyond its modulus " +
                                   std::to_string(limit) + " at output " + out.str());
          throw NeedMore{token};
        }
        Nat seen = used->load();
        while (seen < i + 1 && !used->compare_exchange_weak(seen, i + 1)) {
        }
        return input(i);
      },
      "input");
  try {
    Nat v = arith::add(f.eval(reader, head), 1);
    return PartialResult{Defined{v - 1, used->load() + 1}};
  } catch (const NeedMore& e) {
    if (e.token != token) throw;
    return PartialResult{FuelExhausted{fuel}};
  }
}

}  // namespace

}  // namespace realiz
