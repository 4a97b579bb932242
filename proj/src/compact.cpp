#include "realiz/compact.hpp"

#include <algorithm>

#include "realiz/errors.hpp"

namespace realiz {

CompactCode CompactCode::from_code(const Baire& alpha, std::string name) {
  return CompactCode{baire::proj(alpha, Side::Fst), baire::proj(alpha, Side::Snd), std::move(name)};
}

bool CompactCode::rejects(std::span<const Nat> node) const { return test.at(Key::of_nats(node)) != 0; }

namespace codes {

CompactCode make(const Baire& bound, std::function<bool(std::span<const Nat>)> rejects, std::string name) {
  Baire test = baire::on_sequences([rejects = std::move(rejects)](std::span<const Nat> s) -> Nat { return rejects(s); },
                                   1, name + ".test");
  return CompactCode{bound, test, std::move(name)};
}

namespace {

bool binary(std::span<const Nat> s) {
  return std::all_of(s.begin(), s.end(), [](Nat v) { return v <= 1; });
}

}  // namespace

CompactCode full_binary() {
  return make(baire::constant(1), [](std::span<const Nat> s) { return !binary(s); }, "full-binary");
}

CompactCode no_consecutive_ones() {
  return make(
      baire::constant(1),
      [](std::span<const Nat> s) {
        if (!binary(s)) return true;
        for (std::size_t i = 1; i < s.size(); ++i)
          if (s[i] == 1 && s[i - 1] == 1) return true;
        return false;
      },
      "no-consecutive-ones");
}

CompactCode only_ones() {
  return make(
      baire::constant(1), [](std::span<const Nat> s) { return !binary(s) || std::find(s.begin(), s.end(), 0) != s.end(); },
      "only-ones");
}

CompactCode reject_at_depth(Nat depth) {
  return make(
      baire::constant(1), [depth](std::span<const Nat> s) { return !binary(s) || s.size() >= depth; },
      "reject-at-" + std::to_string(depth));
}

CompactCode singleton(const Baire& b) {
  return make(
      b,
      [b](std::span<const Nat> s) {
        for (std::size_t i = 0; i < s.size(); ++i)
          if (s[i] != b(i)) return true;
        return false;
      },
      "singleton(" + b.label() + ")");
}

CompactCode finite_set(std::vector<Baire> members, Nat d) {
  std::vector<Node> prefixes;
  std::vector<Nat> top(d, 0);
  for (const Baire& m : members) {
    prefixes.push_back(m.prefix(d));
    for (Nat k = 0; k < d; ++k) top[k] = std::max(top[k], prefixes.back()[k]);
  }
  std::string name = "finite(" + std::to_string(members.size()) + ")";
  return make(
      baire::table(top, 0),
      [prefixes, d](std::span<const Nat> s) {
        std::size_t keep = std::min<std::size_t>(s.size(), d);
        for (std::size_t i = keep; i < s.size(); ++i)
          if (s[i] != 0) return true;
        return std::none_of(prefixes.begin(), prefixes.end(),
                            [&](const Node& p) { return std::equal(s.begin(), s.begin() + keep, p.begin()); });
      },
      name);
}

std::optional<CompactCode> named(const std::string& name) {
  if (name == "full-binary") return full_binary();
  if (name == "no-consecutive-ones") return no_consecutive_ones();
  if (name == "only-ones") return only_ones();
  const std::string pre = "reject-at-";
  if (name.rfind(pre, 0) == 0 && name.size() > pre.size() &&
      std::all_of(name.begin() + pre.size(), name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return reject_at_depth(std::stoull(name.substr(pre.size())));
  return std::nullopt;
}

}  // namespace codes

bool member_at_depth(const Baire& xi, const CompactCode& code, Nat d) {
  Node prefix;
  if (code.rejects(prefix)) return false;
  for (Nat n = 0; n < d; ++n) {
    Nat v = xi(n);
    if (v > code.bound(n)) return false;
    prefix.push_back(v);
    if (code.rejects(prefix)) return false;
  }
  return true;
}

bool admissible(const CompactCode& code, std::span<const Nat> node) {
  for (std::size_t j = 0; j <= node.size(); ++j) {
    if (j > 0 && node[j - 1] > code.bound(j - 1)) return false;
    if (code.rejects(node.subspan(0, j))) return false;
  }
  return true;
}

namespace {

class Search {
 public:
  Search(const CompactCode& code, std::size_t limit) : code_(code), limit_(limit) {}

  // Children of cur in order; stops when visit returns true.
  template <class Visit>
  bool walk(Node& cur, Nat d, Visit&& visit) {
    if (cur.size() == d) return visit(cur);
    Nat b = code_.bound(cur.size());
    for (Nat y = 0;; ++y) {
      if (++visited_ > limit_)
        throw InvalidArgument("fan of " + code_.name + " exceeds " + std::to_string(limit_) + " nodes");
      cur.push_back(y);
      bool stop = !code_.rejects(cur) && walk(cur, d, visit);
      cur.pop_back();
      if (stop) return true;
      if (y == b) break;
    }
    return false;
  }

 private:
  const CompactCode& code_;
  std::size_t limit_;
  std::size_t visited_ = 0;
};

}  // namespace

std::optional<Node> leftmost_extension(const CompactCode& code, const Node& node, Nat d, std::size_t limit) {
  Node cur = node;
  std::optional<Node> found;
  Search(code, limit).walk(cur, d, [&](const Node& n) {
    found = n;
    return true;
  });
  return found;
}

std::optional<Node> leftmost_path(const CompactCode& code, Nat d, std::size_t limit) {
  if (code.rejects(Node{})) return std::nullopt;
  return leftmost_extension(code, Node{}, d, limit);
}

std::vector<Node> fan(const CompactCode& code, Nat d, std::size_t limit) {
  std::vector<Node> out;
  if (code.rejects(Node{})) return out;
  Node cur;
  Search(code, limit).walk(cur, d, [&](const Node& n) {
    out.push_back(n);
    return false;
  });
  return out;
}

NonemptyStatus nonempty_status(const CompactCode& code, Nat d) {
  auto w = leftmost_path(code, d);
  return NonemptyStatus{w.has_value(), d, w};
}

ImageCode image_code(const Baire& phi, const CompactCode& code, Nat d, std::size_t limit) {
  std::vector<Node> images;
  Nat depth = d;
  for (const Node& p : fan(code, d, limit)) {
    Node img;
    for (Nat k = 0; k < d; ++k) {
      auto r = apply_at_prefix(phi, Key(k), p);
      if (!r) break;
      img.push_back(r->value);
    }
    depth = std::min<Nat>(depth, img.size());
    images.push_back(std::move(img));
  }
  std::set<Node> prefixes;
  std::vector<Nat> maxima(depth, 0);
  for (auto& img : images) {
    img.resize(depth);
    for (Nat k = 0; k < depth; ++k) maxima[k] = std::max(maxima[k], img[k]);
    for (Nat j = 0; j <= depth; ++j) prefixes.insert(Node(img.begin(), img.begin() + j));
  }
  Baire bound = baire::table(maxima, 0);
  std::string name = "image(" + phi.label() + "," + code.name + ")";
  CompactCode out = codes::make(
      bound,
      [prefixes, depth](std::span<const Nat> s) {
        std::size_t keep = std::min<std::size_t>(s.size(), depth);
        for (std::size_t i = keep; i < s.size(); ++i)
          if (s[i] != 0) return true;
        return !prefixes.count(Node(s.begin(), s.begin() + keep));
      },
      name);
  std::set<Node> full;
  for (const auto& img : images) full.insert(img);
  return ImageCode{out, depth, full};
}

std::vector<Node> select_across(const std::function<CompactCode(Nat)>& codes, Nat count, Nat d) {
  std::vector<Node> out;
  for (Nat n = 0; n < count; ++n) {
    CompactCode c = codes(n);
    auto p = leftmost_path(c, d);
    if (!p) throw EmptyCode(n, c.name + " has no node at depth " + std::to_string(d));
    out.push_back(std::move(*p));
  }
  return out;
}

bool is_tree(const CompactCode& code, Nat d, std::size_t limit) {
  std::size_t visited = 0;
  Node x;
  std::function<bool()> go = [&]() -> bool {
    if (x.size() >= d) return true;
    Nat b = code.bound(x.size());
    bool x_ok = !code.rejects(x);
    for (Nat y = 0; y <= b + 1; ++y) {
      if (++visited > limit) throw InvalidArgument("is_tree: more than " + std::to_string(limit) + " nodes");
      x.push_back(y);
      bool accepted = !code.rejects(x);
      bool ok = !accepted || (x_ok && y <= b);
      ok = ok && go();
      x.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return go();
}

}  // namespace realiz
