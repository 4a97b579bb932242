#pragma once

// Compact sets of functions coded as [alpha] = {xi <= fst alpha : snd alpha (xi-bar n) = 0 for all n}.

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "realiz/k2.hpp"

namespace realiz {

using Node = std::vector<Nat>;

struct CompactCode {
  Baire bound;
  Baire test;
  std::string name;

  Baire code() const { return baire::pair_fun(bound, test); }
  static CompactCode from_code(const Baire& alpha, std::string name = "code");

  bool rejects(std::span<const Nat> node) const;
};

namespace codes {

/// A code from a bound and a rejection predicate on finite sequences.
CompactCode make(const Baire& bound, std::function<bool(std::span<const Nat>)> rejects, std::string name);
CompactCode full_binary();
CompactCode no_consecutive_ones();
CompactCode only_ones();
/// Binary tree with no nodes of length >= depth.
CompactCode reject_at_depth(Nat depth);
/// [code] = {b}.
CompactCode singleton(const Baire& b);
/// The finite set of the given elements, read at depth d.
CompactCode finite_set(std::vector<Baire> members, Nat d);
/// Built-in codes by name: full-binary, no-consecutive-ones, only-ones, reject-at-<k>.
std::optional<CompactCode> named(const std::string& name);

}  // namespace codes

inline constexpr std::size_t kFanLimit = 1 << 20;

/// Bound for n < d and tree test for every prefix of length <= d.
bool member_at_depth(const Baire& xi, const CompactCode& code, Nat d);
/// Node with all its prefixes admissible.
bool admissible(const CompactCode& code, std::span<const Nat> node);
/// Depth-first, smallest value first.
std::optional<Node> leftmost_path(const CompactCode& code, Nat d, std::size_t limit = kFanLimit);
/// All admissible nodes of length d in lexicographic order. Throws
/// InvalidArgument when more than `limit` nodes are visited.
std::vector<Node> fan(const CompactCode& code, Nat d, std::size_t limit = kFanLimit);
/// Extension of an admissible node to length d, smallest values first.
std::optional<Node> leftmost_extension(const CompactCode& code, const Node& node, Nat d,
                                       std::size_t limit = kFanLimit);

struct NonemptyStatus {
  bool nonempty;
  Nat depth;
  std::optional<Node> witness;
};
NonemptyStatus nonempty_status(const CompactCode& code, Nat d);

struct ImageCode {
  CompactCode code;
  /// Output positions determined by every depth-d node.
  Nat depth;
  std::set<Node> prefixes;
};

/// {phi|xi : xi in [code]} read at depth d.
ImageCode image_code(const Baire& phi, const CompactCode& code, Nat d, std::size_t limit = kFanLimit);

/// The leftmost depth-d node of each of the first `count` codes; throws
/// EmptyCode with the index of the first empty one.
std::vector<Node> select_across(const std::function<CompactCode(Nat)>& codes, Nat count, Nat d);

/// The closure condition: an accepted x^<y> has x accepted and y <= bound(|x|).
bool is_tree(const CompactCode& code, Nat d, std::size_t limit = kFanLimit);

}  // namespace realiz
