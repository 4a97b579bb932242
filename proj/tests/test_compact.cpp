#include "doctest.h"

#include <random>

#include "realiz/compact.hpp"
#include "realiz/errors.hpp"
#include "support/gen_codes.hpp"

using namespace realiz;

namespace {

std::set<Node> as_set(const std::vector<Node>& v) { return {v.begin(), v.end()}; }

Baire stream(const Node& p) { return baire::table(p, 0); }

}  // namespace

TEST_CASE("membership at depth") {
  CHECK(member_at_depth(baire::zeros(), codes::full_binary(), 20));
  CHECK_FALSE(member_at_depth(baire::constant(2), codes::full_binary(), 1));
  CHECK(member_at_depth(baire::constant(2), codes::full_binary(), 0));
  Baire x = baire::table({0, 1, 1, 0}, 0);
  CHECK_FALSE(member_at_depth(x, codes::no_consecutive_ones(), 3));
  CHECK(member_at_depth(x, codes::no_consecutive_ones(), 2));
}

TEST_CASE("leftmost paths") {
  CHECK(leftmost_path(codes::full_binary(), 7) == Node(7, 0));
  CHECK(leftmost_path(codes::no_consecutive_ones(), 9) == Node(9, 0));
  CHECK(leftmost_path(codes::only_ones(), 4) == Node(4, 1));
  CHECK_FALSE(leftmost_path(codes::reject_at_depth(3), 3));
  CHECK(leftmost_path(codes::reject_at_depth(3), 2) == Node(2, 0));

  auto st = nonempty_status(codes::reject_at_depth(3), 5);
  CHECK_FALSE(st.nonempty);
  CHECK(st.depth == 5);

  // Against an exhaustive oracle: the leftmost path is the lexicographically
  // least brute-force member.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto code = gen::random_binary_code(seed, 150);
    auto members = gen::brute_members(1, 6, [&](std::span<const Nat> s) { return gen::random_rejects(seed, 150, s); });
    auto p = leftmost_path(code, 6);
    if (members.empty()) {
      CHECK_FALSE(p);
    } else {
      REQUIRE(p);
      CHECK(*p == members.front());
      CHECK(member_at_depth(stream(*p), code, 6));
    }
    CHECK(as_set(fan(code, 6)) == as_set(members));
  }
}

TEST_CASE("membership is antitone in depth") {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto code = gen::random_binary_code(seed, 100);
    Node p(10);
    for (auto& x : p) x = rng() % 2;
    Baire xi = stream(p);
    bool prev = true;
    for (Nat d = 0; d <= 10; ++d) {
      bool now = member_at_depth(xi, code, d);
      CHECK((prev || !now));
      prev = now;
    }
  }
}

TEST_CASE("image codes") {
  auto maps = gen::test_maps();
  auto find = [&](const std::string& name) {
    for (auto& m : maps)
      if (m.name == name) return m;
    FAIL("no map");
    return maps[0];
  };
  auto assoc = [](const gen::TestMap& m) { return associate_of(pointwise_map(m.name, m.f, m.modulus)); };

  auto zero = image_code(assoc(find("zero")), codes::full_binary(), 8);
  CHECK(member_at_depth(baire::zeros(), zero.code, 8));
  CHECK_FALSE(member_at_depth(baire::constant(1), zero.code, 8));

  auto id = image_code(assoc(find("identity")), codes::no_consecutive_ones(), 8);
  CHECK(id.depth == 8);
  CHECK(as_set(fan(id.code, 8)) == as_set(fan(codes::no_consecutive_ones(), 8)));

  auto flip = image_code(assoc(find("flip")), codes::full_binary(), 8);
  CHECK(as_set(fan(flip.code, 8)) == as_set(fan(codes::full_binary(), 8)));

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Nat d = 3 + seed % 6;
    auto rej = [seed](std::span<const Nat> s) { return gen::random_rejects(seed, 120, s); };
    auto code = gen::random_binary_code(seed, 120);
    for (const auto& m : maps) {
      auto img = image_code(assoc(m), code, d);
      std::size_t l = gen::determined(m, d);
      std::set<Node> expected;
      for (const auto& p : gen::brute_members(1, d, rej)) expected.insert(m.direct(p, l));
      CHECK(img.prefixes == expected);
      if (!expected.empty()) {
        CHECK(img.depth == l);
        CHECK(as_set(fan(img.code, l)) == expected);
      }
    }
  }
}

TEST_CASE("selection across codes") {
  auto all = select_across([](Nat) { return codes::full_binary(); }, 4, 5);
  CHECK(all == std::vector<Node>(4, Node(5, 0)));

  std::vector<CompactCode> mixed{codes::full_binary(), codes::no_consecutive_ones(), codes::only_ones()};
  auto got = select_across([&](Nat n) { return mixed[n]; }, 3, 6);
  CHECK(got == std::vector<Node>{Node(6, 0), Node(6, 0), Node(6, 1)});
  for (std::size_t n = 0; n < 3; ++n) CHECK(admissible(mixed[n], got[n]));

  mixed.push_back(codes::reject_at_depth(2));
  try {
    select_across([&](Nat n) { return mixed[n]; }, 4, 6);
    FAIL("expected EmptyCode");
  } catch (const EmptyCode& e) {
    CHECK(e.index() == 3);
  }
}

TEST_CASE("tree closure") {
  CHECK(is_tree(codes::full_binary(), 4));
  CHECK(is_tree(codes::no_consecutive_ones(), 4));
  auto broken = codes::make(
      baire::constant(1), [](std::span<const Nat> s) { return s.size() == 1 && s[0] == 1; }, "broken");
  CHECK_FALSE(is_tree(broken, 2));
  // Accepting a value above the bound also breaks the condition.
  auto loose = codes::make(baire::constant(0), [](std::span<const Nat>) { return false; }, "loose");
  CHECK_FALSE(is_tree(loose, 1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(is_tree(gen::random_binary_code(seed, 200), 5));
}

TEST_CASE("codes round trip through a single element") {
  auto c = codes::no_consecutive_ones();
  auto back = CompactCode::from_code(c.code());
  CHECK(as_set(fan(back, 6)) == as_set(fan(c, 6)));
  auto s = codes::singleton(baire::table({3, 0, 2}, 1));
  CHECK(fan(s, 5) == std::vector<Node>{Node{3, 0, 2, 1, 1}});
  CHECK(codes::named("reject-at-4").has_value());
  CHECK_FALSE(codes::named("reject-at-").has_value());
}

TEST_CASE("finite sets") {
  std::vector<Baire> members{stream({1, 0, 2}), stream({1, 1}), stream({0, 3, 3})};
  CompactCode code = codes::finite_set(members, 3);
  std::set<Node> expected{{1, 0, 2}, {1, 1, 0}, {0, 3, 3}};
  CHECK(as_set(fan(code, 3)) == expected);
  CHECK(leftmost_path(code, 5) == Node{0, 3, 3, 0, 0});
  CHECK(is_tree(code, 5));
  CHECK(fan(codes::finite_set({}, 3), 3).empty());
}
