#pragma once

// Checking realizers semantically and building canonical realizers.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "realiz/compact.hpp"
#include "realiz/formula.hpp"
#include "realiz/semantics.hpp"
#include "realiz/translate.hpp"

namespace realiz {

enum class Verdict { Verified, Refuted, Unknown };
std::string_view verdict_name(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::Verified;
  /// Child indices to the deciding subformula (0 = left or body, 1 = right).
  std::vector<std::size_t> path;
  std::string detail;
};

// Number quantifiers are checked below `depth`, unbounded number searches run
// below `search`, applications get `fuel`, function quantifiers range over
// `battery`. Canonical realizers of universal function statements read as far
// as their searches, so `search` should stay well below `fuel`.
struct Budget {
  Nat fuel = 512;
  Nat depth = 8;
  Nat search = 64;
  std::size_t fan_limit = 1 << 14;
  std::uint64_t seed = 1;
  std::vector<Baire> battery;
};

/// zeros, ones, identity and three seeded random tables.
Budget default_budget(std::uint64_t seed = 1);

/// Desk-scale truth: Verified means true as far as checked, Refuted is a
/// counterexample, existentials without a witness in reach are Unknown.
CheckResult decide(const Formula& f, const Env& env, const Budget& budget);

CheckResult realizes(Mode mode, const Baire& alpha, const Formula& f, const Env& env, const Budget& budget);

/// The canonical realizer of a formula of N_K (rf) or N_L (lrf). Throws
/// ClassificationError outside the class and NotCertifiable when decide does
/// not verify f.
Baire build_omega(Mode mode, const Formula& f, const Env& env, const Budget& budget);

/// fst(beta | xi | (omega_B | xi)) for beta realizing forall xi (B -> exists zeta A).
Baire extract_choice(const Baire& beta, const Formula& b, const std::string& xi_name, const Baire& xi,
                     const Env& env, const Budget& budget);

/// The code of first components of the witness set offered by beta at xi,
/// read at `depth` output positions.
ImageCode extract_choice_lrf(const Baire& beta, const Formula& b, const std::string& xi_name, const Baire& xi,
                             const Env& env, const Budget& budget);

/// Lambda xi. fst xi.
Baire fst_associate();

/// beta with beta|xi|omega = pair(choice(xi), inner(xi)) for every omega;
/// inner defaults to zeros.
Baire choice_realizer(std::function<Baire(const Baire&)> choice, std::function<Baire(const Baire&)> inner = {});
/// beta with beta|xi|omega the code of set(xi) for every omega.
Baire set_realizer(std::function<CompactCode(const Baire&)> set);

}  // namespace realiz
