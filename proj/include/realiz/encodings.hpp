#pragma once

// Term-level renderings of the pairing, sequence and application encodings.
// Every lambda introduced here binds a name fresh for the arguments.

#include "realiz/formula.hpp"

namespace realiz::enc {

/// n |-> code of <beta(0), ..., beta(n-1)>, as (rec 0 (lam c (snoc c (beta (len c))))).
FunTerm prefix_fun(const FunTerm& beta);
NumTerm prefix(const FunTerm& beta, const NumTerm& n);

/// m |-> 2m + [some i < m has alpha(prefix(beta, i)) != 0].
FunTerm flag_fun(const FunTerm& alpha, const FunTerm& beta);

/// alpha(prefix(beta, m)) != 0 and alpha vanishes on all shorter prefixes.
Formula defined_at(const FunTerm& alpha, const FunTerm& beta, const NumTerm& m);

/// <k> ^ beta.
FunTerm cons_fun(const NumTerm& k, const FunTerm& beta);

FunTerm fst_fun(const FunTerm& alpha);    // lam n. alpha(2n)
FunTerm snd_fun(const FunTerm& alpha);    // lam n. alpha(2n+1)
FunTerm shift_fun(const FunTerm& alpha);  // lam n. alpha(n+1)
/// alpha_m = lam k. alpha(2^m (2k+1) - 1).
FunTerm component_fun(const FunTerm& alpha, const NumTerm& m);

/// Expansion of alpha(beta) defined: exists m defined_at(alpha, beta, m).
Formula def_num_expansion(const FunTerm& alpha, const FunTerm& beta);
/// Expansion of alpha|beta defined: forall k (alpha(<k>^beta) defined), expanded.
Formula def_fun_expansion(const FunTerm& alpha, const FunTerm& beta);

/// g is the result of alpha|beta where defined:
/// forall k forall m (defined_at(alpha, <k>^beta, m) -> g(k) = alpha(prefix(<k>^beta, m)) - 1).
Formula app_graph(const FunTerm& alpha, const FunTerm& beta, const FunTerm& g);

/// xi in [alpha]: forall n (xi(n) <= fst alpha (n) and snd alpha (prefix(xi, n)) = 0).
Formula member(const FunTerm& xi, const FunTerm& alpha);

}  // namespace realiz::enc
