#pragma once

#include "flatmod/commutator_lab.hpp"

namespace flatmod {

struct SpanClosureResult {
  /// Dimension of the unital associative algebra generated by the tuple.
  int dim = 1;
  /// Closure rounds until the dimension stopped growing.
  int steps = 0;
  /// dim == n^2, i.e. no common invariant subspace.
  bool irreducible = false;
};

/// Span of all words in the generators and their inverses, grown by left
/// multiplication until the dimension stabilizes (at most n^2 + 1 rounds).
SpanClosureResult algebra_span(const TupleWitness& t, const Tolerance& tol = {});

/// The generated algebra is all of M_n. For a pair whose commutator has
/// property P this certifies that the pair generates GL(n) Zariski-densely.
bool generates_full_group(const TupleWitness& t, const Tolerance& tol = {});

}  // namespace flatmod
