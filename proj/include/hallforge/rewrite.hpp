/// \file
/// Normal forms of words in the stalk generators Z_A^{[n]} of the bounded
/// algebra, by rewriting with the same-degree merge, adjacent-degree
/// straightening and far commutation rules.

#pragma once

#include <vector>

#include "hallforge/dha.hpp"

namespace hallforge::dha {

struct Generator {
  IsoClassId cls;
  int degree = 0;
  auto operator<=>(const Generator&) const = default;
  bool operator==(const Generator&) const = default;
};

using Word = std::vector<Generator>;

/// Which out-of-order adjacent pair is rewritten first.
enum class RewriteOrder { leftmost, rightmost };

/// The stalks of x in strictly decreasing degree; their product is x.
Word decompose(const GradedObject& x);

/// Rewrites `word` until every term has strictly decreasing degrees and
/// reads it as a combination of graded objects. Throws
/// RewriteBudgetExceeded after `budget` rule applications.
HallVector normalize_generator_word(const hall::HallEngine& hall, const Word& word,
                                   RewriteOrder order = RewriteOrder::leftmost, std::size_t budget = 0);

}  // namespace hallforge::dha
