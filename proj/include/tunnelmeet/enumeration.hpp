#pragma once

// Constructive bijections shared by every agent: the Cantor pairing
// function, a code for non-empty sequences of positive integers, the
// enumeration of quadruples (i, j, s', s'') that drives GraphRV phases, and
// the enumeration of pairs of rationals that numbers the ports of G_T.
//
// Changing any of these orders changes every route the library produces.
// The active version is exported as kEnumerationVersion and pinned by the
// golden files under tests/golden/.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tunnelmeet/rational.hpp"

namespace tunnelmeet {

inline constexpr std::string_view kEnumerationVersion = "1";

using Label = std::uint64_t;

// ---------------------------------------------------------------------------
// Cantor pairing: pi(a, b) = (a + b)(a + b + 1) / 2 + b.

Natural pair_encode(const Natural& a, const Natural& b);
std::pair<Natural, Natural> pair_decode(const Natural& n);

// ---------------------------------------------------------------------------
// Non-empty sequences of positive integers. A sequence (t1, ..., tn) is coded
// as pi(n - 1, c) where c folds pi left to right over t1 - 1, ..., tn - 1.

Natural seq_encode(std::span<const Natural> terms);
std::vector<Natural> seq_decode(const Natural& code);

// ---------------------------------------------------------------------------
// Quadruples.

struct Quadruple {
  Label i = 1;
  Label j = 2;
  std::vector<std::uint32_t> s_prime;
  std::vector<std::uint32_t> s_dprime;

  bool operator==(const Quadruple&) const = default;
};

/// Throws Error(kInvalidArgument) unless i < j, both labels are positive,
/// the two sequences share a length n >= 1 and every port is positive.
void validate(const Quadruple& q);

/// Grading weight: (2^(j-2) - 1) + (i - 1) + n + sum(s') + sum(s'').
/// Quadruples are listed by weight, then by j, i, n and finally by the
/// concatenated port tuple (s'_1..s'_n, s''_1..s''_n) in lexicographic order.
Natural weight(const Quadruple& q);

/// phi(k) for k >= 1.
Quadruple phi(const Natural& k);

/// Inverse of phi; validates q first.
Natural phi_index(const Quadruple& q);

std::string to_string(const Quadruple& q);

/// Walks phi(1), phi(2), ... without re-ranking each index.
class QuadrupleCursor {
 public:
  QuadrupleCursor();

  /// Index of the quadruple returned by current().
  std::uint64_t index() const { return index_; }
  const Quadruple& current() const { return current_; }
  void advance();

 private:
  void load();
  bool next_composition();
  bool next_length();
  bool next_labels();

  std::uint64_t index_ = 1;
  std::uint64_t weight_ = 3;
  Label j_ = 2;
  Label i_ = 1;
  std::size_t n_ = 1;
  std::vector<std::uint32_t> parts_;
  Quadruple current_;
};

// ---------------------------------------------------------------------------
// Rationals and pairs of rationals.

/// 0, then diagonals s = |num| + den = 2, 3, ...; on each diagonal numerators
/// ascend and every reduced fraction appears as +num/den then -num/den:
/// 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3, -3, 1/4, ...
Rational rational_at(std::uint64_t index);
std::uint64_t rational_index(const Rational& q);

struct RationalPair {
  Rational q1;
  Rational q2;

  bool operator==(const RationalPair&) const = default;
};

/// rational_pair(k) = (rational_at(a), rational_at(b)) with (a, b) the Cantor
/// decoding of k - 1. rational_pair(1) = (0, 0), rational_pair(2) = (1, 0).
RationalPair rational_pair(std::uint64_t k);
std::uint64_t rational_pair_index(const RationalPair& z);

std::string to_string(const RationalPair& z);

}  // namespace tunnelmeet
