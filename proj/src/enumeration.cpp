#include "tunnelmeet/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

namespace {

// Weights above this are rejected by phi_index; counting tables grow
// linearly with the weight and their entries exponentially.
constexpr std::uint64_t kMaxIndexableWeight = 4096;

std::uint64_t to_u64(const Natural& n, const char* what) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " out of range");
  }
  return n.convert_to<std::uint64_t>();
}

Natural binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Natural r = 1;
  for (std::uint64_t t = 1; t <= k; ++t) {
    r *= n - k + t;
    r /= t;
  }
  return r;
}

// Number of compositions of `total` into `parts` positive parts.
Natural compositions(std::uint64_t total, std::uint64_t parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  if (total < parts) return 0;
  return binomial(total - 1, parts - 1);
}

// N(r): number of (n, s', s'') with n >= 1 and n + sum(s') + sum(s'') = r.
// Generating function x^3 / (1 - 2x + x^2 - x^3).
class WalkCounts {
 public:
  const Natural& count(std::uint64_t r) {
    extend(r);
    return n_[r];
  }
  // Sum of N(0..r).
  const Natural& cumulative(std::uint64_t r) {
    extend(r);
    return s_[r];
  }

 private:
  void extend(std::uint64_t r) {
    while (n_.size() <= r) {
      const std::size_t m = n_.size();
      Natural v = 0;
      if (m == 3) {
        v = 1;
      } else if (m > 3) {
        v = 2 * n_[m - 1] - n_[m - 2] + n_[m - 3];
      }
      s_.push_back(m == 0 ? v : s_.back() + v);
      n_.push_back(std::move(v));
    }
  }

  std::vector<Natural> n_;
  std::vector<Natural> s_;
};

// Label weight 2^(j-2) - 1 + (i - 1), or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> label_weight(Label i, Label j, std::uint64_t limit) {
  if (j - 2 >= 62) return std::nullopt;
  const std::uint64_t w = ((std::uint64_t{1} << (j - 2)) - 1) + (i - 1);
  if (w > limit) return std::nullopt;
  return w;
}

// Calls f(i, j, L) for every label pair with weight L <= limit in (j, i)
// order. Stops early when f returns true.
template <typename F>
void for_each_label_pair(std::uint64_t limit, F&& f) {
  for (Label j = 2;; ++j) {
    if (!label_weight(1, j, limit)) return;
    for (Label i = 1; i < j; ++i) {
      const auto lw = label_weight(i, j, limit);
      if (!lw) break;
      if (f(i, j, *lw)) return;
    }
  }
}

Natural rank_composition(std::span<const std::uint32_t> parts, std::uint64_t total) {
  Natural rank = 0;
  std::uint64_t remaining = total;
  const std::size_t m = parts.size();
  for (std::size_t pos = 0; pos + 1 < m; ++pos) {
    for (std::uint64_t v = 1; v < parts[pos]; ++v) {
      rank += compositions(remaining - v, m - pos - 1);
    }
    remaining -= parts[pos];
  }
  return rank;
}

std::vector<std::uint32_t> unrank_composition(Natural rank, std::uint64_t total, std::size_t m) {
  std::vector<std::uint32_t> parts(m);
  std::uint64_t remaining = total;
  for (std::size_t pos = 0; pos + 1 < m; ++pos) {
    std::uint64_t v = 1;
    for (;; ++v) {
      Natural c = compositions(remaining - v, m - pos - 1);
      if (rank < c) break;
      rank -= c;
    }
    parts[pos] = static_cast<std::uint32_t>(v);
    remaining -= v;
  }
  parts[m - 1] = static_cast<std::uint32_t>(remaining);
  return parts;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

constexpr std::uint64_t kMaxRationalDiagonal = std::uint64_t{1} << 24;

}  // namespace

// ---------------------------------------------------------------------------

Natural pair_encode(const Natural& a, const Natural& b) {
  if (a < 0 || b < 0) throw Error(ErrorCode::kInvalidArgument, "pair_encode of a negative value");
  const Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> pair_decode(const Natural& n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "pair_decode of a negative value");
  // w = floor((sqrt(8n + 1) - 1) / 2) is the diagonal index.
  const Natural w = (sqrt(Natural(8 * n + 1)) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  const Natural b = n - t;
  return {w - b, b};
}

Natural seq_encode(std::span<const Natural> terms) {
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "seq_encode of an empty sequence");
  for (const auto& t : terms) {
    if (t < 1) throw Error(ErrorCode::kInvalidArgument, "seq_encode term must be positive");
  }
  Natural folded = terms[0] - 1;
  for (std::size_t m = 1; m < terms.size(); ++m) folded = pair_encode(folded, terms[m] - 1);
  return pair_encode(Natural(terms.size() - 1), folded);
}

std::vector<Natural> seq_decode(const Natural& code) {
  auto [len_minus_one, folded] = pair_decode(code);
  const std::uint64_t n = to_u64(len_minus_one, "sequence length") + 1;
  std::vector<Natural> terms(n);
  for (std::uint64_t m = n - 1; m > 0; --m) {
    auto [rest, last] = pair_decode(folded);
    terms[m] = last + 1;
    folded = std::move(rest);
  }
  terms[0] = folded + 1;
  return terms;
}

// ---------------------------------------------------------------------------

void validate(const Quadruple& q) {
  if (q.i < 1 || q.j <= q.i) {
    throw Error(ErrorCode::kInvalidArgument, "quadruple labels must satisfy 1 <= i < j");
  }
  if (q.s_prime.empty() || q.s_prime.size() != q.s_dprime.size()) {
    throw Error(ErrorCode::kInvalidArgument, "quadruple sequences must share a length >= 1");
  }
  auto positive = [](std::uint32_t p) { return p >= 1; };
  if (!std::all_of(q.s_prime.begin(), q.s_prime.end(), positive) ||
      !std::all_of(q.s_dprime.begin(), q.s_dprime.end(), positive)) {
    throw Error(ErrorCode::kInvalidArgument, "quadruple ports must be positive");
  }
}

Natural weight(const Quadruple& q) {
  validate(q);
  Natural w = (Natural(1) << static_cast<unsigned>(std::min<Label>(q.j - 2, 1u << 20))) - 1;
  w += q.i - 1;
  w += q.s_prime.size();
  for (auto p : q.s_prime) w += p;
  for (auto p : q.s_dprime) w += p;
  return w;
}

Quadruple phi(const Natural& k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "phi is defined for k >= 1");
  Natural rank = k - 1;
  WalkCounts counts;

  std::uint64_t w = 3;
  for (;; ++w) {
    Natural class_size = 0;
    for_each_label_pair(w - 3, [&](Label, Label, std::uint64_t lw) {
      class_size += counts.count(w - lw);
      return false;
    });
    if (rank < class_size) break;
    rank -= class_size;
  }

  Quadruple q;
  std::uint64_t rest = 0;
  for_each_label_pair(w - 3, [&](Label i, Label j, std::uint64_t lw) {
    const Natural& c = counts.count(w - lw);
    if (rank < c) {
      q.i = i;
      q.j = j;
      rest = w - lw;
      return true;
    }
    rank -= c;
    return false;
  });

  for (std::uint64_t n = 1;; ++n) {
    const std::uint64_t total = rest - n;
    Natural c = compositions(total, 2 * n);
    if (rank < c) {
      auto parts = unrank_composition(rank, total, 2 * n);
      q.s_prime.assign(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(n));
      q.s_dprime.assign(parts.begin() + static_cast<std::ptrdiff_t>(n), parts.end());
      return q;
    }
    rank -= c;
  }
}

Natural phi_index(const Quadruple& q) {
  const Natural wn = weight(q);
  if (wn > kMaxIndexableWeight) {
    throw Error(ErrorCode::kInvalidArgument, "quadruple weight exceeds the indexable range");
  }
  const auto w = wn.convert_to<std::uint64_t>();
  WalkCounts counts;
  Natural index = 0;

  // All lighter classes.
  for_each_label_pair(w - 1, [&](Label, Label, std::uint64_t lw) {
    index += counts.cumulative(w - 1 - lw);
    return false;
  });

  // Same weight, earlier label pairs.
  std::uint64_t own = 0;
  for_each_label_pair(w - 3, [&](Label i, Label j, std::uint64_t lw) {
    if (i == q.i && j == q.j) {
      own = lw;
      return true;
    }
    index += counts.count(w - lw);
    return false;
  });

  const std::uint64_t rest = w - own;
  const std::uint64_t n = q.s_prime.size();
  for (std::uint64_t shorter = 1; shorter < n; ++shorter) {
    index += compositions(rest - shorter, 2 * shorter);
  }
  std::vector<std::uint32_t> parts(q.s_prime);
  parts.insert(parts.end(), q.s_dprime.begin(), q.s_dprime.end());
  index += rank_composition(parts, rest - n);
  return index + 1;
}

std::string to_string(const Quadruple& q) {
  std::ostringstream os;
  auto seq = [&os](const std::vector<std::uint32_t>& s) {
    os << '(';
    for (std::size_t m = 0; m < s.size(); ++m) os << (m ? "," : "") << s[m];
    os << ')';
  };
  os << '(' << q.i << ',' << q.j << ',';
  seq(q.s_prime);
  os << ',';
  seq(q.s_dprime);
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

QuadrupleCursor::QuadrupleCursor() : parts_{1, 1} { load(); }

void QuadrupleCursor::load() {
  current_.i = i_;
  current_.j = j_;
  current_.s_prime.assign(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(n_));
  current_.s_dprime.assign(parts_.begin() + static_cast<std::ptrdiff_t>(n_), parts_.end());
}

bool QuadrupleCursor::next_composition() {
  const std::size_t m = parts_.size();
  std::uint64_t tail = parts_[m - 1];
  for (std::size_t p = m - 1; p-- > 0;) {
    // parts_[p + 1 ..] sums to `tail`; its minimum is m - 1 - p.
    if (tail > m - 1 - p) {
      ++parts_[p];
      const std::uint64_t new_tail = tail - 1;
      for (std::size_t q = p + 1; q + 1 < m; ++q) parts_[q] = 1;
      parts_[m - 1] = static_cast<std::uint32_t>(new_tail - (m - 2 - p));
      return true;
    }
    tail += parts_[p];
  }
  return false;
}

bool QuadrupleCursor::next_length() {
  const std::uint64_t lw = *label_weight(i_, j_, weight_);
  const std::uint64_t rest = weight_ - lw;
  const std::size_t n = n_ + 1;
  if (rest < 3 * n) return false;
  n_ = n;
  parts_.assign(2 * n, 1);
  parts_.back() = static_cast<std::uint32_t>(rest - n - (2 * n - 1));
  return true;
}

bool QuadrupleCursor::next_labels() {
  // Next label pair of the current weight class that admits n = 1.
  Label i = i_, j = j_;
  for (;;) {
    ++i;
    if (i >= j) {
      ++j;
      i = 1;
      if (!label_weight(i, j, weight_ - 3)) return false;
    }
    if (label_weight(i, j, weight_ - 3)) break;
  }
  i_ = i;
  j_ = j;
  n_ = 0;
  return next_length();
}

void QuadrupleCursor::advance() {
  if (!next_composition() && !next_length() && !next_labels()) {
    ++weight_;
    i_ = 1;
    j_ = 2;
    n_ = 0;
    next_length();
  }
  ++index_;
  load();
}

// ---------------------------------------------------------------------------

Rational rational_at(std::uint64_t index) {
  if (index == 0) return Rational(0);
  std::uint64_t r = (index - 1) / 2;
  const bool negative = ((index - 1) % 2) == 1;
  for (std::uint64_t s = 2;; ++s) {
    const std::uint64_t on_diagonal = totient(s);
    if (r < on_diagonal) {
      for (std::uint64_t num = 1; num < s; ++num) {
        if (std::gcd(num, s) != 1) continue;
        if (r == 0) {
          Rational q(Natural(num), Natural(s - num));
          return negative ? Rational(-q) : q;
        }
        --r;
      }
    }
    r -= on_diagonal;
  }
}

std::uint64_t rational_index(const Rational& q) {
  if (q == 0) return 0;
  const Natural num = abs(numerator(q));
  const Natural den = denominator(q);
  const Natural diag = num + den;
  if (diag > kMaxRationalDiagonal) {
    throw Error(ErrorCode::kInvalidArgument, "rational " + to_string(q) + " is too large to index");
  }
  const auto s = diag.convert_to<std::uint64_t>();
  const auto p = num.convert_to<std::uint64_t>();
  std::uint64_t r = 0;
  for (std::uint64_t t = 2; t < s; ++t) r += totient(t);
  for (std::uint64_t m = 1; m < p; ++m) {
    if (std::gcd(m, s) == 1) ++r;
  }
  return 1 + 2 * r + (q < 0 ? 1 : 0);
}

RationalPair rational_pair(std::uint64_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "rational_pair is defined for k >= 1");
  auto [a, b] = pair_decode(Natural(k - 1));
  return {rational_at(a.convert_to<std::uint64_t>()), rational_at(b.convert_to<std::uint64_t>())};
}

std::uint64_t rational_pair_index(const RationalPair& z) {
  const Natural code = pair_encode(rational_index(z.q1), rational_index(z.q2)) + 1;
  return to_u64(code, "rational pair index");
}

std::string to_string(const RationalPair& z) {
  return "(" + to_string(z.q1) + "," + to_string(z.q2) + ")";
}

}  // namespace tunnelmeet
