#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gf2 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed polynomial text; `position()` is a 0-based offset
/// into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A polynomial over GF(2), stored as little-endian 64-bit words where bit i
/// is the coefficient of x^i. The word vector never has a zero top word, so
/// the zero polynomial is exactly the empty vector and has degree -1.
class Poly {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  Poly() = default;
  explicit Poly(std::vector<Word> words);
  static Poly from_mask(std::uint64_t mask);
  /// x^k
  static Poly monomial(int k);
  static Poly one() { return from_mask(1); }
  static Poly x() { return from_mask(2); }
  /// x + 1
  static Poly x_plus_one() { return from_mask(3); }

  bool is_zero() const noexcept { return words_.empty(); }
  bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }
  /// -1 for the zero polynomial.
  int degree() const noexcept;
  bool coeff(int i) const noexcept;
  std::span<const Word> words() const noexcept { return words_; }
  /// Low 64 coefficients; throws if the degree exceeds 63.
  std::uint64_t to_mask() const;
  bool fits_word() const noexcept { return words_.size() <= 1; }

  Poly& operator+=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator<<=(int k);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator<<(Poly p, int k) { return p <<= k; }
  friend bool operator==(const Poly&, const Poly&) = default;
  /// Ordered by degree first, then by the coefficient mask read as an integer.
  friend std::strong_ordering operator<=>(const Poly& lhs, const Poly& rhs);

  /// Square (bit interleave).
  Poly squared() const;
  /// p evaluated at 0 and 1.
  bool eval_at_zero() const noexcept { return coeff(0); }
  bool eval_at_one() const noexcept;

 private:
  void trim() noexcept;
  std::vector<Word> words_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// Degree at or above which multiplication switches from schoolbook to
/// Karatsuba. Process-wide; intended for tests and tuning.
int karatsuba_threshold() noexcept;
void set_karatsuba_threshold(int degree) noexcept;

Poly add(const Poly& p, const Poly& q);
Poly mul(const Poly& p, const Poly& q);
Poly mul_schoolbook(const Poly& p, const Poly& q);
DivRem divrem(const Poly& p, const Poly& q);
Poly mod(const Poly& p, const Poly& q);
Poly gcd(Poly p, Poly q);
Poly pow(const Poly& p, unsigned k);

/// (a * b) mod m and a^(2^k) mod m for the factorization routines.
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly sqrmod(const Poly& a, const Poly& m);
Poly powmod(const Poly& base, unsigned long long k, const Poly& m);

Poly derivative(const Poly& p);
/// Inverse of squaring; requires every odd coefficient to be zero.
Poly sqrt_of_square(const Poly& p);
/// p(x + 1).
Poly bar(const Poly& p);
/// x^deg(p) * p(1/x); throws for p = 0.
Poly star(const Poly& p);
/// Has a linear factor, i.e. p(0) = 0 or p(1) = 0. Throws for p = 0.
bool is_even_poly(const Poly& p);

/// Resolves identifiers such as "M_1" inside polynomial expressions.
using SymbolResolver = std::function<std::optional<Poly>(std::string_view)>;

/// Parses sums of the terms "1", "x", "x^k" (repeated terms cancel), the
/// hexadecimal mask form "0x...", and products/powers of parenthesized
/// subexpressions, e.g. "x^2*(x+1)*(x^2+x+1)".
Poly parse(std::string_view text, const SymbolResolver& resolver = {});
/// Descending terms, e.g. "x^9+x+1"; zero prints as "0".
std::string to_string(const Poly& p);
/// "0x" followed by lowercase hex of the coefficient mask.
std::string to_hex(const Poly& p);

}  // namespace gf2

template <>
struct std::hash<gf2::Poly> {
  std::size_t operator()(const gf2::Poly& p) const noexcept;
};
