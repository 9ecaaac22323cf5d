#include "gf2perfect/poly.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cstdio>

namespace gf2 {

namespace {

using Word = Poly::Word;
using DWord = unsigned __int128;

std::atomic<int> g_karatsuba_threshold{512};

struct WordPair {
  Word lo;
  Word hi;
};

// Carry-less 64x64 -> 128 product, 4-bit window.
WordPair clmul(Word a, Word b) {
  DWord table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ a;
  }
  DWord r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 0xF];
  }
  return {static_cast<Word>(r), static_cast<Word>(r >> 64)};
}

void schoolbook(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto [lo, hi] = clmul(a[i], b[j]);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
}

// out must hold 2n words and be zeroed; a and b both hold n words.
void karatsuba(std::span<const Word> a, std::span<const Word> b, std::span<Word> out,
               std::size_t threshold_words) {
  const std::size_t n = a.size();
  if (n <= threshold_words || n < 2) {
    schoolbook(a, b, out);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t k = n - h;  // k >= h
  auto a0 = a.first(h), a1 = a.subspan(h);
  auto b0 = b.first(h), b1 = b.subspan(h);

  std::vector<Word> z0(2 * h, 0), z2(2 * k, 0), z1(2 * k, 0);
  karatsuba(a0, b0, z0, threshold_words);
  karatsuba(a1, b1, z2, threshold_words);

  std::vector<Word> sa(a1.begin(), a1.end()), sb(b1.begin(), b1.end());
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] ^= a0[i];
    sb[i] ^= b0[i];
  }
  karatsuba(sa, sb, z1, threshold_words);

  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] ^= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] ^= z2[i];

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] ^= z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] ^= z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] ^= z2[i];
}

// Spreads the low 32 bits of v so bit i lands on bit 2i.
Word spread32(Word v) {
  v &= 0xFFFFFFFFull;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

// Inverse of spread32: gathers the even bits of v into the low 32 bits.
Word gather32(Word v) {
  v &= 0x5555555555555555ull;
  v = (v | (v >> 1)) & 0x3333333333333333ull;
  v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
  v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
  v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
  return v;
}

int word_degree(std::span<const Word> w) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] != 0) return static_cast<int>(i) * 64 + 63 - std::countl_zero(w[i]);
  }
  return -1;
}

// dst ^= src << shift, dst large enough.
void xor_shifted(std::vector<Word>& dst, std::span<const Word> src, int shift) {
  const std::size_t off = static_cast<std::size_t>(shift) / 64;
  const int bits = shift % 64;
  if (bits == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[off + i] ^= src[i];
    return;
  }
  Word carry = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[off + i] ^= (src[i] << bits) | carry;
    carry = src[i] >> (64 - bits);
  }
  if (carry && off + src.size() < dst.size()) dst[off + src.size()] ^= carry;
}

// Reduces r in place modulo q; collects quotient bits when q_out is non-null.
void reduce_in_place(std::vector<Word>& r, const Poly& q, std::vector<Word>* q_out) {
  const int dq = q.degree();
  auto qw = q.words();
  if (dq < 64) {
    // Single-word divisor: shift-XOR the word directly.
    const Word qv = qw[0];
    for (int d = word_degree(r); d >= dq; d = word_degree(r)) {
      const int s = d - dq;
      if (q_out) (*q_out)[static_cast<std::size_t>(s) / 64] |= Word{1} << (s % 64);
      const std::size_t off = static_cast<std::size_t>(s) / 64;
      const int bits = s % 64;
      r[off] ^= qv << bits;
      if (bits != 0 && off + 1 < r.size()) r[off + 1] ^= qv >> (64 - bits);
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return;
  }
  for (int d = word_degree(r); d >= dq; d = word_degree(r)) {
    const int s = d - dq;
    if (q_out) (*q_out)[static_cast<std::size_t>(s) / 64] |= Word{1} << (s % 64);
    xor_shifted(r, qw, s);
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

Poly::Poly(std::vector<Word> words) : words_(std::move(words)) { trim(); }

Poly Poly::from_mask(std::uint64_t mask) {
  Poly p;
  if (mask) p.words_.push_back(mask);
  return p;
}

Poly Poly::monomial(int k) {
  if (k < 0) throw Error("negative monomial exponent");
  std::vector<Word> w(static_cast<std::size_t>(k) / 64 + 1, 0);
  w.back() = Word{1} << (k % 64);
  return Poly(std::move(w));
}

void Poly::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int Poly::degree() const noexcept {
  if (words_.empty()) return -1;
  return static_cast<int>(words_.size() - 1) * 64 + 63 - std::countl_zero(words_.back());
}

bool Poly::coeff(int i) const noexcept {
  if (i < 0) return false;
  const auto w = static_cast<std::size_t>(i) / 64;
  if (w >= words_.size()) return false;
  return (words_[w] >> (i % 64)) & 1;
}

std::uint64_t Poly::to_mask() const {
  if (words_.size() > 1) throw Error("polynomial does not fit in 64 bits");
  return words_.empty() ? 0 : words_[0];
}

bool Poly::eval_at_one() const noexcept {
  int parity = 0;
  for (Word w : words_) parity ^= std::popcount(w) & 1;
  return parity != 0;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
  for (std::size_t i = 0; i < rhs.words_.size(); ++i) words_[i] ^= rhs.words_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = mul(*this, rhs);
  return *this;
}

Poly& Poly::operator<<=(int k) {
  if (k < 0) throw Error("negative shift");
  if (is_zero() || k == 0) return *this;
  std::vector<Word> out(words_.size() + static_cast<std::size_t>(k) / 64 + 1, 0);
  xor_shifted(out, words_, k);
  words_ = std::move(out);
  trim();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) { return mul(lhs, rhs); }

std::strong_ordering operator<=>(const Poly& lhs, const Poly& rhs) {
  if (auto c = lhs.degree() <=> rhs.degree(); c != 0) return c;
  for (std::size_t i = lhs.words_.size(); i-- > 0;) {
    if (auto c = lhs.words_[i] <=> rhs.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Poly Poly::squared() const {
  std::vector<Word> out(words_.size() * 2, 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out[2 * i] = spread32(words_[i]);
    out[2 * i + 1] = spread32(words_[i] >> 32);
  }
  return Poly(std::move(out));
}

int karatsuba_threshold() noexcept { return g_karatsuba_threshold.load(std::memory_order_relaxed); }

void set_karatsuba_threshold(int degree) noexcept {
  g_karatsuba_threshold.store(std::max(degree, 64), std::memory_order_relaxed);
}

Poly add(const Poly& p, const Poly& q) { return p + q; }

Poly mul_schoolbook(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Word> out(p.words().size() + q.words().size(), 0);
  schoolbook(p.words(), q.words(), out);
  return Poly(std::move(out));
}

Poly mul(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto threshold_words = static_cast<std::size_t>(karatsuba_threshold()) / 64;
  const std::size_t n = std::max(p.words().size(), q.words().size());
  if (std::min(p.words().size(), q.words().size()) <= threshold_words) {
    return mul_schoolbook(p, q);
  }
  std::vector<Word> a(p.words().begin(), p.words().end()), b(q.words().begin(), q.words().end());
  a.resize(n, 0);
  b.resize(n, 0);
  std::vector<Word> out(2 * n, 0);
  karatsuba(a, b, out, threshold_words);
  return Poly(std::move(out));
}

DivRem divrem(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw Error("division by zero polynomial");
  if (p.degree() < q.degree()) return {Poly{}, p};
  std::vector<Word> r(p.words().begin(), p.words().end());
  std::vector<Word> quot(static_cast<std::size_t>(p.degree() - q.degree()) / 64 + 1, 0);
  reduce_in_place(r, q, &quot);
  return {Poly(std::move(quot)), Poly(std::move(r))};
}

Poly mod(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw Error("division by zero polynomial");
  if (p.degree() < q.degree()) return p;
  std::vector<Word> r(p.words().begin(), p.words().end());
  reduce_in_place(r, q, nullptr);
  return Poly(std::move(r));
}

Poly gcd(Poly p, Poly q) {
  while (!q.is_zero()) {
    Poly r = mod(p, q);
    p = std::move(q);
    q = std::move(r);
  }
  return p;
}

Poly pow(const Poly& p, unsigned k) {
  Poly result = Poly::one();
  Poly base = p;
  while (k) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = base.squared();
  }
  return result;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return mod(mul(a, b), m); }

Poly sqrmod(const Poly& a, const Poly& m) { return mod(a.squared(), m); }

Poly powmod(const Poly& base, unsigned long long k, const Poly& m) {
  Poly result = mod(Poly::one(), m);
  Poly b = mod(base, m);
  while (k) {
    if (k & 1) result = mulmod(result, b, m);
    k >>= 1;
    if (k) b = sqrmod(b, m);
  }
  return result;
}

Poly derivative(const Poly& p) {
  std::vector<Word> out(p.words().begin(), p.words().end());
  for (auto& w : out) w = (w & 0xAAAAAAAAAAAAAAAAull) >> 1;
  return Poly(std::move(out));
}

Poly sqrt_of_square(const Poly& p) {
  auto w = p.words();
  for (Word v : w) {
    if (v & 0xAAAAAAAAAAAAAAAAull) throw Error("polynomial is not a square");
  }
  std::vector<Word> out((w.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i / 2] |= gather32(w[i]) << (32 * (i % 2));
  }
  return Poly(std::move(out));
}

Poly bar(const Poly& p) {
  // Horner in x + 1: r <- r * (x + 1) + c_i.
  Poly r;
  for (int i = p.degree(); i >= 0; --i) {
    r = (r << 1) + r;
    if (p.coeff(i)) r += Poly::one();
  }
  return r;
}

Poly star(const Poly& p) {
  if (p.is_zero()) throw Error("reciprocal of the zero polynomial");
  const int d = p.degree();
  std::vector<Word> out(static_cast<std::size_t>(d) / 64 + 1, 0);
  for (int i = 0; i <= d; ++i) {
    if (p.coeff(i)) out[static_cast<std::size_t>(d - i) / 64] |= Word{1} << ((d - i) % 64);
  }
  return Poly(std::move(out));
}

bool is_even_poly(const Poly& p) {
  if (p.is_zero()) throw Error("parity of the zero polynomial");
  return !p.eval_at_zero() || !p.eval_at_one();
}

namespace {

constexpr int kMaxParsedDegree = 1 << 24;

class Parser {
 public:
  Parser(std::string_view text, const SymbolResolver& resolver) : text_(text), resolver_(resolver) {}

  Poly run() {
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    Poly p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Poly expr() {
    Poly acc = term();
    for (skip_ws(); peek() == '+'; skip_ws()) {
      ++pos_;
      acc += term();
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (skip_ws(); peek() == '*'; skip_ws()) {
      ++pos_;
      acc = mul(acc, power());
    }
    return acc;
  }

  Poly power() {
    Poly base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    unsigned long long k = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + static_cast<unsigned>(peek() - '0');
      if (k > static_cast<unsigned long long>(kMaxParsedDegree)) {
        throw ParseError("exponent too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected exponent after '^'", start);
    if (base.degree() > 0 &&
        static_cast<unsigned long long>(base.degree()) * k > static_cast<unsigned long long>(kMaxParsedDegree)) {
      throw ParseError("power degree too large", start);
    }
    if (base.is_zero()) return k == 0 ? Poly::one() : Poly{};
    return pow(base, static_cast<unsigned>(k));
  }

  Poly atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (at_end()) throw ParseError("expected term", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '0' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X')) {
      return hex();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      const auto digits = text_.substr(start, pos_ - start);
      if (digits == "1") return Poly::one();
      if (digits == "0") return Poly{};
      throw ParseError("constant must be 0 or 1", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const auto ident = text_.substr(start, pos_ - start);
      if (ident == "x") return Poly::x();
      if (resolver_) {
        if (auto p = resolver_(ident)) return *p;
      }
      throw ParseError("unknown symbol '" + std::string(ident) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  Poly hex() {
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end() && std::isxdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError("expected hex digits after 0x", start);
    const auto digits = text_.substr(start, pos_ - start);
    std::vector<Word> words((digits.size() + 15) / 16, 0);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const char ch = digits[digits.size() - 1 - i];
      const Word nibble = std::isdigit(static_cast<unsigned char>(ch))
                              ? static_cast<Word>(ch - '0')
                              : static_cast<Word>(std::tolower(static_cast<unsigned char>(ch)) - 'a' + 10);
      words[i / 16] |= nibble << (4 * (i % 16));
    }
    return Poly(std::move(words));
  }

  std::string_view text_;
  const SymbolResolver& resolver_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse(std::string_view text, const SymbolResolver& resolver) { return Parser(text, resolver).run(); }

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    if (!p.coeff(i)) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += '1';
    } else if (i == 1) {
      out += 'x';
    } else {
      out += "x^" + std::to_string(i);
    }
  }
  return out;
}

std::string to_hex(const Poly& p) {
  if (p.is_zero()) return "0x0";
  auto w = p.words();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(w.back()));
  std::string out = std::string("0x") + buf;
  for (std::size_t i = w.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w[i]));
    out += buf;
  }
  return out;
}

}  // namespace gf2

std::size_t std::hash<gf2::Poly>::operator()(const gf2::Poly& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : p.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
