#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pph/error.hpp"

namespace pph {

using Rational = mpq_class;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient field: the rationals, or Z/p for a prime p < 2^31.
class Field {
 public:
  static Field rational() { return Field{0}; }
  static Field prime(std::uint64_t p) {
    if (p >= (1ULL << 31) || !is_prime(p))
      throw Error(Errc::usage, "field modulus " + std::to_string(p) + " is not a prime below 2^31");
    return Field{p};
  }

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t modulus() const noexcept { return p_; }
  std::string name() const { return is_rational() ? "rat" : "F" + std::to_string(p_); }

  // Accepts "rat" or "F<p>".
  static Field parse(std::string_view s) {
    if (s == "rat") return rational();
    if (s.size() > 1 && s[0] == 'F') {
      std::uint64_t p = 0;
      for (char c : s.substr(1)) {
        if (c < '0' || c > '9' || p > (1ULL << 40)) throw Error(Errc::usage, "bad field: " + std::string(s));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return prime(p);
    }
    throw Error(Errc::usage, "bad field: " + std::string(s) + " (expected rat or F<p>)");
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

// An element of a Field. Rational values are kept canonical (lowest terms,
// positive denominator); prime-field values lie in [0, p).
class Scalar {
  struct Mod {
    std::uint64_t v;
    std::uint64_t p;
  };

 public:
  Scalar() : rep_(Rational(0)) {}
  explicit Scalar(Rational q) : rep_(std::move(q)) { std::get<Rational>(rep_).canonicalize(); }

  static Scalar zero(const Field& f) { return from_int(f, 0); }
  static Scalar one(const Field& f) { return from_int(f, 1); }
  static Scalar from_int(const Field& f, long v) {
    if (f.is_rational()) return Scalar(Rational(v));
    auto p = static_cast<long long>(f.modulus());
    long long r = static_cast<long long>(v) % p;
    if (r < 0) r += p;
    return Scalar(Mod{static_cast<std::uint64_t>(r), f.modulus()});
  }
  // Maps a rational into f; the denominator must be invertible mod p.
  static Scalar from_rational(const Field& f, const Rational& q) {
    if (f.is_rational()) return Scalar(q);
    Scalar num = from_mpz(f, q.get_num());
    Scalar den = from_mpz(f, q.get_den());
    return num / den;
  }

  Field field() const {
    if (auto m = std::get_if<Mod>(&rep_)) return Field(m->p);
    return Field::rational();
  }
  bool is_rational() const noexcept { return std::holds_alternative<Rational>(rep_); }
  const Rational& rational() const { return std::get<Rational>(rep_); }
  std::uint64_t residue() const { return std::get<Mod>(rep_).v; }

  bool is_zero() const {
    if (auto q = std::get_if<Rational>(&rep_)) return sgn(*q) == 0;
    return std::get<Mod>(rep_).v == 0;
  }

  Scalar operator-() const {
    if (auto q = std::get_if<Rational>(&rep_)) return Scalar(Rational(-*q));
    const auto& m = std::get<Mod>(rep_);
    return Scalar(Mod{m.v == 0 ? 0 : m.p - m.v, m.p});
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(Errc::domain, "inverse of zero");
    if (auto q = std::get_if<Rational>(&rep_)) return Scalar(Rational(1 / *q));
    const auto& m = std::get<Mod>(rep_);
    return Scalar(Mod{powmod(m.v, m.p - 2, m.p), m.p});
  }

  Scalar& operator+=(const Scalar& o) {
    if (auto q = std::get_if<Rational>(&rep_)) {
      *q += o.rat_of(*this);
    } else {
      auto& m = std::get<Mod>(rep_);
      m.v = (m.v + o.mod_of(m.p)) % m.p;
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    if (auto q = std::get_if<Rational>(&rep_)) {
      *q -= o.rat_of(*this);
    } else {
      auto& m = std::get<Mod>(rep_);
      m.v = (m.v + m.p - o.mod_of(m.p)) % m.p;
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (auto q = std::get_if<Rational>(&rep_)) {
      *q *= o.rat_of(*this);
    } else {
      auto& m = std::get<Mod>(rep_);
      m.v = (m.v * o.mod_of(m.p)) % m.p;
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    check_same(o);
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) throw Error(Errc::mode_mismatch, "comparing scalars of different fields");
    if (a.is_rational()) return a.rational() == b.rational();
    const auto& x = std::get<Mod>(a.rep_);
    const auto& y = std::get<Mod>(b.rep_);
    if (x.p != y.p) throw Error(Errc::mode_mismatch, "comparing scalars of different fields");
    return x.v == y.v;
  }

  std::string to_string() const {
    if (auto q = std::get_if<Rational>(&rep_)) return q->get_str();
    return std::to_string(std::get<Mod>(rep_).v);
  }

 private:
  explicit Scalar(Mod m) : rep_(m) {}

  static std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }

  static Scalar from_mpz(const Field& f, const mpz_class& z) {
    mpz_class r = z % static_cast<unsigned long>(f.modulus());
    if (r < 0) r += static_cast<unsigned long>(f.modulus());
    return Scalar(Mod{r.get_ui(), f.modulus()});
  }

  void check_same(const Scalar& o) const {
    if (is_rational() != o.is_rational() ||
        (!is_rational() && std::get<Mod>(rep_).p != std::get<Mod>(o.rep_).p))
      throw Error(Errc::mode_mismatch, "arithmetic on scalars of different fields");
  }
  const Rational& rat_of(const Scalar& self) const {
    self.check_same(*this);
    return std::get<Rational>(rep_);
  }
  std::uint64_t mod_of(std::uint64_t p) const {
    auto m = std::get_if<Mod>(&rep_);
    if (!m || m->p != p) throw Error(Errc::mode_mismatch, "arithmetic on scalars of different fields");
    return m->v;
  }

  std::variant<Rational, Mod> rep_;
};

// ---------------------------------------------------------------------------
// Exact decimal text <-> Rational.

// Parses "12", "-0.25", "3/8", "1e-3". Throws Errc::parse on anything else.
inline Rational parse_rational(std::string_view s) {
  auto fail = [&] { throw Error(Errc::parse, "not an exact decimal or fraction: '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    auto digits = [](std::string_view t, bool allow_sign) {
      if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!digits(num, true) || !digits(den, false)) fail();
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10), d(std::string(den), 10);
    if (d == 0) fail();
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string mant;
  long scale = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mant.push_back(c);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  long exp10 = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail();
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i == s.size()) fail();
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9' || exp10 > 100000) fail();
      exp10 = exp10 * 10 + (s[i] - '0');
    }
    if (eneg) exp10 = -exp10;
  }
  mpz_class n(mant, 10);
  long e = exp10 - scale;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  Rational q = e < 0 ? Rational(n, p10) : Rational(n * p10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

// Exact text form: a terminating decimal when the denominator is 2^a 5^b,
// otherwise "a/b".
inline std::string format_rational(const Rational& q) {
  mpz_class den = q.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return q.get_str();
  unsigned long digits = std::max(twos, fives);
  if (digits == 0) return q.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return neg ? "-" + s : s;
}

// A rational or +infinity; used for death times and distances.
class Extended {
 public:
  Extended() = default;
  Extended(Rational v) : value_(std::move(v)) { value_->canonicalize(); }  // NOLINT: implicit by design of the numeric tower
  static Extended infinity() { return Extended(std::nullopt); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw Error(Errc::domain, "value of infinity");
    return *value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
  }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(*a.value_, *b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::string to_string() const { return is_infinite() ? "inf" : format_rational(*value_); }

  static Extended parse(std::string_view s) {
    if (s == "inf" || s == "+inf" || s == "Inf") return infinity();
    return Extended(parse_rational(s));
  }

 private:
  explicit Extended(std::nullopt_t) : value_(std::nullopt) {}
  std::optional<Rational> value_ = Rational(0);
};

// |a - b| under the extended-plane conventions: |inf - inf| = 0, |inf - x| = inf.
inline Extended abs_diff(const Extended& a, const Extended& b) {
  if (a.is_infinite() && b.is_infinite()) return Rational(0);
  if (a.is_infinite() || b.is_infinite()) return Extended::infinity();
  return Rational(abs(a.value() - b.value()));
}

}  // namespace pph
