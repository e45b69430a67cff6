#include "factlab/field.hpp"

#include <cctype>

#include "factlab/error.hpp"

namespace factlab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp inverse(Fp a) {
  if (a.v == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = a.p, new_r = a.v;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += a.p;
  return {static_cast<std::uint32_t>(t), a.p};
}

Fp pow(Fp a, std::uint64_t e) {
  return {static_cast<std::uint32_t>(powmod(a.v, e, a.p)), a.p};
}

Rational inverse(const Rational& a) {
  if (a == 0) throw std::domain_error("inverse of zero in Q");
  return Rational(1) / a;
}

std::optional<Fp> sqrt_exact(Fp a) {
  const std::uint64_t p = a.p;
  if (a.v == 0) return a;
  if (powmod(a.v, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t root;
  if (p % 4 == 3) {
    root = powmod(a.v, (p + 1) / 4, p);
  } else {
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a.v, q, p);
    root = powmod(a.v, (q + 1) / 2, p);
    while (t != 1) {
      std::uint64_t i = 0, t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      root = mulmod(root, b, p);
    }
  }
  if (p - root < root) root = p - root;
  return Fp{static_cast<std::uint32_t>(root), a.p};
}

std::optional<Rational> sqrt_exact(const Rational& a) {
  if (a < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(a);
  const BigInt den = boost::multiprecision::denominator(a);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  FieldSpec s;
  s.kind = Kind::Prime;
  s.p = p;
  return s;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "QQ") return rational();
  if (text.substr(0, 3) == "Fp:" && text.size() > 3) {
    std::uint64_t p = 0;
    for (char c : text.substr(3)) {
      if (!std::isdigit(static_cast<unsigned char>(c)) || p > (1ULL << 32)) {
        throw Error(ErrorCode::BadField, "bad field spec '" + std::string(text) + "'");
      }
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (p <= 2 || p >= (1ULL << 31) || !is_prime_u32(p)) {
      throw Error(ErrorCode::BadField, "modulus must be an odd prime below 2^31: " + std::string(text));
    }
    return prime(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorCode::BadField, "bad field spec '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  return kind == Kind::Rational ? std::string("QQ") : "Fp:" + std::to_string(p);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= 2 || p >= (1U << 31) || !is_prime_u32(p)) {
    throw Error(ErrorCode::BadField, "modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

Fp PrimeField::from_int(std::int64_t x) const {
  std::int64_t r = x % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r), p_};
}

Fp PrimeField::from_big(const BigInt& x) const {
  BigInt r = x % p_;
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r), p_};
}

Fp PrimeField::from_ratio(const BigInt& num, const BigInt& den) const {
  const Fp d = from_big(den);
  if (is_zero(d)) throw Error(ErrorCode::FieldMismatch, "denominator divisible by p");
  return from_big(num) / d;
}

Rational RationalField::from_ratio(const BigInt& num, const BigInt& den) const {
  if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator");
  if (den < 0) return Rational(BigInt(-num), BigInt(-den));
  return Rational(num, den);
}

std::string RationalField::format(const Rational& x) const {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

void parse_ratio(std::string_view text, BigInt& num, BigInt& den) {
  auto digits = [&](std::string_view s) {
    if (s.empty()) throw Error(ErrorCode::SyntaxError, "empty number in '" + std::string(text) + "'");
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::SyntaxError, "bad number '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(s));
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    num = digits(body);
    den = 1;
  } else {
    num = digits(body.substr(0, slash));
    den = digits(body.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
}

}  // namespace factlab
