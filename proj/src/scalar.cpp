#include "lpa/scalar.hpp"

#include <stdexcept>

#include "lpa/errors.hpp"

namespace lpa {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::modp(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  return Field{FieldKind::modp, p};
}

std::string Field::to_string() const {
  if (kind == FieldKind::rationals) return "Q";
  return "F_" + std::to_string(p);
}

Field parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return Field::rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string num = text.substr(3);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad field descriptor '" + text + "'");
    unsigned long p = std::stoul(num);
    if (p >= (1ULL << 31)) throw std::invalid_argument("field characteristic too large");
    return Field::modp(static_cast<uint32_t>(p));
  }
  throw std::invalid_argument("bad field descriptor '" + text + "' (expected q or fp:<p>)");
}

Scalar Scalar::one(const Field& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const Field& f, long v) {
  Scalar s(f);
  if (f.kind == FieldKind::rationals) {
    s.q_ = v;
  } else {
    long m = v % static_cast<long>(f.p);
    if (m < 0) m += f.p;
    s.r_ = static_cast<uint64_t>(m);
  }
  return s;
}

Scalar Scalar::from_fraction(const Field& f, long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Scalar s(f);
  if (f.kind == FieldKind::rationals) {
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
  } else {
    // num * den^{-1} mod p, via Fermat.
    Scalar n = from_int(f, num), d = from_int(f, den);
    if (d.r_ == 0) throw std::invalid_argument("denominator divisible by p");
    uint64_t inv = 1, base = d.r_, e = f.p - 2;
    while (e) {
      if (e & 1) inv = inv * base % f.p;
      base = base * base % f.p;
      e >>= 1;
    }
    s.r_ = n.r_ * inv % f.p;
  }
  return s;
}

Scalar Scalar::from_decimal(const Field& f, const std::string& num, const std::string& den) {
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad scalar literal '" + num + "'");
  if (!den.empty() && den.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad scalar literal '" + den + "'");
  Scalar s(f);
  if (f.kind == FieldKind::rationals) {
    mpz_class n(num), d(den.empty() ? "1" : den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    s.q_ = mpq_class(n, d);
    s.q_.canonicalize();
    return s;
  }
  mpz_class n(num);
  uint64_t nr = mpz_fdiv_ui(n.get_mpz_t(), f.p);
  if (den.empty()) {
    s.r_ = nr;
    return s;
  }
  mpz_class d(den);
  uint64_t dr = mpz_fdiv_ui(d.get_mpz_t(), f.p);
  if (dr == 0)
    throw AmbientMismatchError("denominator divisible by the characteristic of " + f.to_string());
  uint64_t inv = 1, base = dr, e = f.p - 2;
  while (e) {
    if (e & 1) inv = inv * base % f.p;
    base = base * base % f.p;
    e >>= 1;
  }
  s.r_ = nr * inv % f.p;
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_)
    throw AmbientMismatchError("scalar field mismatch: " + field_.to_string() +
                               " vs " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s(field_);
  if (field_.kind == FieldKind::rationals)
    s.q_ = q_ + o.q_;
  else
    s.r_ = (r_ + o.r_) % field_.p;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + o.negated(); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s(field_);
  if (field_.kind == FieldKind::rationals)
    s.q_ = q_ * o.q_;
  else
    s.r_ = r_ * o.r_ % field_.p;
  return s;
}

Scalar Scalar::negated() const {
  Scalar s(field_);
  if (field_.kind == FieldKind::rationals)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : field_.p - r_;
  return s;
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::rationals ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::rationals ? q_ == 1 : r_ == 1;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.kind == FieldKind::rationals ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::prints_negative() const {
  return field_.kind == FieldKind::rationals && q_ < 0;
}

std::string Scalar::to_string() const {
  if (field_.kind == FieldKind::rationals) return q_.get_str();
  return std::to_string(r_);
}

std::string Scalar::magnitude_string() const {
  if (field_.kind == FieldKind::rationals) {
    mpq_class m = q_ < 0 ? mpq_class(-q_) : q_;
    return m.get_str();
  }
  return std::to_string(r_);
}

}  // namespace lpa
