#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lpa {

enum class FieldKind { rationals, modp };

struct Field {
  FieldKind kind = FieldKind::rationals;
  uint32_t p = 0;  // prime, only for modp

  static Field rationals() { return Field{FieldKind::rationals, 0}; }
  static Field modp(uint32_t p);

  bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const Field& o) const { return !(*this == o); }
  std::string to_string() const;
};

// Parses "q" or "fp:<p>".
Field parse_field(const std::string& text);

bool is_prime(uint64_t n);

// Exact field element: an arbitrary-precision rational or a residue mod p.
// All arithmetic is exact; there is no floating point anywhere in the
// library.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()) {}
  static Scalar zero(const Field& f) { return Scalar(f); }
  static Scalar one(const Field& f);
  static Scalar from_int(const Field& f, long v);
  static Scalar from_fraction(const Field& f, long num, long den);
  // Decimal digit strings of any length; rationals keep full precision,
  // residues reduce mod p. `den` empty means 1.
  static Scalar from_decimal(const Field& f, const std::string& num, const std::string& den = "");

  const Field& field() const { return field_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar negated() const;

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // True when the canonical printed form carries a leading minus sign.
  bool prints_negative() const;

  // Canonical text: lowest-terms rational ("-1/2", "3") or the residue
  // 0..p-1 as a plain integer.
  std::string to_string() const;
  // Same but with the sign stripped; used by the element printer, which
  // folds signs into the "+"/"-" separators.
  std::string magnitude_string() const;

 private:
  explicit Scalar(const Field& f) : field_(f) {}
  void check_same_field(const Scalar& o) const;

  Field field_;
  mpq_class q_;     // rationals payload
  uint64_t r_ = 0;  // modp payload, always < p
};

}  // namespace lpa
