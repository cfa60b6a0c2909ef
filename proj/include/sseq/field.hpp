#pragma once
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sseq/errors.hpp"

namespace sseq {

// Finite field of odd order with full discrete-log tables. Elements are
// integer codes: 0 is zero; for an extension built over a base field, codes
// below the base order are exactly the base-field constants, so the numeric
// identity on small codes is a genuine field embedding. Immutable once built.
class FiniteField {
 public:
  static constexpr long max_order = 1024;

  static std::shared_ptr<const FiniteField> prime(long p);
  // cached by order; builds a tower over the prime field when q is not prime
  static std::shared_ptr<const FiniteField> prime_power(long q);
  // quotient base[x]/(modulus); modulus monic irreducible, coefficients are
  // base codes low-to-high
  static std::shared_ptr<const FiniteField> extension(
      std::shared_ptr<const FiniteField> base, const std::vector<long>& modulus);

  long order() const { return q_; }
  long characteristic() const { return p_; }
  int degree_over_base() const { return deg_; }
  const std::shared_ptr<const FiniteField>& base() const { return base_; }

  long add(long a, long b) const;
  long sub(long a, long b) const;
  long neg(long a) const;
  long mul(long a, long b) const;
  long inv(long a) const;
  long div(long a, long b) const;
  long pow(long a, long e) const;
  long from_int(long n) const;  // n mod p, as a prime-subfield constant

  long dlog(long a) const;  // a != 0, value in [0, q-1)
  long from_dlog(long k) const;
  long generator() const;
  bool is_square(long a) const;  // a != 0

  // multiplicative norm down to the base field; the result is a base code
  long norm_to_base(long a) const;

  // coefficient vector over the base field, length degree_over_base()
  std::vector<long> decode(long a) const;
  long encode(const std::vector<long>& digits) const;

 private:
  FiniteField() = default;
  void build_tables();
  long raw_mul(long a, long b) const;  // polynomial multiplication mod modulus

  long q_ = 0, p_ = 0;
  int deg_ = 1;
  std::shared_ptr<const FiniteField> base_;  // null for prime fields
  std::vector<long> modulus_;                // empty for prime fields
  std::vector<long> exp_, log_;
};

// Dense polynomial over a finite field: coefficient codes low-to-high with a
// nonzero leading coefficient; the zero polynomial has no coefficients.
struct Poly {
  std::shared_ptr<const FiniteField> k;
  std::vector<long> c;

  int deg() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  long lc() const { return c.empty() ? 0 : c.back(); }
  bool is_monic() const { return lc() == 1; }
  bool operator==(const Poly& o) const { return k.get() == o.k.get() && c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

Poly poly(std::shared_ptr<const FiniteField> k, std::vector<long> coeffs);
Poly poly_const(std::shared_ptr<const FiniteField> k, long code);
Poly poly_x(std::shared_ptr<const FiniteField> k);

Poly padd(const Poly& a, const Poly& b);
Poly psub(const Poly& a, const Poly& b);
Poly pmul(const Poly& a, const Poly& b);
std::pair<Poly, Poly> pdivmod(const Poly& a, const Poly& b);  // quotient, remainder
Poly pmod(const Poly& a, const Poly& b);
Poly pgcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
Poly pmonic(const Poly& a);
bool pless(const Poly& a, const Poly& b);  // by degree, then coefficients
std::string pstr(const Poly& a, const char* var = "t");

bool is_irreducible(const Poly& a);
std::vector<Poly> monic_irreducibles(std::shared_ptr<const FiniteField> k, int degree);

struct PolyFactor {
  long unit = 1;                              // leading coefficient
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity
};
PolyFactor factor_poly(const Poly& a);

// Reduced fraction of polynomials: monic denominator, gcd(num, den) = 1,
// zero stored as 0/1.
struct RatFunc {
  Poly num, den;
  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
};

RatFunc ratfunc(Poly num, Poly den);
RatFunc rf_poly(Poly p);
RatFunc rf_const(std::shared_ptr<const FiniteField> k, long code);
RatFunc rmul(const RatFunc& a, const RatFunc& b);
RatFunc rdiv(const RatFunc& a, const RatFunc& b);
RatFunc radd(const RatFunc& a, const RatFunc& b);
RatFunc rsub(const RatFunc& a, const RatFunc& b);
RatFunc rneg(const RatFunc& a);
RatFunc rinv(const RatFunc& a);
RatFunc one_minus(const RatFunc& a);
std::string rstr(const RatFunc& a);

}  // namespace sseq
