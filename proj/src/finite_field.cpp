#include "sseq/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace sseq {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_field_match(const Poly& a, const Poly& b) {
  if (a.k.get() != b.k.get()) throw structural_error("poly: mixed fields");
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::prime(long p) {
  if (p == 2) throw unsupported_error("finite field: even characteristic is not supported");
  if (!is_prime(p)) throw invalid_error("finite field: order is not a prime power");
  if (p > max_order) throw unsupported_error("finite field: order exceeds the discrete-log bound");
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->q_ = p;
  f->p_ = p;
  f->deg_ = 1;
  f->build_tables();
  return f;
}

std::shared_ptr<const FiniteField> FiniteField::prime_power(long q) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;

  if (q < 3) throw invalid_error("finite field: order must be at least 3");
  long p = 0;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::shared_ptr<const FiniteField> f;
  if (p == 0) {
    f = prime(q);
  } else {
    int e = 0;
    long m = q;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1) throw invalid_error("finite field: order is not a prime power");
    auto fp = prime(p);  // rejects p = 2
    if (q > max_order)
      throw unsupported_error("finite field: order exceeds the discrete-log bound");
    std::vector<Poly> irr = monic_irreducibles(fp, e);
    f = extension(fp, irr.front().c);
  }
  cache.emplace(q, f);
  return f;
}

std::shared_ptr<const FiniteField> FiniteField::extension(
    std::shared_ptr<const FiniteField> base, const std::vector<long>& modulus) {
  if (!base) throw invalid_error("finite field: missing base field");
  Poly m = poly(base, modulus);
  if (m.deg() < 1 || !m.is_monic())
    throw invalid_error("finite field: modulus must be monic of positive degree");
  if (!is_irreducible(m)) throw invalid_error("finite field: modulus is reducible");
  long q = 1;
  for (int i = 0; i < m.deg(); ++i) {
    q *= base->order();
    if (q > max_order)
      throw unsupported_error("finite field: order exceeds the discrete-log bound");
  }
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->q_ = q;
  f->p_ = base->characteristic();
  f->deg_ = m.deg();
  f->base_ = std::move(base);
  f->modulus_ = m.c;
  f->build_tables();
  return f;
}

std::vector<long> FiniteField::decode(long a) const {
  if (a < 0 || a >= q_) throw invalid_error("finite field: code out of range");
  if (!base_) return {a};
  std::vector<long> d(static_cast<size_t>(deg_), 0);
  long b = base_->order();
  for (int i = 0; i < deg_; ++i) {
    d[size_t(i)] = a % b;
    a /= b;
  }
  return d;
}

long FiniteField::encode(const std::vector<long>& digits) const {
  if (!base_) return digits.empty() ? 0 : digits[0];
  long b = base_->order(), a = 0;
  for (int i = deg_ - 1; i >= 0; --i)
    a = a * b + (size_t(i) < digits.size() ? digits[size_t(i)] : 0);
  return a;
}

long FiniteField::raw_mul(long a, long b) const {
  if (!base_) return (a * b) % p_;
  std::vector<long> x = decode(a), y = decode(b);
  std::vector<long> prod(size_t(2 * deg_ - 1), 0);
  for (int i = 0; i < deg_; ++i)
    for (int j = 0; j < deg_; ++j)
      prod[size_t(i + j)] =
          base_->add(prod[size_t(i + j)], base_->mul(x[size_t(i)], y[size_t(j)]));
  // reduce modulo the (monic) modulus
  for (int i = int(prod.size()) - 1; i >= deg_; --i) {
    long c = prod[size_t(i)];
    if (c == 0) continue;
    prod[size_t(i)] = 0;
    for (int j = 0; j < deg_; ++j)
      prod[size_t(i - deg_ + j)] =
          base_->sub(prod[size_t(i - deg_ + j)], base_->mul(c, modulus_[size_t(j)]));
  }
  prod.resize(size_t(deg_));
  return encode(prod);
}

void FiniteField::build_tables() {
  long n = q_ - 1;
  for (long cand = 2; cand < q_; ++cand) {
    long acc = cand, ord = 1;
    while (acc != 1) {
      acc = raw_mul(acc, cand);
      ++ord;
      if (ord > q_) throw internal_error("finite field: element order overflow");
    }
    if (ord == n) {
      exp_.assign(size_t(n), 0);
      log_.assign(size_t(q_), -1);
      exp_[0] = 1;
      log_[1] = 0;
      for (long i = 1; i < n; ++i) {
        exp_[size_t(i)] = raw_mul(exp_[size_t(i - 1)], cand);
        log_[size_t(exp_[size_t(i)])] = i;
      }
      return;
    }
  }
  throw internal_error("finite field: no multiplicative generator found");
}

long FiniteField::add(long a, long b) const {
  if (!base_) return (a + b) % p_;
  std::vector<long> x = decode(a), y = decode(b);
  for (int i = 0; i < deg_; ++i) x[size_t(i)] = base_->add(x[size_t(i)], y[size_t(i)]);
  return encode(x);
}

long FiniteField::sub(long a, long b) const {
  if (!base_) return ((a - b) % p_ + p_) % p_;
  std::vector<long> x = decode(a), y = decode(b);
  for (int i = 0; i < deg_; ++i) x[size_t(i)] = base_->sub(x[size_t(i)], y[size_t(i)]);
  return encode(x);
}

long FiniteField::neg(long a) const { return sub(0, a); }

long FiniteField::mul(long a, long b) const {
  if (a < 0 || a >= q_ || b < 0 || b >= q_)
    throw invalid_error("finite field: code out of range");
  if (a == 0 || b == 0) return 0;
  return exp_[size_t((log_[size_t(a)] + log_[size_t(b)]) % (q_ - 1))];
}

long FiniteField::inv(long a) const {
  if (a == 0) throw invalid_error("finite field: division by zero");
  return exp_[size_t((q_ - 1 - dlog(a)) % (q_ - 1))];
}

long FiniteField::div(long a, long b) const { return mul(a, inv(b)); }

long FiniteField::pow(long a, long e) const {
  if (a < 0 || a >= q_) throw invalid_error("finite field: code out of range");
  if (e < 0) return pow(inv(a), -e);
  if (a == 0) return e == 0 ? 1 : 0;
  long n = q_ - 1;
  return exp_[size_t((dlog(a) * (e % n)) % n)];
}

long FiniteField::from_int(long n) const { return ((n % p_) + p_) % p_; }

long FiniteField::dlog(long a) const {
  if (a <= 0 || a >= q_) {
    if (a == 0) throw invalid_error("finite field: discrete log of zero");
    throw invalid_error("finite field: code out of range");
  }
  return log_[size_t(a)];
}

long FiniteField::from_dlog(long k) const {
  long n = q_ - 1;
  return exp_[size_t(((k % n) + n) % n)];
}

long FiniteField::generator() const { return exp_[1]; }

bool FiniteField::is_square(long a) const { return dlog(a) % 2 == 0; }

long FiniteField::norm_to_base(long a) const {
  if (!base_) return a;
  if (a == 0) return 0;
  long m = (q_ - 1) / (base_->order() - 1);
  long r = pow(a, m);
  if (r >= base_->order()) throw internal_error("finite field: norm left the base field");
  return r;
}

Poly poly(std::shared_ptr<const FiniteField> k, std::vector<long> coeffs) {
  if (!k) throw invalid_error("poly: missing field");
  for (long c : coeffs)
    if (c < 0 || c >= k->order()) throw invalid_error("finite field: code out of range");
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return Poly{std::move(k), std::move(coeffs)};
}

Poly poly_const(std::shared_ptr<const FiniteField> k, long code) {
  return poly(std::move(k), {code});
}

Poly poly_x(std::shared_ptr<const FiniteField> k) { return poly(std::move(k), {0, 1}); }

Poly padd(const Poly& a, const Poly& b) {
  check_field_match(a, b);
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long x = i < a.c.size() ? a.c[i] : 0;
    long y = i < b.c.size() ? b.c[i] : 0;
    c[i] = a.k->add(x, y);
  }
  return poly(a.k, std::move(c));
}

Poly psub(const Poly& a, const Poly& b) {
  check_field_match(a, b);
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long x = i < a.c.size() ? a.c[i] : 0;
    long y = i < b.c.size() ? b.c[i] : 0;
    c[i] = a.k->sub(x, y);
  }
  return poly(a.k, std::move(c));
}

Poly pmul(const Poly& a, const Poly& b) {
  check_field_match(a, b);
  if (a.is_zero() || b.is_zero()) return poly(a.k, {});
  std::vector<long> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = a.k->add(c[i + j], a.k->mul(a.c[i], b.c[j]));
  return poly(a.k, std::move(c));
}

std::pair<Poly, Poly> pdivmod(const Poly& a, const Poly& b) {
  check_field_match(a, b);
  if (b.is_zero()) throw invalid_error("poly: division by zero");
  Poly r = a;
  std::vector<long> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, 0);
  long blc = b.lc();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    long coef = a.k->div(r.lc(), blc);
    int shift = r.deg() - b.deg();
    q[size_t(shift)] = coef;
    std::vector<long> sub(size_t(shift), 0);
    sub.push_back(coef);
    r = psub(r, pmul(b, poly(a.k, std::move(sub))));
  }
  return {poly(a.k, std::move(q)), r};
}

Poly pmod(const Poly& a, const Poly& b) { return pdivmod(a, b).second; }

Poly pmonic(const Poly& a) {
  if (a.is_zero()) return a;
  long u = a.k->inv(a.lc());
  std::vector<long> c = a.c;
  for (long& x : c) x = a.k->mul(x, u);
  return poly(a.k, std::move(c));
}

Poly pgcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = pmod(x, y);
    x = y;
    y = r;
  }
  return pmonic(x);
}

bool pless(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.c[size_t(i)] != b.c[size_t(i)]) return a.c[size_t(i)] < b.c[size_t(i)];
  return false;
}

std::string pstr(const Poly& a, const char* var) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.deg(); i >= 0; --i) {
    long c = a.c[size_t(i)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

// all monic polynomials of the exact degree, enumerated low-to-high
void for_each_monic(const std::shared_ptr<const FiniteField>& k, int degree,
                    const std::function<void(const Poly&)>& fn) {
  long q = k->order();
  long count = 1;
  for (int i = 0; i < degree; ++i) {
    count *= q;
    if (count > 2000000) throw unsupported_error("poly: enumeration range too large");
  }
  for (long idx = 0; idx < count; ++idx) {
    std::vector<long> c(size_t(degree) + 1, 0);
    long m = idx;
    for (int i = 0; i < degree; ++i) {
      c[size_t(i)] = m % q;
      m /= q;
    }
    c[size_t(degree)] = 1;
    fn(poly(k, std::move(c)));
  }
}

}  // namespace

bool is_irreducible(const Poly& a) {
  if (a.deg() < 1) return false;
  if (a.deg() == 1) return true;
  bool divisible = false;
  for (int d = 1; 2 * d <= a.deg() && !divisible; ++d)
    for_each_monic(a.k, d, [&](const Poly& h) {
      if (!divisible && pmod(a, h).is_zero()) divisible = true;
    });
  return !divisible;
}

std::vector<Poly> monic_irreducibles(std::shared_ptr<const FiniteField> k, int degree) {
  if (degree < 1) throw invalid_error("poly: irreducibles need positive degree");
  std::vector<Poly> out;
  for_each_monic(k, degree, [&](const Poly& h) {
    if (is_irreducible(h)) out.push_back(h);
  });
  return out;
}

PolyFactor factor_poly(const Poly& a) {
  if (a.is_zero()) throw invalid_error("poly: factoring zero");
  PolyFactor out;
  out.unit = a.lc();
  Poly g = pmonic(a);
  for (int d = 1; 2 * d <= g.deg(); ++d) {
    // every degree-d divisor is irreducible once smaller factors are stripped
    for_each_monic(a.k, d, [&](const Poly& h) {
      int mult = 0;
      while (!g.is_zero() && g.deg() >= h.deg()) {
        auto [q, r] = pdivmod(g, h);
        if (!r.is_zero()) break;
        g = q;
        ++mult;
      }
      if (mult > 0) out.factors.emplace_back(h, mult);
    });
  }
  if (g.deg() >= 1) out.factors.emplace_back(g, 1);
  return out;
}

RatFunc ratfunc(Poly num, Poly den) {
  check_field_match(num, den);
  if (den.is_zero()) throw invalid_error("rational function: zero denominator");
  if (num.is_zero()) return RatFunc{poly(num.k, {}), poly_const(num.k, 1)};
  Poly g = pgcd(num, den);
  num = pdivmod(num, g).first;
  den = pdivmod(den, g).first;
  long u = num.k->inv(den.lc());
  Poly unit = poly_const(num.k, u);
  return RatFunc{pmul(num, unit), pmul(den, unit)};
}

RatFunc rf_poly(Poly p) {
  auto k = p.k;
  return ratfunc(std::move(p), poly_const(k, 1));
}

RatFunc rf_const(std::shared_ptr<const FiniteField> k, long code) {
  return rf_poly(poly_const(std::move(k), code));
}

RatFunc rmul(const RatFunc& a, const RatFunc& b) {
  return ratfunc(pmul(a.num, b.num), pmul(a.den, b.den));
}

RatFunc rdiv(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw invalid_error("rational function: division by zero");
  return ratfunc(pmul(a.num, b.den), pmul(a.den, b.num));
}

RatFunc radd(const RatFunc& a, const RatFunc& b) {
  return ratfunc(padd(pmul(a.num, b.den), pmul(b.num, a.den)), pmul(a.den, b.den));
}

RatFunc rsub(const RatFunc& a, const RatFunc& b) { return radd(a, rneg(b)); }

RatFunc rneg(const RatFunc& a) {
  Poly m = poly_const(a.den.k, a.den.k->sub(0, 1));
  return RatFunc{pmul(a.num, m), a.den};
}

RatFunc rinv(const RatFunc& a) {
  if (a.is_zero()) throw invalid_error("rational function: inverse of zero");
  return ratfunc(a.den, a.num);
}

RatFunc one_minus(const RatFunc& a) { return rsub(rf_const(a.den.k, 1), a); }

std::string rstr(const RatFunc& a) {
  if (a.den.deg() == 0) return pstr(a.num);
  return "(" + pstr(a.num) + ")/(" + pstr(a.den) + ")";
}

}  // namespace sseq
