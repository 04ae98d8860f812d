#include "eqdeg/exact.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "eqdeg/errors.hpp"

namespace eqdeg {

Rational frac(const Rational& q) {
  std::int64_t num = q.numerator() % q.denominator();
  if (num < 0) num += q.denominator();
  return Rational(num, q.denominator());
}

Rational mod_step(const Rational& q, std::int64_t n) { return frac(q * n) / n; }

bool on_grid(const Rational& q, std::int64_t n) { return (q * n).denominator() == 1; }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace {

std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& den) {
  // den is monic
  std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  return quot;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<std::int64_t>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = poly_divide_exact(p, cyclotomic_polynomial(d));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_polynomial(n).size()) - 1; }

Cyclotomic::Cyclotomic() : n_(1), c_(1, 0) {}

Cyclotomic::Cyclotomic(int conductor) : n_(conductor), c_(euler_phi(conductor), 0) {
  if (conductor < 1) throw InvalidParameter("exact", "conductor must be positive");
}

std::vector<std::int64_t> Cyclotomic::reduce(int n, std::vector<std::int64_t> poly) {
  const auto& phi = cyclotomic_polynomial(n);
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    std::int64_t c = poly[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= deg; ++k) poly[i - deg + k] -= c * phi[k];
  }
  poly.resize(deg, 0);
  return poly;
}

Cyclotomic Cyclotomic::integer(std::int64_t v, int conductor) {
  Cyclotomic r(conductor);
  r.c_[0] = v;
  return r;
}

Cyclotomic Cyclotomic::zeta_power(int conductor, std::int64_t k) {
  std::vector<std::int64_t> g(conductor, 0);
  std::int64_t e = ((k % conductor) + conductor) % conductor;
  g[e] = 1;
  return from_group_ring(conductor, g);
}

Cyclotomic Cyclotomic::two_cos(int conductor, std::int64_t k) {
  std::vector<std::int64_t> g(conductor, 0);
  std::int64_t e = ((k % conductor) + conductor) % conductor;
  g[e] += 1;
  g[(conductor - e) % conductor] += 1;
  return from_group_ring(conductor, g);
}

Cyclotomic Cyclotomic::from_group_ring(int conductor, const std::vector<std::int64_t>& c) {
  Cyclotomic r(conductor);
  r.c_ = reduce(conductor, c);
  return r;
}

Cyclotomic Cyclotomic::embed(int conductor) const {
  if (conductor == n_) return *this;
  if (conductor % n_ != 0) throw InvalidParameter("exact", "embedding needs a multiple of the conductor");
  int step = conductor / n_;
  std::vector<std::int64_t> g(conductor, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) g[i * step] += c_[i];
  return from_group_ring(conductor, g);
}

bool Cyclotomic::is_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::int64_t Cyclotomic::to_integer() const {
  if (!is_integer()) throw InternalConsistency("exact", "value is not a rational integer");
  return c_.empty() ? 0 : c_[0];
}

double Cyclotomic::to_double() const {
  double re = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i)
    re += static_cast<double>(c_[i]) * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n_);
  return re;
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<std::int64_t> g(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) g[(n_ - static_cast<int>(i)) % n_] += c_[i];
  return from_group_ring(n_, g);
}

namespace {
int common(int a, int b) { return std::lcm(a, b); }
}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  int n = common(n_, o.n_);
  Cyclotomic a = embed(n), b = o.embed(n);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  int n = common(n_, o.n_);
  Cyclotomic a = embed(n), b = o.embed(n);
  std::vector<std::int64_t> g(n, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) g[(i + j) % n] += a.c_[i] * b.c_[j];
  }
  return from_group_ring(n, g);
}

Cyclotomic Cyclotomic::operator*(std::int64_t s) const {
  Cyclotomic r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  int n = common(n_, o.n_);
  return embed(n).c_ == o.embed(n).c_;
}

std::string Cyclotomic::to_string() const {
  if (is_integer()) return std::to_string(c_.empty() ? 0 : c_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    std::int64_t a = c_[i] < 0 ? -c_[i] : c_[i];
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "z" << n_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace eqdeg
