#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace eqdeg {

using Rational = boost::rational<std::int64_t>;

// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);

// Representative of q mod 1/n in [0, 1/n).
Rational mod_step(const Rational& q, std::int64_t n);

// True iff q is an integer multiple of 1/n.
bool on_grid(const Rational& q, std::int64_t n);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

std::string to_string(const Rational& q);

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

int euler_phi(int n);

// Exact element of Z[zeta_n], stored in the power basis 1, zeta, ..., zeta^(phi(n)-1).
class Cyclotomic {
 public:
  Cyclotomic();
  explicit Cyclotomic(int conductor);

  static Cyclotomic integer(std::int64_t v, int conductor = 1);
  static Cyclotomic zeta_power(int conductor, std::int64_t k);
  // zeta_n^k + zeta_n^-k = 2cos(2 pi k / n).
  static Cyclotomic two_cos(int conductor, std::int64_t k);
  // Sum of c[k] zeta_n^k with c indexed by exponent 0..n-1.
  static Cyclotomic from_group_ring(int conductor, const std::vector<std::int64_t>& c);

  int conductor() const { return n_; }
  const std::vector<std::int64_t>& coefficients() const { return c_; }

  Cyclotomic embed(int conductor) const;
  bool is_integer() const;
  std::int64_t to_integer() const;
  double to_double() const;
  Cyclotomic conj() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(std::int64_t s) const;
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  int n_;
  std::vector<std::int64_t> c_;
  static std::vector<std::int64_t> reduce(int n, std::vector<std::int64_t> poly);
};

}  // namespace eqdeg
