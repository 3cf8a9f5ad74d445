#pragma once

#include <cstddef>
#include <vector>

#include "deepleaf/types.hpp"

namespace deepleaf {

// Formal power series in z truncated (inclusively) at max_deg, with exact
// integer coefficients. Products drop every term above the bound, so all
// retained coefficients are exact.
class TruncatedPoly {
 public:
  explicit TruncatedPoly(std::size_t max_deg) : c_(max_deg + 1) {}

  static TruncatedPoly one(std::size_t max_deg) {
    TruncatedPoly p(max_deg);
    p.c_[0] = 1;
    return p;
  }

  std::size_t max_deg() const { return c_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return c_[n]; }
  BigInt& operator[](std::size_t n) { return c_[n]; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  // Degree of the lowest nonzero term; max_deg()+1 if identically zero.
  std::size_t min_deg() const;
  // Degree of the highest nonzero term; 0 if identically zero.
  std::size_t top_deg() const;
  bool is_zero() const { return min_deg() > max_deg(); }

  bool operator==(const TruncatedPoly&) const = default;

  TruncatedPoly& operator+=(const TruncatedPoly& o);
  TruncatedPoly operator-(const TruncatedPoly& o) const;
  friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b);

  // r += scale * z^shift * a * b, truncated at r.max_deg().
  static void add_mul_shifted(TruncatedPoly& r, const TruncatedPoly& a,
                              const TruncatedPoly& b, std::size_t shift,
                              long scale = 1);
  // r += scale * z^shift * a^2, using the symmetry of the square.
  static void add_sq_shifted(TruncatedPoly& r, const TruncatedPoly& a,
                             std::size_t shift, long scale = 1);

 private:
  std::vector<BigInt> c_;
};

}  // namespace deepleaf
