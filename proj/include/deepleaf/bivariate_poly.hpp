#pragma once

#include <cstddef>
#include <vector>

#include "deepleaf/truncated_poly.hpp"
#include "deepleaf/types.hpp"

namespace deepleaf {

// Series in z and y truncated at (max_deg_z, max_deg_y). The y variable marks
// sibling pairs of deepest leaves.
class BivariateTruncatedPoly {
 public:
  BivariateTruncatedPoly(std::size_t max_deg_z, std::size_t max_deg_y)
      : dz_(max_deg_z), dy_(max_deg_y), c_((max_deg_z + 1) * (max_deg_y + 1)) {}

  std::size_t max_deg_z() const { return dz_; }
  std::size_t max_deg_y() const { return dy_; }
  const BigInt& at(std::size_t deg_z, std::size_t deg_y) const {
    return c_[deg_z * (dy_ + 1) + deg_y];
  }
  BigInt& at(std::size_t deg_z, std::size_t deg_y) {
    return c_[deg_z * (dy_ + 1) + deg_y];
  }

  bool operator==(const BivariateTruncatedPoly&) const = default;

  BivariateTruncatedPoly operator-(const BivariateTruncatedPoly& o) const;
  friend BivariateTruncatedPoly operator*(const BivariateTruncatedPoly& a,
                                          const BivariateTruncatedPoly& b);

  // substitute an integer for y
  TruncatedPoly eval_y(long y) const;
  // extract the coefficient of y^deg_y as a polynomial in z
  TruncatedPoly y_slice(std::size_t deg_y) const;

 private:
  std::size_t dz_, dy_;
  std::vector<BigInt> c_;
};

// A_k(z, y) from A_1 = 1 + zy, A_{k+1} = 1 + z A_k^2. Requires k >= 1.
BivariateTruncatedPoly bivariate_height_poly(unsigned k, std::size_t max_deg_z,
                                             std::size_t max_deg_y);

}  // namespace deepleaf
