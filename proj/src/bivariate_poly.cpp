#include "deepleaf/bivariate_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace deepleaf {

BivariateTruncatedPoly BivariateTruncatedPoly::operator-(
    const BivariateTruncatedPoly& o) const {
  if (dz_ != o.dz_ || dy_ != o.dy_)
    throw std::invalid_argument("bivariate subtraction: bounds differ");
  BivariateTruncatedPoly r(dz_, dy_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

BivariateTruncatedPoly operator*(const BivariateTruncatedPoly& a,
                                 const BivariateTruncatedPoly& b) {
  const std::size_t dz = std::min(a.dz_, b.dz_);
  const std::size_t dy = std::min(a.dy_, b.dy_);
  BivariateTruncatedPoly r(dz, dy);
  for (std::size_t iz = 0; iz <= std::min(a.dz_, dz); ++iz)
    for (std::size_t iy = 0; iy <= std::min(a.dy_, dy); ++iy) {
      const BigInt& ca = a.at(iz, iy);
      if (ca == 0) continue;
      for (std::size_t jz = 0; jz + iz <= dz && jz <= b.dz_; ++jz)
        for (std::size_t jy = 0; jy + iy <= dy && jy <= b.dy_; ++jy) {
          const BigInt& cb = b.at(jz, jy);
          if (cb != 0) r.at(iz + jz, iy + jy) += ca * cb;
        }
    }
  return r;
}

TruncatedPoly BivariateTruncatedPoly::eval_y(long y) const {
  TruncatedPoly p(dz_);
  for (std::size_t iz = 0; iz <= dz_; ++iz) {
    BigInt acc = 0, pw = 1;
    for (std::size_t iy = 0; iy <= dy_; ++iy) {
      acc += at(iz, iy) * pw;
      pw *= y;
    }
    p[iz] = acc;
  }
  return p;
}

TruncatedPoly BivariateTruncatedPoly::y_slice(std::size_t deg_y) const {
  TruncatedPoly p(dz_);
  if (deg_y > dy_) return p;
  for (std::size_t iz = 0; iz <= dz_; ++iz) p[iz] = at(iz, deg_y);
  return p;
}

BivariateTruncatedPoly bivariate_height_poly(unsigned k, std::size_t max_deg_z,
                                             std::size_t max_deg_y) {
  if (k == 0)
    throw std::invalid_argument("bivariate_height_poly: k must be >= 1");
  BivariateTruncatedPoly A(max_deg_z, max_deg_y);
  A.at(0, 0) = 1;
  if (max_deg_z >= 1 && max_deg_y >= 1) A.at(1, 1) = 1;  // A_1 = 1 + zy
  for (unsigned j = 1; j < k; ++j) {
    // A_{j+1} = 1 + z A_j^2
    BivariateTruncatedPoly sq = A * A;
    BivariateTruncatedPoly next(max_deg_z, max_deg_y);
    next.at(0, 0) = 1;
    for (std::size_t iz = 0; iz + 1 <= max_deg_z; ++iz)
      for (std::size_t iy = 0; iy <= max_deg_y; ++iy)
        next.at(iz + 1, iy) += sq.at(iz, iy);
    A = next;
  }
  return A;
}

}  // namespace deepleaf
