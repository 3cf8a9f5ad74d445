#include "deepleaf/truncated_poly.hpp"

namespace deepleaf {

std::size_t TruncatedPoly::min_deg() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return i;
  return c_.size();
}

std::size_t TruncatedPoly::top_deg() const {
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != 0) return i;
  return 0;
}

TruncatedPoly& TruncatedPoly::operator+=(const TruncatedPoly& o) {
  std::size_t lim = std::min(c_.size(), o.c_.size());
  for (std::size_t i = 0; i < lim; ++i) c_[i] += o.c_[i];
  return *this;
}

TruncatedPoly TruncatedPoly::operator-(const TruncatedPoly& o) const {
  TruncatedPoly r(max_deg());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] = c_[i];
    if (i < o.c_.size()) r.c_[i] -= o.c_[i];
  }
  return r;
}

void TruncatedPoly::add_mul_shifted(TruncatedPoly& r, const TruncatedPoly& a,
                                    const TruncatedPoly& b, std::size_t shift,
                                    long scale) {
  const std::size_t d = r.max_deg();
  const std::size_t alo = a.min_deg(), blo = b.min_deg();
  if (alo > a.max_deg() || blo > b.max_deg()) return;  // a or b is zero
  if (alo + blo + shift > d) return;
  const std::size_t ahi = std::min(a.top_deg(), d - shift - blo);
  BigInt sa;
  for (std::size_t i = alo; i <= ahi; ++i) {
    if (a.c_[i] == 0) continue;
    sa = a.c_[i] * scale;
    const std::size_t jhi = std::min(b.top_deg(), d - shift - i);
    for (std::size_t j = blo; j <= jhi; ++j)
      r.c_[i + j + shift] += sa * b.c_[j];  // mpz addmul, no temporaries
  }
}

void TruncatedPoly::add_sq_shifted(TruncatedPoly& r, const TruncatedPoly& a,
                                   std::size_t shift, long scale) {
  const std::size_t d = r.max_deg();
  const std::size_t lo = a.min_deg();
  if (lo > a.max_deg() || 2 * lo + shift > d) return;
  const std::size_t hi = std::min(a.top_deg(), d - shift - lo);
  BigInt sa;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (a.c_[i] == 0) continue;
    if (2 * i + shift <= d) {
      sa = a.c_[i] * scale;
      r.c_[2 * i + shift] += sa * a.c_[i];
    }
    sa = a.c_[i] * (2 * scale);
    const std::size_t jhi = std::min(a.top_deg(), d - shift - i);
    for (std::size_t j = i + 1; j <= jhi; ++j)
      r.c_[i + j + shift] += sa * a.c_[j];
  }
}

TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
  TruncatedPoly r(std::min(a.max_deg(), b.max_deg()));
  TruncatedPoly::add_mul_shifted(r, a, b, 0, 1);
  return r;
}

}  // namespace deepleaf
