#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace deepleaf {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

}  // namespace deepleaf
