#ifndef UEGS_RATIONAL_HPP
#define UEGS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace uegs {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Decimal string forms used throughout the JSON artifacts:
// integers as "n", rationals as "n" or "n/d" with d > 1.
std::string to_string(const BigInt& z);
std::string to_string(const BigRat& r);
BigInt int_from_string(const std::string& s);
BigRat rat_from_string(const std::string& s);

BigInt pow_int(const BigInt& base, unsigned long e);
BigRat pow_rat(const BigRat& base, long e);

// FNV-1a over a byte string; stable across platforms, used for content hashes.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace uegs

#endif
