#include "uegs/rational.hpp"

#include "uegs/error.hpp"

namespace uegs {

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const BigRat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigInt int_from_string(const std::string& s) {
    mpz_class z;
    if (z.set_str(s, 10) != 0) fail(ErrorKind::missing_artifact, "bad integer literal: " + s);
    return z;
}

BigRat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(int_from_string(s));
    BigInt num = int_from_string(s.substr(0, slash));
    BigInt den = int_from_string(s.substr(slash + 1));
    if (den <= 0) fail(ErrorKind::missing_artifact, "bad rational literal: " + s);
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

BigRat pow_rat(const BigRat& base, long e) {
    if (e == 0) return BigRat(1);
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    BigRat out(pow_int(base.get_num(), a), pow_int(base.get_den(), a));
    out.canonicalize();
    if (e < 0) {
        if (out == 0) fail(ErrorKind::internal, "pow_rat: 0 to negative power");
        out = 1 / out;
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace uegs
