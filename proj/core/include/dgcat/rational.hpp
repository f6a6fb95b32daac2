#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dgcat {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) through arithmetic; raw construction goes through q().
using Q = mpq_class;
using QVec = std::vector<Q>;

inline Q q(long num, long den = 1) {
    Q v(num, den);
    v.canonicalize();
    return v;
}

inline bool is_zero(const Q& x) { return sgn(x) == 0; }

bool is_zero(const QVec& v);
QVec zero_vec(std::size_t n);
QVec unit_vec(std::size_t n, std::size_t i, const Q& c = 1);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Q& c, const QVec& v);
// dst += c * src
void axpy(QVec& dst, const Q& c, const QVec& src);

std::string to_string(const Q& x);
std::string to_string(const QVec& v);

}  // namespace dgcat
