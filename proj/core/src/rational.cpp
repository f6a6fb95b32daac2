#include "dgcat/rational.hpp"

#include "dgcat/error.hpp"

namespace dgcat {

bool is_zero(const QVec& v) {
    for (const Q& x : v)
        if (!is_zero(x))
            return false;
    return true;
}

QVec zero_vec(std::size_t n) { return QVec(n, Q(0)); }

QVec unit_vec(std::size_t n, std::size_t i, const Q& c) {
    QVec v(n, Q(0));
    v.at(i) = c;
    return v;
}

QVec add(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), Errc::Internal, "vector size mismatch in add");
    QVec r(a);
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), Errc::Internal, "vector size mismatch in sub");
    QVec r(a);
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    return r;
}

QVec scale(const Q& c, const QVec& v) {
    QVec r(v);
    for (Q& x : r)
        x *= c;
    return r;
}

void axpy(QVec& dst, const Q& c, const QVec& src) {
    require(dst.size() == src.size(), Errc::Internal, "vector size mismatch in axpy");
    if (is_zero(c))
        return;
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] += c * src[i];
}

std::string to_string(const Q& x) { return x.get_str(); }

std::string to_string(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace dgcat
