#ifndef FANO_LRING_HPP
#define FANO_LRING_HPP

// Exact arithmetic in Q[L, L^-1] and its completion along the dimension
// filtration, truncated at a finite depth.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "fano/errors.hpp"

namespace fano {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr long kDefaultDepth = 32;

inline std::string to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Top exponent of a class; BOTTOM for zero.
class RelDim {
public:
    RelDim() = default;  // BOTTOM
    explicit RelDim(long v) : v_(v) {}
    static RelDim bottom() { return RelDim(); }

    bool is_bottom() const { return !v_.has_value(); }
    long value() const {
        if (!v_) throw OutOfRange("relative dimension of zero is BOTTOM");
        return *v_;
    }
    // The convention "dim 0 = 0" used when a number is required.
    long paper_value() const { return v_.value_or(0); }

    friend RelDim operator+(const RelDim& a, const RelDim& b) {
        if (a.is_bottom() || b.is_bottom()) return RelDim();
        return RelDim(*a.v_ + *b.v_);
    }
    friend RelDim operator-(const RelDim& a, const RelDim& b) {
        if (a.is_bottom() || b.is_bottom()) return RelDim();
        return RelDim(*a.v_ - *b.v_);
    }
    friend bool operator==(const RelDim&, const RelDim&) = default;
    // BOTTOM lies below every integer.
    bool at_most(long bound) const { return !v_ || *v_ <= bound; }

    std::string str() const { return v_ ? std::to_string(*v_) : "BOTTOM"; }

private:
    std::optional<long> v_;
};

using Coeffs = std::map<long, Rational>;

namespace detail {

inline void prune(Coeffs& c) {
    for (auto it = c.begin(); it != c.end();) {
        if (it->second == 0)
            it = c.erase(it);
        else
            ++it;
    }
}

inline void add_into(Coeffs& dst, const Coeffs& src, int sign) {
    for (const auto& [k, v] : src) {
        if (sign > 0)
            dst[k] += v;
        else
            dst[k] -= v;
    }
    prune(dst);
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
    Coeffs out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out[i + j] += x * y;
    prune(out);
    return out;
}

inline std::string render(const Coeffs& c) {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Rational v = it->second;
        bool neg = v < 0;
        if (neg) v = -v;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += to_string(v) + "*L^" + std::to_string(it->first);
        first = false;
    }
    return s;
}

inline Rational parse_rational(const std::string& t) {
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(t));
        Integer den(t.substr(slash + 1));
        if (den == 0) throw DivisionByZero("zero denominator in '" + t + "'");
        return Rational(Integer(t.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw ParseError("bad coefficient '" + t + "'");
    }
}

// Grammar: term (('+'|'-') term)*, term := [coef ['*']] 'L' ['^' int] | coef.
inline Coeffs parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty expression");
    Coeffs out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("expected '+' or '-' at offset " + std::to_string(i));
        }
        std::size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        Rational coef = 1;
        bool has_coef = j > i;
        if (has_coef) coef = parse_rational(s.substr(i, j - i));
        i = j;
        long expo = 0;
        if (i < s.size() && s[i] == '*') {
            if (!has_coef) throw ParseError("dangling '*'");
            ++i;
            if (i >= s.size() || s[i] != 'L') throw ParseError("expected 'L' after '*'");
        }
        if (i < s.size() && s[i] == 'L') {
            ++i;
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
                std::size_t start = k;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == start) throw ParseError("missing exponent");
                expo = std::stol(s.substr(i, k - i));
                i = k;
            }
        } else if (!has_coef) {
            throw ParseError("expected a term at offset " + std::to_string(i));
        }
        out[expo] += sign * coef;
    }
    prune(out);
    return out;
}

} // namespace detail

class LPoly {
public:
    LPoly() = default;
    LPoly(long c) : LPoly(Rational(c)) {}  // NOLINT: integers are constants
    LPoly(const Rational& c) {             // NOLINT
        if (c != 0) c_[0] = c;
    }
    explicit LPoly(Coeffs c) : c_(std::move(c)) { detail::prune(c_); }

    static LPoly monomial(const Rational& c, long k) {
        LPoly p;
        if (c != 0) p.c_[k] = c;
        return p;
    }
    static LPoly L(long k = 1) { return monomial(1, k); }

    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Rational(0) : it->second;
    }
    long top() const {
        if (c_.empty()) throw ZeroPolynomial("top exponent of 0");
        return c_.rbegin()->first;
    }
    long low() const {
        if (c_.empty()) throw ZeroPolynomial("low exponent of 0");
        return c_.begin()->first;
    }
    bool integral() const {
        for (const auto& [k, v] : c_)
            if (boost::multiprecision::denominator(v) != 1) return false;
        return true;
    }

    LPoly& operator+=(const LPoly& o) { detail::add_into(c_, o.c_, 1); return *this; }
    LPoly& operator-=(const LPoly& o) { detail::add_into(c_, o.c_, -1); return *this; }
    LPoly& operator*=(const LPoly& o) { c_ = detail::mul(c_, o.c_); return *this; }
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(const LPoly& a, const LPoly& b) { return LPoly(detail::mul(a.c_, b.c_)); }
    LPoly operator-() const { return LPoly() - *this; }
    friend bool operator==(const LPoly&, const LPoly&) = default;

    LPoly pow(unsigned e) const {
        LPoly out(1), base = *this;
        while (e) {
            if (e & 1u) out *= base;
            base *= base;
            e >>= 1u;
        }
        return out;
    }

    std::string str() const { return detail::render(c_); }
    static LPoly parse(const std::string& s) { return LPoly(detail::parse(s)); }

private:
    Coeffs c_;
};

inline RelDim relative_dimension(const LPoly& x) {
    return x.is_zero() ? RelDim() : RelDim(x.top());
}

// Evaluates L -> q exactly.
inline Rational specialize(const LPoly& x, const Rational& q) {
    if (x.is_zero()) return 0;
    if (q == 0 && x.low() < 0) throw DivisionByZero("negative power of L at q = 0");
    Rational acc = 0;
    // Horner from the top, then shift by q^low.
    long prev = x.top();
    for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
        for (long s = it->first; s < prev; ++s) acc *= q;
        acc += it->second;
        prev = it->first;
    }
    long lo = x.low();
    if (lo > 0)
        for (long s = 0; s < lo; ++s) acc *= q;
    else
        for (long s = 0; s < -lo; ++s) acc /= q;
    return acc;
}

inline Integer specialize_int(const LPoly& x, long q) {
    Rational v = specialize(x, Rational(q));
    if (boost::multiprecision::denominator(v) != 1)
        throw NonExactDivision("non-integral value " + to_string(v));
    return boost::multiprecision::numerator(v);
}

// Exact quotient a / b; NonExactDivision if b does not divide a.
inline LPoly divide_exact(const LPoly& a, const LPoly& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero polynomial");
    if (a.is_zero()) return a;
    long shift = a.low() - b.low();
    Coeffs r, d;
    for (const auto& [k, v] : a.coeffs()) r[k - a.low()] = v;
    for (const auto& [k, v] : b.coeffs()) d[k - b.low()] = v;
    long dd = d.rbegin()->first;
    Rational lead = d.rbegin()->second;
    Coeffs q;
    while (!r.empty() && r.rbegin()->first >= dd) {
        long k = r.rbegin()->first - dd;
        Rational c = r.rbegin()->second / lead;
        q[k + shift] = c;
        for (const auto& [j, v] : d) r[j + k] -= c * v;
        detail::prune(r);
    }
    if (!r.empty()) throw NonExactDivision(a.str() + " / " + b.str());
    return LPoly(q);
}

// Element of the completion known down to exponent -depth.
class LSeries {
public:
    LSeries() = default;
    LSeries(const LPoly& p, long depth) : depth_(depth) {
        for (const auto& [k, v] : p.coeffs())
            if (k >= -depth) c_[k] = v;
    }

    long depth() const { return depth_; }
    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Rational(0) : it->second;
    }
    LPoly to_poly() const { return LPoly(c_); }
    long top() const {
        if (c_.empty()) throw ZeroPolynomial("top exponent of 0");
        return c_.rbegin()->first;
    }

    LSeries truncate(long n) const { return LSeries(to_poly(), std::min(n, depth_)); }

    friend LSeries operator+(const LSeries& a, const LSeries& b) {
        return LSeries(a.to_poly() + b.to_poly(), std::min(a.depth_, b.depth_));
    }
    friend LSeries operator-(const LSeries& a, const LSeries& b) {
        return LSeries(a.to_poly() - b.to_poly(), std::min(a.depth_, b.depth_));
    }
    // Positive powers in one factor spread the other's truncation error
    // upward; the depth shrinks accordingly so stored terms stay exact.
    friend LSeries operator*(const LSeries& a, const LSeries& b) {
        long ta = a.is_zero() ? 0 : std::max(0L, a.top());
        long tb = b.is_zero() ? 0 : std::max(0L, b.top());
        long depth = std::min(a.depth_ - tb, b.depth_ - ta);
        return LSeries(a.to_poly() * b.to_poly(), depth);
    }
    friend LSeries operator*(const LPoly& p, const LSeries& s) {
        long tp = p.is_zero() ? 0 : std::max(0L, p.top());
        return LSeries(p * s.to_poly(), s.depth_ - tp);
    }
    friend bool operator==(const LSeries&, const LSeries&) = default;

    std::string str() const {
        return detail::render(c_) + " + O(L^" + std::to_string(-depth_ - 1) + ")";
    }
    static LSeries parse(const std::string& s, long depth) { return LSeries(LPoly::parse(s), depth); }

private:
    Coeffs c_;
    long depth_ = kDefaultDepth;
};

inline RelDim relative_dimension(const LSeries& x) {
    return x.is_zero() ? RelDim() : RelDim(x.top());
}

inline LSeries truncate(const LPoly& p, long depth) { return LSeries(p, depth); }

// x - y lies in F^n, i.e. has relative dimension <= -n.
inline bool congruent(const LPoly& x, const LPoly& y, long n) {
    return relative_dimension(x - y).at_most(-n);
}

// Inverse of a nonzero polynomial: pull out the leading monomial c*L^t and
// invert 1 + a_1 L^-1 + a_2 L^-2 + ... as a geometric series in L^-1.
// Coefficients are computed down to L^-(depth + t - 1) (or L^-depth when
// t <= 0), which is exactly what p * s == 1 mod F^depth requires.
inline LSeries invert_poly(const LPoly& p, long depth = kDefaultDepth) {
    if (p.is_zero()) throw ZeroPolynomial("cannot invert 0");
    if (depth < 0) throw OutOfRange("negative depth");
    long t = p.top();
    Rational lead = p.coeff(t);
    long reach = t >= 1 ? depth + t - 1 : depth;
    long terms = reach - t;  // highest index i in sum b_i L^{-t-i}
    std::vector<Rational> a(static_cast<std::size_t>(terms + 1), Rational(0));
    for (const auto& [k, v] : p.coeffs()) {
        long j = t - k;
        if (j <= terms) a[static_cast<std::size_t>(j)] = v / lead;
    }
    std::vector<Rational> b(static_cast<std::size_t>(terms + 1), Rational(0));
    if (terms >= 0) b[0] = 1;
    for (long i = 1; i <= terms; ++i) {
        Rational acc = 0;
        for (long j = 1; j <= i; ++j)
            if (a[static_cast<std::size_t>(j)] != 0)
                acc -= a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)];
        b[static_cast<std::size_t>(i)] = acc;
    }
    Coeffs out;
    for (long i = 0; i <= terms; ++i)
        if (b[static_cast<std::size_t>(i)] != 0) out[-t - i] = b[static_cast<std::size_t>(i)] / lead;
    return LSeries(LPoly(out), reach);
}

} // namespace fano

#endif
