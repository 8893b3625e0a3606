#ifndef FANO_MOTIVIC_HPP
#define FANO_MOTIVIC_HPP

// Catalog of classes that are polynomials in L.

#include <algorithm>
#include <map>
#include <mutex>
#include <regex>
#include <string>
#include <tuple>
#include <vector>

#include "fano/errors.hpp"
#include "fano/lring.hpp"
#include "fano/params.hpp"

namespace fano {

struct ClassExpr {
    LPoly value;
    std::string label;
};

// Coefficients of t^0..t^R.
struct ZetaSeries {
    ClassExpr base;
    std::vector<LPoly> terms;
};

inline ClassExpr proj_class(int n) {
    if (n < 0) throw OutOfRange("P(n) needs n >= 0");
    Coeffs c;
    for (int i = 0; i <= n; ++i) c[i] = 1;
    return {LPoly(c), "P^" + std::to_string(n)};
}

namespace detail {

template <class Key>
class Memo {
public:
    template <class F>
    LPoly get(const Key& key, F&& make) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        LPoly v = make();
        std::lock_guard<std::mutex> lock(mu_);
        return table_.emplace(key, std::move(v)).first->second;
    }

private:
    std::mutex mu_;
    std::map<Key, LPoly> table_;
};

inline Memo<std::pair<int, int>>& grassmannian_memo() {
    static Memo<std::pair<int, int>> m;
    return m;
}

} // namespace detail

// k-planes in P^n: prod_{j=1}^{k+1} (L^{n-k+j} - 1) / (L^j - 1).
inline ClassExpr grassmannian_class(int k, int n) {
    if (k < 0 || n < 0 || k > n) throw OutOfRange("G(k,n) needs 0 <= k <= n");
    LPoly v = detail::grassmannian_memo().get({k, n}, [&] {
        LPoly num(1), den(1);
        for (int j = 1; j <= k + 1; ++j) {
            num *= LPoly::L(n - k + j) - LPoly(1);
            den *= LPoly::L(j) - LPoly(1);
        }
        return divide_exact(num, den);
    });
    return {v, "G(" + std::to_string(k) + "," + std::to_string(n) + ")"};
}

// Z_{P^k}(t) = 1 / ((1 - t)(1 - L t)...(1 - L^k t)) through t^R.
inline ZetaSeries zeta_proj(int k, int R) {
    if (k < 0 || R < 0) throw OutOfRange("zeta of P^k needs k, R >= 0");
    std::vector<LPoly> t(static_cast<std::size_t>(R + 1));
    t[0] = 1;
    for (int i = 0; i <= k; ++i) {
        // multiply by 1/(1 - L^i t): new[r] = old[r] + L^i new[r-1]
        for (int r = 1; r <= R; ++r) t[static_cast<std::size_t>(r)] += LPoly::L(i) * t[static_cast<std::size_t>(r - 1)];
    }
    return {proj_class(k), std::move(t)};
}

inline ClassExpr sym_proj_class(int k, int r) {
    if (k < 0 || r < 0) throw OutOfRange("Sym(r,P(k)) needs k, r >= 0");
    auto z = zeta_proj(k, r);
    return {z.terms[static_cast<std::size_t>(r)],
            "Sym^" + std::to_string(r) + "(P^" + std::to_string(k) + ")"};
}

// [UConf^n X] = [Sym^n X] - sum_{j>=1} [UConf^{n-2j} X][Sym^j X].
inline ClassExpr uconf_class(const std::vector<ClassExpr>& sym, int n) {
    if (n < 0) throw OutOfRange("UConf needs n >= 0");
    if (static_cast<int>(sym.size()) < n + 1)
        throw IncompleteInput("need Sym^0..Sym^" + std::to_string(n) + ", got " + std::to_string(sym.size()));
    std::vector<LPoly> u(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        LPoly v = sym[static_cast<std::size_t>(i)].value;
        for (int j = 1; 2 * j <= i; ++j) v -= u[static_cast<std::size_t>(i - 2 * j)] * sym[static_cast<std::size_t>(j)].value;
        u[static_cast<std::size_t>(i)] = v;
    }
    std::string base = sym.size() > 1 ? sym[1].label : "X";
    return {u[static_cast<std::size_t>(n)], "UConf^" + std::to_string(n) + "(" + base + ")"};
}

inline ClassExpr uconf_proj_class(int k, int r) {
    auto z = zeta_proj(k, r);
    std::vector<ClassExpr> sym;
    for (int i = 0; i <= r; ++i) sym.push_back({z.terms[static_cast<std::size_t>(i)], ""});
    sym.resize(std::max<std::size_t>(sym.size(), 2));
    sym[1].label = "P^" + std::to_string(k);
    auto c = uconf_class(sym, r);
    return c;
}

namespace detail {

inline Memo<std::tuple<int, int, int, bool>>& rank_memo() {
    static Memo<std::tuple<int, int, int, bool>> m;
    return m;
}

inline LPoly rank_locus(int u, int n, int r, bool distinct) {
    return rank_memo().get({u, n, r, distinct}, [&] {
        if (n > u - 1) return grassmannian_class(u - 1, n).value * rank_locus(u, u - 1, r, distinct);
        // Tuples spanning all of P^{u-1}: everything minus lower strata.
        LPoly v = distinct ? uconf_proj_class(u - 1, r).value : sym_proj_class(u - 1, r).value;
        for (int w = 1; w < u; ++w) v -= rank_locus(w, u - 1, r, distinct);
        return v;
    });
}

} // namespace detail

// Unordered r-tuples in P^n spanning a (u-1)-plane: multisets (I) or
// distinct points (K).
inline ClassExpr rank_locus_class(int u, int n, int r, bool distinct) {
    if (n < 0 || r < 1 || u < 1 || u > std::min(r, n + 1))
        throw OutOfRange("rank locus needs 1 <= u <= min(r, n+1)");
    std::string name = std::string(distinct ? "K" : "I") + "(u=" + std::to_string(u) + ",n=" + std::to_string(n) +
                       ",r=" + std::to_string(r) + ")";
    return {detail::rank_locus(u, n, r, distinct), name};
}

// Rank a good s-tuple in an (n-m)-plane must reach.
inline int good_rank(int s, int r) { return std::min(s, r + 1); }

// C: dependent (k+1)-tuples in P^{n-m}. D: bad (d-k-1)-tuples -- dependent
// multisets in the low regime, distinct tuples in a hyperplane in the high one.
inline std::pair<ClassExpr, ClassExpr> dependent_tuple_classes(const ParamSet& p) {
    p.validate_structural();
    int r = p.r();
    int sv = p.v_size(), sw = p.w_size();
    LPoly c = sym_proj_class(r, sv).value - rank_locus_class(good_rank(sv, r), r, sv, false).value;
    LPoly d;
    if (p.low())
        d = sym_proj_class(r, sw).value - rank_locus_class(good_rank(sw, r), r, sw, false).value;
    else
        d = uconf_proj_class(r, sw).value - rank_locus_class(good_rank(sw, r), r, sw, true).value;
    return {{c, "C(" + p.str() + ")"}, {d, "D(" + p.str() + ")"}};
}

// [G(n-m-u, n-u)] / [G(n-m, n)] as a series; the Y-dependent numerator
// [Y^(u)] is supplied numerically by the caller.
struct WeightedAverage {
    int n, m, u;
    LPoly numerator;    // G(n-m-u, n-u)
    LPoly denominator;  // G(n-m, n)
    LSeries factor;

    RelDim factor_reldim() const { return relative_dimension(factor); }
    // Relative dimension once a Y-numerator of dimension y_dim is attached.
    RelDim reldim_with(RelDim y_dim) const { return y_dim + factor_reldim(); }
    Rational value(const Rational& sym_count, const Rational& q) const {
        return sym_count * specialize(numerator, q) / specialize(denominator, q);
    }
};

inline WeightedAverage weighted_average_class(int n, int m, int u, long depth = kDefaultDepth) {
    if (!(0 <= m && m < n)) throw ParameterViolation("need 0 <= m < n");
    if (!(0 <= u && u <= n - m)) throw ParameterViolation("need 0 <= u <= n-m");
    LPoly num = grassmannian_class(n - m - u, n - u).value;
    LPoly den = grassmannian_class(n - m, n).value;
    LSeries f = num * invert_poly(den, depth);
    return {n, m, u, num, den, f.truncate(depth)};
}

// Names: P(n) G(k,n) Sym(r,P(k)) UConf(r,P(k)) I(u,n,r) K(u,n,r) C(n,m,d,k) D(n,m,d,k).
inline ClassExpr parse_class(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::smatch mt;
    auto num = [&](int i) { return std::stoi(mt[i].str()); };
    static const std::regex rp(R"(P\((\d+)\))"), rg(R"(G\((\d+),(\d+)\))"), rs(R"(Sym\((\d+),P\((\d+)\)\))"),
        ru(R"(UConf\((\d+),P\((\d+)\)\))"), ri(R"(([IK])\((\d+),(\d+),(\d+)\))"),
        rc(R"(([CD])\((\d+),(\d+),(\d+),(\d+)\))");
    try {
        if (std::regex_match(s, mt, rp)) return proj_class(num(1));
        if (std::regex_match(s, mt, rg)) return grassmannian_class(num(1), num(2));
        if (std::regex_match(s, mt, rs)) return sym_proj_class(num(2), num(1));
        if (std::regex_match(s, mt, ru)) return uconf_proj_class(num(2), num(1));
        if (std::regex_match(s, mt, ri)) return rank_locus_class(num(2), num(3), num(4), mt[1].str() == "K");
        if (std::regex_match(s, mt, rc)) {
            ParamSet p{num(2), num(3), num(4), num(5)};
            auto cd = dependent_tuple_classes(p);
            return mt[1].str() == "C" ? cd.first : cd.second;
        }
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range in '" + text + "'");
    }
    throw ParseError("unknown class name '" + text + "'");
}

} // namespace fano

#endif
