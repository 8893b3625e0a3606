#ifndef FANO_MPOLY_HPP
#define FANO_MPOLY_HPP

// Sparse multivariate polynomials with coefficients in a finite field.

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "fano/errors.hpp"
#include "fano/gf.hpp"

namespace fano {

using Exps = std::vector<int>;

struct Term {
    Exps exps;
    Elem coef;
};

class MPoly {
public:
    MPoly(const Field& F, int nvars) : F_(&F), nvars_(nvars) {}
    MPoly(const Field& F, int nvars, const std::map<Exps, Elem>& terms) : F_(&F), nvars_(nvars) {
        for (const auto& [e, c] : terms)
            if (c != 0) terms_.push_back({e, c});
    }

    const Field& field() const { return *F_; }
    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, total(t.exps));
        return d;
    }
    bool homogeneous() const {
        if (terms_.empty()) return true;
        int d = total(terms_.front().exps);
        for (const auto& t : terms_)
            if (total(t.exps) != d) return false;
        return true;
    }

    // f(pt) with pt in a field K and coefficient images given by `emb`
    // (the table of an embedding of this polynomial's field into K).
    Elem eval(const Field& K, const std::vector<Elem>& pt, const std::vector<Elem>& emb) const {
        if (static_cast<int>(pt.size()) != nvars_) throw DimensionMismatch("point has wrong length");
        Elem acc = 0;
        for (const auto& t : terms_) {
            Elem v = emb[t.coef];
            for (int i = 0; i < nvars_ && v != 0; ++i) {
                int a = t.exps[static_cast<std::size_t>(i)];
                if (a) v = K.mul(v, K.pow(pt[static_cast<std::size_t>(i)], a));
            }
            acc = K.add(acc, v);
        }
        return acc;
    }
    Elem eval(const std::vector<Elem>& pt) const { return eval(*F_, pt, embedding(*F_, *F_)); }

    // Compose with x_j = sum_i t_i rows[i][j]; the result lives in
    // rows.size() variables. Purely coefficient-level.
    MPoly substitute(const std::vector<std::vector<Elem>>& rows) const {
        if (!homogeneous()) throw DimensionMismatch("substitution needs a homogeneous form");
        int v = static_cast<int>(rows.size());
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != nvars_) throw DimensionMismatch("row length differs from variable count");
        if (terms_.empty()) return MPoly(*F_, v);
        const Field& F = *F_;
        int D = degree();
        std::size_t base = static_cast<std::size_t>(D + 1);
        std::size_t cells = 1;
        std::vector<std::size_t> stride(static_cast<std::size_t>(v));
        for (int i = 0; i < v; ++i) {
            stride[static_cast<std::size_t>(i)] = cells;
            cells *= base;
            if (cells > (1u << 24)) throw OutOfRange("substitution too large");
        }
        std::vector<Elem> out(cells, 0), cur(cells), nxt(cells);
        std::vector<std::size_t> live, nlive;
        for (const auto& t : terms_) {
            std::fill(cur.begin(), cur.end(), 0);
            cur[0] = t.coef;
            live.assign(1, 0);
            for (int j = 0; j < nvars_; ++j) {
                for (int a = 0; a < t.exps[static_cast<std::size_t>(j)]; ++a) {
                    nlive.clear();
                    for (std::size_t idx : live) {
                        Elem c = cur[idx];
                        if (c == 0) continue;
                        for (int i = 0; i < v; ++i) {
                            Elem m = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                            if (m == 0) continue;
                            std::size_t to = idx + stride[static_cast<std::size_t>(i)];
                            if (nxt[to] == 0) nlive.push_back(to);
                            nxt[to] = F.add(nxt[to], F.mul(c, m));
                        }
                        cur[idx] = 0;
                    }
                    std::sort(nlive.begin(), nlive.end());
                    nlive.erase(std::unique(nlive.begin(), nlive.end()), nlive.end());
                    live.clear();
                    for (std::size_t idx : nlive) {
                        cur[idx] = nxt[idx];
                        nxt[idx] = 0;
                        if (cur[idx]) live.push_back(idx);
                    }
                }
            }
            for (std::size_t idx : live) out[idx] = F.add(out[idx], cur[idx]);
        }
        std::map<Exps, Elem> terms;
        for (std::size_t idx = 0; idx < cells; ++idx) {
            if (out[idx] == 0) continue;
            Exps e(static_cast<std::size_t>(v));
            std::size_t x = idx;
            for (int i = 0; i < v; ++i, x /= base) e[static_cast<std::size_t>(i)] = static_cast<int>(x % base);
            terms[e] = out[idx];
        }
        return MPoly(F, v, terms);
    }

    MPoly derivative(int i) const {
        if (i < 0 || i >= nvars_) throw DimensionMismatch("no such variable");
        std::map<Exps, Elem> terms;
        for (const auto& t : terms_) {
            int a = t.exps[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            Elem c = F_->mul(t.coef, F_->from_int(a));
            if (c == 0) continue;
            Exps e = t.exps;
            --e[static_cast<std::size_t>(i)];
            terms[e] = F_->add(terms[e], c);
        }
        return MPoly(*F_, nvars_, terms);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            const auto& t = terms_[k];
            if (k) s += " + ";
            s += coef_str(t.coef);
            for (int i = 0; i < nvars_; ++i) {
                int a = t.exps[static_cast<std::size_t>(i)];
                if (a == 0) continue;
                s += "*x" + std::to_string(i);
                if (a > 1) s += "^" + std::to_string(a);
            }
        }
        return s;
    }

    // Terms c*x0^a0*x1^a1*... joined by '+' (or '-'); c is an integer or g^k.
    static MPoly parse(const std::string& text, const Field& F, int nvars) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) throw ParseError("empty polynomial");
        std::map<Exps, Elem> terms;
        std::size_t i = 0;
        auto fail = [&](const std::string& why) { throw ParseError(why + " at offset " + std::to_string(i) + " in '" + text + "'"); };
        auto read_int = [&]() {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("expected a number");
            if (j - i > 9) fail("number too long");
            long v = std::stol(s.substr(i, j - i));
            i = j;
            return v;
        };
        bool first = true;
        while (i < s.size()) {
            bool negate = false;
            if (s[i] == '+' || s[i] == '-') {
                negate = s[i] == '-';
                ++i;
            } else if (!first) {
                fail("expected '+'");
            }
            first = false;
            Elem c = 1;
            Exps e(static_cast<std::size_t>(nvars), 0);
            bool any = false;
            while (true) {
                if (i >= s.size()) fail("expected a factor");
                if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                    c = F.mul(c, F.from_int(read_int()));
                } else if (s[i] == 'g') {
                    ++i;
                    long k = 1;
                    if (i < s.size() && s[i] == '^') {
                        ++i;
                        k = read_int();
                    }
                    c = F.mul(c, F.gen_pow(k));
                } else if (s[i] == 'x') {
                    ++i;
                    long v = read_int();
                    if (v >= nvars) fail("variable x" + std::to_string(v) + " out of range");
                    long a = 1;
                    if (i < s.size() && s[i] == '^') {
                        ++i;
                        a = read_int();
                    }
                    e[static_cast<std::size_t>(v)] += static_cast<int>(a);
                } else {
                    fail("unexpected character");
                }
                any = true;
                if (i < s.size() && s[i] == '*') {
                    ++i;
                    continue;
                }
                break;
            }
            if (!any) fail("empty term");
            if (negate) c = F.neg(c);
            terms[e] = F.add(terms[e], c);
        }
        return MPoly(F, nvars, terms);
    }

private:
    static int total(const Exps& e) {
        int s = 0;
        for (int a : e) s += a;
        return s;
    }
    std::string coef_str(Elem c) const {
        if (F_->e() == 1) return std::to_string(c);
        if (c == 0) return "0";
        return "g^" + std::to_string(F_->log(c));
    }

    const Field* F_;
    int nvars_;
    std::vector<Term> terms_;
};

} // namespace fano

#endif
