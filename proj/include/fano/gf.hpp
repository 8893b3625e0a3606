#ifndef FANO_GF_HPP
#define FANO_GF_HPP

// Table-driven finite fields F_{p^e}. An element is encoded as the integer
// sum c_i p^i of its coefficient vector in F_p[x]/(modulus).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

using Elem = std::uint32_t;

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// Dense polynomials over F_p, low degree first, trimmed.
using PPoly = std::vector<int>;

inline void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly pmod(PPoly a, const PPoly& m, int p) {
    ptrim(a);
    int dm = static_cast<int>(m.size()) - 1;
    int inv_lead = 1;
    for (int t = 1; t < p; ++t)
        if ((m.back() * t) % p == 1) inv_lead = t;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int shift = static_cast<int>(a.size()) - 1 - dm;
        int c = (a.back() * inv_lead) % p;
        for (int i = 0; i <= dm; ++i) a[static_cast<std::size_t>(i + shift)] = ((a[static_cast<std::size_t>(i + shift)] - c * m[static_cast<std::size_t>(i)]) % p + p) % p;
        ptrim(a);
    }
    return a;
}

inline PPoly pmul(const PPoly& a, const PPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    ptrim(c);
    return c;
}

inline PPoly pgcd(PPoly a, PPoly b, int p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline PPoly ppowmod(PPoly base, long long ex, const PPoly& m, int p) {
    PPoly out{1};
    base = pmod(base, m, p);
    while (ex > 0) {
        if (ex & 1) out = pmod(pmul(out, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        ex >>= 1;
    }
    return out;
}

// Rabin-style test: gcd(f, x^{p^i} - x) = 1 for i <= deg/2.
inline bool irreducible(const PPoly& f, int p) {
    int e = static_cast<int>(f.size()) - 1;
    PPoly xp{0, 1};
    for (int i = 1; 2 * i <= e; ++i) {
        xp = ppowmod(xp, p, f, p);
        PPoly t = xp;
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = (t[1] - 1 + p) % p;
        ptrim(t);
        PPoly g = pgcd(f, t, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace detail

class Field {
public:
    static constexpr std::uint64_t kMaxSize = 1u << 22;

    Field(int p, int e) : p_(p), e_(e) {
        if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
        if (e < 1) throw OutOfRange("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (int i = 0; i < e; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > kMaxSize) throw OutOfRange("field of size " + std::to_string(p) + "^" + std::to_string(e) + " is too large");
        }
        q_ = static_cast<Elem>(q);
        find_modulus();
        build_tables();
    }
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    int p() const { return p_; }
    int e() const { return e_; }
    Elem size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    Elem generator() const { return gen_; }
    std::string name() const { return "F_" + std::to_string(p_) + "^" + std::to_string(e_); }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint32_t la = log_[a], lb = log_[b];
        std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
        std::int32_t z = zech_[d];
        if (z < 0) return 0;
        return exp_[la + static_cast<std::uint32_t>(z)];
    }
    Elem neg(Elem a) const {
        if (p_ == 2 || a == 0) return a;
        return exp_[log_[a] + (q_ - 1) / 2];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero("inverse of 0 in " + name());
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long long k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        long long n = static_cast<long long>(q_) - 1;
        long long r = ((static_cast<long long>(log_[a]) * (k % n)) % n + n) % n;
        return exp_[static_cast<std::size_t>(r)];
    }
    // x -> x^{p^t}
    Elem frob(Elem a, int t = 1) const {
        if (a == 0) return 0;
        std::uint64_t n = q_ - 1, pk = 1;
        for (int i = 0; i < t % e_; ++i) pk = (pk * static_cast<std::uint64_t>(p_)) % n;
        return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * pk) % n)];
    }
    Elem gen_pow(long long k) const { return pow(gen_, k); }
    // Image of an integer in the prime subfield.
    Elem from_int(long long c) const { return static_cast<Elem>(((c % p_) + p_) % p_); }
    int log(Elem a) const {
        if (a == 0) throw DivisionByZero("log of 0");
        return static_cast<int>(log_[a]);
    }
    std::vector<int> digits(Elem a) const {
        std::vector<int> d(static_cast<std::size_t>(e_), 0);
        for (int i = 0; i < e_; ++i, a /= static_cast<Elem>(p_)) d[static_cast<std::size_t>(i)] = static_cast<int>(a % static_cast<Elem>(p_));
        return d;
    }
    Elem from_digits(const std::vector<int>& d) const {
        Elem a = 0;
        for (int i = e_ - 1; i >= 0; --i) a = a * static_cast<Elem>(p_) + static_cast<Elem>(((d[static_cast<std::size_t>(i)] % p_) + p_) % p_);
        return a;
    }
    bool is_square(Elem a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }
    // A square root of a square (the one with even log for odd p).
    Elem sqrt(Elem a) const {
        if (a == 0) return 0;
        if (p_ == 2) return frob(a, e_ - 1);
        if (log_[a] % 2) throw OutOfRange("not a square");
        return exp_[log_[a] / 2];
    }
    static constexpr Elem kNone = 0xFFFFFFFFu;
    // Characteristic 2: the smallest y with y^2 + y = a, or kNone.
    Elem artin_schreier(Elem a) const { return as_.empty() ? kNone : as_[a]; }

private:
    void find_modulus() {
        for (Elem n = 0; n < q_; ++n) {
            detail::PPoly f(static_cast<std::size_t>(e_ + 1), 0);
            Elem t = n;
            for (int i = 0; i < e_; ++i, t /= static_cast<Elem>(p_)) f[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<Elem>(p_));
            f[static_cast<std::size_t>(e_)] = 1;
            if (detail::irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw OutOfRange("no irreducible polynomial found");  // unreachable
    }

    detail::PPoly to_poly(Elem a) const {
        detail::PPoly d = digits(a);
        detail::ptrim(d);
        return d;
    }
    Elem from_poly(detail::PPoly d) const {
        d.resize(static_cast<std::size_t>(e_), 0);
        return from_digits(d);
    }

    bool primitive(Elem c) const {
        std::uint64_t n = q_ - 1;
        std::vector<std::uint64_t> primes;
        std::uint64_t t = n;
        for (std::uint64_t d = 2; d * d <= t; ++d)
            if (t % d == 0) {
                primes.push_back(d);
                while (t % d == 0) t /= d;
            }
        if (t > 1) primes.push_back(t);
        detail::PPoly cp = to_poly(c);
        for (auto l : primes) {
            detail::PPoly r = detail::ppowmod(cp, static_cast<long long>(n / l), modulus_, p_);
            if (r.size() == 1 && r[0] == 1) return false;
        }
        return true;
    }

    void build_tables() {
        gen_ = 0;
        for (Elem c = 1; c < q_; ++c)
            if (q_ == 2 || primitive(c)) {
                gen_ = c;
                break;
            }
        std::uint32_t n = q_ - 1;
        exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
        log_.assign(q_, 0);
        detail::PPoly g = to_poly(gen_), x{1};
        for (std::uint32_t i = 0; i < n; ++i) {
            Elem a = from_poly(x);
            exp_[i] = a;
            log_[a] = i;
            x = detail::pmod(detail::pmul(x, g, p_), modulus_, p_);
        }
        for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
        if (p_ == 2) {
            as_.assign(q_, kNone);
            for (Elem y = q_; y-- > 0;) as_[mul(y, y) ^ y] = y;
        }
        if (p_ != 2) {
            // zech_[k] = log(1 + g^k), -1 when 1 + g^k = 0
            zech_.assign(n, -1);
            for (std::uint32_t k = 0; k < n; ++k) {
                detail::PPoly s = to_poly(exp_[k]);
                if (s.empty()) s.push_back(0);
                s[0] = (s[0] + 1) % p_;
                Elem v = from_poly(s);
                zech_[k] = v == 0 ? -1 : static_cast<std::int32_t>(log_[v]);
            }
        }
    }

    int p_, e_;
    Elem q_ = 0;
    std::vector<int> modulus_;
    Elem gen_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::int32_t> zech_;
    std::vector<Elem> as_;
};

namespace detail {

struct Registry {
    std::mutex mu;
    std::map<std::pair<int, int>, std::unique_ptr<Field>> fields;
    std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<Elem>>> embeds;
};

inline Registry& registry() {
    static Registry r;
    return r;
}

} // namespace detail

// Shared, immutable field instance; references stay valid for the program.
inline const Field& field(int p, int e) {
    auto& reg = detail::registry();
    {
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.fields.find({p, e});
        if (it != reg.fields.end()) return *it->second;
    }
    auto f = std::make_unique<Field>(p, e);
    std::lock_guard<std::mutex> lock(reg.mu);
    auto& slot = reg.fields[{p, e}];
    if (!slot) slot = std::move(f);
    return *slot;
}

// Table of the embedding F_{p^a} -> F_{p^b} sending the small generator x
// to the smallest root (by encoding) of the small modulus in the big field.
inline const std::vector<Elem>& embedding(const Field& small, const Field& big) {
    if (small.p() != big.p() || big.e() % small.e() != 0)
        throw NoEmbedding(small.name() + " does not embed in " + big.name());
    auto& reg = detail::registry();
    auto key = std::make_tuple(small.p(), small.e(), big.e());
    {
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.embeds.find(key);
        if (it != reg.embeds.end()) return *it->second;
    }
    const auto& mod = small.modulus();
    Elem beta = 0;
    bool found = false;
    for (Elem x = 0; x < big.size() && !found; ++x) {
        Elem acc = 0;
        for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i)
            acc = big.add(big.mul(acc, x), big.from_int(mod[static_cast<std::size_t>(i)]));
        if (acc == 0) {
            beta = x;
            found = true;
        }
    }
    if (!found) throw NoEmbedding("modulus has no root in " + big.name());
    auto table = std::make_unique<std::vector<Elem>>(small.size());
    std::vector<Elem> bpow(static_cast<std::size_t>(small.e()));
    Elem b = 1;
    for (int i = 0; i < small.e(); ++i, b = big.mul(b, beta)) bpow[static_cast<std::size_t>(i)] = b;
    for (Elem x = 0; x < small.size(); ++x) {
        auto d = small.digits(x);
        Elem acc = 0;
        for (int i = 0; i < small.e(); ++i) acc = big.add(acc, big.mul(big.from_int(d[static_cast<std::size_t>(i)]), bpow[static_cast<std::size_t>(i)]));
        (*table)[x] = acc;
    }
    std::lock_guard<std::mutex> lock(reg.mu);
    auto& slot = reg.embeds[key];
    if (!slot) slot = std::move(table);
    return *slot;
}

inline Elem embed(Elem x, const Field& small, const Field& big) { return embedding(small, big)[x]; }

// Dense univariate polynomials over a Field, low degree first, trimmed.
using UPoly = std::vector<Elem>;

namespace upoly {

inline void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Elem eval(const Field& F, const UPoly& a, Elem x) {
    Elem acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

inline UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    trim(c);
    return c;
}

inline UPoly sub(const Field& F, UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline UPoly mod(const Field& F, UPoly a, const UPoly& m) {
    trim(a);
    if (m.empty()) throw DivisionByZero("polynomial modulus is zero");
    Elem il = F.inv(m.back());
    int dm = deg(m);
    while (deg(a) >= dm) {
        int shift = deg(a) - dm;
        Elem c = F.mul(a.back(), il);
        for (int i = 0; i <= dm; ++i) {
            auto& slot = a[static_cast<std::size_t>(i + shift)];
            slot = F.sub(slot, F.mul(c, m[static_cast<std::size_t>(i)]));
        }
        trim(a);
    }
    return a;
}

inline UPoly monic(const Field& F, UPoly a) {
    trim(a);
    if (a.empty()) return a;
    Elem il = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, il);
    return a;
}

inline UPoly gcd(const Field& F, UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline UPoly powmod(const Field& F, UPoly base, unsigned long long ex, const UPoly& m) {
    UPoly out = mod(F, UPoly{1}, m);
    base = mod(F, base, m);
    while (ex > 0) {
        if (ex & 1ull) out = mod(F, mul(F, out, base), m);
        ex >>= 1ull;
        if (ex) base = mod(F, mul(F, base, base), m);
    }
    return out;
}

namespace detail {

inline void split(const Field& F, const UPoly& g, std::vector<Elem>& out) {
    int d = deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.neg(F.div(g[0], g[1])));
        return;
    }
    if (F.size() <= 64) {
        for (Elem x = 0; x < F.size(); ++x)
            if (eval(F, g, x) == 0) out.push_back(x);
        return;
    }
    for (Elem a = 1; a < F.size(); ++a) {
        UPoly w;
        if (F.p() == 2) {
            // trace of a*x down to F_2
            UPoly ax{0, a}, t = mod(F, ax, g), acc = t;
            for (int i = 1; i < F.e(); ++i) {
                t = mod(F, mul(F, t, t), g);
                acc.resize(std::max(acc.size(), t.size()), 0);
                for (std::size_t j = 0; j < t.size(); ++j) acc[j] = F.add(acc[j], t[j]);
                trim(acc);
            }
            w = acc;
        } else {
            w = powmod(F, UPoly{a, 1}, (F.size() - 1) / 2, g);
            w = sub(F, w, UPoly{1});
        }
        UPoly h = gcd(F, g, w);
        if (deg(h) > 0 && deg(h) < d) {
            UPoly rest = monic(F, g);
            // rest = g / h
            UPoly q;
            {
                UPoly a2 = rest;
                int dh = deg(h);
                q.assign(static_cast<std::size_t>(deg(a2) - dh + 1), 0);
                while (deg(a2) >= dh) {
                    int s = deg(a2) - dh;
                    Elem c = a2.back();
                    q[static_cast<std::size_t>(s)] = c;
                    for (int i = 0; i <= dh; ++i) {
                        auto& slot = a2[static_cast<std::size_t>(i + s)];
                        slot = F.sub(slot, F.mul(c, h[static_cast<std::size_t>(i)]));
                    }
                    trim(a2);
                }
            }
            split(F, h, out);
            split(F, q, out);
            return;
        }
    }
    throw OutOfRange("root splitting failed");  // unreachable for split squarefree input
}

} // namespace detail

// Distinct roots of a nonzero polynomial, sorted by encoding.
inline std::vector<Elem> roots(const Field& F, UPoly a) {
    trim(a);
    if (a.empty()) throw ZeroPolynomial("roots of the zero polynomial");
    std::vector<Elem> out;
    if (deg(a) <= 0) return out;
    a = monic(F, a);
    if (deg(a) == 1) {
        out.push_back(F.neg(a[0]));
        return out;
    }
    // gcd(a, x^Q - x) keeps exactly the linear factors over F
    UPoly xq = powmod(F, UPoly{0, 1}, F.size(), a);
    UPoly g = gcd(F, a, sub(F, xq, UPoly{0, 1}));
    detail::split(F, g, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace upoly

} // namespace fano

#endif
