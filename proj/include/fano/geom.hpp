#ifndef FANO_GEOM_HPP
#define FANO_GEOM_HPP

// Projective geometry over finite fields: varieties given by forms, points,
// k-planes in RREF, containment, and orbit profiles of plane sections.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fano/errors.hpp"
#include "fano/gf.hpp"
#include "fano/lring.hpp"
#include "fano/motivic.hpp"
#include "fano/mpoly.hpp"

namespace fano {

using Point = std::vector<Elem>;

inline Integer ipow(long b, long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// ---------------------------------------------------------------------------
// Linear algebra

inline int matrix_rank(const Field& K, std::vector<std::vector<Elem>> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    std::size_t cols = rows.front().size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        auto& pr = rows[static_cast<std::size_t>(rank)];
        Elem inv = K.inv(pr[c]);
        for (auto& x : pr) x = K.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == static_cast<std::size_t>(rank) || rows[i][c] == 0) continue;
            Elem f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] = K.sub(rows[i][j], K.mul(f, pr[j]));
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Varieties

class VarietySpec {
public:
    VarietySpec(int p, int e, int n, std::vector<std::string> forms, std::string source = {})
        : p_(p), e_(e), n_(n), texts_(std::move(forms)), source_(std::move(source)),
          cache_(std::make_shared<Cache>()) {
        if (n < 1) throw ParseError("ambient dimension must be >= 1");
        const Field& F = fano::field(p, e);
        for (const auto& t : texts_) {
            MPoly f = MPoly::parse(t, F, n + 1);
            if (f.is_zero()) throw ParseError("form '" + t + "' is zero");
            if (!f.homogeneous()) throw ParseError("form '" + t + "' is not homogeneous");
            forms_.push_back(std::move(f));
        }
        if (static_cast<int>(forms_.size()) > n) throw ParseError("more forms than the ambient dimension");
    }

    int p() const { return p_; }
    int e() const { return e_; }
    long q() const {
        long q = 1;
        for (int i = 0; i < e_; ++i) q *= p_;
        return q;
    }
    const Field& field() const { return fano::field(p_, e_); }
    int n() const { return n_; }
    int s() const { return static_cast<int>(forms_.size()); }
    int m() const { return n_ - s(); }
    int d() const {
        int d = 1;
        for (const auto& f : forms_) d *= f.degree();
        return d;
    }
    std::vector<int> degrees() const {
        std::vector<int> v;
        for (const auto& f : forms_) v.push_back(f.degree());
        return v;
    }
    const std::vector<MPoly>& forms() const { return forms_; }
    const std::vector<std::string>& form_texts() const { return texts_; }
    const std::string& source() const { return source_; }

    // Same forms read over another field (integer coefficients only).
    VarietySpec rebase(int p, int e) const {
        for (const auto& t : texts_)
            if (t.find('g') != std::string::npos) throw ParseError("cannot move generator-power coefficients to another field");
        return VarietySpec(p, e, n_, texts_, source_);
    }

    // Forms with coefficients pushed into F_{q^ext}.
    std::vector<MPoly> forms_over(int ext) const {
        const Field& F = field();
        const Field& K = fano::field(p_, e_ * ext);
        const auto& emb = embedding(F, K);
        std::vector<MPoly> out;
        for (const auto& f : forms_) {
            std::map<Exps, Elem> t;
            for (const auto& term : f.terms()) t[term.exps] = emb[term.coef];
            out.emplace_back(K, f.nvars(), t);
        }
        return out;
    }

    std::string str() const {
        std::ostringstream o;
        o << "field " << p_ << " " << e_ << "\nambient " << n_ << "\n";
        for (const auto& t : texts_) o << "form " << t << "\n";
        return o.str();
    }

    struct Cache {
        std::mutex mu;
        std::map<int, Integer> counts;
        int smooth = -1;
    };
    Cache& cache() const { return *cache_; }

private:
    int p_, e_, n_;
    std::vector<std::string> texts_;
    std::vector<MPoly> forms_;
    std::string source_;
    std::shared_ptr<Cache> cache_;
};

// Sections: `field p e`, `ambient n`, `form <poly>`; '#' starts a comment.
inline VarietySpec parse_variety(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int p = -1, e = -1, n = -1, lineno = 0;
    std::vector<std::string> forms;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto where = " (line " + std::to_string(lineno) + ")";
        if (key == "field") {
            std::string extra;
            if (!(ls >> p >> e) || (ls >> extra)) throw ParseError("bad field line" + where);
        } else if (key == "ambient") {
            std::string extra;
            if (!(ls >> n) || (ls >> extra)) throw ParseError("bad ambient line" + where);
        } else if (key == "form") {
            std::string rest;
            std::getline(ls, rest);
            auto b = rest.find_first_not_of(" \t\r");
            if (b == std::string::npos) throw ParseError("empty form" + where);
            forms.push_back(rest.substr(b, rest.find_last_not_of(" \t\r") + 1 - b));
        } else {
            throw ParseError("unknown directive '" + key + "'" + where);
        }
    }
    if (p < 0) throw ParseError("missing field line");
    if (n < 0) throw ParseError("missing ambient line");
    try {
        return VarietySpec(p, e, n, forms, text);
    } catch (const NotPrime& x) {
        throw ParseError(x.what());
    } catch (const OutOfRange& x) {
        throw ParseError(x.what());
    }
}

inline VarietySpec load_variety(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_variety(buf.str());
}

// ---------------------------------------------------------------------------
// Zeros of forms in P^{v-1}(K)

namespace detail {

struct CompiledTerm {
    Elem coef;
    std::vector<int> pre;  // exponents of the first v-1 coordinates
    int tdeg;              // exponent of the last coordinate
};

struct CompiledForm {
    std::vector<CompiledTerm> terms;
    int maxdeg = 0;
};

inline std::vector<CompiledForm> compile(const std::vector<MPoly>& gs, const std::vector<Elem>& emb) {
    std::vector<CompiledForm> out;
    for (const auto& g : gs) {
        CompiledForm cf;
        for (const auto& t : g.terms()) {
            CompiledTerm ct{emb[t.coef], std::vector<int>(t.exps.begin(), t.exps.end() - 1), t.exps.back()};
            cf.maxdeg = std::max(cf.maxdeg, ct.tdeg);
            cf.terms.push_back(std::move(ct));
        }
        out.push_back(std::move(cf));
    }
    return out;
}

// pw[i][a] = pre[i]^a
inline void restrict_to_fiber(const Field& K, const CompiledForm& f, const std::vector<std::vector<Elem>>& pw, UPoly& u) {
    u.assign(static_cast<std::size_t>(f.maxdeg + 1), 0);
    for (const auto& t : f.terms) {
        Elem v = t.coef;
        for (std::size_t i = 0; i < t.pre.size() && v != 0; ++i)
            if (t.pre[i]) v = K.mul(v, pw[i][static_cast<std::size_t>(t.pre[i])]);
        if (v) u[static_cast<std::size_t>(t.tdeg)] = K.add(u[static_cast<std::size_t>(t.tdeg)], v);
    }
    upoly::trim(u);
}

inline UPoly restrict_to_fiber(const Field& K, const CompiledForm& f, const Point& pre) {
    std::vector<std::vector<Elem>> pw(pre.size());
    int D = 0;
    for (const auto& t : f.terms)
        for (int a : t.pre) D = std::max(D, a);
    for (std::size_t i = 0; i < pre.size(); ++i) {
        pw[i].assign(static_cast<std::size_t>(D + 1), 1);
        for (int a = 1; a <= D; ++a) pw[i][static_cast<std::size_t>(a)] = K.mul(pw[i][static_cast<std::size_t>(a - 1)], pre[i]);
    }
    UPoly u;
    restrict_to_fiber(K, f, pw, u);
    return u;
}

// Distinct roots in K with fast paths for degree <= 2.
inline std::vector<Elem> roots_fast(const Field& K, UPoly u) {
    upoly::trim(u);
    int d = upoly::deg(u);
    if (d <= 0) return {};
    if (d == 1) return {K.neg(K.div(u[0], u[1]))};
    if (d == 2) {
        Elem inv = K.inv(u[2]);
        Elem b = K.mul(u[1], inv), c = K.mul(u[0], inv);
        std::vector<Elem> r;
        if (K.p() == 2) {
            if (b == 0) {
                r.push_back(K.sqrt(c));
            } else {
                Elem y = K.artin_schreier(K.div(c, K.mul(b, b)));
                if (y == Field::kNone) return {};
                r = {K.mul(b, y), K.mul(b, K.add(y, 1))};
            }
        } else {
            Elem two = K.from_int(2);
            Elem disc = K.sub(K.mul(b, b), K.mul(K.from_int(4), c));
            if (!K.is_square(disc)) return {};
            Elem s = K.sqrt(disc), nb = K.neg(b);
            r = {K.div(K.add(nb, s), two), K.div(K.sub(nb, s), two)};
        }
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    }
    return upoly::roots(K, u);
}

} // namespace detail

struct ZeroSet {
    std::vector<Point> points;
    bool overflow = false;  // more than `limit` zeros
};

// Projective zeros in P^{v-1}(K) of forms in v variables defined over a
// subfield F (coefficients mapped through `emb`). Points are normalized with
// first nonzero coordinate 1 and returned in lexicographic order. Stops once
// more than `limit` zeros are found.
inline ZeroSet projective_zeros(const std::vector<MPoly>& gs, int v, const Field& K, const std::vector<Elem>& emb,
                                std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    ZeroSet z;
    auto push = [&](Point pt) {
        z.points.push_back(std::move(pt));
        if (z.points.size() > limit) z.overflow = true;
        return !z.overflow;
    };
    auto is_zero_at = [&](const Point& pt) {
        for (const auto& g : gs)
            if (g.eval(K, pt, emb) != 0) return false;
        return true;
    };
    if (v == 1) {
        Point pt{1};
        if (is_zero_at(pt)) push(pt);
        return z;
    }
    auto forms = detail::compile(gs, emb);
    int D = 0;
    for (const auto& f : forms)
        for (const auto& t : f.terms)
            for (int a : t.pre) D = std::max(D, a);
    // Points (0,...,0,1) last; then fibres over normalized prefixes.
    Point pre(static_cast<std::size_t>(v - 1), 0);
    std::vector<std::vector<Elem>> pw(pre.size(), std::vector<Elem>(static_cast<std::size_t>(D + 1), 0));
    auto set_pow = [&](std::size_t i) {
        auto& row = pw[i];
        row[0] = 1;
        for (int a = 1; a <= D; ++a) row[static_cast<std::size_t>(a)] = K.mul(row[static_cast<std::size_t>(a - 1)], pre[i]);
    };
    std::vector<UPoly> us(forms.size());
    std::vector<Elem> ts;
    Elem Q = K.size();
    for (int lead = 0; lead < v - 1; ++lead) {
        std::fill(pre.begin(), pre.end(), 0);
        pre[static_cast<std::size_t>(lead)] = 1;
        for (std::size_t i = 0; i < pre.size(); ++i) set_pow(i);
        while (true) {
            int first = -1;
            for (std::size_t i = 0; i < forms.size(); ++i) {
                detail::restrict_to_fiber(K, forms[i], pw, us[i]);
                if (first < 0 && !us[i].empty()) first = static_cast<int>(i);
            }
            if (first < 0) {
                ts.resize(Q);
                std::iota(ts.begin(), ts.end(), 0u);
            } else {
                ts = detail::roots_fast(K, us[static_cast<std::size_t>(first)]);
                std::size_t w = 0;
                for (Elem t : ts) {
                    bool ok = true;
                    for (std::size_t i = 0; i < us.size() && ok; ++i)
                        if (static_cast<int>(i) != first && !us[i].empty() && upoly::eval(K, us[i], t) != 0) ok = false;
                    if (ok) ts[w++] = t;
                }
                ts.resize(w);
            }
            for (Elem t : ts) {
                Point pt = pre;
                pt.push_back(t);
                if (!push(std::move(pt))) return z;
            }
            // odometer over coordinates after `lead`
            int j = v - 2;
            while (j > lead) {
                bool carry = ++pre[static_cast<std::size_t>(j)] == Q;
                if (carry) pre[static_cast<std::size_t>(j)] = 0;
                set_pow(static_cast<std::size_t>(j));
                if (!carry) break;
                --j;
            }
            if (j == lead) break;
        }
    }
    Point last(static_cast<std::size_t>(v), 0);
    last.back() = 1;
    if (is_zero_at(last)) push(last);
    std::sort(z.points.begin(), z.points.end());
    return z;
}

// Projective points of Y over F_{q^e}.
inline std::vector<Point> enumerate_points(const VarietySpec& Y, int e) {
    const Field& K = field(Y.p(), Y.e() * e);
    return projective_zeros(Y.forms(), Y.n() + 1, K, embedding(Y.field(), K)).points;
}

inline Integer count_points(const VarietySpec& Y, int e) {
    auto& c = Y.cache();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.counts.find(e);
        if (it != c.counts.end()) return it->second;
    }
    Integer n = static_cast<unsigned long>(enumerate_points(Y, e).size());
    std::lock_guard<std::mutex> lock(c.mu);
    c.counts[e] = n;
    return n;
}

// Frobenius x -> x^q (q = p^a) applied coordinatewise.
inline Point frobenius_point(const Field& K, int a, const Point& pt) {
    Point out(pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i) out[i] = K.frob(pt[i], a);
    return out;
}

struct Orbit {
    int size;
    std::vector<Point> points;  // the conjugates, starting from the smallest
};

// Frobenius orbits of a Galois-stable sorted point set over K.
inline std::vector<Orbit> frobenius_orbits(const Field& K, int a, const std::vector<Point>& pts) {
    std::map<Point, bool> seen;
    for (const auto& p : pts) seen[p] = false;
    std::vector<Orbit> out;
    for (const auto& p : pts) {
        if (seen[p]) continue;
        Orbit o{0, {}};
        Point cur = p;
        do {
            auto it = seen.find(cur);
            if (it == seen.end()) throw OutOfRange("point set is not Frobenius-stable");
            it->second = true;
            o.points.push_back(cur);
            cur = frobenius_point(K, a, cur);
        } while (cur != p);
        o.size = static_cast<int>(o.points.size());
        out.push_back(std::move(o));
    }
    return out;
}

// Jacobian rank of the forms at a point of K^{v}.
inline int jacobian_rank(const std::vector<MPoly>& gs, const Field& K, const std::vector<Elem>& emb, const Point& pt) {
    if (gs.empty()) return 0;
    int v = gs.front().nvars();
    std::vector<std::vector<Elem>> J;
    for (const auto& g : gs) {
        std::vector<Elem> row;
        for (int i = 0; i < v; ++i) row.push_back(g.derivative(i).eval(K, pt, emb));
        J.push_back(std::move(row));
    }
    return matrix_rank(K, J);
}

// Jacobian criterion at every point over F_q and F_{q^2}.
inline bool smooth_flag(const VarietySpec& Y) {
    auto& c = Y.cache();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        if (c.smooth >= 0) return c.smooth == 1;
    }
    bool ok = true;
    std::vector<std::vector<MPoly>> partials;
    for (int e = 1; e <= 2 && ok; ++e) {
        const Field& K = field(Y.p(), Y.e() * e);
        const auto& emb = embedding(Y.field(), K);
        for (const auto& pt : enumerate_points(Y, e))
            if (jacobian_rank(Y.forms(), K, emb, pt) < Y.s()) {
                ok = false;
                break;
            }
    }
    std::lock_guard<std::mutex> lock(c.mu);
    c.smooth = ok ? 1 : 0;
    return ok;
}

// ---------------------------------------------------------------------------
// Planes

struct PlaneRep {
    int k = 0, n = 0;
    std::vector<int> pivots;
    std::vector<std::vector<Elem>> rows;
    std::uint64_t id = 0;
};

// A block of RREF planes sharing a pivot set; local indices [lo, hi).
struct PlaneChunk {
    std::vector<int> pivots;
    std::vector<std::pair<int, int>> free;  // (row, column) of free entries
    std::uint64_t lo = 0, hi = 0;
    std::uint64_t offset = 0;  // global id of local index 0
};

inline std::vector<PlaneChunk> plane_chunks(int k, int n, Elem Q, std::uint64_t max_chunk = 2048) {
    if (k < 0 || k > n) throw OutOfRange("plane dimension must satisfy 0 <= k <= n");
    std::vector<PlaneChunk> out;
    std::vector<int> piv(static_cast<std::size_t>(k + 1));
    std::iota(piv.begin(), piv.end(), 0);
    std::uint64_t offset = 0;
    while (true) {
        PlaneChunk base;
        base.pivots = piv;
        for (int i = 0; i <= k; ++i)
            for (int j = piv[static_cast<std::size_t>(i)] + 1; j <= n; ++j)
                if (!std::binary_search(piv.begin(), piv.end(), j)) base.free.emplace_back(i, j);
        std::uint64_t total = 1;
        for (std::size_t f = 0; f < base.free.size(); ++f) {
            if (total > std::numeric_limits<std::uint64_t>::max() / Q) throw OutOfRange("too many planes");
            total *= Q;
        }
        for (std::uint64_t lo = 0; lo < total; lo += max_chunk) {
            PlaneChunk c = base;
            c.lo = lo;
            c.hi = std::min(total, lo + max_chunk);
            c.offset = offset;
            out.push_back(std::move(c));
        }
        offset += total;
        // next combination
        int i = k;
        while (i >= 0 && piv[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++piv[static_cast<std::size_t>(i)];
        for (int j = i + 1; j <= k; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

inline PlaneRep decode_plane(const PlaneChunk& c, std::uint64_t local, int k, int n, Elem Q) {
    PlaneRep P;
    P.k = k;
    P.n = n;
    P.pivots = c.pivots;
    P.rows.assign(static_cast<std::size_t>(k + 1), std::vector<Elem>(static_cast<std::size_t>(n + 1), 0));
    for (int i = 0; i <= k; ++i) P.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c.pivots[static_cast<std::size_t>(i)])] = 1;
    std::uint64_t x = local;
    for (auto it = c.free.rbegin(); it != c.free.rend(); ++it) {
        P.rows[static_cast<std::size_t>(it->first)][static_cast<std::size_t>(it->second)] = static_cast<Elem>(x % Q);
        x /= Q;
    }
    P.id = c.offset + local;
    return P;
}

inline unsigned default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

// Runs fn(chunk_index, chunk) for every chunk on `workers` threads. Each
// chunk owns its output slot, so results do not depend on scheduling.
template <class Fn>
void run_chunks(std::size_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = count;
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
}

// Calls visit(plane) for every k-plane of P^n over K, one chunk at a time
// per worker; `per_chunk(i)` gives each chunk its own state.
template <class Visit>
void for_each_plane(int k, int n, const Field& K, unsigned workers, Visit&& visit) {
    auto chunks = plane_chunks(k, n, K.size());
    run_chunks(chunks.size(), workers, [&](std::size_t i) {
        const auto& c = chunks[i];
        for (std::uint64_t l = c.lo; l < c.hi; ++l) visit(i, decode_plane(c, l, k, n, K.size()));
    });
}

inline std::vector<PlaneRep> enumerate_planes(int k, int n, const Field& K) {
    std::vector<PlaneRep> out;
    for (const auto& c : plane_chunks(k, n, K.size()))
        for (std::uint64_t l = c.lo; l < c.hi; ++l) out.push_back(decode_plane(c, l, k, n, K.size()));
    return out;
}

inline std::size_t plane_chunk_count(int k, int n, const Field& K) { return plane_chunks(k, n, K.size()).size(); }

// Forms restricted to the plane parametrized by its rows.
inline std::vector<MPoly> restrict_forms(const std::vector<MPoly>& forms, const PlaneRep& P) {
    std::vector<MPoly> out;
    for (const auto& f : forms) out.push_back(f.substitute(P.rows));
    return out;
}

inline bool plane_contains(const std::vector<MPoly>& forms, const PlaneRep& P) {
    for (const auto& f : forms)
        if (!f.substitute(P.rows).is_zero()) return false;
    return true;
}

inline bool plane_contains(const VarietySpec& Y, const PlaneRep& P) { return plane_contains(Y.forms(), P); }

// Planes over F_{q^e} lying on Y.
inline Integer fano_count(const VarietySpec& Y, int k, int e, unsigned workers = 1) {
    const Field& K = field(Y.p(), Y.e() * e);
    auto forms = Y.forms_over(e);
    auto chunks = plane_chunks(k, Y.n(), K.size());
    std::vector<std::uint64_t> hits(chunks.size(), 0);
    run_chunks(chunks.size(), workers, [&](std::size_t i) {
        const auto& c = chunks[i];
        for (std::uint64_t l = c.lo; l < c.hi; ++l)
            if (plane_contains(forms, decode_plane(c, l, k, Y.n(), K.size()))) ++hits[i];
    });
    Integer total = 0;
    for (auto h : hits) total += h;
    return total;
}

// ---------------------------------------------------------------------------
// Orbit profiles

enum class Kind { Transversal, Tangent, Contained, PositiveDim };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Transversal: return "Transversal";
        case Kind::Tangent: return "Tangent";
        case Kind::Contained: return "Contained";
        case Kind::PositiveDim: return "PositiveDim";
    }
    return "?";
}

struct OrbitProfile {
    Kind kind = Kind::Transversal;
    std::vector<int> orbit_sizes;  // sorted; empty unless Transversal
    int geometric_count = 0;
    // For finite sections: orbits with all conjugates, in plane coordinates
    // over F_{q^field_ext}.
    int field_ext = 0;
    std::vector<Orbit> orbits;
};

namespace detail {

inline int lcm_of(const std::vector<int>& v) {
    int l = 1;
    for (int x : v) l = std::lcm(l, x);
    return l;
}

} // namespace detail

// Geometric points of Y meet Lambda: swept over F_{q^e} for d/2 < e <= d,
// which sees every orbit of a degree-d 0-cycle.
inline OrbitProfile intersection_profile(const VarietySpec& Y, const PlaneRep& P) {
    OrbitProfile prof;
    auto gs = restrict_forms(Y.forms(), P);
    bool contained = std::all_of(gs.begin(), gs.end(), [](const MPoly& g) { return g.is_zero(); });
    if (contained) {
        prof.kind = Kind::Contained;
        return prof;
    }
    int d = Y.d(), v = P.k + 1, a = Y.e();
    const Field& F = Y.field();
    std::map<int, std::vector<Point>> found;  // ext -> points
    std::map<int, int> orbit_count;           // size -> orbits
    for (int e = d / 2 + 1; e <= d; ++e) {
        const Field& K = field(Y.p(), a * e);
        auto z = projective_zeros(gs, v, K, embedding(F, K), static_cast<std::size_t>(d));
        if (z.overflow) {
            prof.kind = Kind::PositiveDim;
            return prof;
        }
        std::map<int, int> here;
        for (const auto& o : frobenius_orbits(K, a, z.points)) ++here[o.size];
        for (auto [s, c] : here) {
            auto it = orbit_count.find(s);
            if (it != orbit_count.end() && it->second != c) {
                prof.kind = Kind::PositiveDim;  // inconsistent counts: not a finite scheme
                return prof;
            }
            orbit_count[s] = c;
        }
        found[e] = std::move(z.points);
    }
    // every field must see exactly the orbits whose size divides its degree
    for (const auto& [e, pts] : found) {
        std::size_t expect = 0;
        for (auto [s, c] : orbit_count)
            if (e % s == 0) expect += static_cast<std::size_t>(s * c);
        if (expect != pts.size()) {
            prof.kind = Kind::PositiveDim;
            return prof;
        }
    }
    int total = 0;
    std::vector<int> sizes;
    for (auto [s, c] : orbit_count) {
        total += s * c;
        for (int i = 0; i < c; ++i) sizes.push_back(s);
    }
    prof.geometric_count = total;
    if (total > d) {
        prof.kind = Kind::PositiveDim;
        return prof;
    }
    int ell = detail::lcm_of(sizes);
    int ext = 0;
    for (const auto& [e, pts] : found)
        if (e % ell == 0) {
            ext = e;
            break;
        }
    std::vector<Point> pts;
    if (ext) {
        pts = found[ext];
    } else {
        ext = ell;
        const Field& K = field(Y.p(), a * ext);
        pts = projective_zeros(gs, v, K, embedding(F, K)).points;
    }
    const Field& K = field(Y.p(), a * ext);
    prof.field_ext = ext;
    prof.orbits = frobenius_orbits(K, a, pts);
    if (total == d) {
        // d distinct points are all reduced exactly when the section is finite
        const auto& emb = embedding(F, K);
        for (const auto& p : pts)
            if (jacobian_rank(gs, K, emb, p) < v - 1) {
                prof.kind = Kind::PositiveDim;
                prof.orbits.clear();
                return prof;
            }
        prof.kind = Kind::Transversal;
        prof.orbit_sizes = sizes;
    } else {
        prof.kind = Kind::Tangent;
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Symmetric products and Hilbert scheme of two points

// Effective 0-cycles of degree r from N_j = #Y(F_{q^{ej}}):
// r a_r = sum_{j=1}^r N_j a_{r-j}.
inline Integer sym_count_from(const std::vector<Integer>& N, int r) {
    if (r < 0) throw OutOfRange("degree must be >= 0");
    if (static_cast<int>(N.size()) < r) throw IncompleteInput("need N_1..N_r");
    std::vector<Integer> a(static_cast<std::size_t>(r + 1), 0);
    a[0] = 1;
    for (int i = 1; i <= r; ++i) {
        Integer acc = 0;
        for (int j = 1; j <= i; ++j) acc += N[static_cast<std::size_t>(j - 1)] * a[static_cast<std::size_t>(i - j)];
        if (acc % i != 0) throw NonExactDivision("cycle count is not integral");
        a[static_cast<std::size_t>(i)] = acc / i;
    }
    return a[static_cast<std::size_t>(r)];
}

inline Integer sym_count(const VarietySpec& Y, int r, int e) {
    std::vector<Integer> N;
    for (int j = 1; j <= r; ++j) N.push_back(count_points(Y, e * j));
    return sym_count_from(N, r);
}

inline Integer proj_count(int m, const Integer& Q) {
    Integer s = 0, t = 1;
    for (int i = 0; i <= m; ++i, t *= Q) s += t;
    return m < 0 ? Integer(0) : s;
}

inline Integer hilb2_count(const VarietySpec& Y, int e) {
    if (!smooth_flag(Y)) throw SmoothnessRequired("Hilbert scheme count needs a smooth variety");
    Integer n1 = count_points(Y, e), n2 = count_points(Y, 2 * e);
    Integer Q = ipow(Y.q(), e);
    return (n1 * n1 - n1) / 2 + (n2 - n1) / 2 + n1 * proj_count(Y.m() - 1, Q);
}

} // namespace fano

#endif
