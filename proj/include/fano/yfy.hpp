#ifndef FANO_YFY_HPP
#define FANO_YFY_HPP

// Point counts of the strata in the Y-F(Y) relations and the checks built
// on them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fano/errors.hpp"
#include "fano/geom.hpp"
#include "fano/lring.hpp"
#include "fano/motivic.hpp"
#include "fano/params.hpp"

namespace fano {

// Y over F_{q^ext}, forms carried along the fixed embedding.
inline VarietySpec extend(const VarietySpec& Y, int ext) {
    if (ext < 1) throw OutOfRange("extension degree must be >= 1");
    if (ext == 1) return Y;
    std::vector<std::string> texts;
    for (const auto& f : Y.forms_over(ext)) texts.push_back(f.str());
    return VarietySpec(Y.p(), Y.e() * ext, Y.n(), texts, Y.source());
}

// ---------------------------------------------------------------------------
// Tuple combinatorics on orbit sets

// Sets of orbits (distinct objects with the given sizes) of total size s.
inline Integer stable_subset_count(const std::vector<int>& sizes, int s) {
    if (s < 0) return 0;
    std::vector<Integer> dp(static_cast<std::size_t>(s + 1), 0);
    dp[0] = 1;
    for (int x : sizes)
        for (int t = s; t >= x; --t) dp[static_cast<std::size_t>(t)] += dp[static_cast<std::size_t>(t - x)];
    return dp[static_cast<std::size_t>(s)];
}

namespace detail {

inline std::vector<std::vector<int>> partitions(int s, int maxpart) {
    if (s == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int p = std::min(s, maxpart); p >= 1; --p)
        for (auto rest : partitions(s - p, p)) {
            rest.insert(rest.begin(), p);
            out.push_back(std::move(rest));
        }
    return out;
}

} // namespace detail

// Galois-stable sets of s distinct geometric zeros of `gs` (forms in v
// variables over F) whose span has rank `target`. Each orbit-size pattern
// is counted inside the field that splits exactly that pattern.
inline Integer count_good_stable_sets(const std::vector<MPoly>& gs, int v, const Field& F, int s, int target) {
    Integer total = 0;
    int a = F.e();
    for (const auto& lam : detail::partitions(s, s)) {
        const Field& K = field(F.p(), a * detail::lcm_of(lam));
        auto pts = projective_zeros(gs, v, K, embedding(F, K)).points;
        auto orbits = frobenius_orbits(K, a, pts);
        std::map<int, std::vector<const Orbit*>> by_size;
        for (const auto& o : orbits) by_size[o.size].push_back(&o);
        std::vector<std::vector<Elem>> rows;
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t part, std::size_t from) {
            if (part == lam.size()) {
                if (matrix_rank(K, rows) == target) ++total;
                return;
            }
            const auto& pool = by_size[lam[part]];
            std::size_t start = (part > 0 && lam[part] == lam[part - 1]) ? from : 0;
            for (std::size_t i = start; i < pool.size(); ++i) {
                std::size_t keep = rows.size();
                for (const auto& p : pool[i]->points) rows.push_back(p);
                rec(part + 1, i + 1);
                rows.resize(keep);
            }
        };
        rec(0, 0);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Strata

struct StratumCounts {
    Integer W = 0, V = 0, A = 0, B1 = 0, B2 = 0, R = 0, T1 = 0, T2 = 0, J = 0, P = 0, Q = 0;
    std::optional<Integer> M, N;
    // P and Q over planes whose section is positive dimensional.
    std::optional<Integer> P_pos, Q_pos;
    std::uint64_t planes = 0, transversal = 0, tangent = 0, contained = 0, positive_dim = 0;
    std::vector<std::uint64_t> excluded;  // ids of PositiveDim planes
    std::uint64_t bijection_failures = 0;
    std::uint64_t conservation_failures = 0;
};

struct PlaneRecord {
    std::uint64_t id;
    Kind kind;
    std::vector<int> orbit_sizes;
};

struct StratumOptions {
    bool want_M = false, want_N = false;
    bool positive_dim_PQ = false;
    bool keep_records = false;
    unsigned workers = 1;
};

struct PlaneTally {
    long long W = 0, V = 0, B1 = 0, B2 = 0, T1 = 0, T2 = 0, P = 0, Q = 0, gW = 0, gV = 0;
    bool conservation_ok = true;
};

// Subset analysis of the orbits of a finite section; orbit coordinates live
// in K.
inline PlaneTally tally_orbits(const Field& K, const OrbitProfile& prof, int sW, int sV, int r) {
    PlaneTally t;
    const auto& orbs = prof.orbits;
    std::size_t m = orbs.size();
    if (m > 24) throw OutOfRange("too many orbits on one plane");
    std::uint32_t full = (1u << m) - 1;
    std::vector<int> size(static_cast<std::size_t>(full) + 1, 0), rank(static_cast<std::size_t>(full) + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<std::vector<Elem>> rows;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) {
                size[mask] += orbs[i].size;
                for (const auto& p : orbs[i].points) rows.push_back(p);
            }
        rank[mask] = matrix_rank(K, rows);
    }
    auto good = [&](std::uint32_t mask) { return rank[mask] == good_rank(size[mask], r); };
    bool transversal = prof.kind == Kind::Transversal;
    long long nW = 0, nV = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        std::uint32_t comp = full & ~mask;
        if (size[mask] == sW) {
            ++nW;
            if (!transversal) {
                if (good(mask)) ++t.P;
            } else {
                ++t.W;
                if (!good(mask)) ++t.B1;
                else if (!good(comp)) ++t.B2;
                else ++t.gW;
            }
        }
        if (size[mask] == sV) {
            ++nV;
            if (!transversal) {
                if (good(mask)) ++t.Q;
            } else {
                ++t.V;
                if (!good(mask)) ++t.T1;
                else if (!good(comp)) ++t.T2;
                else ++t.gV;
            }
        }
    }
    std::vector<int> sizes;
    for (const auto& o : orbs) sizes.push_back(o.size);
    t.conservation_ok = stable_subset_count(sizes, sW) == nW && stable_subset_count(sizes, sV) == nV;
    return t;
}

// A plane lying on Y: tuples range over the whole plane.
struct ContainedTally {
    Integer W, V, A, B1, R, T1;
};

inline ContainedTally contained_tally(int r, int sW, int sV, long Q) {
    auto at = [&](const LPoly& p) { return specialize_int(p, Q); };
    ContainedTally c;
    Integer uW = at(uconf_proj_class(r, sW).value), uV = at(uconf_proj_class(r, sV).value);
    Integer kW = at(rank_locus_class(good_rank(sW, r), r, sW, true).value);
    Integer kV = at(rank_locus_class(good_rank(sV, r), r, sV, true).value);
    c.W = uW;
    c.A = kW;
    c.B1 = uW - kW;
    c.V = uV;
    c.R = kV;
    c.T1 = uV - kV;
    return c;
}

inline void check_matches(const VarietySpec& Y, const ParamSet& p) {
    if (p.n != Y.n() || p.m != Y.m() || p.d != Y.d())
        throw ParameterViolation("params " + p.str() + " do not match the variety (n=" + std::to_string(Y.n()) +
                                 ", m=" + std::to_string(Y.m()) + ", d=" + std::to_string(Y.d()) + ")");
}

// Strata for (n-m)-planes over the base field of Y.
inline StratumCounts stratum_counts_base(const VarietySpec& Y, const ParamSet& p, const StratumOptions& opt,
                                         std::vector<PlaneRecord>* records = nullptr) {
    p.validate_structural();
    check_matches(Y, p);
    int r = p.r(), sW = p.w_size(), sV = p.v_size();
    const Field& F = Y.field();
    auto chunks = plane_chunks(r, Y.n(), F.size());

    struct ChunkOut {
        StratumCounts c;
        std::vector<PlaneRecord> recs;
    };
    std::vector<ChunkOut> outs(chunks.size());
    run_chunks(chunks.size(), opt.workers, [&](std::size_t i) {
        const auto& ch = chunks[i];
        auto& o = outs[i];
        o.c.P_pos = 0;
        o.c.Q_pos = 0;
        for (std::uint64_t l = ch.lo; l < ch.hi; ++l) {
            PlaneRep P = decode_plane(ch, l, r, Y.n(), F.size());
            OrbitProfile prof = intersection_profile(Y, P);
            ++o.c.planes;
            if (opt.keep_records) o.recs.push_back({P.id, prof.kind, prof.orbit_sizes});
            switch (prof.kind) {
                case Kind::Contained: ++o.c.contained; break;
                case Kind::PositiveDim:
                    ++o.c.positive_dim;
                    o.c.excluded.push_back(P.id);
                    if (opt.positive_dim_PQ) {
                        auto gs = restrict_forms(Y.forms(), P);
                        *o.c.P_pos += count_good_stable_sets(gs, P.k + 1, F, sW, good_rank(sW, r));
                        *o.c.Q_pos += count_good_stable_sets(gs, P.k + 1, F, sV, good_rank(sV, r));
                    }
                    break;
                case Kind::Transversal:
                case Kind::Tangent: {
                    const Field& K = field(Y.p(), Y.e() * prof.field_ext);
                    PlaneTally t = tally_orbits(K, prof, sW, sV, r);
                    if (prof.kind == Kind::Transversal) {
                        ++o.c.transversal;
                        o.c.W += t.W;
                        o.c.V += t.V;
                        o.c.B1 += t.B1;
                        o.c.B2 += t.B2;
                        o.c.T1 += t.T1;
                        o.c.T2 += t.T2;
                        if (t.gW != t.gV) ++o.c.bijection_failures;
                    } else {
                        ++o.c.tangent;
                        o.c.P += t.P;
                        o.c.Q += t.Q;
                    }
                    if (!t.conservation_ok) ++o.c.conservation_failures;
                    break;
                }
            }
        }
    });

    StratumCounts s;
    if (opt.positive_dim_PQ) {
        s.P_pos = 0;
        s.Q_pos = 0;
    }
    for (auto& o : outs) {
        const auto& c = o.c;
        s.W += c.W; s.V += c.V; s.B1 += c.B1; s.B2 += c.B2; s.T1 += c.T1; s.T2 += c.T2;
        s.P += c.P; s.Q += c.Q;
        s.planes += c.planes; s.transversal += c.transversal; s.tangent += c.tangent;
        s.contained += c.contained; s.positive_dim += c.positive_dim;
        s.bijection_failures += c.bijection_failures;
        s.conservation_failures += c.conservation_failures;
        s.excluded.insert(s.excluded.end(), c.excluded.begin(), c.excluded.end());
        if (opt.positive_dim_PQ) {
            *s.P_pos += *c.P_pos;
            *s.Q_pos += *c.Q_pos;
        }
        if (records) records->insert(records->end(), o.recs.begin(), o.recs.end());
    }
    if (s.contained) {
        ContainedTally ct = contained_tally(r, sW, sV, Y.q());
        Integer c = s.contained;
        s.W += c * ct.W; s.A += c * ct.A; s.B1 += c * ct.B1;
        s.V += c * ct.V; s.R += c * ct.R; s.T1 += c * ct.T1;
    }
    s.J = s.W - s.B1;
    int v = Y.n() + 1;
    if (opt.want_M) s.M = sym_count(Y, sV, 1) - count_good_stable_sets(Y.forms(), v, F, sV, sV);
    if (opt.want_N) s.N = sym_count(Y, sW, 1) - count_good_stable_sets(Y.forms(), v, F, sW, std::min(sW, v));
    return s;
}

inline StratumCounts stratum_counts(const VarietySpec& Y, const ParamSet& p, int e, const StratumOptions& opt = {},
                                    std::vector<PlaneRecord>* records = nullptr) {
    return stratum_counts_base(extend(Y, e), p, opt, records);
}

// ---------------------------------------------------------------------------
// Classic relation for cubic hypersurfaces

struct ClassicRow {
    int e = 1;
    Integer Q, N1, N2, lines, sym2;
    std::optional<Integer> hilb2;
    Integer sym_rhs, hilb_rhs;
    bool sym_ok = false, hilb_ok = false;
};

struct ClassicReport {
    bool smooth = false;
    int m = 0;
    std::vector<ClassicRow> rows;
    bool ok() const {
        for (const auto& r : rows)
            if (!r.sym_ok || !r.hilb_ok) return false;
        return true;
    }
};

inline ClassicReport verify_classic(const VarietySpec& Y, const std::vector<int>& e_list, unsigned workers = 1) {
    if (Y.s() != 1 || Y.d() != 3) throw ParameterViolation("classic relation needs a cubic hypersurface");
    ClassicReport rep;
    rep.smooth = smooth_flag(Y);
    rep.m = Y.m();
    for (int e : e_list) {
        if (e < 1) throw OutOfRange("extension degree must be >= 1");
        ClassicRow row;
        row.e = e;
        row.Q = ipow(Y.q(), e);
        row.N1 = count_points(Y, e);
        row.N2 = count_points(Y, 2 * e);
        row.lines = fano_count(Y, 1, e, workers);
        row.sym2 = sym_count(Y, 2, e);
        Integer QQ = row.Q * row.Q;
        row.sym_rhs = (1 + ipow(Y.q(), static_cast<long>(e) * rep.m)) * row.N1 + QQ * row.lines;
        row.hilb_rhs = proj_count(rep.m, row.Q) * row.N1 + QQ * row.lines;
        row.sym_ok = row.sym2 == row.sym_rhs;
        if (rep.smooth) {
            row.hilb2 = hilb2_count(Y, e);
            row.hilb_ok = *row.hilb2 == row.hilb_rhs;
        } else {
            row.hilb_ok = true;  // not asserted without smoothness
        }
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extended relation

struct ExtendedRow {
    int e = 1;
    StratumCounts counts;
    Integer lhs, rhs;
    bool ok = false;
};

struct ExtendedReport {
    ParamSet params;
    std::vector<std::string> warnings;  // violated size restrictions
    std::vector<ExtendedRow> rows;
    std::vector<PlaneRecord> records;   // per-plane profiles of the first e
    bool ok() const {
        for (const auto& r : rows)
            if (!r.ok) return false;
        return true;
    }
    std::uint64_t excluded() const {
        std::uint64_t n = 0;
        for (const auto& r : rows) n += r.counts.positive_dim;
        return n;
    }
};

inline ExtendedReport verify_extended(const VarietySpec& Y, const ParamSet& p, const std::vector<int>& e_list,
                                      unsigned workers = 1, bool keep_records = false) {
    p.validate_structural();
    check_matches(Y, p);
    ExtendedReport rep;
    rep.params = p;
    rep.warnings = p.violations();
    for (std::size_t i = 0; i < e_list.size(); ++i) {
        StratumOptions opt;
        opt.workers = workers;
        opt.keep_records = keep_records && i == 0;
        ExtendedRow row;
        row.e = e_list[i];
        row.counts = stratum_counts(Y, p, row.e, opt, opt.keep_records ? &rep.records : nullptr);
        const auto& c = row.counts;
        row.lhs = c.W - c.B1 - c.B2 - c.A;
        row.rhs = c.V - c.R - c.T1 - c.T2;
        row.ok = row.lhs == row.rhs && c.bijection_failures == 0 && c.conservation_failures == 0;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Partition identities (low regime)

struct PartitionReport {
    ParamSet params;
    int e = 1;
    StratumCounts counts;
    Integer gW, gV;      // #G(n-m-s, n-s) for s = d-k-1 and s = k+1
    Integer symW, symV;  // #Y^(s)
    Integer w_lhs, w_rhs, v_lhs, v_rhs;
    // residuals of the forms W - B1 = (Sym - N) G - A - P and
    // V - T1 = (Sym - M) G - R - Q, which count contained planes twice
    Integer w_displayed_residual, v_displayed_residual;
    bool ok() const { return w_lhs == w_rhs && v_lhs == v_rhs; }
};

inline PartitionReport verify_partition(const VarietySpec& Y0, const ParamSet& p, int e, unsigned workers = 1) {
    p.validate_structural();
    if (!p.low()) throw RegimeMismatch("partition identities need d-k-1 <= n-m-1, got " + p.str());
    VarietySpec Y = extend(Y0, e);
    PartitionReport rep;
    rep.params = p;
    rep.e = e;
    StratumOptions opt;
    opt.workers = workers;
    opt.want_M = opt.want_N = opt.positive_dim_PQ = true;
    rep.counts = stratum_counts_base(Y, p, opt);
    const auto& c = rep.counts;
    int r = p.r(), sW = p.w_size(), sV = p.v_size();
    long Q = Y.q();
    // (n-m)-planes through a fixed (s-1)-plane; exactly one when s = n-m+1
    auto through = [&](int s) { return s == r + 1 ? Integer(1) : specialize_int(grassmannian_class(r - s, p.n - s).value, Q); };
    rep.gW = through(sW);
    rep.gV = through(sV);
    rep.symW = sym_count(Y, sW, 1);
    rep.symV = sym_count(Y, sV, 1);
    Integer P = c.P + *c.P_pos, Qc = c.Q + *c.Q_pos;
    rep.w_lhs = c.W - c.B1 + P;
    rep.w_rhs = (rep.symW - *c.N) * rep.gW;
    rep.v_lhs = c.V - c.T1 + Qc;
    rep.v_rhs = (rep.symV - *c.M) * rep.gV;
    rep.w_displayed_residual = (c.W - c.B1) - (rep.w_rhs - c.A - P);
    rep.v_displayed_residual = (c.V - c.T1) - (rep.v_rhs - c.R - Qc);
    return rep;
}

// ---------------------------------------------------------------------------
// Dimension probe

struct SlopeEstimate {
    bool bottom = false;
    double slope = 0;
    long rounded = 0;
    double residual = 0;
    std::vector<long> q_list;  // samples actually used
    RelDim reldim() const { return bottom ? RelDim::bottom() : RelDim(rounded); }
    bool within(long bound, double tol = 0.5) const { return bottom || slope <= static_cast<double>(bound) + tol; }
    std::string str() const {
        if (bottom) return "BOTTOM";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", slope);
        return buf;
    }
};

// Correction order in 1/q: exact class values carry no noise and take the
// quadratic term; point counts only the linear one, since higher orders
// chase Lang-Weil noise at small q.
inline constexpr int kExactProbeOrder = 2;
inline constexpr int kCountProbeOrder = 1;

// Least squares of log N on log q with corrections c1/q + ... + c_o/q^o,
// o = min(max_order, samples - 2).

inline SlopeEstimate dimension_probe(const std::vector<std::pair<long, Rational>>& samples, int max_order = kCountProbeOrder) {
    if (samples.size() < 3) throw InsufficientSamples("need at least 3 fields, got " + std::to_string(samples.size()));
    SlopeEstimate est;
    std::vector<long double> xs, ys;
    for (const auto& [q, n] : samples) {
        if (q < 2) throw OutOfRange("field size must be >= 2");
        if (n <= 0) continue;
        est.q_list.push_back(q);
        xs.push_back(std::log(static_cast<long double>(q)));
        ys.push_back(std::log(static_cast<long double>(boost::multiprecision::numerator(n))) -
                     std::log(static_cast<long double>(boost::multiprecision::denominator(n))));
    }
    if (est.q_list.empty()) {
        est.bottom = true;
        return est;
    }
    if (est.q_list.size() < 2) throw InsufficientSamples("only one nonzero sample");
    std::size_t n = xs.size();
    std::size_t order = std::min<std::size_t>(static_cast<std::size_t>(std::max(0, max_order)), n - 2);
    std::size_t cols = 2 + order;
    auto design = [&](std::size_t i) {
        std::vector<long double> row{xs[i], 1.0L};
        long double inv = 1.0L / static_cast<long double>(est.q_list[i]), t = 1;
        for (std::size_t o = 1; o <= order; ++o) row.push_back(t *= inv);
        return row;
    };
    std::vector<std::vector<long double>> A(cols, std::vector<long double>(cols + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = design(i);
        for (std::size_t a = 0; a < cols; ++a) {
            for (std::size_t b = 0; b < cols; ++b) A[a][b] += row[a] * row[b];
            A[a][cols] += row[a] * ys[i];
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < cols; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        if (std::fabs(A[c][c]) < 1e-18L) throw InsufficientSamples("degenerate sample set");
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == c) continue;
            long double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k <= cols; ++k) A[r][k] -= f * A[c][k];
        }
    }
    std::vector<long double> beta(cols);
    for (std::size_t c = 0; c < cols; ++c) beta[c] = A[c][cols] / A[c][c];
    long double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto row = design(i);
        long double fit = 0;
        for (std::size_t c = 0; c < cols; ++c) fit += beta[c] * row[c];
        ss += (fit - ys[i]) * (fit - ys[i]);
    }
    est.slope = static_cast<double>(beta[0]);
    est.rounded = std::lround(est.slope);
    est.residual = static_cast<double>(std::sqrt(ss / static_cast<long double>(n)));
    return est;
}

// q = p^e; throws NotPrime otherwise.
inline std::pair<int, int> prime_power(long q) {
    if (q >= 2)
        for (long p = 2; p <= q; ++p) {
            if (q % p) continue;
            int e = 0;
            long t = q;
            while (t % p == 0) {
                t /= p;
                ++e;
            }
            if (t == 1) return {static_cast<int>(p), e};
            break;
        }
    throw NotPrime(std::to_string(q) + " is not a prime power");
}

// ---------------------------------------------------------------------------
// Lang-Weil at dimension 0

struct LWPlane {
    std::uint64_t id = 0;
    std::vector<int> orbit_sizes;
    std::vector<int> e_values;
    std::vector<long long> direct, predicted;
    std::vector<long long> alpha;  // stable (d-k-1)-subsets over F_{q^e}
    std::vector<long long> alpha_brute;
    std::vector<bool> divisible;   // lcm of orbit sizes divides e
};

struct LWDiagnostics {
    ParamSet params;
    std::vector<int> e_list;
    std::vector<LWPlane> planes;
    long long alpha_max = 0;  // C(d, d-k-1)
    std::uint64_t count_mismatches = 0, alpha_bound_failures = 0, alpha_split_failures = 0,
                  alpha_vanish_failures = 0;
    bool ok() const {
        return count_mismatches == 0 && alpha_bound_failures == 0 && alpha_split_failures == 0 &&
               alpha_vanish_failures == 0;
    }
};

inline long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline LWDiagnostics langweil_check(const VarietySpec& Y, const ParamSet& p, const std::vector<int>& e_list,
                                    unsigned workers = 1) {
    p.validate_structural();
    check_matches(Y, p);
    for (int e : e_list)
        if (e < 1) throw OutOfRange("extension degree must be >= 1");
    LWDiagnostics diag;
    diag.params = p;
    diag.e_list = e_list;
    int sW = p.w_size(), r = p.r();
    diag.alpha_max = binom(p.d, sW);
    const Field& F = Y.field();
    auto chunks = plane_chunks(r, Y.n(), F.size());
    std::vector<std::vector<LWPlane>> outs(chunks.size());
    run_chunks(chunks.size(), workers, [&](std::size_t i) {
        const auto& ch = chunks[i];
        for (std::uint64_t l = ch.lo; l < ch.hi; ++l) {
            PlaneRep P = decode_plane(ch, l, r, Y.n(), F.size());
            OrbitProfile prof = intersection_profile(Y, P);
            if (prof.kind != Kind::Transversal) continue;
            LWPlane lp;
            lp.id = P.id;
            lp.orbit_sizes = prof.orbit_sizes;
            auto gs = restrict_forms(Y.forms(), P);
            int ell = detail::lcm_of(prof.orbit_sizes);
            for (int e : e_list) {
                const Field& K = field(Y.p(), Y.e() * e);
                auto direct = static_cast<long long>(projective_zeros(gs, P.k + 1, K, embedding(F, K)).points.size());
                long long pred = 0;
                std::vector<int> split;  // orbit sizes after base change to F_{q^e}
                for (int s : prof.orbit_sizes) {
                    if (e % s == 0) pred += s;
                    int g = std::gcd(s, e);
                    for (int j = 0; j < g; ++j) split.push_back(s / g);
                }
                long long brute = 0;
                for (std::uint32_t mask = 0; mask < (1u << split.size()); ++mask) {
                    int sum = 0;
                    for (std::size_t j = 0; j < split.size(); ++j)
                        if (mask >> j & 1u) sum += split[j];
                    if (sum == sW) ++brute;
                }
                lp.e_values.push_back(e);
                lp.direct.push_back(direct);
                lp.predicted.push_back(pred);
                lp.alpha.push_back(static_cast<long long>(stable_subset_count(split, sW)));
                lp.alpha_brute.push_back(brute);
                lp.divisible.push_back(e % ell == 0);
            }
            outs[i].push_back(std::move(lp));
        }
    });
    for (auto& o : outs)
        for (auto& lp : o) {
            for (std::size_t j = 0; j < lp.e_values.size(); ++j) {
                if (lp.direct[j] != lp.predicted[j]) ++diag.count_mismatches;
                long long a = lp.alpha[j];
                if (a < 0 || a > diag.alpha_max) ++diag.alpha_bound_failures;
                if (lp.divisible[j] && a != diag.alpha_max) ++diag.alpha_split_failures;
                if (a != lp.alpha_brute[j]) ++diag.alpha_vanish_failures;
            }
            diag.planes.push_back(std::move(lp));
        }
    return diag;
}

// ---------------------------------------------------------------------------
// Averaged table (high-degree terms)

// ---------------------------------------------------------------------------
// Stratum / Grassmannian ratio probes against the high-degree upper bounds on
// relative dimension. One-sided: an estimate passes when it is at most
// bound + 0.5 (BOTTOM always passes).

struct RatioProbe {
    std::string name;
    long bound = 0;
    std::map<long, Rational> series;
    SlopeEstimate estimate;
    bool ok() const { return estimate.bottom || estimate.slope <= static_cast<double>(bound) + 0.5; }
};

inline std::vector<RatioProbe> ratio_probes(const VarietySpec& Y, const ParamSet& p, const std::vector<long>& q_list,
                                            unsigned workers = 1) {
    p.validate_structural();
    check_matches(Y, p);
    if (p.low()) throw RegimeMismatch(p.str() + " is in the low-degree regime");
    if (q_list.size() < 3) throw InsufficientSamples("need at least 3 fields, got " + std::to_string(q_list.size()));
    int r = p.r(), k = p.k, m = p.m, n = p.n, d = p.d;
    long fano_dim_shift = 0;  // sum over forms of C(d_i + r, r)
    for (int di : Y.degrees()) fano_dim_shift += binom(di + r, r);
    std::vector<RatioProbe> out{{"J", 0, {}, {}},
                                {"M", -m - 1, {}, {}},
                                {"Q", -static_cast<long>(r) * r, {}, {}},
                                {"B2", -2L * (r - (k - 2) - 1), {}, {}},
                                {"T2", -static_cast<long>(m) * (r + 1), {}, {}},
                                {"FC", -fano_dim_shift + static_cast<long>(r) * k + k - 1, {}, {}},
                                {"FD", -fano_dim_shift + static_cast<long>(r - 1) * (d - k) - (d - k - 1), {}, {}}};
    auto cd = dependent_tuple_classes(p);
    for (long q : q_list) {
        auto [pp, ee] = prime_power(q);
        VarietySpec Yq = (pp == Y.p() && ee == Y.e()) ? Y : Y.rebase(pp, ee);
        StratumOptions so;
        so.workers = workers;
        so.want_M = true;
        StratumCounts c = stratum_counts_base(Yq, p, so);
        Rational Q(q);
        Rational G = specialize(grassmannian_class(r, n).value, Q);
        Rational Gp = specialize(grassmannian_class(r - k - 1, n - k - 1).value, Q);
        Rational F{Integer(c.contained)};
        out[0].series[q] = Rational(c.J) / G;
        out[1].series[q] = Rational(*c.M) * Gp / G;
        out[2].series[q] = Rational(c.Q) / G;
        out[3].series[q] = Rational(c.B2) / G;
        out[4].series[q] = Rational(c.T2) / G;
        out[5].series[q] = F * specialize(cd.first.value, Q) / G;
        out[6].series[q] = F * specialize(cd.second.value, Q) / G;
    }
    for (auto& rp : out) {
        std::vector<std::pair<long, Rational>> smp(rp.series.begin(), rp.series.end());
        rp.estimate = dimension_probe(smp);
    }
    return out;
}

struct TermValue {
    std::optional<Rational> value;    // at the table's q
    std::map<long, Rational> series;  // q -> value
    std::optional<SlopeEstimate> probe;
    std::optional<long> bound;        // expected upper bound on relative dimension
    std::string note;
};

struct AveragedEntry {
    ParamSet params;
    std::string error;
    // term1_main term1_M term2 term3 term4 term5 lhs residual
    std::map<std::string, TermValue> terms;
};

struct AveragedTable {
    long q = 2;
    std::vector<long> q_list;
    std::vector<AveragedEntry> entries;
    std::vector<std::optional<Rational>> residual_trend;
};

struct AveragedOptions {
    std::vector<long> q_list{2, 3, 4, 5, 7};
    double plane_budget = 1e8;  // planes x fibre prefixes allowed per field
    unsigned workers = 1;
};

// Rough cost of a full plane sweep.
inline double plane_cost(const ParamSet& p, long q) {
    double planes = static_cast<double>(specialize(grassmannian_class(p.r(), p.n).value, Rational(q)));
    double fib = 0;
    for (int e = p.d / 2 + 1; e <= p.d; ++e) fib += std::pow(static_cast<double>(q), e * std::max(1, p.r() - 1));
    return planes * fib;
}

inline const std::vector<std::string>& averaged_term_names() {
    static const std::vector<std::string> names{"term1_main", "term1_M", "term2", "term3",
                                                "term4",      "term5",   "lhs",   "residual"};
    return names;
}

inline AveragedTable averaged_table(const std::vector<std::pair<VarietySpec, ParamSet>>& seq, long q,
                                    const AveragedOptions& opt = {}) {
    prime_power(q);
    AveragedTable tab;
    tab.q = q;
    tab.q_list = opt.q_list;
    int last_r = -1;
    for (const auto& [Y, p] : seq) {
        AveragedEntry ent;
        ent.params = p;
        try {
            p.validate_strict();
            if (p.low()) throw ParameterViolation(p.str() + " is in the low-degree regime");
            check_matches(Y, p);
            if (p.r() <= last_r) throw ParameterViolation("sequence must increase in n-m");
            last_r = p.r();
        } catch (const ParameterViolation& e) {
            ent.error = e.what();
            tab.entries.push_back(std::move(ent));
            tab.residual_trend.push_back(std::nullopt);
            continue;
        }
        int r = p.r(), k = p.k, m = p.m, n = p.n, sV = p.v_size(), sW = p.w_size();
        auto cd = dependent_tuple_classes(p);
        std::vector<long> qs = opt.q_list;
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
        std::sort(qs.begin(), qs.end());
        auto& T = ent.terms;
        for (const auto& name : averaged_term_names()) T[name];
        T["term1_main"].bound = 0;
        T["term1_M"].bound = -m - 1;
        bool skipped = false;
        for (long qq : qs) {
            auto [pp, ee] = prime_power(qq);
            VarietySpec Yq = (pp == Y.p() && ee == Y.e()) ? Y : Y.rebase(pp, ee);
            Rational G = specialize(grassmannian_class(r, n).value, Rational(qq));
            Rational Gp = specialize(grassmannian_class(r - k - 1, n - k - 1).value, Rational(qq));
            Integer sym = sym_count(Yq, sV, 1);
            Integer M = sym - count_good_stable_sets(Yq.forms(), n + 1, Yq.field(), sV, sV);
            T["term1_main"].series[qq] = Rational(sym) * Gp / G;
            T["term1_M"].series[qq] = Rational(M) * Gp / G;
            if (plane_cost(p, qq) > opt.plane_budget) {
                skipped = true;
                continue;
            }
            StratumOptions so;
            so.workers = opt.workers;
            StratumCounts c = stratum_counts_base(Yq, p, so);
            Rational F{Integer(c.contained)};
            Rational C = specialize(cd.first.value, Rational(qq)), D = specialize(cd.second.value, Rational(qq));
            Rational symP = specialize(sym_proj_class(r, sV).value, Rational(qq));
            Rational ucP = specialize(uconf_proj_class(r, sW).value, Rational(qq));
            Rational t1 = (Rational(sym) - Rational(M)) * Gp / G;
            Rational t2 = Rational(c.J) / G, t3 = Rational(c.Q) / G;
            Rational t4 = (Rational(c.B2) - Rational(c.T2)) / G;
            Rational t5 = 2 * F * (C - D) / G;
            Rational lhs = 2 * F * (symP - ucP) / G;
            T["term2"].series[qq] = t2;
            T["term3"].series[qq] = t3;
            T["term4"].series[qq] = t4;
            T["term5"].series[qq] = t5;
            T["lhs"].series[qq] = lhs;
            T["residual"].series[qq] = lhs - (t1 - t2 - t3 + t4 + t5);
        }
        for (auto& [name, tv] : T) {
            auto it = tv.series.find(q);
            if (it != tv.series.end()) tv.value = it->second;
            else tv.note = "not computed: plane sweep over budget";
            if (name == "lhs" || name == "residual") continue;
            std::vector<std::pair<long, Rational>> smp;
            for (long qq : opt.q_list) {
                auto jt = tv.series.find(qq);
                if (jt != tv.series.end()) smp.emplace_back(qq, jt->second);
            }
            try {
                tv.probe = dimension_probe(smp);
            } catch (const InsufficientSamples& e) {
                if (!tv.note.empty()) tv.note += "; ";
                tv.note += std::string("no probe: ") + e.what();
            }
        }
        if (skipped && T["term2"].note.empty()) T["term2"].note = "some sample fields skipped (plane sweep over budget)";
        tab.residual_trend.push_back(T["residual"].value);
        tab.entries.push_back(std::move(ent));
    }
    return tab;
}

} // namespace fano

#endif
