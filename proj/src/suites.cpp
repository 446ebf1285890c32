#include "hmf/suites.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hmf/cusps.hpp"
#include "hmf/toric.hpp"

namespace hmf {

namespace {

// Records the first failure; later checks still count as trials.
struct Tally {
    SuiteReport& r;
    void operator()(bool ok, const std::string& what) {
        ++r.trials;
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = what;
        }
    }
};

FracIdeal ideal(const Field* F, long a) { return FracIdeal::rational(F, Rational(a)); }

std::string name(const FracIdeal& I) { return to_string(I); }

ContextPtr make_ctx(const Field* F, const Level& level, const Weight& w, const CoeffRing& R, long p) {
    return Context::create(F, level, w, R, p)->with_default_character();
}

Level u1(const Field* F) { return {LevelType::U1, FracIdeal::unit(F)}; }

FracIdeal n41(const Field* F) { return FracIdeal::from_generators(F, {F->from(41), Element(F, 6, 1)}); }
FracIdeal n155(const Field* F) { return FracIdeal::from_generators(F, {F->from(155), Element(F, 12, 1)}); }

// 1. |C_0(P)| = |C| 2^k with both projections 2^k-to-one
SuiteReport cusp_counting(const SuiteOptions&) {
    SuiteReport r{"cusp counting", true, 0, ""};
    Tally check{r};
    std::string summary;
    for (long D : {5L, 3L}) {
        const Field* F = Field::get(D);
        std::vector<Level> levels{u1(F)};
        if (D == 5) levels.push_back({LevelType::Full, n41(F)});
        std::vector<FracIdeal> Ps{primes_above(F, 3)[0].P};
        if (D == 5) {
            Ps.push_back(ideal(F, 11));
            for (const auto& q : primes_above(F, 11)) Ps.push_back(q.P);
        }
        for (const auto& lv : levels)
            for (const auto& P : Ps) {
                long ell = factor(P)[0].first.ell;
                CuspAtlas A(F, lv, ell);
                auto u0 = A.u0_cusps(P);
                std::size_t k = factor(P).size(), fib = std::size_t{1} << k;
                std::string tag = "D=" + std::to_string(D) + " " + lv.describe() + " P=" + name(P);
                check(u0.size() == A.size() * fib, tag + ": |C0| = " + std::to_string(u0.size()) + ", |C| = " + std::to_string(A.size()));
                std::map<std::size_t, std::size_t> f1, f2;
                for (const auto& u : u0) {
                    f1[u.base]++;
                    f2[u.pi2]++;
                    check(u.q1 * u.q2 == P, tag + ": q1 q2 != P");
                }
                for (std::size_t c = 0; c < A.size(); ++c) {
                    check(f1[c] == fib, tag + ": pi1 fiber over cusp " + std::to_string(c));
                    check(f2[c] == fib, tag + ": pi2 fiber over cusp " + std::to_string(c));
                }
                summary += (summary.empty() ? "" : "; ") + tag + " |C|=" + std::to_string(A.size()) + " |C0|=" + std::to_string(u0.size());
            }
    }
    if (r.pass) r.detail = summary;
    return r;
}

// 2. clasp fibers over (c, q) have size #(O/q)^x, summing to Nm(P)
SuiteReport clasp_fibers(const SuiteOptions&) {
    SuiteReport r{"clasp fibers", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    struct Row {
        FracIdeal n, P;
        long ell;
    };
    std::string summary;
    for (const auto& row : {Row{n41(F), ideal(F, 3), 3}, Row{n155(F), ideal(F, 11), 11}}) {
        CuspAtlas A(F, {LevelType::Full, row.n}, row.ell);
        std::string tag = "U(" + name(row.n) + ") P=" + name(row.P);
        check(A.is_neat(row.P), tag + ": level not P-neat");
        auto u0 = A.u0_cusps(row.P);
        auto cl = A.clasps(row.P);
        std::map<std::size_t, std::uint64_t> fiber;
        for (const auto& c : cl) fiber[c.u0]++;
        for (const auto& u : u0)
            check(fiber[u.index] == ResidueRing(u.q1).unit_count(), tag + ": fiber over U0 cusp " + std::to_string(u.index));
        std::uint64_t total = 0;
        for (const auto& q : divisors(row.P)) total += ResidueRing(q).unit_count();
        Integer nm = row.P.norm().get_num();
        check(Integer(static_cast<unsigned long>(total)) == nm, tag + ": sum of phi(q) = " + std::to_string(total));
        check(Integer(static_cast<unsigned long>(cl.size())) == nm * static_cast<unsigned long>(A.size()), tag + ": clasp total");
        summary += (summary.empty() ? "" : "; ") + tag + " |C|=" + std::to_string(A.size()) + " clasps=" + std::to_string(cl.size());
    }
    if (r.pass) r.detail = summary;
    return r;
}

// 3. level_indices against the products over the prime factors
SuiteReport index_constants(const SuiteOptions&) {
    SuiteReport r{"index constants", true, 0, ""};
    Tally check{r};
    const Field* F5 = Field::get(5);
    const Field* F3 = Field::get(3);
    auto p11 = primes_above(F5, 11);
    std::vector<FracIdeal> Ps{ideal(F5, 3), ideal(F5, 11), p11[0].P, p11[1].P, ideal(F5, 33), p11[0].P * ideal(F5, 3),
                              primes_above(F3, 3)[0].P, ideal(F3, 11), primes_above(F3, 11)[0].P * primes_above(F3, 3)[0].P};
    for (const auto& P : Ps) {
        Integer a = 1, b = 1;
        for (const auto& [Q, e] : factor(P)) {
            Integer nq = Q.norm();
            a *= nq + 1;
            b *= nq * nq - 1;
        }
        auto got = level_indices(P);
        check(got.first == a && got.second == b, "level_indices" + name(P) + " = (" + to_string(got.first) + ", " + to_string(got.second) + ")");
    }
    auto inert = level_indices(ideal(F5, 3));
    check(inert == std::make_pair(Integer(10), Integer(80)), "inert 3 in Q(sqrt 5) is not (10, 80)");
    if (r.pass) r.detail = "inert 3 -> (10, 80); 11 -> (144, 14400); split 11 -> (12, 120)";
    return r;
}

// 4. operator outputs stay admissible
SuiteReport admissibility(const SuiteOptions& opt) {
    SuiteReport r{"admissibility preservation", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    auto ps = primes_above(F, 11);
    PrimeIdeal v = primes_above(F, 2)[0];
    std::vector<ContextPtr> ctxs{
        make_ctx(F, u1(F), Weight{2, 2, 0, 0}, CoeffRing::exact(F), 11),
        make_ctx(F, u1(F), Weight{2, 4, 1, 0}, CoeffRing::exact(F), 11),
        make_ctx(F, {LevelType::Full, ideal(F, 7)}, Weight{2, 2, 0, 0}, CoeffRing::exact(F), 11),
        make_ctx(F, u1(F), Weight{2, 2, 0, 0}, CoeffRing::torsion(ps[0], 2), 11),
    };
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
        const ContextPtr& ctx = ctxs[c];
        const PrimeIdeal& P = ps[c % 2];
        Element varpi = ctx->normalized_uniformizer(P);
        for (std::uint64_t s = 0; s < 100; ++s) {
            QExpFamily f = random_admissible_family(ctx, opt.seed + s, 24);
            std::vector<std::pair<const char*, QExpFamily>> outs{
                {"T_v", apply_Tv(f, v)},           {"S_v", apply_Sv(f, v.P)},
                {"T_p", apply_Tp(f, P)},           {"S_varpi", apply_S_varpi(f, P, varpi)},
                {"S_p", apply_Sp(f, P)},
            };
            if (opt.corrupt && c == 0 && s == 0) {
                QExpFamily& g = outs[0].second;
                Element k = g.coeffs[0].begin()->first;
                Coeff val = ctx->ring.add(g.coeffs[0].begin()->second, ctx->ring.one());
                g.coeffs[0].erase(k);
                g.coeffs[0].emplace(ctx->unit() * k, val);
            }
            for (const auto& [op, g] : outs) {
                ValidationReport vr = validate_family(g);
                check(vr.valid, std::string(op) + " output invalid (context " + std::to_string(c) + ", seed " +
                                    std::to_string(opt.seed + s) + ") at cusp " + std::to_string(vr.rep) + ", key " +
                                    to_string(vr.key) + ": " + vr.message);
            }
        }
    }
    if (r.pass) r.detail = "4 contexts x 100 families x {T_v, S_v, T_p, S_varpi, S_p}";
    return r;
}

// 5. T_P T_Q = T_Q T_P at split 11
SuiteReport commutativity(const SuiteOptions& opt) {
    SuiteReport r{"commutativity", true, 0, ""};
    const Field* F = Field::get(5);
    auto ps = primes_above(F, 11);
    for (const CoeffRing& R : {CoeffRing::exact(F, 5), CoeffRing::torsion(ps[0], 2)}) {
        auto ctx = make_ctx(F, u1(F), Weight{2, 2, 0, 0}, R, 11);
        SuiteReport s = check_commutativity(ctx, ps[0], ps[1], 50, opt.seed, 130);
        r.trials += s.trials;
        if (!s.pass) {
            r.pass = false;
            r.detail = R.describe() + ": " + s.detail;
            return r;
        }
    }
    r.detail = "50 trials each over Q(sqrt 5)[zeta_5] and O_F/p^2";
    return r;
}

// 6. T_p is independent of the uniformizer
SuiteReport uniformizer_independence(const SuiteOptions& opt) {
    SuiteReport r{"uniformizer independence", true, 0, ""};
    const Field* F = Field::get(5);
    auto ps = primes_above(F, 11);
    std::vector<ContextPtr> ctxs{make_ctx(F, u1(F), Weight{2, 4, 1, 0}, CoeffRing::exact(F), 11),
                                 make_ctx(F, {LevelType::Full, ideal(F, 7)}, Weight{4, 4, 0, 0}, CoeffRing::exact(F), 11)};
    for (const auto& ctx : ctxs)
        for (const auto& P : ps) {
            SuiteReport s = check_uniformizer_independence(ctx, P, 25, opt.seed, 30);
            r.trials += s.trials;
            if (!s.pass) {
                r.pass = false;
                r.detail = ctx->level.describe() + " at " + name(P.P) + ": " + s.detail;
                return r;
            }
        }
    r.detail = "25 trials per (context, prime over 11)";
    return r;
}

// 7. S_varpi = chi_{k+2m-1}(eps_plus) S_{eps_plus varpi}
SuiteReport varpi_change(const SuiteOptions& opt) {
    SuiteReport r{"varpi-change law", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    const Element& e = F->eps_plus();
    for (Weight w : {Weight{2, 2, 0, 0}, Weight{4, 4, 0, 0}, Weight{2, 4, 1, 0}, Weight{6, 6, -1, -1}, Weight{4, 2, 0, 1}})
        for (const Level& lv : {u1(F), Level{LevelType::Full, ideal(F, 7)}}) {
            auto ctx = make_ctx(F, lv, w, CoeffRing::exact(F), 11);
            const CoeffRing& R = ctx->ring;
            Coeff law = ctx->chi_ring(e, w.k1 + 2 * w.m1 - 1, w.k2 + 2 * w.m2 - 1);
            QExpFamily f = random_admissible_family(ctx, opt.seed, 30);
            for (const auto& P : primes_above(F, 11)) {
                Element pi = ctx->normalized_uniformizer(P);
                check(R.eq(s_varpi(*ctx, P, pi), R.mul(law, s_varpi(*ctx, P, e * pi))),
                      "scalar law fails for " + w.describe() + " at " + name(P.P));
                check(equal_on_common(apply_S_varpi(f, P, pi), scale(law, apply_S_varpi(f, P, e * pi))),
                      "family law fails for " + w.describe() + " at " + name(P.P));
            }
        }
    if (r.pass) r.detail = "5 weights x 2 levels x 2 primes";
    return r;
}

// 8. gates over Z[sqrt 5]/(p^2)
SuiteReport gates(const SuiteOptions& opt) {
    SuiteReport r{"gate enforcement", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    auto ps = primes_above(F, 11);
    CoeffRing T = CoeffRing::torsion(ps[0], 2);
    long weights = 0, rejected = 0;
    for (long k1 = 1; k1 <= 5; ++k1)
        for (long m1 = -3; m1 <= 2; ++m1)
            for (long k2 : {2L, 3L, 4L}) {
                long s = k1 + 2 * m1;
                if ((s - k2) % 2 != 0) continue;
                Weight w{k1, k2, m1, (s - k2) / 2};
                ContextPtr ctx;
                try {
                    ctx = make_ctx(F, u1(F), w, T, 11);
                } catch (const DomainError&) {
                    continue;
                }
                ++weights;
                QExpFamily f = random_admissible_family(ctx, opt.seed, 24);
                for (const auto& P : ps) {
                    long tsum = 0, ssum = 0;
                    for (int th : theta_set(T, P)) {
                        long k = th == 1 ? w.k1 : w.k2, m = th == 1 ? w.m1 : w.m2;
                        tsum += std::min(m, m + k - 1);
                        ssum += k + 2 * m;
                    }
                    bool tp = tsum >= 0, sp = ssum >= 2L * P.e * P.f;
                    std::string tag = w.describe() + " at " + name(P.P);
                    bool tp_ok, sp_ok;
                    try {
                        tp_ok = validate_family(apply_Tp(f, P)).valid;
                    } catch (const GateError&) {
                        tp_ok = false;
                        ++rejected;
                    }
                    try {
                        sp_ok = validate_family(apply_Sp(f, P)).valid;
                    } catch (const GateError&) {
                        sp_ok = false;
                        ++rejected;
                    }
                    check(tp_ok == tp, "T_p " + std::string(tp ? "rejected " : "accepted ") + tag);
                    check(sp_ok == sp, "S_p " + std::string(sp ? "rejected " : "accepted ") + tag);
                }
            }
    check(weights >= 20, "only " + std::to_string(weights) + " weights in the sweep");
    if (r.pass) r.detail = std::to_string(weights) + " weights, " + std::to_string(rejected) + " rejections";
    return r;
}

// Representatives of A / vA.
std::vector<Element> quotient_reps(const FracIdeal& A, const FracIdeal& vA, long ell) {
    std::vector<Element> reps;
    for (long i = 0; i < ell; ++i)
        for (long j = 0; j < ell; ++j) {
            Element x = Rational(i) * A.basis1() + Rational(j) * A.basis2();
            bool fresh = true;
            for (const auto& y : reps)
                if (vA.contains(x - y)) {
                    fresh = false;
                    break;
                }
            if (fresh) reps.push_back(x);
        }
    return reps;
}

// 9. sum over eps in A/vA of zeta^{-N Tr(eps m)} = Nm(v) [m in L], L = d^-1 A^-1, m in v^-1 L
SuiteReport character_sums(const SuiteOptions&) {
    SuiteReport r{"character-sum identity", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    FracIdeal dinv = inverse(different(F));
    std::vector<std::pair<FracIdeal, long>> vs{{ideal(F, 3), 3}, {primes_above(F, 11)[0].P, 11}, {primes_above(F, 11)[1].P, 11}};
    for (const auto& [v, ell] : vs)
        for (long nn : {1L, 7L}) {
            FracIdeal A = ideal(F, nn);
            FracIdeal L = dinv * inverse(A), fine = inverse(v) * L;
            CoeffRing R = CoeffRing::exact(F, ell);
            auto reps = quotient_reps(A, v * A, ell);
            std::string tag = "v=" + name(v) + " n=(" + std::to_string(nn) + ")";
            check(static_cast<long>(reps.size()) == to_int64(v.norm().get_num()), tag + ": wrong number of coset representatives");
            Series s;
            for_each_in_box(fine, -2, 2, -2, 2, [&](const Element& m) { s.emplace(m, R.one()); });
            std::map<Element, Coeff> sum;
            for (const auto& [m, c] : s) sum[m] = R.zero();
            for (const auto& eps : reps)
                for (const auto& [m, c] : unipotent_twist(R, s, eps, ell)) sum[m] = R.add(sum[m], c);
            long on = 0, off = 0;
            for (const auto& [m, c] : sum) {
                bool coarse = L.contains(m);
                (coarse ? on : off)++;
                Coeff want = coarse ? R.from_rational(v.norm()) : R.zero();
                check(R.eq(c, want), tag + ": sum at " + to_string(m) + " is wrong");
            }
            check(on > 0 && off > 0, tag + ": sample misses one side");
        }
    if (r.pass) r.detail = "v in {(3), both primes over 11}, A in {O, (7)}";
    return r;
}

// 10. trace after pullback is the support projection; monoid ranks 9 and 11
SuiteReport saving_trace(const SuiteOptions& opt) {
    SuiteReport r{"saving trace", true, 0, ""};
    Tally check{r};
    const Field* F = Field::get(5);
    FracIdeal M = inverse(different(F));
    CoeffRing R = CoeffRing::exact(F);
    std::mt19937_64 rng(opt.seed);
    MonoidSeries s = make_series(M, FracIdeal::unit(F), 80, R);
    s.set(F->zero(), R.random(rng));
    for_each_in_box(M, 0, 40, 0, 40, [&](const Element& m) {
        if (!m.is_zero() && is_totally_positive(m) && relative_norm(m, M) <= s.bound) s.set(m, R.random(rng));
    });
    struct Row {
        FracIdeal M1;
        long rank;
        std::string tag;
    };
    FracIdeal p = primes_above(F, 11)[0].P;
    for (const auto& row : {Row{ideal(F, 3) * M, 9, "inert 3"}, Row{p * M, 11, "split 11"}}) {
        MonoidSeries back = pullback(saving_trace_local(s, row.M1, F->one(), R.one()), M, F->one());
        check(series_equal(back, support_projection(s, row.M1, F->one())), row.tag + ": trace after pullback is not the projection");
        Fan f = build_unit_invariant_fan(row.M1, F->eps_plus(), true);
        DegreeCertificate c = monoid_trace_degree(f.ray(0), f.ray(1), M, row.M1, F->one(), 20);
        check(c.conclusive && c.rank == row.rank && c.index == row.rank,
              row.tag + ": rank " + std::to_string(c.rank) + " (" + c.message + ")");
    }
    if (r.pass) r.detail = "ranks 9 and 11 at degree bound 20";
    return r;
}

// 11. fans and their refinements against v-sublattice fans
SuiteReport fan_validity(const SuiteOptions&) {
    SuiteReport r{"fan validity", true, 0, ""};
    Tally check{r};
    std::size_t fans = 0;
    for (long D : {5L, 3L, 13L}) {
        const Field* F = Field::get(D);
        const Element& e = F->eps_plus();
        std::vector<FracIdeal> vs{ideal(F, 3), primes_above(F, 11)[0].P};
        for (const FracIdeal& M : {FracIdeal::unit(F), inverse(different(F))})
            for (bool smooth : {false, true}) {
                Fan f = build_unit_invariant_fan(M, e, smooth);
                std::string tag = "D=" + std::to_string(D) + " M=" + name(M) + (smooth ? " smooth" : "");
                auto rep = check_fan(f);
                check(rep.coverage && rep.periodic && (!smooth || rep.smooth), tag + ": " + rep.message);
                for (const auto& v : vs) {
                    Fan coarse = build_unit_invariant_fan(v * M, e, smooth);
                    Fan g = refine_to(f, coarse, F->one(), smooth);
                    auto rg = check_fan(g);
                    check(rg.coverage && rg.periodic && (!smooth || rg.smooth), tag + " v=" + name(v) + ": " + rg.message);
                    check(refine_check(g, coarse, F->one()), tag + " v=" + name(v) + ": refinement misses a coarse ray");
                    check(refine_check(g, f, F->one()), tag + " v=" + name(v) + ": refinement drops a fine ray");
                    fans += 2;
                }
                ++fans;
            }
    }
    if (r.pass) r.detail = std::to_string(fans) + " fans over Q(sqrt 5), Q(sqrt 3), Q(sqrt 13)";
    return r;
}

// Constant-term factor of the coset of diag(a, d), a = pi^i, d = pi^j: psi(a) Nm(a) / Nm(d) chi_m(d / a).
Rational coset_factor(const Rational& psi, const Rational& chim, const Rational& nm, int i, int j) {
    return pow(psi, i) * pow(nm, i) / pow(nm, j) * pow(chim, j - i);
}

// Index-v sublattices of O^2 are the lines of (O/v)^2: the line through (1, 0) has diagonal (v, 1),
// every other line has diagonal (1, v).
Rational hecke_constant(const PrimeIdeal& v, const Rational& psi, const Rational& chim) {
    ResidueRing k(v.P);
    Rational nm = v.norm(), total = 0;
    std::set<std::pair<ResidueRing::Res, ResidueRing::Res>> lines;
    for (ResidueRing::Res x = 0; x < k.size(); ++x)
        for (ResidueRing::Res y = 0; y < k.size(); ++y) {
            if (x == 0 && y == 0) continue;
            // normalize: first nonzero coordinate becomes 1
            ResidueRing::Res s = k.inverse(y != 0 ? y : x);
            auto line = std::make_pair(k.mul(s, x), k.mul(s, y));
            if (!lines.insert(line).second) continue;
            total += y == 0 ? coset_factor(psi, chim, nm, 1, 0) : coset_factor(psi, chim, nm, 0, 1);
        }
    if (Rational(static_cast<unsigned long>(lines.size())) != nm + 1) throw DomainError("line count");
    return total;
}

// All HNF cosets [[pi^i, b], [0, pi^j]] of determinant v^2, b mod pi^j.
Rational hecke_constant_square(const PrimeIdeal& v, const Rational& psi, const Rational& chim) {
    Rational nm = v.norm(), total = 0;
    for (int i = 0; i <= 2; ++i) total += pow(nm, 2 - i) * coset_factor(psi, chim, nm, i, 2 - i);
    return total;
}

// 12. T_v on constants-only families against the double-coset oracle
SuiteReport constants_oracle(const SuiteOptions&) {
    SuiteReport r{"double-coset oracle", true, 0, ""};
    Tally check{r};
    struct Row {
        long D, p;
    };
    for (auto row : {Row{5, 7}, Row{13, 5}, Row{17, 3}}) {
        const Field* F = Field::get(row.D);
        for (Weight w : {Weight{2, 2, 0, 0}, Weight{4, 4, 0, 0}, Weight{6, 6, -1, -1}, Weight{3, 3, 0, 0}}) {
            ContextPtr ctx;
            try {
                ctx = make_ctx(F, u1(F), w, CoeffRing::exact(F), row.p);
            } catch (const DomainError&) {
                continue;
            }
            const CoeffRing& R = ctx->ring;
            std::string tag = "D=" + std::to_string(row.D) + " " + w.describe();
            check(ctx->rep_count() == 1, tag + ": narrow class number is not one");
            check(constant_term_module(*ctx).kind == ConstantModule::Kind::All, tag + ": constants are constrained");
            QExpFamily f = zero_family(ctx, 150);
            f.constants[0] = R.one();
            for (const auto& v : primes_up_to(F, 30, row.p)) {
                auto pi = totally_positive_generator(v.P);
                check(pi.has_value(), tag + ": no totally positive generator of " + name(v.P));
                if (!pi) continue;
                // psi((pi)) = chi_{k+2m-2}(pi) for the default character, parallel weight
                Rational psi = pow(norm(*pi), w.k1 + 2 * w.m1 - 2);
                Rational chim = pow(norm(*pi), w.m1);
                Rational tv = hecke_constant(v, psi, chim);
                QExpFamily g = apply_Tv(f, v);
                check(R.eq(g.constants[0], R.from_rational(tv)), tag + ": T_v at " + name(v.P));
                bool cusp_free = true;
                for (const auto& [m, c] : g.coeffs[0]) cusp_free = cusp_free && R.is_zero(c);
                check(cusp_free, tag + ": T_v creates non-constant terms");
                // T_v^2 = T(v^2) + Nm(v) psi(v) with T(v^2) over all index Nm(v)^2 cosets
                Rational all = hecke_constant_square(v, psi, chim);
                check(tv * tv == all + Rational(v.norm()) * psi, tag + ": T_v^2 relation at " + name(v.P));
                if (v.norm() * v.norm() <= 150) {
                    QExpFamily gg = apply_Tv(g, v);
                    check(R.eq(gg.constants[0], R.from_rational(tv * tv)), tag + ": T_v T_v at " + name(v.P));
                }
            }
        }
    }
    if (r.pass) r.detail = "Q(sqrt 5), Q(sqrt 13), Q(sqrt 17); primes of norm <= 30";
    return r;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all{
        {1, "cusp counting", {5, 3}, cusp_counting},
        {2, "clasp fibers", {5}, clasp_fibers},
        {3, "index constants", {5, 3}, index_constants},
        {4, "admissibility preservation", {5}, admissibility},
        {5, "commutativity", {5}, commutativity},
        {6, "uniformizer independence", {5}, uniformizer_independence},
        {7, "varpi-change law", {5}, varpi_change},
        {8, "gate enforcement", {5}, gates},
        {9, "character-sum identity", {5}, character_sums},
        {10, "saving trace", {5}, saving_trace},
        {11, "fan validity", {5, 3, 13}, fan_validity},
        {12, "double-coset oracle", {5, 13, 17}, constants_oracle},
    };
    return all;
}

SuiteReport run_criterion(const Criterion& c, const SuiteOptions& opt) {
    try {
        return c.run(opt);
    } catch (const std::exception& e) {
        return SuiteReport{c.name, false, 0, std::string("exception: ") + e.what()};
    }
}

}  // namespace hmf
