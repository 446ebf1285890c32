#include "hmf/hecke.hpp"

#include <algorithm>

namespace hmf {

std::vector<int> theta_set(const CoeffRing& R, const PrimeIdeal& P) {
    auto ps = primes_above(R.field(), P.ell);
    if (ps.size() == 1) return {1, 2};
    const FracIdeal& first = R.is_torsion() && R.p() == P.ell ? R.prime().P : ps[0].P;
    return {P.P == first ? 1 : 2};
}

namespace {

long wk(const Weight& w, int th) { return th == 1 ? w.k1 : w.k2; }
long wm(const Weight& w, int th) { return th == 1 ? w.m1 : w.m2; }

std::string prime_name(const PrimeIdeal& P) { return to_string(P.P); }

}  // namespace

bool tp_gate(const CoeffRing& R, const Weight& w, const PrimeIdeal& P) {
    long s = 0;
    for (int th : theta_set(R, P)) s += std::min(wm(w, th), wm(w, th) + wk(w, th) - 1);
    return s >= 0;
}

bool sp_gate(const CoeffRing& R, const Weight& w, const PrimeIdeal& P) {
    long s = 0;
    for (int th : theta_set(R, P)) s += wk(w, th) + 2 * wm(w, th);
    return s >= 2L * P.e * P.f;
}

ContextPtr build_central_character(const ContextPtr& ctx, const std::vector<CharValue>& values) {
    return ctx->with_character(values);
}

namespace {

void check_away_from_p(const Context& c, const PrimeIdeal& v) {
    if (v.ell == c.p) throw DomainError("prime " + prime_name(v) + " lies over p; use T_p");
}

long output_bound(long B, const Rational& nm) {
    Rational q = Rational(B) / nm;
    long b = to_int64(floor(q));
    if (b < 1) throw DomainError("truncation collapses: bound " + std::to_string(B) + " / " + to_string(nm) + " < 1");
    return b;
}

template <class Fn>
QExpFamily build(const ContextPtr& ctx, long bound, Fn&& coeff_at) {
    QExpFamily out;
    out.ctx = ctx;
    out.bound = bound;
    for (std::size_t i = 0; i < ctx->rep_count(); ++i) {
        CoeffMap mp;
        for (const auto& m : family_keys(*ctx, i, bound)) mp.emplace(m, coeff_at(i, m));
        out.coeffs.push_back(std::move(mp));
        out.constants.push_back(coeff_at(i, ctx->F->zero()));
    }
    return out;
}

QExpFamily tv_impl(const QExpFamily& f, const PrimeIdeal& v, const QExpFamily* sv_f) {
    const ContextPtr& ctx = f.ctx;
    const Context& c = *ctx;
    const CoeffRing& R = c.ring;
    check_away_from_p(c, v);
    bool divides_level = !coprime(c.level.n, v.P);
    if (divides_level && c.level.type == LevelType::Full)
        throw DomainError("T_v is not defined for v dividing the level of U(n)");
    long B = output_bound(f.bound, v.norm());
    Coeff scal = R.zero();
    if (!divides_level && !sv_f) scal = R.mul(R.from_int(v.norm()), to_ring(R, c.psi(v.P)));
    FracIdeal vinv = inverse(v.P);
    std::vector<CuspHandle> up, down;
    for (const auto& t : c.reps()) {
        up.push_back(resolve(c, {v.P * t.a, t.r}));
        if (!divides_level) down.push_back(resolve(c, {vinv * t.a, t.r}));
    }
    Coeff nv = R.from_int(v.norm());
    return build(ctx, B, [&](std::size_t i, const Element& m) {
        Coeff r = coefficient(f, up[i], m);
        if (divides_level) return r;
        if (sv_f) return R.add(r, R.mul(nv, coefficient(*sv_f, down[i], m)));
        return R.add(r, R.mul(scal, coefficient(f, down[i], m)));
    });
}

}  // namespace

QExpFamily apply_Tv(const QExpFamily& f, const PrimeIdeal& v) { return tv_impl(f, v, nullptr); }

QExpFamily apply_Tv_formal(const QExpFamily& f, const PrimeIdeal& v, const QExpFamily& sv_f) {
    if (sv_f.bound < f.bound) throw DomainError("S_v f is truncated below f");
    return tv_impl(f, v, &sv_f);
}

QExpFamily apply_Sv(const QExpFamily& f, const FracIdeal& v) {
    const Context& c = *f.ctx;
    if (!coprime(v, c.p) || !coprime(v, c.level.n)) throw DomainError("S_v needs v prime to n p");
    return scale(to_ring(c.ring, c.psi(v)), f);
}

void check_uniformizer(const Context& ctx, const PrimeIdeal& P, const Element& varpi) {
    if (P.ell != ctx.p) throw DomainError("prime " + prime_name(P) + " does not lie over p");
    if (varpi.is_zero() || !is_totally_positive(varpi))
        throw DomainError("uniformizer " + to_string(varpi) + " is not totally positive");
    for (const auto& Q : primes_above(ctx.F, ctx.p))
        if (valuation(Q, varpi) != (Q.P == P.P ? 1 : 0))
            throw DomainError(to_string(varpi) + " is not a uniformizer at " + prime_name(P) + " prime to the rest of p");
}

namespace {

// x = varpi^(p): ideal (varpi) P^-1, residue varpi.
IdeleRep prime_to_p_part(const PrimeIdeal& P, const Element& varpi) {
    return {FracIdeal::principal(varpi) / P.P, varpi};
}

}  // namespace

Coeff s_varpi(const Context& ctx, const PrimeIdeal& P, const Element& varpi) {
    check_uniformizer(ctx, P, varpi);
    CharValue v{0, ctx.F->from(Rational(P.norm()) / norm(varpi))};
    return to_ring(ctx.ring, v * inverse(ctx.omega(prime_to_p_part(P, varpi))));
}

QExpFamily apply_Tp(const QExpFamily& f, const PrimeIdeal& P, const Element& varpi) {
    const ContextPtr& ctx = f.ctx;
    const Context& c = *ctx;
    const CoeffRing& R = c.ring;
    const Weight& w = c.weight;
    check_uniformizer(c, P, varpi);
    if (R.is_torsion() && !tp_gate(R, w, P))
        throw GateError("T_p gate fails at " + prime_name(P) + " for weight " + w.describe() +
                        ": sum of min(m, m+k-1) over the embeddings at P is negative");
    long B = output_bound(f.bound, Rational(P.norm()));
    IdeleRep x = prime_to_p_part(P, varpi);
    FracIdeal xinv_a = inverse(x.a);
    Element vinv = inverse(varpi);
    Coeff c1 = c.chi_ring(varpi, w.m1, w.m2);
    Coeff c2 = R.mul(c.chi_ring(varpi, w.k1 + w.m1 - 1, w.k2 + w.m2 - 1), s_varpi(c, P, varpi));
    std::vector<CuspHandle> h1, h2;
    for (const auto& t : c.reps()) {
        h1.push_back(resolve(c, {xinv_a * t.a, t.r * vinv}));
        h2.push_back(resolve(c, {x.a * t.a, t.r * varpi}));
    }
    return build(ctx, B, [&](std::size_t i, const Element& m) {
        Coeff a = coefficient(f, h1[i], varpi * m);
        Coeff b = coefficient(f, h2[i], vinv * m);
        return R.add(R.mul(c1, a), R.mul(c2, b));
    });
}

QExpFamily apply_Tp(const QExpFamily& f, const PrimeIdeal& P) {
    return apply_Tp(f, P, f.ctx->normalized_uniformizer(P));
}

QExpFamily apply_S_varpi(const QExpFamily& f, const PrimeIdeal& P, const Element& varpi) {
    return scale(s_varpi(*f.ctx, P, varpi), f);
}

QExpFamily apply_Sp(const QExpFamily& f, const PrimeIdeal& P) {
    const Context& c = *f.ctx;
    const Weight& w = c.weight;
    if (c.ring.is_torsion() && !sp_gate(c.ring, w, P))
        throw GateError("S_p gate fails at " + prime_name(P) + " for weight " + w.describe() +
                        ": sum of k+2m over the embeddings at P is below 2ef");
    Element varpi = c.normalized_uniformizer(P);
    // Nm(P)^-1 chi_{k+2m-1}(varpi) s(varpi) = chi_{k+2m-2}(varpi) omega(x)^-1
    CharValue v{0, chi(varpi, w.k1 + 2 * w.m1 - 2, w.k2 + 2 * w.m2 - 2)};
    v = v * inverse(c.omega(prime_to_p_part(P, varpi)));
    return scale(to_ring(c.ring, v), f);
}

SuiteReport check_commutativity(const ContextPtr& ctx, const PrimeIdeal& P, const PrimeIdeal& Q, long trials,
                                std::uint64_t seed, long bound, const PrimeIdeal* v) {
    SuiteReport rep{"commutativity", true, 0, ""};
    for (long tr = 0; tr < trials; ++tr) {
        QExpFamily f = random_admissible_family(ctx, seed + static_cast<std::uint64_t>(tr), bound);
        QExpFamily pq = apply_Tp(apply_Tp(f, Q), P), qp = apply_Tp(apply_Tp(f, P), Q);
        ++rep.trials;
        if (!equal_on_common(pq, qp)) {
            rep.pass = false;
            rep.detail = "T_P T_Q != T_Q T_P at trial " + std::to_string(tr);
            return rep;
        }
        if (v) {
            QExpFamily a = apply_Tv(apply_Tp(f, P), *v), b = apply_Tp(apply_Tv(f, *v), P);
            if (!equal_on_common(a, b)) {
                rep.pass = false;
                rep.detail = "T_P T_v != T_v T_P at trial " + std::to_string(tr);
                return rep;
            }
        }
    }
    rep.detail = "exact agreement on the common truncation";
    return rep;
}

SuiteReport check_uniformizer_independence(const ContextPtr& ctx, const PrimeIdeal& P, long trials,
                                           std::uint64_t seed, long bound) {
    SuiteReport rep{"independence", true, 0, ""};
    Element w1 = ctx->normalized_uniformizer(P);
    Element w2 = ctx->F->eps_plus() * w1;
    for (long tr = 0; tr < trials; ++tr) {
        QExpFamily f = random_admissible_family(ctx, seed + static_cast<std::uint64_t>(tr), bound);
        ++rep.trials;
        if (!equal_on_common(apply_Tp(f, P, w1), apply_Tp(f, P, w2))) {
            rep.pass = false;
            rep.detail = "T_P depends on the uniformizer at trial " + std::to_string(tr);
            return rep;
        }
    }
    rep.detail = "identical under varpi -> eps_plus * varpi";
    return rep;
}

SuiteReport check_linearity(const ContextPtr& ctx, const PrimeIdeal& P, const PrimeIdeal& v, long trials,
                            std::uint64_t seed, long bound) {
    SuiteReport rep{"linearity", true, 0, ""};
    const CoeffRing& R = ctx->ring;
    std::mt19937_64 rng(seed);
    for (long tr = 0; tr < trials; ++tr) {
        QExpFamily f = random_admissible_family(ctx, rng(), bound), g = random_admissible_family(ctx, rng(), bound);
        Coeff a = R.random(rng);
        QExpFamily h = add(scale(a, f), g);
        auto lin = [&](auto op) { return equal_on_common(op(h), add(scale(a, op(f)), op(g))); };
        ++rep.trials;
        bool ok = lin([&](const QExpFamily& x) { return apply_Tp(x, P); }) &&
                  lin([&](const QExpFamily& x) { return apply_Tv(x, v); }) &&
                  lin([&](const QExpFamily& x) { return apply_Sv(x, v.P); });
        if (!ok) {
            rep.pass = false;
            rep.detail = "nonlinear output at trial " + std::to_string(tr);
            return rep;
        }
    }
    rep.detail = "T_P, T_v, S_v linear";
    return rep;
}

}  // namespace hmf
