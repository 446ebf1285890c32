#include "hmf/qexp.hpp"

#include <algorithm>
#include <unordered_set>

namespace hmf {

const std::vector<Element>& family_keys(const Context& ctx, std::size_t i, long bound) { return ctx.keys(i, bound); }

CuspHandle resolve(const Context& ctx, const IdeleRep& t) {
    Transport tr = ctx.transporter(t);
    return {ctx.lattice(t), tr.index, tr.alpha};
}

QExpFamily zero_family(const ContextPtr& ctx, long bound) {
    QExpFamily f;
    f.ctx = ctx;
    f.bound = bound;
    for (std::size_t i = 0; i < ctx->rep_count(); ++i) {
        CoeffMap mp;
        for (auto& m : family_keys(*ctx, i, bound)) mp.emplace(m, ctx->ring.zero());
        f.coeffs.push_back(std::move(mp));
        f.constants.push_back(ctx->ring.zero());
    }
    return f;
}

namespace {

// r_m at the stored representative i, with m in L_i; twist is an extra element whose chi_m is applied.
Coeff lookup(const QExpFamily& f, std::size_t i, const Element& m, const Element& twist, bool strict) {
    const Context& c = *f.ctx;
    const CoeffRing& R = c.ring;
    const Weight& w = c.weight;
    if (m.is_zero()) return R.mul(c.chi_ring(twist, w.m1, w.m2), f.constants[i]);
    if (!is_totally_positive(m)) throw DomainError("q-expansion index " + to_string(m) + " is not totally positive");
    const FracIdeal& L = c.lattice(i);
    if (!L.contains(m)) return R.zero();
    if (relative_norm(m, L) > f.bound) {
        if (strict) throw DomainError("index " + to_string(m) + " beyond truncation bound " + std::to_string(f.bound));
        return R.zero();
    }
    OrbitRep o = orbit_representative(m, c.unit());
    auto it = f.coeffs[i].find(o.rep);
    if (it == f.coeffs[i].end()) {
        if (strict) throw DomainError("missing coefficient at " + to_string(o.rep));
        return R.zero();
    }
    Element nu = twist * pow(c.unit(), o.exponent);
    return R.mul(c.chi_ring(nu, w.m1, w.m2), it->second);
}

}  // namespace

Coeff coefficient(const QExpFamily& f, std::size_t i, const Element& m, bool strict) {
    return lookup(f, i, m, f.ctx->F->one(), strict);
}

Coeff coefficient(const QExpFamily& f, const CuspHandle& h, const Element& m, bool strict) {
    if (!m.is_zero() && !h.lattice.contains(m)) return f.ctx->ring.zero();
    return lookup(f, h.index, h.alpha * m, h.alpha, strict);
}

Coeff coefficient(const QExpFamily& f, const IdeleRep& t, const Element& m, bool strict) {
    return coefficient(f, resolve(*f.ctx, t), m, strict);
}

ValidationReport validate_family(const QExpFamily& f) {
    ValidationReport rep;
    auto fail = [&](std::size_t i, const Element& k, std::string msg) {
        rep.valid = false;
        rep.rep = i;
        rep.key = k;
        rep.message = std::move(msg);
        return rep;
    };
    if (!f.ctx) return fail(0, Element(), "family has no context");
    const Context& c = *f.ctx;
    const CoeffRing& R = c.ring;
    if (f.coeffs.size() != c.rep_count() || f.constants.size() != c.rep_count())
        return fail(0, Element(), "expected data at " + std::to_string(c.rep_count()) + " cusp representatives");
    ConstantModule cm = constant_term_module(c);
    for (std::size_t i = 0; i < c.rep_count(); ++i) {
        auto keys = family_keys(c, i, f.bound);
        const CoeffMap& mp = f.coeffs[i];
        for (const auto& k : keys)
            if (!mp.count(k)) return fail(i, k, "missing orbit representative " + to_string(k));
        if (mp.size() != keys.size()) {
            std::unordered_set<Element, ElementHash> ks(keys.begin(), keys.end());
            for (const auto& kv : mp)
                if (!ks.count(kv.first))
                    return fail(i, kv.first, "coefficient stored at non-representative index " + to_string(kv.first));
        }
        for (const auto& [k, v] : mp) {
            if (v.size() != R.dim()) return fail(i, k, "coefficient has wrong ring dimension");
            if (!R.eq(R.normalize(v), v)) return fail(i, k, "coefficient is not in canonical form");
        }
        if (f.constants[i].size() != R.dim()) return fail(i, Element(), "constant term has wrong ring dimension");
        if (!cm.admits(R, f.constants[i]))
            return fail(i, c.F->zero(), "constant term outside the " + cm.describe() + " module");
        // r_m = chi_m(nu) r_{nu m} on a spot sample of keys
        const Weight& w = c.weight;
        std::size_t step = std::max<std::size_t>(1, keys.size() / 16);
        for (std::size_t j = 0; j < keys.size(); j += step) {
            for (long e : {-2L, -1L, 1L, 2L}) {
                Element nu = pow(c.unit(), e);
                Coeff lhs = coefficient(f, i, keys[j]);
                Coeff rhs = R.mul(c.chi_ring(nu, w.m1, w.m2), coefficient(f, i, nu * keys[j]));
                if (!R.eq(lhs, rhs)) return fail(i, keys[j], "unit equivariance fails at " + to_string(keys[j]));
            }
        }
    }
    return rep;
}

bool ConstantModule::admits(const CoeffRing& R, const Coeff& r) const {
    switch (kind) {
        case Kind::All: return true;
        case Kind::Zero: return R.is_zero(r);
        case Kind::Torsion: {
            Element pi = find_uniformizer(R.prime());
            return R.is_zero(R.mul(R.theta1(pow(pi, valuation)), r));
        }
    }
    return false;
}

Coeff ConstantModule::random(const CoeffRing& R, std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::All: return R.random(rng);
        case Kind::Zero: return R.zero();
        case Kind::Torsion: {
            long en = static_cast<long>(R.prime().e) * R.exponent();
            Element pi = find_uniformizer(R.prime());
            return R.mul(R.theta1(pow(pi, std::max(0L, en - valuation))), R.random(rng));
        }
    }
    return R.zero();
}

std::string ConstantModule::describe() const {
    switch (kind) {
        case Kind::All: return "full";
        case Kind::Zero: return "zero";
        case Kind::Torsion: return "uniformizer^" + std::to_string(valuation) + "-torsion";
    }
    return "";
}

ConstantModule constant_term_module(const CoeffRing& R, const Weight& w,
                                    const std::vector<std::pair<Element, Element>>& gamma_gens) {
    ConstantModule cm;
    bool any = false;
    long v = 0;
    for (const auto& [a, d] : gamma_gens) {
        Element g = chi(a, w.m1, w.m2) * chi(d, w.k1 + w.m1, w.k2 + w.m2) - a.F->one();
        if (g.is_zero()) continue;
        if (!R.is_torsion()) {
            cm.kind = ConstantModule::Kind::Zero;
            return cm;
        }
        long vg = valuation(R.prime(), FracIdeal::principal(g));
        v = any ? std::min(v, vg) : vg;
        any = true;
    }
    if (any) {
        cm.kind = ConstantModule::Kind::Torsion;
        cm.valuation = v;
        if (v >= static_cast<long>(R.prime().e) * R.exponent()) cm.kind = ConstantModule::Kind::All;
        if (v == 0) cm.kind = ConstantModule::Kind::Zero;
    }
    return cm;
}

std::vector<std::pair<Element, Element>> infinity_stabilizer_gens(const Context& ctx) {
    std::vector<std::pair<Element, Element>> out;
    const Element& one = ctx.F->one();
    if (ctx.level.type == LevelType::U1)
        out.push_back({inverse(ctx.unit()), one});
    else
        out.push_back({one, ctx.unit()});
    for (const auto& d : ctx.unit_congruence_gens()) out.push_back({d, d});
    return out;
}

ConstantModule constant_term_module(const Context& ctx) {
    return constant_term_module(ctx.ring, ctx.weight, infinity_stabilizer_gens(ctx));
}

Coeff constant_term(const QExpFamily& f, std::size_t i) { return f.constants.at(i); }

bool is_cuspidal_at_infinity(const QExpFamily& f) {
    for (const auto& c : f.constants)
        if (!f.ctx->ring.is_zero(c)) return false;
    return true;
}

QExpFamily random_admissible_family(const ContextPtr& ctx, std::uint64_t seed, long bound) {
    std::mt19937_64 rng(seed);
    QExpFamily f;
    f.ctx = ctx;
    f.bound = bound;
    ConstantModule cm = constant_term_module(*ctx);
    for (std::size_t i = 0; i < ctx->rep_count(); ++i) {
        CoeffMap mp;
        for (auto& m : family_keys(*ctx, i, bound)) mp.emplace(m, ctx->ring.random(rng));
        f.coeffs.push_back(std::move(mp));
        f.constants.push_back(cm.random(ctx->ring, rng));
    }
    return f;
}

Series unipotent_twist(const CoeffRing& R, const Series& s, const Element& eps, long n_prime) {
    if (n_prime <= 0 || R.zeta_order() % n_prime != 0)
        throw DomainError("coefficient ring has no root of unity of order " + std::to_string(n_prime));
    long step = R.zeta_order() / n_prime;
    Series out;
    for (const auto& [m, v] : s) {
        Rational e = Rational(n_prime) * trace(eps * m);
        if (e.get_den() != 1) throw DomainError("twist exponent at " + to_string(m) + " is not integral");
        long k = to_int64(mod(-e.get_num(), n_prime));
        out.emplace(m, R.mul(R.zeta_pow(k * step), v));
    }
    return out;
}

QExpFamily add(const QExpFamily& f, const QExpFamily& g) {
    if (f.ctx != g.ctx && !(f.ctx->ring == g.ctx->ring)) throw DomainError("families over different contexts");
    const QExpFamily& lo = f.bound <= g.bound ? f : g;
    const QExpFamily& hi = f.bound <= g.bound ? g : f;
    QExpFamily out = lo;
    const CoeffRing& R = f.ctx->ring;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        for (auto& [k, v] : out.coeffs[i]) v = R.add(v, hi.coeffs[i].at(k));
        out.constants[i] = R.add(out.constants[i], hi.constants[i]);
    }
    return out;
}

QExpFamily scale(const Coeff& c, const QExpFamily& f) {
    QExpFamily out = f;
    const CoeffRing& R = f.ctx->ring;
    for (auto& mp : out.coeffs)
        for (auto& [k, v] : mp) v = R.mul(c, v);
    for (auto& v : out.constants) v = R.mul(c, v);
    return out;
}

bool equal_on_common(const QExpFamily& f, const QExpFamily& g) {
    const QExpFamily& lo = f.bound <= g.bound ? f : g;
    const QExpFamily& hi = f.bound <= g.bound ? g : f;
    const CoeffRing& R = f.ctx->ring;
    if (lo.coeffs.size() != hi.coeffs.size()) return false;
    for (std::size_t i = 0; i < lo.coeffs.size(); ++i) {
        if (!R.eq(lo.constants[i], hi.constants[i])) return false;
        for (const auto& [k, v] : lo.coeffs[i]) {
            auto it = hi.coeffs[i].find(k);
            if (it == hi.coeffs[i].end() || !R.eq(v, it->second)) return false;
        }
    }
    return true;
}

}  // namespace hmf
