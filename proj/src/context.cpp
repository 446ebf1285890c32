#include "hmf/context.hpp"
#include "hmf/lattice.hpp"

#include <algorithm>

namespace hmf {

std::string Weight::describe() const {
    return "k=(" + std::to_string(k1) + "," + std::to_string(k2) + ") m=(" + std::to_string(m1) + "," +
           std::to_string(m2) + ")";
}

Element chi(const Element& x, long n1, long n2) { return pow(x, n1) * pow(conj(x), n2); }

std::string Level::describe() const {
    return std::string(type == LevelType::U1 ? "U1" : "U") + "(" + to_string(n) + ")";
}

namespace {

// Generators of E_n = {u in O^x : u = 1 mod n}.
std::vector<Element> congruence_units(const Field* F, const ResidueRing& R) {
    std::vector<Element> out;
    const Element& eps = F->fundamental_unit();
    if (R.reduce(-F->one()) == R.one()) out.push_back(-F->one());
    auto e = R.reduce(eps), cur = e;
    auto minus_one = R.reduce(-F->one());
    for (long k = 1;; ++k) {
        if (cur == R.one()) {
            out.push_back(pow(eps, k));
            break;
        }
        if (cur == minus_one) {
            out.push_back(-pow(eps, k));
            break;
        }
        cur = R.mul(cur, e);
    }
    return out;
}

}  // namespace

std::shared_ptr<const Context> Context::create(const Field* F, const Level& level, const Weight& w,
                                               const CoeffRing& R, long p) {
    if (!is_prime(p)) throw SchemaError("p must be a rational prime");
    if (R.field() != F) throw SchemaError("coefficient ring over a different field");
    if (R.is_torsion() && R.p() != p) throw SchemaError("torsion ring at a different prime");
    if (!level.n.is_integral()) throw SchemaError("level must be an integral ideal");
    if (!coprime(level.n, p)) throw DomainError("level is not prime to p");

    std::shared_ptr<Context> c(new Context());
    c->F = F;
    c->level = level;
    c->weight = w;
    c->ring = R;
    c->p = p;
    long nn = to_int64(level.n.norm().get_num());
    FracIdeal O = FracIdeal::unit(F);
    auto ray = std::make_shared<const RayClassGroup>(F, level.n, true, p);
    c->ray_group_ = ray;
    c->cusp_group_ = level.type == LevelType::U1 ? std::make_shared<const RayClassGroup>(F, O, true, p * nn) : ray;

    const RayClassGroup& G = *c->cusp_group_;
    std::vector<std::size_t> order{G.identity()};
    for (std::size_t x = 0; x < G.order(); ++x)
        if (x != G.identity()) order.push_back(x);
    for (std::size_t x : order) c->reps_.push_back({G.representative(x), F->one()});
    for (const auto& t : c->reps_) c->lattices_.push_back(c->lattice(t));

    ResidueRing Rn(level.n);
    c->period_ = 1;
    if (level.type == LevelType::Full) {
        auto e = Rn.reduce(F->eps_plus()), cur = e;
        while (cur != Rn.one()) {
            cur = Rn.mul(cur, e);
            ++c->period_;
        }
    }
    c->unit_ = pow(F->eps_plus(), c->period_);
    c->en_gens_ = congruence_units(F, Rn);
    c->check_hypotheses();
    return c;
}

void Context::check_hypotheses() const {
    const Weight& w = weight;
    if (!ring.is_torsion() && !w.kw_parallel())
        throw DomainError("weight " + w.describe() + " needs k+2m parallel over a ring without p-power torsion");
    for (const auto& d : en_gens_)
        if (!ring.eq(chi_ring(d, w.k1 + 2 * w.m1, w.k2 + 2 * w.m2), ring.one()))
            throw DomainError("chi_{k+2m} is nontrivial on the unit " + to_string(d) + " = 1 mod n");
}

FracIdeal Context::lattice(const IdeleRep& t) const {
    FracIdeal L = inverse(different(F) * t.a);
    if (level.type == LevelType::Full) L = L * inverse(level.n);
    return L;
}

Element Context::lift_residue(const Element& r, int sign_bits) const {
    const ResidueRing& Rn = ray_group_->residues();
    Element L = Rn.lift(Rn.reduce(r));
    Rational A = level.n.a();
    static const int dirs[4][2] = {{1, 0}, {0, -1}, {0, 1}, {-1, 0}};   // (rational, sqrt D) parts by sign bits
    Element dir = F->from(dirs[sign_bits][0]) + Rational(dirs[sign_bits][1]) * F->sqrt_d();
    for (long K = 1; K < (1L << 40); K *= 2) {
        for (long j = 0; j < 16; ++j) {
            Element y = L + A * (Rational(K) * dir + F->from(j));
            if (y.is_zero()) continue;
            int s = (sign1(y) < 0 ? 1 : 0) | (sign2(y) < 0 ? 2 : 0);
            if (s == sign_bits && coprime(FracIdeal::principal(y), p)) return y;
        }
    }
    throw DomainError("no residue lift found");
}

Transport Context::transporter(const IdeleRep& t) const {
    const RayClassGroup& G = *cusp_group_;
    std::uint64_t rkey = 0;
    if (level.type == LevelType::Full) rkey = ray_group_->residues().reduce(t.r);
    auto key = std::make_pair(t.a, rkey);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = transports_.find(key);
        if (it != transports_.end()) return it->second;
    }
    if (!coprime(t.a, p)) throw DomainError("idele ideal is not prime to p");
    Element gamma = F->one();
    FracIdeal b = t.a;
    if (level.type == LevelType::Full) {
        if (!ray_group_->residues().is_unit(rkey)) throw DomainError("idele residue is not a unit mod n");
        gamma = lift_residue(t.r);
        b = t.a * FracIdeal::principal(inverse(gamma));
    }
    std::size_t x = G.index(b);
    std::size_t i = reps_.size();
    for (std::size_t j = 0; j < reps_.size(); ++j)
        if (G.index(reps_[j].a) == x) i = j;
    if (i == reps_.size()) throw DomainError("no stored cusp representative in the class of " + to_string(t.a));
    Element alpha = G.ray_generator(b / reps_[i].a) * gamma;
    Transport tr{i, alpha};
    std::lock_guard<std::mutex> lock(mu_);
    transports_.emplace(key, tr);
    return tr;
}

const std::vector<Element>& Context::keys(std::size_t i, long bound) const {
    auto key = std::make_pair(i, bound);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = keys_.find(key);
        if (it != keys_.end()) return *it->second;
    }
    auto v = std::make_shared<const std::vector<Element>>(enumerate_orbit_reps(lattices_[i], Rational(bound), period_));
    std::lock_guard<std::mutex> lock(mu_);
    return *keys_.emplace(key, v).first->second;
}

const CentralCharacter& Context::character() const {
    if (!psi_) throw DomainError("no central character attached to the context");
    return *psi_;
}

CharValue Context::psi(const FracIdeal& a) const {
    const CentralCharacter& c = character();
    auto [e, gamma] = ray_group_->decompose(a);
    CharValue v{0, chi(gamma, weight.k1 + 2 * weight.m1 - 2, weight.k2 + 2 * weight.m2 - 2)};
    for (std::size_t j = 0; j < e.size(); ++j) v = v * pow(c.values[j], e[j]);
    return v;
}

CharValue Context::rho(const Element& r) const {
    Element g = lift_residue(r);
    CharValue x{0, chi(g, weight.k1 + 2 * weight.m1 - 2, weight.k2 + 2 * weight.m2 - 2)};
    return x * inverse(psi(FracIdeal::principal(g)));
}

CharValue Context::omega(const IdeleRep& t) const { return psi(t.a) * rho(t.r); }

std::shared_ptr<const Context> Context::with_character(const std::vector<CharValue>& values) const {
    const RayClassGroup& G = *ray_group_;
    if (values.size() != G.generators().size())
        throw DomainError("central character needs " + std::to_string(G.generators().size()) + " generator values");
    long w1 = weight.k1 + 2 * weight.m1 - 2, w2 = weight.k2 + 2 * weight.m2 - 2;
    for (std::size_t j = 0; j < values.size(); ++j) {
        Coeff v = to_ring(ring, values[j]);
        to_ring(ring, inverse(values[j]));
        Coeff lhs = ring.pow(v, static_cast<unsigned long>(G.structure()[j]));
        Coeff rhs = ring.theta1(chi(G.relations()[j], w1, w2));
        if (!ring.eq(lhs, rhs))
            throw DomainError("central character constraint " + std::to_string(j) + " violated: psi(g)^" +
                              std::to_string(G.structure()[j]) + " != chi_{k+2m-2}(beta)");
    }
    if (!ring.eq(chi_ring(unit_, w1, w2), ring.one()))
        throw DomainError("central character constraint on totally positive units violated");

    std::shared_ptr<Context> c(new Context());
    c->F = F;
    c->level = level;
    c->weight = weight;
    c->ring = ring;
    c->p = p;
    c->reps_ = reps_;
    c->lattices_ = lattices_;
    c->period_ = period_;
    c->unit_ = unit_;
    c->en_gens_ = en_gens_;
    c->cusp_group_ = cusp_group_;
    c->ray_group_ = ray_group_;
    c->psi_ = CentralCharacter{values};
    {
        std::lock_guard<std::mutex> lock(mu_);
        c->transports_ = transports_;
    }
    return c;
}

std::shared_ptr<const Context> Context::with_default_character() const {
    const RayClassGroup& G = *ray_group_;
    long w1 = weight.k1 + 2 * weight.m1 - 2, w2 = weight.k2 + 2 * weight.m2 - 2;
    std::vector<CharValue> vals;
    for (std::size_t j = 0; j < G.generators().size(); ++j) {
        const FracIdeal& g = G.generators()[j];
        std::vector<Element> cands;
        if (w1 == w2) cands.push_back(F->from(pow(g.norm(), w1)));
        if (auto pi = principal_generator(g)) {
            cands.push_back(chi(*pi, w1, w2));
            cands.push_back(-chi(*pi, w1, w2));
        }
        Coeff rhs = ring.theta1(chi(G.relations()[j], w1, w2));
        bool found = false;
        for (const auto& y : cands) {
            if (!ring.eq(ring.pow(ring.theta1(y), static_cast<unsigned long>(G.structure()[j])), rhs)) continue;
            vals.push_back({0, y});
            found = true;
            break;
        }
        if (!found) throw DomainError("no default central character; supply generator values");
    }
    return with_character(vals);
}

Element Context::normalized_uniformizer(const PrimeIdeal& P) const {
    if (P.ell != p) throw DomainError("prime does not lie over p");
    Element pi0 = find_uniformizer(P);
    const ResidueRing& Rn = ray_group_->residues();
    Rational l2 = Rational(p) * p;
    auto z = Rn.mul(Rn.reduce(F->one() - pi0), Rn.inverse(Rn.reduce(F->from(l2))));
    Element pi = pi0 + l2 * Rn.lift(z);
    Rational A = level.n.a();
    for (long K = 0;; ++K) {
        for (const Element& d : {F->one(), F->sqrt_d(), -F->sqrt_d()}) {
            Element y = pi + l2 * A * Rational(K) * d;
            if (y.is_zero() || !is_totally_positive(y)) continue;
            if (Rn.reduce(y) != Rn.one() || valuation(P, y) != 1) continue;
            bool ok = true;
            for (const auto& Q : primes_above(F, p))
                if (!(Q == P) && valuation(Q, y) != 0) ok = false;
            if (ok) return y;
        }
        if (K > 100000) throw DomainError("no normalized uniformizer found");
    }
}

}  // namespace hmf
