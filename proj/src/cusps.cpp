#include "hmf/cusps.hpp"

#include <algorithm>
#include <numeric>
#include <mutex>
#include <set>

#include "hmf/lattice.hpp"

namespace hmf {

namespace {

using Res = ResidueRing::Res;

struct UnionFind {
    std::vector<std::int64_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int64_t find(std::int64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::int64_t x, std::int64_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

Element positive_lift(const ResidueRing& R, Res r) {
    Element L = R.lift(r);
    Rational A = R.modulus().a();
    for (long K = 0;; ++K) {
        Element y = L + Element(L.F, Rational(A * K));
        if (is_totally_positive(y)) return y;
    }
}

}  // namespace

bool QModuleDescriptor::orbit_constancy() const {
    for (const auto& g : gens) {
        Element v = chi(g.alpha, weight.m1, weight.m2) * chi(g.delta, weight.k1 + weight.m1, weight.k2 + weight.m2);
        if (v != v.F->one()) return false;
    }
    return true;
}

CuspAtlas::CuspAtlas(const Field* F, const Level& level, long p) : F_(F), level_(level), p_(p) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (!level.n.field()) level_.n = FracIdeal::unit(F);
    if (!level_.n.is_integral()) throw DomainError("level ideal must be integral");
    if (!coprime(level_.n, p)) throw DomainError("level must be prime to p");
    res_ = ResidueRing(level_.n);
    N_ = res_.size();
    long avoid = p * to_int64(level_.n.norm().get_num());
    FracIdeal O = FracIdeal::unit(F);
    wide_ = std::make_shared<RayClassGroup>(F, O, false, avoid);
    narrow_ = std::make_shared<RayClassGroup>(F, O, true, avoid);
    ray_ = level_.type == LevelType::Full ? std::make_shared<RayClassGroup>(F, level_.n, true, p) : narrow_;
    for (std::size_t i = 0; i < wide_->wide_class_count(); ++i)
        for (std::size_t x = 0; x < narrow_->order(); ++x) {
            pair_a_.push_back(wide_->wide_rep(i));
            pair_c_.push_back(narrow_->representative(x) / wide_->wide_rep(i));
        }
    build_orbits();
    for (std::size_t j = 0; j < pair_a_.size(); ++j)
        for (std::size_t o = 0; o < orbits_.size(); ++o) {
            CuspRecord c;
            c.index = cusps_.size();
            c.pair = j;
            c.orbit = o;
            c.J = inverse(pair_a_[j]);
            c.I = inverse(pair_c_[j]);
            std::uint64_t code = orbits_[o];
            if (level_.type == LevelType::U1)
                c.level_data = {code / N_, code % N_, 0};
            else
                c.level_data = {code / (N_ * N_), (code / N_) % N_, code % N_};
            c.component = component_of(j, code);
            cusps_.push_back(c);
        }
    const RayClassGroup& G = det_group();
    for (std::size_t x = 0; x < G.order(); ++x) {
        FracIdeal a = G.representative(x);
        std::size_t i = locate_infinity({a, F->one()});
        cusps_[i].at_infinity = true;
        cusps_[i].J = inverse(a);
        cusps_[i].I = O;
    }
}

const RayClassGroup& CuspAtlas::det_group() const { return *ray_; }

std::uint64_t CuspAtlas::code_of(const std::array<Res, 4>& k) const {
    if (N_ == 1) return 0;
    const ResidueRing& R = res_;
    Res det = R.add(R.mul(k[0], k[3]), R.neg(R.mul(k[1], k[2])));
    if (!R.is_unit(det)) throw DomainError("level matrix is not invertible mod n");
    if (level_.type == LevelType::U1) {
        Res di = R.inverse(det);
        return R.mul(R.neg(k[2]), di) * N_ + R.mul(k[0], di);
    }
    return (k[2] * N_ + k[3]) * N_ + det;
}

void CuspAtlas::build_orbits() {
    const ResidueRing& R = res_;
    bool full = level_.type == LevelType::Full;
    std::uint64_t total = full ? N_ * N_ * N_ : N_ * N_;
    std::uint64_t used = 0;
    charge(used, total, "cusp level-structure enumeration");
    orbit_of_.assign(total, -1);
    if (N_ == 1) {
        orbit_of_[0] = 0;
        orbits_ = {0};
        return;
    }
    // bit i set when the residue lies in the i-th prime of n
    std::vector<std::uint32_t> mask(N_, 0);
    const auto& primes = R.primes();
    for (Res r = 0; r < N_; ++r) {
        Element x = R.lift(r);
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (primes[i].P.contains(x)) mask[r] |= 1u << i;
    }
    auto valid = [&](std::uint64_t code) {
        if (full) {
            Res d = code % N_, k22 = (code / N_) % N_, k21 = code / (N_ * N_);
            return (mask[k21] & mask[k22]) == 0 && R.is_unit(d);
        }
        return (mask[code / N_] & mask[code % N_]) == 0;
    };
    const Element& eps = F_->fundamental_unit();
    std::vector<std::pair<Res, Res>> diag = {{R.reduce(F_->from(-1)), R.reduce(F_->from(-1))},
                                             {R.reduce(eps), R.reduce(inverse(eps))},
                                             {R.one(), R.reduce(F_->eps_plus())}};
    std::vector<Res> shifts = {R.one(), R.reduce(F_->omega())};
    UnionFind uf(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        if (!valid(code)) continue;
        if (full) {
            Res d = code % N_, k22 = (code / N_) % N_, k21 = code / (N_ * N_);
            for (auto [a, dl] : diag)
                uf.unite(code, (R.mul(dl, k21) * N_ + R.mul(dl, k22)) * N_ + R.mul(R.mul(a, dl), d));
        } else {
            Res w1 = code / N_, w2 = code % N_;
            for (auto [a, dl] : diag) uf.unite(code, R.mul(w1, a) * N_ + R.mul(w2, dl));
            for (Res b : shifts) uf.unite(code, w1 * N_ + R.add(R.mul(w1, b), w2));
        }
    }
    for (std::uint64_t code = 0; code < total; ++code)
        if (valid(code) && uf.find(code) == static_cast<std::int64_t>(code)) orbits_.push_back(code);
    for (std::uint64_t code = 0; code < total; ++code)
        if (valid(code)) {
            std::uint64_t root = uf.find(code);
            orbit_of_[code] = std::lower_bound(orbits_.begin(), orbits_.end(), root) - orbits_.begin();
        }
}

std::size_t CuspAtlas::pair_index(const FracIdeal& a, const FracIdeal& c, Element& alpha, Element& delta) const {
    auto [i, g] = wide_->wide_decompose(a);
    std::size_t x = narrow_->index(a * c);
    Element gamma = narrow_->ray_generator((a * c) / narrow_->representative(x));
    alpha = g;
    delta = gamma / g;
    return i * narrow_->order() + x;
}

std::size_t CuspAtlas::component_of(std::size_t pair, std::uint64_t code) {
    std::size_t x = pair % narrow_->order();
    if (level_.type == LevelType::U1) return x;
    auto key = std::make_pair(x, code % N_);
    auto it = components_.find(key);
    if (it != components_.end()) return it->second;
    Element gamma = positive_lift(res_, code % N_);
    std::size_t out = ray_->index(narrow_->representative(x) * FracIdeal::principal(inverse(gamma)));
    components_.emplace(key, out);
    return out;
}

std::size_t CuspAtlas::locate(const FracIdeal& a, const FracIdeal& c, const Element& ra, const Element& rc,
                              const LevelMatrix& k) const {
    if (!coprime(a, level_.n) || !coprime(c, level_.n)) throw DomainError("cusp ideals must be prime to the level");
    Element alpha, delta;
    std::size_t j = pair_index(a, c, alpha, delta);
    std::uint64_t code = 0;
    if (N_ > 1) {
        const ResidueRing& R = res_;
        Res u1 = R.mul(R.reduce(ra), R.inverse(R.reduce(alpha)));
        Res u2 = R.mul(R.reduce(rc), R.inverse(R.reduce(delta)));
        code = code_of({R.mul(u1, R.reduce(k[0])), R.mul(u1, R.reduce(k[1])), R.mul(u2, R.reduce(k[2])),
                        R.mul(u2, R.reduce(k[3]))});
    }
    return j * orbits_.size() + static_cast<std::size_t>(orbit_of_[code]);
}

std::size_t CuspAtlas::locate_infinity(const IdeleRep& t) const {
    Element one = F_->one(), zero = F_->zero();
    Element r = level_.type == LevelType::Full ? t.r : one;
    return locate(t.a, FracIdeal::unit(F_), r, one, {one, zero, zero, one});
}

std::vector<std::size_t> CuspAtlas::cusps_at_infinity() const {
    std::vector<std::size_t> out;
    const RayClassGroup& G = det_group();
    for (std::size_t x = 0; x < G.order(); ++x) out.push_back(locate_infinity({G.representative(x), F_->one()}));
    return out;
}

void CuspAtlas::check_P(const FracIdeal& P) const {
    if (!P.is_integral()) throw DomainError("P must be an integral ideal");
    for (const auto& [Q, e] : factor(P)) {
        if (e != 1) throw DomainError("P must be squarefree");
        if (Q.ell != p_) throw DomainError("P must divide the radical of pO_F");
    }
}

std::uint64_t CuspAtlas::unit_order(const FracIdeal& m) const {
    ResidueRing R(m);
    if (R.size() == 1) return 1;
    Res e = R.reduce(F_->fundamental_unit()), x = e;
    std::uint64_t k = 1;
    while (x != R.one()) {
        x = R.mul(x, e);
        ++k;
    }
    return k;
}

std::vector<std::pair<Element, Element>> CuspAtlas::stabilizer_units(std::size_t cusp, const FracIdeal& extra) const {
    const CuspRecord& c = cusps_.at(cusp);
    auto key = std::make_pair(orbits_[c.orbit], extra);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = stabilizers_.find(key);
        if (it != stabilizers_.end()) return it->second;
    }
    FracIdeal m = level_.n * extra;
    ResidueRing Rm(m);
    std::uint64_t L = unit_order(m);
    if (F_->unit_norm() == -1 && L % 2 == 1) L *= 2;
    const Element& eps = F_->fundamental_unit();
    const ResidueRing& R = res_;
    std::vector<Res> pm{Rm.one()}, pn{R.one()};
    for (std::uint64_t i = 1; i < L; ++i) {
        pm.push_back(Rm.mul(pm.back(), Rm.reduce(eps)));
        pn.push_back(R.mul(pn.back(), R.reduce(eps)));
    }
    bool full = level_.type == LevelType::Full;
    auto [x1, x2, x3] = c.level_data;
    std::set<Res> w1_multiples;
    if (!full && N_ > 1)
        for (Res b = 0; b < N_; ++b) w1_multiples.insert(R.mul(x1, b));
    auto fixes = [&](Res a, Res d) {
        if (N_ == 1) return true;
        if (full) return R.mul(d, x1) == x1 && R.mul(d, x2) == x2 && R.mul(R.mul(a, d), x3) == x3;
        if (R.mul(x1, a) != x1) return false;
        return w1_multiples.count(R.add(x2, R.neg(R.mul(x2, d)))) > 0;
    };
    // greedy generating set for the image mod m
    std::set<std::pair<Res, Res>> H{{Rm.one(), Rm.one()}};
    std::vector<std::pair<Res, Res>> gm;
    std::vector<std::pair<Element, Element>> out;
    for (int s : {1, -1})
        for (std::uint64_t i = 0; i < L; ++i)
            for (std::uint64_t l = 0; l < L; ++l) {
                if (F_->unit_norm() == -1 && (i + l) % 2 == 1) continue;
                Res an = s > 0 ? pn[i] : R.neg(pn[i]), dn = s > 0 ? pn[l] : R.neg(pn[l]);
                if (!fixes(an, dn)) continue;
                std::pair<Res, Res> g{s > 0 ? pm[i] : Rm.neg(pm[i]), s > 0 ? pm[l] : Rm.neg(pm[l])};
                if (H.count(g)) continue;
                gm.push_back(g);
                std::vector<std::pair<Res, Res>> todo(H.begin(), H.end());
                while (!todo.empty()) {
                    auto h = todo.back();
                    todo.pop_back();
                    for (const auto& q : gm) {
                        std::pair<Res, Res> y{Rm.mul(h.first, q.first), Rm.mul(h.second, q.second)};
                        if (H.insert(y).second) todo.push_back(y);
                    }
                }
                out.emplace_back(Rational(s) * pow(eps, static_cast<long>(i)), Rational(s) * pow(eps, static_cast<long>(l)));
            }
    Element big = pow(eps, static_cast<long>(L));
    out.emplace_back(big, F_->one());
    out.emplace_back(F_->one(), big);
    std::lock_guard<std::mutex> lock(mu_);
    stabilizers_.emplace(key, out);
    return out;
}

bool CuspAtlas::is_neat(const FracIdeal& P) const {
    ResidueRing Rn(level_.n), RP(P);
    std::uint64_t L = unit_order(level_.n * P);
    Element mu = F_->one();
    for (std::uint64_t i = 0; i < L; ++i, mu = mu * F_->fundamental_unit())
        for (int s : {1, -1}) {
            Element u = Rational(s) * mu;
            if (Rn.reduce(u) == Rn.one() && RP.reduce(u) != RP.one()) return false;
        }
    return true;
}

std::vector<U0Cusp> CuspAtlas::u0_cusps(const FracIdeal& P) const {
    check_P(P);
    std::vector<PrimeIdeal> primes;
    for (const auto& f : factor(P)) primes.push_back(f.first);
    std::vector<ResidueRing> rings;
    std::vector<std::uint64_t> radix;
    std::uint64_t total = 1;
    for (const auto& Q : primes) {
        rings.emplace_back(Q.P);
        radix.push_back(rings.back().size() + 1);
        total *= radix.back();
    }
    std::uint64_t used = 0;
    charge(used, total * cusps_.size(), "U0(P) cusp enumeration");
    auto digits = [&](std::uint64_t x) {
        std::vector<std::uint64_t> d(radix.size());
        for (std::size_t i = 0; i < radix.size(); ++i) {
            d[i] = x % radix[i];
            x /= radix[i];
        }
        return d;
    };
    auto pack = [&](const std::vector<std::uint64_t>& d) {
        std::uint64_t x = 0;
        for (std::size_t i = radix.size(); i-- > 0;) x = x * radix[i] + d[i];
        return x;
    };
    std::vector<U0Cusp> out;
    for (const auto& c : cusps_) {
        // Points (1 : y) are y in O/Q, the line (0 : 1) fixed by the Borel is the last digit value.
        FracIdeal T = level_.n * pair_a_[c.pair] / pair_c_[c.pair];
        std::vector<Element> shifts = {T.basis1(), T.basis2()};
        auto units = stabilizer_units(c.index, P);
        UnionFind uf(total);
        for (std::uint64_t x = 0; x < total; ++x) {
            auto d = digits(x);
            for (const auto& b : shifts) {
                auto e = d;
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] + 1 != radix[i]) e[i] = rings[i].add(e[i], rings[i].reduce(b));
                uf.unite(x, pack(e));
            }
            for (const auto& [alpha, delta] : units) {
                auto e = d;
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] + 1 != radix[i])
                        e[i] = rings[i].mul(e[i], rings[i].mul(rings[i].reduce(delta), rings[i].inverse(rings[i].reduce(alpha))));
                uf.unite(x, pack(e));
            }
        }
        for (std::uint64_t x = 0; x < total; ++x) {
            if (uf.find(x) != static_cast<std::int64_t>(x)) continue;
            auto d = digits(x);
            FracIdeal q1 = FracIdeal::unit(F_);
            for (std::size_t i = 0; i < d.size(); ++i)
                if (d[i] + 1 == radix[i]) q1 = q1 * primes[i].P;
            U0Cusp u;
            u.index = out.size();
            u.base = c.index;
            u.q1 = q1;
            u.q2 = P / q1;
            Element one = F_->one();
            std::uint64_t code = orbits_[c.orbit];
            std::array<std::uint64_t, 3> sh;
            {
                std::lock_guard<std::mutex> lock(mu_);
                auto it = shifted_pairs_.find({c.pair, q1});
                if (it != shifted_pairs_.end()) sh = it->second;
                else {
                    Element alpha, delta;
                    std::size_t j = pair_index(q1 * pair_a_[c.pair], u.q2 * pair_c_[c.pair], alpha, delta);
                    sh = {j, res_.inverse(res_.reduce(alpha)), res_.inverse(res_.reduce(delta))};
                    shifted_pairs_.emplace(std::make_pair(c.pair, q1), sh);
                }
            }
            std::size_t j = sh[0];
            if (N_ > 1) {
                const ResidueRing& R = res_;
                Res u1 = sh[1], u2 = sh[2];
                if (level_.type == LevelType::U1)
                    code = R.mul(code / N_, R.inverse(u1)) * N_ + R.mul(code % N_, R.inverse(u2));
                else
                    code = (R.mul(u2, code / (N_ * N_)) * N_ + R.mul(u2, (code / N_) % N_)) * N_ +
                           R.mul(R.mul(u1, u2), code % N_);
            }
            u.pi2 = j * orbits_.size() + static_cast<std::size_t>(orbit_of_[code]);
            out.push_back(u);
        }
    }
    return out;
}

std::vector<Clasp> CuspAtlas::clasps(const FracIdeal& P) const {
    auto u0 = u0_cusps(P);
    if (!is_neat(P)) throw DomainError("level " + level_.describe() + " is not P-neat for P = " + to_string(P));
    std::vector<Clasp> out;
    for (const auto& u : u0) {
        ResidueRing Rq(u.q1);
        for (const auto& [alpha, delta] : stabilizer_units(u.base, P))
            if (Rq.reduce(alpha) != Rq.one())
                throw DomainError("automorphism alpha = " + to_string(alpha) + " of cusp " + std::to_string(u.base) +
                                  " acts nontrivially on J/qJ for q = " + to_string(u.q1));
        for (Res xi : Rq.units()) {
            Clasp c;
            c.index = out.size();
            c.u0 = u.index;
            c.base = u.base;
            c.q = u.q1;
            c.xi = xi;
            out.push_back(c);
        }
    }
    return out;
}

namespace {

std::string rule_text(long root) {
    std::string s = "r_{alpha^-1 delta m} = chi_m(alpha) chi_{k+m}(delta) r_m";
    if (root) s += " zeta_" + std::to_string(root) + "^{-beta(alpha^-1 N m)}";
    return s;
}

}  // namespace

QModuleDescriptor CuspAtlas::descriptor(const CuspRecord& c, const Weight& w) const {
    QModuleDescriptor d;
    d.kind = "cusp";
    d.weight = w;
    d.M = inverse(different(F_)) * inverse(c.I) * c.J;
    bool full = level_.type == LevelType::Full;
    d.scale = full ? level_.n : FracIdeal::unit(F_);
    d.root_order = full ? to_int64(level_.n.a().get_num()) : 0;
    if (d.root_order == 1) d.root_order = 0;
    d.beta_lattice = inverse(c.J) * c.I;
    if (!full && c.level_data[0] != 0) d.beta_lattice = level_.n * d.beta_lattice;
    for (const auto& [a, dl] : stabilizer_units(c.index, FracIdeal::unit(F_))) d.gens.push_back({a, F_->zero(), dl});
    for (const auto& b : {d.beta_lattice.basis1(), d.beta_lattice.basis2()}) d.gens.push_back({F_->one(), b, F_->one()});
    d.rule = rule_text(d.root_order);
    return d;
}

QModuleDescriptor CuspAtlas::descriptor(const U0Cusp& u, const Weight& w) const {
    QModuleDescriptor d = descriptor(cusps_.at(u.base), w);
    d.kind = "u0";
    d.M = inverse(u.q1) * d.M;
    d.beta_lattice = u.q1 * d.beta_lattice;
    d.gens.resize(d.gens.size() - 2);
    for (const auto& b : {d.beta_lattice.basis1(), d.beta_lattice.basis2()}) d.gens.push_back({F_->one(), b, F_->one()});
    return d;
}

QModuleDescriptor CuspAtlas::descriptor(const Clasp& c, const FracIdeal& P, const Weight& w) const {
    const CuspRecord& base = cusps_.at(c.base);
    QModuleDescriptor d = descriptor(base, w);
    d.kind = "clasp";
    d.M = inverse(c.q) * d.M;
    d.beta_lattice = c.q * d.beta_lattice;
    d.r = P / c.q;
    d.xi_characters = ResidueRing(*d.r).unit_count();
    ResidueRing Rq(c.q);
    d.gens.clear();
    for (const auto& [a, dl] : stabilizer_units(c.base, P))
        if (Rq.reduce(a) == Rq.one()) d.gens.push_back({a, F_->zero(), dl});
    for (const auto& b : {d.beta_lattice.basis1(), d.beta_lattice.basis2()}) d.gens.push_back({F_->one(), b, F_->one()});
    d.rule = "t^xi_{alpha^-1 delta m} = xi(delta) chi_m(alpha) chi_{k+m}(delta) t^xi_m";
    if (d.root_order) d.rule += " zeta_" + std::to_string(d.root_order) + "^{-beta(alpha^-1 N m)}";
    return d;
}

std::pair<Integer, Integer> level_indices(const FracIdeal& P) {
    Integer i0 = 1, i1 = 1;
    for (const auto& [Q, e] : factor(P)) {
        if (e != 1) throw DomainError("P must be squarefree");
        Integer q = Q.norm();
        i0 *= q + 1;
        i1 *= q * q - 1;
    }
    return {i0, i1};
}

bool component_cover_check(const CuspAtlas& atlas, const std::vector<std::size_t>& S) {
    std::set<std::size_t> seen;
    for (std::size_t i : S) seen.insert(atlas.cusps().at(i).component);
    return seen.size() == atlas.component_count();
}

}  // namespace hmf
