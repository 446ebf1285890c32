#include "hmf/classgroup.hpp"
#include "hmf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hmf {

std::vector<PrimeIdeal> primes_up_to(const Field* F, long bound, long avoid) {
    std::vector<PrimeIdeal> out;
    for (long ell = 2; ell <= bound; ++ell) {
        if (!is_prime(ell) || (avoid != 0 && avoid % ell == 0)) continue;
        for (const auto& P : primes_above(F, ell))
            if (P.norm() <= bound) out.push_back(P);
    }
    std::stable_sort(out.begin(), out.end(), [](const PrimeIdeal& x, const PrimeIdeal& y) { return x.norm() < y.norm(); });
    return out;
}

RayClassGroup::RayClassGroup(const Field* F, const FracIdeal& n, bool narrow, long avoid)
    : F_(F), n_(n), narrow_(narrow), avoid_(avoid), res_(n) {
    std::uint64_t used = 0;
    long avoid_all = avoid * to_int64(n.norm().get_num());

    creps_.push_back(FracIdeal::unit(F));
    long mink = std::max(1L, static_cast<long>(std::floor(std::sqrt(static_cast<double>(F->disc)) / 2)));
    for (long N = 2; N <= mink; ++N) {
        for (const auto& I : ideals_of_norm(F, N)) {
            bool seen = false;
            for (const auto& c : creps_)
                if (principal_generator(I / c)) {
                    seen = true;
                    break;
                }
            if (!seen) creps_.push_back(I);
        }
    }
    for (std::size_t i = 1; i < creps_.size(); ++i) {
        if (coprime(creps_[i], avoid_all)) continue;
        bool done = false;
        for (long bound = 64; !done; bound *= 2) {
            for (const auto& P : primes_up_to(F, bound, avoid_all))
                if (principal_generator(P.P / creps_[i])) {
                    creps_[i] = P.P;
                    done = true;
                    break;
                }
            charge(used, static_cast<std::uint64_t>(bound), "class representative search");
        }
    }

    const Element& eps = F->fundamental_unit();
    std::vector<Pair> ugens{{res_.reduce(-F->one()), signs(-F->one())}, {res_.reduce(eps), signs(eps)}};
    std::set<Pair> seen{{res_.one(), 0}};
    std::vector<Pair> frontier{{res_.one(), 0}};
    while (!frontier.empty()) {
        std::vector<Pair> next;
        for (const auto& x : frontier)
            for (const auto& g : ugens) {
                Pair y = pmul(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier.swap(next);
    }
    units_.assign(seen.begin(), seen.end());

    auto rs = res_.units();
    charge(used, rs.size() * (narrow ? 4 : 1) + units_.size(), "ray class enumeration");
    std::vector<std::int64_t> minkey(res_.size() * 4, -1);
    std::vector<std::size_t> orbit;
    for (auto r : rs)
        for (int s = 0; s < (narrow ? 4 : 1); ++s) {
            Pair q{r, s};
            if (minkey[pkey(q)] >= 0) continue;
            orbit.clear();
            std::size_t best = pkey(q);
            for (const auto& u : units_) {
                std::size_t k = pkey(pmul(u, q));
                orbit.push_back(k);
                best = std::min(best, k);
            }
            for (auto k : orbit) minkey[k] = static_cast<std::int64_t>(best);
        }
    std::vector<std::int64_t> mins;
    for (auto k : minkey)
        if (k >= 0) mins.push_back(k);
    std::sort(mins.begin(), mins.end());
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    for (auto k : mins) cosets_.push_back({static_cast<ResidueRing::Res>(k / 4), static_cast<int>(k % 4)});
    coset_of_.assign(minkey.size(), -1);
    for (std::size_t k = 0; k < minkey.size(); ++k)
        if (minkey[k] >= 0)
            coset_of_[k] = std::lower_bound(mins.begin(), mins.end(), minkey[k]) - mins.begin();

    std::size_t h = creps_.size();
    kappa_.assign(h, std::vector<std::pair<std::size_t, Pair>>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            auto [k, g] = wide_decompose(creps_[i] * creps_[j]);
            kappa_[i][j] = {k, canonical({res_.reduce(g), signs(g)})};
        }
    ident_ = coset_pos(canonical({res_.one(), 0}));
    find_structure();
}

int RayClassGroup::signs(const Element& x) const {
    if (!narrow_) return 0;
    return (sign1(x) < 0 ? 1 : 0) | (sign2(x) < 0 ? 2 : 0);
}

RayClassGroup::Pair RayClassGroup::canonical(Pair q) const { return cosets_[coset_pos(q)]; }

std::size_t RayClassGroup::coset_pos(const Pair& q) const {
    std::int64_t c = coset_of_[pkey(q)];
    if (c < 0) throw DomainError("residue is not a unit modulo the modulus");
    return static_cast<std::size_t>(c);
}

std::pair<std::size_t, Element> RayClassGroup::wide_decompose(const FracIdeal& a) const {
    for (std::size_t k = 0; k < creps_.size(); ++k)
        if (auto g = principal_generator(a / creps_[k])) return {k, *g};
    throw DomainError("ideal class not found: " + to_string(a));
}

std::size_t RayClassGroup::index(const FracIdeal& a) const {
    auto [k, g] = wide_decompose(a);
    auto r = res_.reduce(g);
    if (!res_.is_unit(r)) throw DomainError("ideal is not prime to the modulus: " + to_string(a));
    return k * cosets_.size() + coset_pos(canonical({r, signs(g)}));
}

std::size_t RayClassGroup::principal_class(const Element& gamma) const {
    auto r = res_.reduce(gamma);
    if (!res_.is_unit(r)) throw DomainError("element is not a unit at the modulus");
    return coset_pos(canonical({r, signs(gamma)}));
}

std::size_t RayClassGroup::mul(std::size_t x, std::size_t y) const {
    std::size_t Q = cosets_.size();
    const auto& [k, kap] = kappa_[x / Q][y / Q];
    Pair q = canonical(pmul(pmul(cosets_[x % Q], cosets_[y % Q]), kap));
    return k * Q + coset_pos(q);
}

std::size_t RayClassGroup::power(std::size_t x, long e) const {
    long o = static_cast<long>(element_order(x));
    e %= o;
    if (e < 0) e += o;
    std::size_t r = ident_, b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::size_t RayClassGroup::element_order(std::size_t x) const {
    std::size_t o = 1, y = x;
    while (y != ident_) {
        y = mul(y, x);
        ++o;
    }
    return o;
}

void RayClassGroup::find_structure() {
    const std::size_t G = order();
    std::vector<std::size_t> ord(G);
    std::uint64_t used = 0;
    charge(used, G * G / 4 + G, "ray class structure");
    for (std::size_t x = 0; x < G; ++x) ord[x] = element_order(x);

    std::vector<long> inv;   // invariant factors, descending
    if (G > 1) {
        std::map<long, std::vector<int>> parts;   // ell -> exponents of cyclic factors, descending
        for (long ell : prime_factors(static_cast<long>(G))) {
            std::vector<int> r;
            int prev = 0;
            for (long pk = ell, k = 1;; pk *= ell, ++k) {
                std::size_t cnt = 0;
                for (auto o : ord)
                    if (pk % static_cast<long>(o) == 0) ++cnt;
                int s = 0;
                for (std::size_t c = cnt; c > 1; c /= ell) ++s;
                r.push_back(s - prev);
                if (s == prev) break;
                prev = s;
            }
            std::vector<int> lam(static_cast<std::size_t>(r[0]), 0);
            for (std::size_t k = 0; k < r.size(); ++k)
                for (int j = 0; j < r[k]; ++j) ++lam[static_cast<std::size_t>(j)];
            parts[ell] = lam;
        }
        std::size_t nf = 0;
        for (const auto& [ell, lam] : parts) nf = std::max(nf, lam.size());
        inv.assign(nf, 1);
        for (const auto& [ell, lam] : parts)
            for (std::size_t j = 0; j < lam.size(); ++j)
                for (int e = 0; e < lam[j]; ++e) inv[j] *= ell;
    }
    structure_ = inv;

    long avoid_all = avoid_ * to_int64(n_.norm().get_num());
    std::vector<char> H(G, 0);
    H[ident_] = 1;
    std::size_t hsize = 1;
    std::vector<std::size_t> gidx;
    std::vector<PrimeIdeal> cands;
    std::vector<std::size_t> cand_idx;
    class_primes_.assign(G, FracIdeal());
    long bound = 32;
    std::size_t next = 0;
    auto next_candidate = [&]() -> std::size_t {
        while (next >= cands.size()) {
            bound *= 2;
            charge(used, static_cast<std::uint64_t>(bound) * 4, "ray class generator search");
            auto ps = primes_up_to(F_, bound, avoid_all);
            for (std::size_t i = cands.size(); i < ps.size(); ++i) {
                std::size_t x = index(ps[i].P);
                if (class_primes_[x].field() == nullptr) class_primes_[x] = ps[i].P;
                cands.push_back(ps[i]);
                cand_idx.push_back(x);
            }
        }
        return next++;
    };
    for (long d : structure_) {
        next = 0;
        for (;;) {
            std::size_t c = next_candidate();
            std::size_t x = cand_idx[c];
            if (static_cast<long>(ord[x]) != d) continue;
            std::vector<char> H2(G, 0);
            std::size_t cnt = 0;
            std::size_t gk = ident_;
            for (long k = 0; k < d; ++k) {
                for (std::size_t y = 0; y < G; ++y)
                    if (H[y]) {
                        std::size_t z = mul(gk, y);
                        if (!H2[z]) {
                            H2[z] = 1;
                            ++cnt;
                        }
                    }
                gk = mul(gk, x);
            }
            if (cnt != hsize * static_cast<std::size_t>(d)) continue;
            H.swap(H2);
            hsize = cnt;
            gidx.push_back(x);
            gens_.push_back(cands[c].P);
            break;
        }
    }

    dlog_.assign(G, {});
    std::vector<long> e(structure_.size(), 0);
    std::size_t cur = ident_;
    for (std::size_t step = 0; step < G; ++step) {
        dlog_[cur] = e;
        from_dlog_[e] = cur;
        std::size_t j = 0;
        for (; j < e.size(); ++j) {
            cur = mul(cur, gidx[j]);
            if (++e[j] < structure_[j]) break;
            e[j] = 0;   // g_j^{d_j} = 1, cur already wrapped
        }
        if (j == e.size()) break;
    }
    for (std::size_t j = 0; j < gens_.size(); ++j) {
        auto [k, g] = wide_decompose_product({{gens_[j], structure_[j]}});
        if (k != 0) throw DomainError("ray class relation outside the identity class");
        rels_.push_back(ray_fix(g));
    }
}

std::size_t RayClassGroup::from_dlog(const std::vector<long>& e) const {
    std::vector<long> r(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        r[j] = e[j] % structure_[j];
        if (r[j] < 0) r[j] += structure_[j];
    }
    return from_dlog_.at(r);
}

FracIdeal RayClassGroup::representative(std::size_t x) const {
    if (x == ident_) return FracIdeal::unit(F_);
    if (class_primes_[x].field()) return class_primes_[x];
    long avoid_all = avoid_ * to_int64(n_.norm().get_num());
    std::uint64_t used = 0;
    for (long bound = 64;; bound *= 2) {
        charge(used, static_cast<std::uint64_t>(bound) * 4, "class representative search");
        for (const auto& P : primes_up_to(F_, bound, avoid_all))
            if (index(P.P) == x) return P.P;
    }
}

std::pair<std::size_t, Element> RayClassGroup::wide_decompose_product(
    const std::vector<std::pair<FracIdeal, long>>& f) const {
    std::size_t k = 0;
    Element G = F_->one();
    for (const auto& [I, e] : f) {
        FracIdeal J = e > 0 ? I : inverse(I);
        for (long s = 0; s < std::labs(e); ++s) {
            auto [k2, g] = wide_decompose(creps_[k] * J);
            k = k2;
            G = G * g;
            const Element& eps = F_->fundamental_unit();
            long double r = std::log(std::fabs(theta1(G) / theta2(G))) / (2 * std::log(theta1(eps)));
            if (std::isfinite(r) && std::fabs(r) >= 1) G = G * pow(eps, -std::lround(r));
        }
    }
    return {k, G};
}

Element RayClassGroup::ray_fix(const Element& g) const {
    Pair pg{res_.reduce(g), signs(g)};
    const Element& eps = F_->fundamental_unit();
    Pair pe{res_.reduce(eps), signs(eps)};
    Pair pm{res_.reduce(-F_->one()), signs(-F_->one())};
    Pair target{res_.one(), 0};
    Pair cur{res_.one(), 0};
    for (long e = 0; e <= static_cast<long>(2 * units_.size()); ++e) {
        if (pmul(cur, pg) == target) return pow(eps, e) * g;
        if (pmul(pmul(cur, pm), pg) == target) return -(pow(eps, e) * g);
        cur = pmul(cur, pe);
    }
    throw DomainError("ideal is not in the identity ray class");
}

Element RayClassGroup::ray_generator(const FracIdeal& b) const {
    auto [k, g] = wide_decompose(b);
    if (k != 0) throw DomainError("ideal is not in the identity class");
    return ray_fix(g);
}

std::pair<std::vector<long>, Element> RayClassGroup::decompose(const FracIdeal& a) const {
    std::vector<long> e = dlog(a);
    std::vector<std::pair<FracIdeal, long>> f{{a, 1}};
    for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j]) f.push_back({gens_[j], -e[j]});
    auto [k, g] = wide_decompose_product(f);
    if (k != 0) throw DomainError("ideal is not in the identity class");
    return {e, ray_fix(g)};
}

}  // namespace hmf
