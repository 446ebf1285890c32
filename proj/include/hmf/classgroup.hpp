#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hmf/lattice.hpp"
#include "hmf/residue.hpp"

namespace hmf {

// Ray class group mod n (narrow or wide), as pairs (wide class i, [gamma]) where
// a = gamma * c_i and [gamma] lives in ((O/n)^x x signs) / (image of global units).
class RayClassGroup {
public:
    RayClassGroup(const Field* F, const FracIdeal& n, bool narrow, long avoid = 1);

    const Field* field() const { return F_; }
    const FracIdeal& modulus() const { return n_; }
    bool narrow() const { return narrow_; }
    long avoid() const { return avoid_; }
    const ResidueRing& residues() const { return res_; }

    std::size_t order() const { return creps_.size() * cosets_.size(); }
    std::size_t wide_class_count() const { return creps_.size(); }
    const std::vector<long>& structure() const { return structure_; }
    const std::vector<FracIdeal>& generators() const { return gens_; }
    // generators()[j]^structure()[j] = (relations()[j]), totally positive when narrow, = 1 mod n
    const std::vector<Element>& relations() const { return rels_; }

    std::size_t index(const FracIdeal& a) const;            // a prime to n
    std::size_t principal_class(const Element& gamma) const; // gamma an n-unit
    std::size_t identity() const { return ident_; }
    std::size_t mul(std::size_t x, std::size_t y) const;
    std::size_t power(std::size_t x, long e) const;
    std::size_t element_order(std::size_t x) const;
    const std::vector<long>& dlog(std::size_t x) const { return dlog_[x]; }
    std::vector<long> dlog(const FracIdeal& a) const { return dlog_[index(a)]; }
    std::size_t from_dlog(const std::vector<long>& e) const;
    std::size_t wide_class(std::size_t x) const { return x / cosets_.size(); }

    // Ideal prime to n*avoid in the class.
    FracIdeal representative(std::size_t x) const;
    // b must lie in the identity class: b = (gamma), gamma >> 0 (narrow), gamma = 1 mod n.
    Element ray_generator(const FracIdeal& b) const;
    // a = prod g_j^e_j * (gamma)
    std::pair<std::vector<long>, Element> decompose(const FracIdeal& a) const;
    // Wide-class representative c_i and the generator of a / c_i.
    std::pair<std::size_t, Element> wide_decompose(const FracIdeal& a) const;
    const FracIdeal& wide_rep(std::size_t i) const { return creps_[i]; }

private:
    // prod I_k^e_k = c_i * (G), built one factor at a time so norms stay small
    std::pair<std::size_t, Element> wide_decompose_product(const std::vector<std::pair<FracIdeal, long>>& f) const;
    Element ray_fix(const Element& g) const;
    using Pair = std::pair<ResidueRing::Res, int>;
    int signs(const Element& x) const;
    Pair canonical(Pair q) const;
    Pair pmul(const Pair& x, const Pair& y) const { return {res_.mul(x.first, y.first), x.second ^ y.second}; }
    std::size_t coset_pos(const Pair& q) const;
    void find_structure();

    const Field* F_;
    FracIdeal n_;
    bool narrow_;
    long avoid_;
    ResidueRing res_;
    std::vector<FracIdeal> creps_;
    std::vector<Pair> units_;
    std::vector<Pair> cosets_;
    std::vector<std::int64_t> coset_of_;   // by residue*4 + signs, -1 off the units
    std::size_t pkey(const Pair& q) const { return static_cast<std::size_t>(q.first) * 4 + static_cast<std::size_t>(q.second); }
    std::vector<std::vector<std::pair<std::size_t, Pair>>> kappa_;
    std::size_t ident_ = 0;
    std::vector<long> structure_;
    std::vector<FracIdeal> gens_;
    std::vector<Element> rels_;
    std::vector<std::vector<long>> dlog_;
    std::map<std::vector<long>, std::size_t> from_dlog_;
    std::vector<FracIdeal> class_primes_;
};

// Prime ideals of norm <= bound not dividing m, ordered by norm.
std::vector<PrimeIdeal> primes_up_to(const Field* F, long bound, long avoid = 1);

}  // namespace hmf
