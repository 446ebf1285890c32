#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hmf/classgroup.hpp"
#include "hmf/context.hpp"

namespace hmf {

// A cusp b*k of B(F)+ \ GL2(A_f) / U with b = diag(x, z): x has ideal a, z has ideal c,
// H = a^-1 x c^-1, I = c^-1, J = a^-1. Stored by (pair class, level-structure orbit).
struct CuspRecord {
    std::size_t index = 0;
    std::size_t pair = 0;        // wide class of a, narrow class of a*c
    std::size_t orbit = 0;       // orbit of k mod n under the unit Borel
    FracIdeal J, I;
    std::size_t component = 0;   // det class
    bool at_infinity = false;
    std::array<std::uint64_t, 3> level_data{};   // canonical orbit point
};

struct U0Cusp {
    std::size_t index = 0;
    std::size_t base = 0;        // pi_1
    FracIdeal q1, q2;            // q1 * q2 = P
    std::size_t pi2 = 0;
};

struct Clasp {
    std::size_t index = 0;
    std::size_t u0 = 0;
    std::size_t base = 0;
    FracIdeal q;                 // Ann(Xi)
    ResidueRing::Res xi = 0;     // generator class in (O/q)^x
};

struct GammaGen {
    Element alpha, beta, delta;
};

struct QModuleDescriptor {
    std::string kind;            // "cusp", "u0", "clasp"
    FracIdeal M;                 // dual lattice d^-1 I^-1 J (q-scaled for clasps)
    FracIdeal scale;             // exponents live in scale^-1 M
    long root_order = 0;         // N with zeta_N twists (0: none)
    FracIdeal beta_lattice;      // beta in this ideal, paired with M through the trace
    std::vector<GammaGen> gens;
    Weight weight;
    std::optional<FracIdeal> r;  // clasps: q^-1 P
    std::uint64_t xi_characters = 1;
    std::string rule;
    // true when every generator acts through t_{alpha^-1 delta m} = t_m
    bool orbit_constancy() const;
};

// (k11, k12, k21, k22) mod n
using LevelMatrix = std::array<Element, 4>;

class CuspAtlas {
public:
    CuspAtlas(const Field* F, const Level& level, long p);

    const Field* field() const { return F_; }
    const Level& level() const { return level_; }
    long p() const { return p_; }

    const std::vector<CuspRecord>& cusps() const { return cusps_; }
    std::size_t size() const { return cusps_.size(); }
    std::size_t pair_count() const { return wide_->order() * narrow_->order(); }
    std::size_t orbit_count() const { return orbits_.size(); }
    std::size_t component_count() const { return det_group().order(); }

    // Cusp of diag(x, z) * k, x and z of ideals a, c (prime to n) and residues ra, rc mod n.
    std::size_t locate(const FracIdeal& a, const FracIdeal& c, const Element& ra, const Element& rc,
                       const LevelMatrix& k) const;
    std::size_t locate_infinity(const IdeleRep& t) const;
    // One per narrow (ray) class, in the order of that group.
    std::vector<std::size_t> cusps_at_infinity() const;

    std::vector<U0Cusp> u0_cusps(const FracIdeal& P) const;
    // Throws DomainError when some automorphism moves a generator of J/qJ.
    std::vector<Clasp> clasps(const FracIdeal& P) const;
    // Units mu = 1 mod n are = 1 mod P.
    bool is_neat(const FracIdeal& P) const;

    // Unit pairs (alpha, delta), alpha*delta >> 0, fixing the level structure of the cusp;
    // complete modulo n*extra.
    std::vector<std::pair<Element, Element>> stabilizer_units(std::size_t cusp, const FracIdeal& extra) const;

    QModuleDescriptor descriptor(const CuspRecord& c, const Weight& w) const;
    QModuleDescriptor descriptor(const U0Cusp& c, const Weight& w) const;
    QModuleDescriptor descriptor(const Clasp& c, const FracIdeal& P, const Weight& w) const;

    const RayClassGroup& det_group() const;

private:
    std::uint64_t code_of(const std::array<ResidueRing::Res, 4>& k) const;
    void build_orbits();
    std::size_t pair_index(const FracIdeal& a, const FracIdeal& c, Element& alpha, Element& delta) const;
    std::size_t component_of(std::size_t pair, std::uint64_t code);
    void check_P(const FracIdeal& P) const;
    std::uint64_t unit_order(const FracIdeal& m) const;

    const Field* F_;
    Level level_;
    long p_;
    ResidueRing res_;
    std::uint64_t N_;
    std::shared_ptr<const RayClassGroup> wide_, narrow_, ray_;
    std::vector<std::int64_t> orbit_of_;        // by code, -1 for invalid codes
    std::vector<std::uint64_t> orbits_;         // minimal code per orbit, sorted
    std::vector<FracIdeal> pair_a_, pair_c_;
    std::vector<CuspRecord> cusps_;
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> components_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::uint64_t, FracIdeal>, std::vector<std::pair<Element, Element>>> stabilizers_;
    mutable std::map<std::pair<std::size_t, FracIdeal>, std::array<std::uint64_t, 3>> shifted_pairs_;
};

// ([U : U0(P)], [U : U1(P)]) = (prod (Nm p + 1), prod (Nm p^2 - 1)).
std::pair<Integer, Integer> level_indices(const FracIdeal& P);

// det classes of S cover the component group
bool component_cover_check(const CuspAtlas& atlas, const std::vector<std::size_t>& S);

}  // namespace hmf
