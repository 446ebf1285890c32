#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hmf/context.hpp"
#include "hmf/lattice.hpp"

namespace hmf {

using CoeffMap = std::unordered_map<Element, Coeff, ElementHash>;

// Truncated q-expansions at the cusps at infinity c_{t_i}: for each stored representative
// t_i the values r_m at one m per unit orbit with Nm(m)/Nm(L_i) <= bound, plus r_0.
struct QExpFamily {
    ContextPtr ctx;
    long bound = 0;
    std::vector<CoeffMap> coeffs;
    std::vector<Coeff> constants;
};

QExpFamily zero_family(const ContextPtr& ctx, long bound);
const std::vector<Element>& family_keys(const Context& ctx, std::size_t i, long bound);

// An idele t resolved once: its lattice L_t and t = alpha * t_index.
struct CuspHandle {
    FracIdeal lattice;
    std::size_t index = 0;
    Element alpha;
};
CuspHandle resolve(const Context& ctx, const IdeleRep& t);

// r_m^t(f) for an arbitrary prime-to-p idele t. Indices outside L_t read as zero; indices beyond
// the truncation read as zero unless strict.
Coeff coefficient(const QExpFamily& f, const IdeleRep& t, const Element& m, bool strict = false);
Coeff coefficient(const QExpFamily& f, std::size_t i, const Element& m, bool strict = false);
Coeff coefficient(const QExpFamily& f, const CuspHandle& h, const Element& m, bool strict = false);

struct ValidationReport {
    bool valid = true;
    std::string message;
    std::size_t rep = 0;
    Element key;
};
ValidationReport validate_family(const QExpFamily& f);

// Constant terms allowed at a cusp whose stabilizer image is generated by the pairs (alpha, delta):
// the b-torsion of R, b generating <chi_m(alpha) chi_{k+m}(delta) - 1>.
struct ConstantModule {
    enum class Kind { All, Zero, Torsion } kind = Kind::All;
    long valuation = 0;   // Torsion: b = uniformizer^valuation at the ring prime

    bool admits(const CoeffRing& R, const Coeff& r) const;
    Coeff random(const CoeffRing& R, std::mt19937_64& rng) const;
    std::string describe() const;
};
ConstantModule constant_term_module(const CoeffRing& R, const Weight& w,
                                    const std::vector<std::pair<Element, Element>>& gamma_gens);
// Stabilizer generators at the cusps at infinity.
std::vector<std::pair<Element, Element>> infinity_stabilizer_gens(const Context& ctx);
ConstantModule constant_term_module(const Context& ctx);

Coeff constant_term(const QExpFamily& f, std::size_t i);
bool is_cuspidal_at_infinity(const QExpFamily& f);

QExpFamily random_admissible_family(const ContextPtr& ctx, std::uint64_t seed, long bound);

// A single q-series on a lattice, not reduced by units.
using Series = CoeffMap;

// Multiply r_m by zeta_{N'}^{-N' Tr(eps m)}; N' Tr(eps m) must be integral for every stored m.
Series unipotent_twist(const CoeffRing& R, const Series& s, const Element& eps, long n_prime);

QExpFamily add(const QExpFamily& f, const QExpFamily& g);
QExpFamily scale(const Coeff& c, const QExpFamily& f);
// Coefficientwise equality on the keys of the smaller truncation.
bool equal_on_common(const QExpFamily& f, const QExpFamily& g);

}  // namespace hmf
