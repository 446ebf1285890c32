#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hmf/classgroup.hpp"
#include "hmf/ring.hpp"

namespace hmf {

// k = (k1, k2), m = (m1, m2), indexed by theta_1, theta_2.
struct Weight {
    long k1 = 2, k2 = 2, m1 = 0, m2 = 0;

    bool parallel() const { return k1 == k2 && m1 == m2; }
    bool kw_parallel() const { return k1 + 2 * m1 == k2 + 2 * m2; }
    std::string describe() const;
    bool operator==(const Weight& o) const { return k1 == o.k1 && k2 == o.k2 && m1 == o.m1 && m2 == o.m2; }
};

// chi_{(n1, n2)}(x) = x^n1 * conj(x)^n2, as an element of F.
Element chi(const Element& x, long n1, long n2);

enum class LevelType { U1, Full };

struct Level {
    LevelType type = LevelType::U1;
    FracIdeal n;
    std::string describe() const;
};

// Prime-to-p idele of ideal a and residue r mod n (r ignored at level U1(n)).
struct IdeleRep {
    FracIdeal a;
    Element r;
};

struct Transport {
    std::size_t index;   // stored representative t_i
    Element alpha;       // t = alpha * t_i, alpha >> 0
};

struct CentralCharacter {
    std::vector<CharValue> values;   // on the generators of the narrow ray class group mod n
};

class Context {
public:
    static std::shared_ptr<const Context> create(const Field* F, const Level& level, const Weight& w,
                                                 const CoeffRing& R, long p);
    // Same data with a central character attached; every compatibility constraint is checked.
    std::shared_ptr<const Context> with_character(const std::vector<CharValue>& values) const;
    // Character with values chi_w(pi_j) on generators g_j = (pi_j), when that is consistent.
    std::shared_ptr<const Context> with_default_character() const;

    const Field* F;
    Level level;
    Weight weight;
    CoeffRing ring;
    long p;

    const std::vector<IdeleRep>& reps() const { return reps_; }
    std::size_t rep_count() const { return reps_.size(); }
    FracIdeal lattice(const IdeleRep& t) const;
    const FracIdeal& lattice(std::size_t i) const { return lattices_[i]; }
    // enumerate_orbit_reps of L_i up to relative norm bound, cached
    const std::vector<Element>& keys(std::size_t i, long bound) const;
    long unit_period() const { return period_; }
    const Element& unit() const { return unit_; }   // generator of the totally positive units = 1 mod n
    const std::vector<Element>& unit_congruence_gens() const { return en_gens_; }   // E_n
    const RayClassGroup& cusp_classes() const { return *cusp_group_; }
    const RayClassGroup& ray_classes() const { return *ray_group_; }

    Transport transporter(const IdeleRep& t) const;
    std::size_t rep_index(const IdeleRep& t) const { return transporter(t).index; }

    Coeff chi_ring(const Element& x, long n1, long n2) const { return ring.theta1(chi(x, n1, n2)); }

    bool has_character() const { return psi_.has_value(); }
    const CentralCharacter& character() const;
    // psi(a) for a prime to n p
    CharValue psi(const FracIdeal& a) const;
    // rho(r) = chi_w(gamma)/psi((gamma)) for gamma >> 0, gamma = r mod n
    CharValue rho(const Element& r) const;
    // central action of the idele (a, r)
    CharValue omega(const IdeleRep& t) const;

    // Totally positive, = 1 mod n, v_P = 1 and unit at the other primes over p.
    Element normalized_uniformizer(const PrimeIdeal& P) const;
    // Element >> 0 (or with the requested signs), = r mod n, prime to p.
    Element lift_residue(const Element& r, int sign_bits = 0) const;

    std::vector<PrimeIdeal> primes_over_p() const { return primes_above(F, p); }

private:
    Context() = default;
    void check_hypotheses() const;

    std::vector<IdeleRep> reps_;
    std::vector<FracIdeal> lattices_;
    mutable std::map<std::pair<std::size_t, long>, std::shared_ptr<const std::vector<Element>>> keys_;
    long period_ = 1;
    Element unit_;
    std::vector<Element> en_gens_;
    std::shared_ptr<const RayClassGroup> cusp_group_;
    std::shared_ptr<const RayClassGroup> ray_group_;
    std::optional<CentralCharacter> psi_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<FracIdeal, std::uint64_t>, Transport> transports_;
};

using ContextPtr = std::shared_ptr<const Context>;

}  // namespace hmf
