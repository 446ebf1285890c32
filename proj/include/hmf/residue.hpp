#pragma once

#include <cstdint>
#include <vector>

#include "hmf/ideal.hpp"

namespace hmf {

// O_F/n for an integral ideal n. Residues are encoded as u + A*v for the reduced
// representative u + v*omega, 0 <= u < A, 0 <= v < C.
class ResidueRing {
public:
    using Res = std::uint64_t;

    ResidueRing() = default;
    explicit ResidueRing(const FracIdeal& n);

    const FracIdeal& modulus() const { return n_; }
    std::uint64_t size() const { return static_cast<std::uint64_t>(A_ * C_); }
    // x must be integral at every prime dividing n.
    Res reduce(const Element& x) const;
    Element lift(Res r) const;
    Res zero() const { return 0; }
    Res one() const { return size() == 1 ? 0 : 1; }
    Res add(Res x, Res y) const;
    Res neg(Res x) const;
    Res mul(Res x, Res y) const;
    Res pow(Res x, std::uint64_t e) const;
    bool is_unit(Res x) const;
    Res inverse(Res x) const;
    std::uint64_t unit_count() const { return phi_; }
    std::vector<Res> units() const;
    const std::vector<PrimeIdeal>& primes() const { return primes_; }

private:
    Res make(__int128 u, __int128 v) const;
    FracIdeal n_;
    const Field* F_ = nullptr;
    std::int64_t A_ = 1, B_ = 0, C_ = 1;
    std::uint64_t phi_ = 1;
    std::vector<PrimeIdeal> primes_;
};

}  // namespace hmf
