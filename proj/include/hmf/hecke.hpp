#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmf/qexp.hpp"

namespace hmf {

// Embeddings theta in Theta_P: those reducing to P at the prime of the coefficient ring.
// Over a characteristic-0 ring theta_1 is attached to the first prime above p.
std::vector<int> theta_set(const CoeffRing& R, const PrimeIdeal& P);
bool tp_gate(const CoeffRing& R, const Weight& w, const PrimeIdeal& P);
bool sp_gate(const CoeffRing& R, const Weight& w, const PrimeIdeal& P);

ContextPtr build_central_character(const ContextPtr& ctx, const std::vector<CharValue>& values);

// T_v for v not over p; S_v f is taken as psi(v) f.
QExpFamily apply_Tv(const QExpFamily& f, const PrimeIdeal& v);
// Same formula with S_v f supplied as a family.
QExpFamily apply_Tv_formal(const QExpFamily& f, const PrimeIdeal& v, const QExpFamily& sv_f);
QExpFamily apply_Sv(const QExpFamily& f, const FracIdeal& v);

// Scalar by which S_varpi acts: (Nm P / Nm varpi) * omega(x)^-1 with x the prime-to-p part of varpi.
Coeff s_varpi(const Context& ctx, const PrimeIdeal& P, const Element& varpi);
void check_uniformizer(const Context& ctx, const PrimeIdeal& P, const Element& varpi);

QExpFamily apply_Tp(const QExpFamily& f, const PrimeIdeal& P, const Element& varpi);
QExpFamily apply_Tp(const QExpFamily& f, const PrimeIdeal& P);
QExpFamily apply_S_varpi(const QExpFamily& f, const PrimeIdeal& P, const Element& varpi);
QExpFamily apply_Sp(const QExpFamily& f, const PrimeIdeal& P);

struct SuiteReport {
    std::string name;
    bool pass = true;
    long trials = 0;
    std::string detail;
};
// T_P T_Q = T_Q T_P on random admissible families, and T_P against T_v when v is given.
SuiteReport check_commutativity(const ContextPtr& ctx, const PrimeIdeal& P, const PrimeIdeal& Q, long trials,
                                std::uint64_t seed, long bound, const PrimeIdeal* v = nullptr);
// T_P under varpi and eps_plus * varpi.
SuiteReport check_uniformizer_independence(const ContextPtr& ctx, const PrimeIdeal& P, long trials,
                                           std::uint64_t seed, long bound);
// Every operator is R-linear.
SuiteReport check_linearity(const ContextPtr& ctx, const PrimeIdeal& P, const PrimeIdeal& v, long trials,
                            std::uint64_t seed, long bound);

}  // namespace hmf
