#pragma once

#include <array>

#include "convnls/field.hpp"
#include "convnls/params.hpp"

namespace convnls {

struct ConservedTriple {
    double mass = 0.0;
    std::array<double, 4> momentum{};
    double energy = 0.0;
};

struct NormReport {
    double l2 = 0.0;
    double h1 = 0.0;
    double xbeta = 0.0;      ///< (||u||_H1^2 + ||D^-beta u||^2)^(1/2)
    double xbeta_dot = 0.0;  ///< (||grad u||^2 + ||D^-beta u||^2)^(1/2)
};

struct EnergyReport {
    double total = 0.0;      ///< E = kinetic + potential - sigma/4 ||u||_L4^4
    double kinetic = 0.0;    ///< 1/2 ||grad u||^2
    double potential = 0.0;  ///< eps/2 ||L_{beta/2} u||^2
    double quartic = 0.0;    ///< 1/4 ||u||_L4^4
    double energy0 = 0.0;    ///< E with the eps term dropped
};

struct ActionReport {
    double s_omega = 0.0;    ///< 1/2 Q(u) - 1/4 ||u||_L4^4
    double i_eps = 0.0;      ///< Q(u) = eps||L_{b/2}u||^2 + ||grad u||^2 + omega||u||^2
    double nehari = 0.0;     ///< N(u) = Q(u) - ||u||_L4^4
    double m_quotient = 0.0; ///< Q(u) / ||u||_L4^2
};

/// F(u) = ||u||_L2^2 = h sum |u|^2.
double mass(const Field& u);

/// P(u) = Im <u, grad u>; sign fixed so the plane wave e^{ik.x} yields
/// +k * mass(u).
std::array<double, 4> momentum(const Field& u);

ConservedTriple conserved(const Field& u, const PhysicsParams& p);

EnergyReport energy(const Field& u, const PhysicsParams& p);

NormReport xbeta_norms(const Field& u, const PhysicsParams& p);
NormReport xbeta_norms(const Spectrum& s, const PhysicsParams& p);

/// Modified Sobolev norm || |xi|^-beta <xi>^(s+beta) u_hat ||, with the
/// Japanese bracket <xi> = (1+|xi|^2)^(1/2).
double hs_beta_norm(const Field& u, const PhysicsParams& p, double s);

/// ||u||_Lp by direct physical-space summation.
double lp_norm(const Field& u, double p_exp);

/// For the zero field, m_quotient is NaN in the report.
ActionReport action_functionals(const Field& u, const PhysicsParams& p);

/// Throws ZeroField on u = 0.
double m_quotient(const Field& u, const PhysicsParams& p);

} // namespace convnls
