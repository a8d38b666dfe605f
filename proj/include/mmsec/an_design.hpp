#pragma once

// Unknown-eavesdropper-CSI design: spend the least power that meets Bob's
// rate target and radiate the remainder as artificial noise inside the part
// of the effective channel that Bob's combiner cannot see.

#include "mmsec/secure_design.hpp"

namespace mmsec {

inline constexpr double kBisectionRelTol = 1e-6;
inline constexpr int kBisectionMaxIter = 200;

struct QosPower {
  double power;
  bool feasible;
};

/// Smallest P_s in [0, power_cap] with R_b(P_s) >= qos, by bisection to a
/// relative tolerance on P_s. When R_b(power_cap) < qos the cap is returned
/// with feasible = false.
QosPower min_power_for_qos(const CMatrix& h_bob, const DesignResult& design, LinkNoise noise,
                           double qos, double power_cap, double rel_tol = kBisectionRelTol);

/// Right singular vectors N_s+1..N_RF of H_eff, scaled so that
/// ||analog * result||_F == 1. Throws NoAnDimensions when N_s == N_RF.
CMatrix an_precoder(const CMatrix& effective_channel, const CMatrix& analog_precoder,
                    const TransmitConfig& tx);

struct AnDesignResult {
  DesignResult base;
  CMatrix an_digital_precoder;  // N_RF x (N_RF - N_s)
  double signal_power;
  double an_power;
  double qos_threshold;
  bool infeasible;

  CMatrix an_transmit_matrix() const { return base.precoder.analog * an_digital_precoder; }
};

/// Table-I design on H_b alone followed by the power split and AN precoder.
/// tx.total_power is the budget P.
AnDesignResult design_unknown_csi(const CMatrix& h_bob, const CodebookPair& codebooks,
                                  const TransmitConfig& tx, LinkNoise noise_bob, double qos);

/// Same, reusing an already computed Table-I design for H_b.
AnDesignResult design_unknown_csi(const CMatrix& h_bob, DesignResult base,
                                  const TransmitConfig& tx, LinkNoise noise_bob, double qos);

/// Bob's rate for the composite data + AN signal, received through his hybrid
/// combiner with AN treated as Gaussian interference.
double bob_rate_with_an(const CMatrix& h_bob, const AnDesignResult& design, LinkNoise noise,
                        const TransmitConfig& tx);

/// Eve's rate with an optimal receiver, AN treated as Gaussian interference:
///   log2 det(I + P_s/N_s Q^-1 H F F^H H^H),
///   Q = sigma^2 I + P_AN/(N_RF - N_s) H F_RF F_w F_w^H F_RF^H H^H.
double eve_rate_with_an(const CMatrix& h_eve, const AnDesignResult& design, LinkNoise noise,
                        const TransmitConfig& tx);

}  // namespace mmsec
