#pragma once

// Full-digital reference designs and the hybrid design without secrecy
// processing.

#include "mmsec/secure_design.hpp"

namespace mmsec {

struct FullDigitalDesign {
  CMatrix precoder;  // N_a x N_s, ||F||_F^2 = N_s
  CMatrix combiner;  // N_b x N_s
  RVector generalized_eigenvalues;  // GED only: all pencil eigenvalues, decreasing
};

/// Eigenbeamforming on H_b: top-N_s right/left singular vectors.
FullDigitalDesign full_digital_no_pls(const CMatrix& h_bob, const TransmitConfig& tx);

/// Dominant generalized eigenvectors of the pencil
///   (I + P/(N_s sigma_b^2) H_b^H H_b,  I + P/(N_s sigma_e^2) H_e^H H_e),
/// orthonormalized and given equal power. The combiner is the top-N_s left
/// singular vectors of H_b F.
FullDigitalDesign full_digital_ged(const CMatrix& h_bob, const CMatrix& h_eve,
                                   const TransmitConfig& tx, LinkNoise noise_bob,
                                   LinkNoise noise_eve);

/// Table-I pipeline with H_1 = H_b.
DesignResult hybrid_no_pls(const CMatrix& h_bob, const CodebookPair& codebooks,
                           const TransmitConfig& tx);

}  // namespace mmsec
