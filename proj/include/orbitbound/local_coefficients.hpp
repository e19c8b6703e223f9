#pragma once

#include <vector>

#include "orbitbound/group.hpp"
#include "orbitbound/linalg.hpp"
#include "orbitbound/presentation.hpp"
#include "orbitbound/representation.hpp"

namespace orbitbound {

/// rho-evaluated Fox derivative d(relator)/d(x_generator). letter_images[j] is
/// the image of presentation generator j. Left derivative convention:
/// d(uv)/dx = du/dx + rho(u) dv/dx.
PrimeFieldMatrix fox_derivative(const Word& relator, std::size_t generator,
                                const std::vector<PrimeFieldMatrix>& letter_images);
PrimeFieldMatrix fox_derivative(const Word& relator, std::size_t generator, const Representation& rho,
                                const GroupHomomorphism& hom);

/// Images of the presentation generators under rho o hom.
std::vector<PrimeFieldMatrix> letter_images(const Representation& rho, const GroupHomomorphism& hom);

/// Boundary maps of the presentation 2-complex with coefficients in rho, in
/// the row-vector convention: d1 is (gens*r) x r with blocks rho(x_j) - I,
/// d2 is (relators*r) x (gens*r) with Fox blocks. d2 * d1 = 0.
struct PresentationComplex {
  PrimeFieldMatrix d1;
  PrimeFieldMatrix d2;
};
PresentationComplex presentation_complex(const Presentation& pres, const std::vector<PrimeFieldMatrix>& letter_images);

/// b_0 or b_1 of the presentation complex with local coefficients in rho.
std::size_t local_betti(const Presentation& pres, const GroupHomomorphism& hom, const Representation& rho, int degree);

}  // namespace orbitbound
