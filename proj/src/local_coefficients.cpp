#include "orbitbound/local_coefficients.hpp"

#include <stdexcept>

#include "orbitbound/errors.hpp"

namespace orbitbound {

PrimeFieldMatrix fox_derivative(const Word& relator, std::size_t generator,
                                const std::vector<PrimeFieldMatrix>& letter_images) {
  if (letter_images.empty()) throw DomainError("Fox derivative needs generator images");
  const std::uint32_t p = letter_images.front().prime();
  const std::size_t r = letter_images.front().rows();
  if (generator >= letter_images.size()) throw DomainError("Fox derivative generator out of range");
  PrimeFieldMatrix prefix = PrimeFieldMatrix::identity(p, r);
  PrimeFieldMatrix out(p, r, r);
  for (const Letter& l : relator.letters()) {
    if (l.generator >= letter_images.size()) throw DomainError("relator uses an unmapped generator");
    const PrimeFieldMatrix& x = letter_images[l.generator];
    if (l.exponent > 0) {
      if (l.generator == generator) out = out + prefix;
      prefix = prefix * x;
    } else {
      const auto x_inv = inverse(x);
      if (!x_inv) throw DomainError("generator image is not invertible");
      prefix = prefix * *x_inv;
      if (l.generator == generator) out = out - prefix;
    }
  }
  return out;
}

std::vector<PrimeFieldMatrix> letter_images(const Representation& rho, const GroupHomomorphism& hom) {
  if (!hom.target || !rho.group || hom.target->order() != rho.group->order() ||
      hom.target->generators() != rho.group->generators())
    throw DomainError("representation is not defined on the homomorphism target");
  const std::vector<PrimeFieldMatrix> all = element_images(rho);
  std::vector<PrimeFieldMatrix> out;
  for (Element e : hom.images) out.push_back(all.at(e));
  return out;
}

PrimeFieldMatrix fox_derivative(const Word& relator, std::size_t generator, const Representation& rho,
                                const GroupHomomorphism& hom) {
  return fox_derivative(relator, generator, letter_images(rho, hom));
}

PresentationComplex presentation_complex(const Presentation& pres, const std::vector<PrimeFieldMatrix>& images) {
  const std::size_t n = pres.generator_count();
  if (images.size() != n) throw DomainError("need one image per presentation generator");
  if (n == 0) throw DomainError("presentation has no generators");
  const std::uint32_t p = images.front().prime();
  const std::size_t r = images.front().rows();
  for (const auto& m : images)
    if (m.rows() != r || m.cols() != r || m.prime() != p) throw DomainError("inconsistent generator image dimensions");
  PresentationComplex c{PrimeFieldMatrix(p, n * r, r), PrimeFieldMatrix(p, pres.relators.size() * r, n * r)};
  const PrimeFieldMatrix id = PrimeFieldMatrix::identity(p, r);
  for (std::size_t j = 0; j < n; ++j) c.d1.place_block(j * r, 0, images[j] - id);
  for (std::size_t i = 0; i < pres.relators.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) c.d2.place_block(i * r, j * r, fox_derivative(pres.relators[i], j, images));
  return c;
}

std::size_t local_betti(const Presentation& pres, const GroupHomomorphism& hom, const Representation& rho, int degree) {
  if (degree != 0 && degree != 1) throw DomainError("local Betti numbers are available in degrees 0 and 1");
  if (pres.generator_count() != hom.images.size()) throw DomainError("homomorphism does not match presentation");
  const std::size_t r = rho.dim;
  if (pres.generator_count() == 0) return degree == 0 ? r : 0;
  const PresentationComplex c = presentation_complex(pres, letter_images(rho, hom));
  const std::size_t rank1 = rank_mod_p(c.d1);
  if (degree == 0) return r - rank1;
  return pres.generator_count() * r - rank1 - rank_mod_p(c.d2);
}

}  // namespace orbitbound
