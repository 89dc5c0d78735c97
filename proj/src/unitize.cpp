#include "stardyn/unitize.hpp"

#include <algorithm>

namespace stardyn {

Ideal ideal_complement(const MultiMatrixAlgebra& a, const Ideal& i) {
  if (i.algebra() != a) throw InputError("ideal_complement: algebra mismatch");
  std::set<int> blocks;
  for (int j = 0; j < a.block_count(); ++j)
    if (!i.blocks().count(j)) blocks.insert(j);
  return Ideal(a, std::move(blocks));
}

AlgebraElement UnitizedSystem::embed(const AlgebraElement& a) const {
  if (a.algebra() != base_) throw InputError("embed: element not in the base algebra");
  AlgebraElement out = AlgebraElement::zero(aplus);
  int pos = 0;
  for (int j : part1_) out.block(pos++) = a.block(j);
  for (int j : part2_) out.block(pos++) = a.block(j);
  return out;
}

AlgebraElement UnitizedSystem::embed_inverse(const AlgebraElement& b) const {
  if (b.algebra() != aplus) throw InputError("embed_inverse: element not in A+");
  AlgebraElement out = AlgebraElement::zero(base_);
  int pos = 0;
  for (int j : part1_) out.block(j) = b.block(pos++);
  for (int j : part2_) out.block(j) = b.block(pos++);
  return out;
}

UnitizedSystem unitize_kernel(const StarEndomorphism& phi) {
  if (!phi.is_endo()) throw InputError("unitize_kernel needs an endomorphism");
  const MultiMatrixAlgebra& a = phi.source();
  UnitizedSystem u;
  u.base_ = a;
  u.i = kernel_ideal(phi);
  u.i_perp = ideal_complement(a, u.i);
  for (int j = 0; j < a.block_count(); ++j)
    (u.i.blocks().count(j) ? u.part2_ : u.part1_).push_back(j);

  std::vector<int> dims;
  for (int j : u.part1_) dims.push_back(a.block_dims()[j]);
  for (int j : u.part2_) dims.push_back(a.block_dims()[j]);
  u.aplus = MultiMatrixAlgebra(dims);

  // Position of each surviving A-block inside A+'s first part; delta's
  // multiplicity lists only ever reference non-kernel blocks.
  std::vector<int> part1_pos(a.block_count(), -1);
  for (std::size_t k = 0; k < u.part1_.size(); ++k) part1_pos[u.part1_[k]] = int(k);

  auto remap = [&](const EndoTargetBlock& t) {
    EndoTargetBlock out;
    out.padding = t.padding;
    out.unitary = t.unitary;
    for (int i : t.sources) {
      if (part1_pos[i] < 0)
        throw ContractViolation("kernel block appears as a source of delta");
      out.sources.push_back(part1_pos[i]);
    }
    return out;
  };

  // delta+((a+I) (+) (b+I_perp)) = (delta(a)+I) (+) (delta(a)+I_perp): every
  // target block of A+ reads the same Bratteli data as the matching A-block,
  // with sources living in the first part.
  std::vector<EndoTargetBlock> targets;
  for (int j : u.part1_) targets.push_back(remap(phi.targets()[j]));
  for (int j : u.part2_) targets.push_back(remap(phi.targets()[j]));
  u.delta_plus = StarEndomorphism(u.aplus, u.aplus, std::move(targets));

  AlgebraElement ker_unit = AlgebraElement::zero(u.aplus);
  for (std::size_t k = 0; k < u.part2_.size(); ++k) {
    int pos = int(u.part1_.size() + k);
    ker_unit.block(pos) = Mat::identity(u.aplus.block_dims()[pos]);
  }
  u.kernel_unit_plus = ProjectionElement(ker_unit);
  u.p_plus = ProjectionElement(AlgebraElement::one(u.aplus) - ker_unit);
  return u;
}

}  // namespace stardyn
