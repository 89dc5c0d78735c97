#ifndef STARDYN_NATEXT_HPP
#define STARDYN_NATEXT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "stardyn/finalg.hpp"

namespace stardyn {

/// An element of the extension tower, tagged with the level whose direct
/// summand decomposition its coordinates live in.  coords[k] is stored as a
/// full-size element of the base algebra satisfying e_k x e_k = x for the k-th
/// summand projection.
struct TowerElement {
  int level = 0;
  std::vector<AlgebraElement> coords;
};

struct LevelAlgebra {
  int level = 0;
  std::vector<ProjectionElement> summand_units;  // q, q d(1), ..., q d^{n-1}(1), d^n(1)
  std::vector<int> summand_dims;
  int dim = 0;
};

struct TowerReport {
  bool shift_transfer_identity = true;   // s_*n(s_{n+1}(a) b) = a s_*n(b)
  bool shift_corner_identity = true;     // s_{n+1}(s_*n(a)) = s_{n+1}(1) a s_{n+1}(1)
  bool left_diagram_commutes = true;     // d_{n-1} o s_n = s_{n+1} o d_n
  bool right_diagram_commutes = true;    // d_{n+1} o s_*n = s_*{n+1} o d_n
  bool all() const {
    return shift_transfer_identity && shift_corner_identity && left_diagram_commutes &&
           right_diagram_commutes;
  }
};

/// The inductive-limit extension of a finite-dimensional system whose kernel
/// is unital (always the case here).  Levels are direct sums
/// B_n = qA_0 (+) ... (+) qA_{n-1} (+) A_n with A_k the d^k(1)-corner; the
/// bonding maps, shifts and the induced endomorphism/transfer pair act on
/// explicit level representatives.  Only the dense union of the levels is ever
/// represented; every identity is algebraic, so nothing is lost.
class NaturalExtension {
public:
  explicit NaturalExtension(StarEndomorphism phi);

  NaturalExtension(const NaturalExtension&) = delete;
  NaturalExtension& operator=(const NaturalExtension&) = delete;

  const StarEndomorphism& endo() const { return phi_; }
  const MultiMatrixAlgebra& base() const { return phi_.source(); }
  const ProjectionElement& kernel_unit() const { return q_; }
  const AlgebraElement& complement_unit() const { return p_; }

  /// d^k(1), cached.
  AlgebraElement unit_power(int k) const;
  /// Summand projection e_k of B_n.
  AlgebraElement summand_unit(int n, int k) const;

  LevelAlgebra level_algebra(int n) const;
  int level_dim(int n) const;
  /// A linear basis of B_n, grouped by summand.
  const std::vector<TowerElement>& level_basis(int n) const;

  TowerElement make(int level, std::vector<AlgebraElement> coords) const;
  TowerElement inject(const AlgebraElement& a) const;  // level-0 representative
  TowerElement zero(int level) const;
  TowerElement one(int level) const;

  TowerElement embed_level(const TowerElement& x) const;      // d_n: B_n -> B_{n+1}
  TowerElement raise_to(TowerElement x, int level) const;
  TowerElement left_shift(const TowerElement& x) const;       // s_n: B_n -> B_{n-1}
  TowerElement right_shift(const TowerElement& x) const;      // s_*n: B_n -> B_{n+1}

  TowerElement ext_delta(const TowerElement& x) const;
  TowerElement ext_transfer(const TowerElement& x) const;

  /// Minimal-level representative (peels embed_level images).
  TowerElement reduce(TowerElement x) const;
  bool equal(const TowerElement& x, const TowerElement& y) const;
  bool is_zero(const TowerElement& x) const;

  TowerElement add(const TowerElement& x, const TowerElement& y) const;
  TowerElement sub(const TowerElement& x, const TowerElement& y) const;
  TowerElement mul(const TowerElement& x, const TowerElement& y) const;
  TowerElement star(const TowerElement& x) const;
  TowerElement scale(const Scalar& s, const TowerElement& x) const;

  /// sum_k ext_transfer^k(inject(b_k)), a level-(#coeffs - 1) element.
  TowerElement from_transfer_sum(const std::vector<AlgebraElement>& coeffs) const;
  /// Coordinates of x in B_level (raising or reducing as needed).
  std::vector<AlgebraElement> to_coordinates(const TowerElement& x, int level) const;
  /// The inductive normal-form algorithm: turns arbitrary coefficients into
  /// canonical summand coordinates without touching the tower machinery.
  std::vector<AlgebraElement> normal_form_coefficients(std::vector<AlgebraElement> coeffs) const;

  TowerReport verify_tower(int levels) const;

  /// Level-n witness that the extended system is complete: the kernel of the
  /// induced endomorphism restricted to B_n is q B_n (unital, unit q), and the
  /// corner d(1) B_n d(1) is exhausted by images taken one level up, where the
  /// direct-limit identification places the pre-images.
  bool truncation_complete(int n) const;
  bool level_embedding_bijective(int n) const;

  Vec vectorize(const TowerElement& x) const;

private:
  void check(const TowerElement& x) const;
  AlgebraElement delta_inverse(const AlgebraElement& y) const;  // inverse of d|pA
  bool in_image_of_delta(const AlgebraElement& y) const;

  StarEndomorphism phi_;
  ProjectionElement q_;
  AlgebraElement p_;
  std::vector<AlgebraElement> pa_basis_;  // matrix units of the non-kernel blocks
  std::unique_ptr<LinearSolver> delta_on_pa_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<AlgebraElement> unit_powers_;
  mutable std::map<int, std::vector<TowerElement>> basis_cache_;
};

}  // namespace stardyn

#endif
