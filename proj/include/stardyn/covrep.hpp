#ifndef STARDYN_COVREP_HPP
#define STARDYN_COVREP_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stardyn/spectral.hpp"
#include "stardyn/transfer.hpp"

namespace stardyn {

/// Basis label of the direct sum (+)_n l^2(X): point x in copy n.
struct PairBasis {
  int point = 0;
  int copy = 0;
  friend bool operator==(const PairBasis& a, const PairBasis& b) {
    return a.point == b.point && a.copy == b.copy;
  }
  friend bool operator<(const PairBasis& a, const PairBasis& b) {
    if (a.copy != b.copy) return a.copy < b.copy;
    return a.point < b.point;
  }
};

/// Basis label of a representation space: a point of the extended space, or a
/// (point, copy) pair of the direct-sum space.
using BasisId = std::variant<ExtPoint, PairBasis>;

/// Finitely supported vector over the representation basis.
class SparseVector {
public:
  SparseVector() = default;
  static SparseVector unit(BasisId b);

  bool is_zero() const { return entries_.empty(); }
  const std::map<BasisId, Scalar>& entries() const { return entries_; }
  void set(const BasisId& b, const Scalar& s);
  Scalar at(const BasisId& b) const;

  SparseVector& operator+=(const SparseVector& o);
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  SparseVector scaled(const Scalar& s) const;

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const SparseVector& a, const SparseVector& b) { return !(a == b); }

private:
  std::map<BasisId, Scalar> entries_;
};

/// A represented system: the multiplication algebra together with the shift
/// partial isometry, acting exactly on finitely supported vectors.  Two
/// flavours share the interface: the strict representation on l^2 of the
/// extended space, and the direct-sum representation (Uh)_n = U h_{n+1} that
/// is covariant but never strict.
class RepContext {
public:
  enum class Kind { strict, tower_of_copies };

  static std::shared_ptr<RepContext> strict(PartialMap m, int depth, long point_limit = 10000);
  static std::shared_ptr<RepContext> tower_of_copies(PartialMap m, int depth);

  Kind kind() const { return kind_; }
  int depth() const { return depth_; }
  const PartialMap& map() const { return map_; }
  const StarEndomorphism& endo() const { return delta_; }
  const ExtendedSystem& system() const;
  const std::vector<BasisId>& basis() const { return basis_; }
  bool enumerated(const BasisId& b) const;
  bool inside(const SparseVector& v) const;
  /// True when the whole extended space fits below the depth bound, i.e. the
  /// shift can never escape the enumerated basis.
  bool saturated() const { return saturated_; }

  SparseVector apply_u(const SparseVector& v) const;
  SparseVector apply_u_star(const SparseVector& v) const;
  SparseVector apply_mult(const AlgebraElement& a, const SparseVector& v) const;
  /// Multiplication by a tower element through its spectral values (strict
  /// representations only).
  SparseVector apply_mult_tower(const TowerElement& x, const SparseVector& v) const;

  std::string basis_label(const BasisId& b) const;

private:
  RepContext() = default;
  SparseVector u_on_basis(const BasisId& b) const;
  SparseVector u_star_on_basis(const BasisId& b) const;

  Kind kind_ = Kind::strict;
  PartialMap map_;
  StarEndomorphism delta_;
  int depth_ = 0;
  bool saturated_ = false;
  std::shared_ptr<ExtendedSystem> ext_;     // strict
  std::vector<int> alpha_inverse_;          // tower_of_copies (-1 when absent)
  std::vector<BasisId> basis_;
  std::set<BasisId> basis_set_;
};

enum class CRFlag { cr1, cr1_prime, cr1_doubleprime, cr2, cr3 };

struct RelationReport {
  CRFlag flag;
  std::string name;
  long checks = 0;     // certified exact equalities asserted
  long excluded = 0;   // basis vectors skipped at the truncation boundary
  long failures = 0;
  bool pass() const { return failures == 0; }
  bool conclusive() const { return checks > 0; }
};

struct CRReport {
  std::vector<RelationReport> relations;
  bool saturated = false;
  long certified_checks() const;
  const RelationReport& relation(CRFlag f) const;
  bool all_pass() const;
};

/// Checks the requested covariance relations exactly on every certified basis
/// vector.  A vector is certified for a relation when each operator word the
/// relation applies keeps it inside the enumerated basis; boundary vectors
/// are excluded and counted.
CRReport verify_cr(const RepContext& ctx, const std::set<CRFlag>& flags);

struct StructuralReport {
  bool uu_below_p = false;        // U*U <= P
  bool uu_equals_p = false;       // strictness
  bool p_in_commutant = false;    // P commutes with pi(A)
  bool uu_in_commutant = false;
  bool kernel_match = false;      // {a : U*U pi(a) = 0} = ker delta
  bool iso_pair = false;          // U(.)U* / U*(.)U exchange U*U pi(A) and pi(delta(A))
  bool t1_iso = false;            // U*U pi(a) -> P pi(a) is an isomorphism
  bool t2_epi = false;            // (1-U*U) pi(a) -> (1-P) pi(a) is well defined
  bool ideal_match = false;       // {a : (1-P) pi(a) = pi(a)} = ker delta, and the
                                  // complementary identity for the largest disjoint ideal
  bool unitized_rep_ok = true;    // strict only: the unitized system represents via
                                  // U*U pi(a) + (1-U*U) pi(b)
  bool gap_on_copy0 = true;       // copies rep: P - U*U is exactly the copy-0 block
  bool compressed_algebra_faithful = true;  // copies rep: a -> (1-U*U) pi(a) is 1-1
};

StructuralReport structural_checks(const RepContext& ctx);

struct CorrespondenceReport {
  long lists = 0;
  long vector_checks = 0;
  long failures = 0;
  bool pass() const { return failures == 0; }
};

/// Both routes of the sum representation: multiplication by
/// sum_k ext_transfer^k(a_k) against sum_k U*^k pi(a_k) U^k.
CorrespondenceReport correspondence_check(const RepContext& ctx,
                                          const std::vector<std::vector<AlgebraElement>>& lists);

}  // namespace stardyn

#endif
