#pragma once

// Exact arithmetic for the two supported group models, free abelian Z^k and
// unitriangular UT_n(Z), plus subgroups, virtual endomorphisms and digit sets.
//
// Unitriangular coordinates are the strict upper-triangular matrix entries,
// listed superdiagonal by superdiagonal: (1,2),(2,3),...,(n-1,n),(1,3),...,(1,n).
// For n = 3 this is (x, y, z) = (entry 12, entry 23, entry 13), and the last
// coordinate is always the central entry (1,n).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/matrix.hpp"
#include "selfsim/numeric.hpp"

namespace selfsim {

struct GroupElement {
  std::vector<Integer> coords;

  bool operator==(const GroupElement& other) const { return coords == other.coords; }
  bool operator<(const GroupElement& other) const { return coords < other.coords; }
  bool is_identity() const;
  std::string to_string() const;  // "(1,0,2)"
};

/// Vector in the rational Lie algebra, in the basis of coordinate generators.
struct LieVector {
  RatVector coords;
  bool operator==(const LieVector& other) const { return coords == other.coords; }
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

class GroupModel {
 public:
  enum class Kind { AbelianZn, Unitriangular };

  static GroupModel abelian(std::size_t rank);
  static GroupModel unitriangular(std::size_t n);

  Kind kind() const noexcept { return kind_; }
  bool is_abelian() const noexcept { return kind_ == Kind::AbelianZn; }
  std::size_t coordinate_count() const noexcept { return dim_; }
  /// Matrix size n for UT_n, rank for Z^k.
  std::size_t size_parameter() const noexcept { return n_; }
  std::string describe() const;

  bool operator==(const GroupModel& other) const { return kind_ == other.kind_ && n_ == other.n_; }

  GroupElement identity() const;
  GroupElement element(std::vector<Integer> coords) const;  // checks length
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, long exponent) const;
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;  // a^-1 b^-1 a b

  // The same operations on rational coordinates (points of the rational Mal'cev completion).
  RatVector mul(const RatVector& a, const RatVector& b) const;
  RatVector inverse(const RatVector& a) const;

  LieVector log_map(const GroupElement& g) const;
  RatVector log_map(const RatVector& g) const;
  RatVector exp_rational(const LieVector& v) const;
  /// Throws Error(NotInLattice) when the exponential has non-integer coordinates.
  GroupElement exp_map(const LieVector& v) const;

  /// Coordinates spanning the centre: all of them for Z^k, the (1,n) entry for UT_n.
  std::vector<std::size_t> center_coordinates() const;

  /// (row, col) of a unitriangular coordinate, 0-based.
  std::pair<std::size_t, std::size_t> entry_of(std::size_t coord) const;
  std::size_t coord_of(std::size_t row, std::size_t col) const;

  void check(const GroupElement& g) const;  // throws ModelMismatch

 private:
  GroupModel(Kind kind, std::size_t n);

  template <typename T>
  std::vector<T> mul_impl(const std::vector<T>& a, const std::vector<T>& b) const;
  template <typename T>
  std::vector<T> inverse_impl(const std::vector<T>& a) const;
  RatMatrix to_nilpotent_matrix(const RatVector& coords) const;
  RatVector from_nilpotent_matrix(const RatMatrix& m) const;

  Kind kind_;
  std::size_t n_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::size_t>> entries_;
  std::vector<std::vector<std::size_t>> index_;  // index_[i][j] for i < j
};

class SubgroupSpec {
 public:
  enum class Kind { CongruenceDiagonal, IntegerLattice };

  static SubgroupSpec congruence(std::vector<Integer> moduli);
  /// `basis` rows are the lattice generators; abelian model only.
  static SubgroupSpec lattice(std::vector<std::vector<Integer>> basis);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }
  const std::vector<std::vector<Integer>>& basis() const noexcept { return basis_; }
  const std::vector<std::vector<Integer>>& hermite_form() const noexcept { return hnf_; }

  bool contains(const GroupElement& g) const;
  Integer index() const;

  /// Generators of H as a set of coordinate vectors: H is exactly their integer span.
  std::vector<std::vector<Integer>> coordinate_lattice() const;

  /// Verifies sizes and that the set is a subgroup of `model`; throws InvalidSubgroup.
  void check_against(const GroupModel& model) const;

  GroupElement sample(std::mt19937_64& rng, const GroupModel& model, long bound) const;

 private:
  Kind kind_ = Kind::CongruenceDiagonal;
  std::vector<Integer> moduli_;
  std::vector<std::vector<Integer>> basis_;
  std::vector<std::vector<Integer>> hnf_;
};

/// Row-style Hermite normal form of a full-rank square integer matrix (upper triangular, positive pivots).
std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> rows);

/// A coordinate-linear homomorphism phi: H -> G, phi(h) = P * coords(h).
class VirtualEndomorphism {
 public:
  VirtualEndomorphism(GroupModel model, SubgroupSpec subgroup, RatMatrix phi_coords);

  const GroupModel& model() const noexcept { return model_; }
  const SubgroupSpec& subgroup() const noexcept { return subgroup_; }
  const RatMatrix& phi_coords() const noexcept { return phi_; }

  /// Matrix of log . phi . exp on the Lie algebra. Throws NotAnAutomorphism when
  /// the induced map is not linear.
  const RatMatrix& lie_matrix() const;
  bool has_lie_matrix() const noexcept { return lie_.has_value(); }
  const std::string& lie_matrix_failure() const noexcept { return lie_failure_; }

  /// Throws DomainError when h is not in H, NotInLattice when the image is not integral.
  GroupElement apply(const GroupElement& h) const;
  /// phi extended to rational coordinates (the automorphism of the completion).
  RatVector apply_rational(const RatVector& g) const;

 private:
  GroupModel model_;
  SubgroupSpec subgroup_;
  RatMatrix phi_;
  std::optional<RatMatrix> lie_;
  std::string lie_failure_;
};

/// Matrix M with M log(g) = log(phi(g)), from log . phi . exp on basis vectors.
RatMatrix lie_matrix_of(const GroupModel& model, const RatMatrix& phi_coords);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool exact = true;  // false: randomized sampling only
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
  std::string to_string() const;
};

ValidationReport validate_endomorphism(const VirtualEndomorphism& phi, std::uint64_t seed = 0x5eed);

/// index(H), cross-checked against 1/|det lie_matrix|. Throws InconsistentEndomorphism on mismatch.
Integer index(const SubgroupSpec& subgroup, const VirtualEndomorphism& phi);

/// Ordered coset representatives; reps[i] is the digit for letter i.
struct DigitSet {
  std::vector<GroupElement> reps;
  std::size_t size() const noexcept { return reps.size(); }
  bool operator==(const DigitSet& other) const = default;
};

struct TransversalCheck {
  bool valid = false;
  std::optional<std::pair<std::size_t, std::size_t>> certificate;  // (i, j): reps[j]^-1 reps[i] in H
  std::string reason;
};

TransversalCheck validate_transversal(const GroupModel& model, const DigitSet& digits, const SubgroupSpec& subgroup);

}  // namespace selfsim
