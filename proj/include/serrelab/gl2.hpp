#pragma once

// GL2(Z/NZ): elements, the signature character, conjugacy classes with their
// (M, lambda, Tbar, Dbar) descriptors, and subgroup closures.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "serrelab/frobenius.hpp"
#include "serrelab/zmod.hpp"

namespace serrelab {

/// Default largest level for operations that walk the whole group.
inline constexpr std::uint32_t kDefaultEnumerationBound = 24;
/// Largest level accepted by hashed element sets.
inline constexpr std::uint32_t kMaxSetLevel = 1u << 16;

class MatrixModN {
 public:
  MatrixModN(std::uint32_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static MatrixModN identity(std::uint32_t n);
  static MatrixModN scalar(std::uint32_t n, std::int64_t lambda);
  static MatrixModN from(const IntMatrix2& m, std::uint32_t n);

  std::uint32_t level() const noexcept { return n_; }
  std::uint32_t a() const noexcept { return a_; }
  std::uint32_t b() const noexcept { return b_; }
  std::uint32_t c() const noexcept { return c_; }
  std::uint32_t d() const noexcept { return d_; }

  std::uint32_t trace() const noexcept { return static_cast<std::uint32_t>((std::uint64_t{a_} + d_) % n_); }
  std::uint32_t det() const noexcept;
  bool is_invertible() const noexcept { return gcd_u64(det(), n_) == 1; }
  bool is_scalar() const noexcept { return b_ == 0 && c_ == 0 && a_ == d_; }

  /// Throws InvalidArgument if the matrix is not invertible.
  MatrixModN inverse() const;
  MatrixModN pow(std::uint64_t e) const;
  /// Reduction to a level m dividing N.
  MatrixModN reduce(std::uint32_t m) const;

  /// Lexicographic position ((a N + b) N + c) N + d; unique per level.
  std::uint64_t key() const noexcept;
  static MatrixModN from_key(std::uint32_t n, std::uint64_t key);

  friend MatrixModN operator*(const MatrixModN& x, const MatrixModN& y);
  friend MatrixModN operator+(const MatrixModN& x, const MatrixModN& y);
  bool operator==(const MatrixModN&) const = default;
  auto operator<=>(const MatrixModN& o) const {
    return std::tuple(n_, a_, b_, c_, d_) <=> std::tuple(o.n_, o.a_, o.b_, o.c_, o.d_);
  }

  std::string to_string() const;

 private:
  MatrixModN() = default;
  std::uint32_t n_ = 1, a_ = 0, b_ = 0, c_ = 0, d_ = 0;
};

/// |GL2(Z/NZ)| = N^4 prod_{p | N} (1 - 1/p)(1 - 1/p^2).
std::uint64_t gl2_order(std::uint32_t n);
/// |SL2(Z/NZ)| = |GL2| / phi(N).
std::uint64_t sl2_order(std::uint32_t n);

/// Signature of g mod 2 under GL2(Z/2Z) = S3. Throws OddLevel for odd N.
int epsilon_char(const MatrixModN& g);

/// Every element of GL2(Z/NZ) in lexicographic order. Throws LevelTooLarge
/// above `bound`.
std::vector<MatrixModN> gl2_elements(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);

/// Generators of GL2(Z/NZ): two elementary unipotents and diag(u, 1) for
/// the units u.
std::vector<MatrixModN> gl2_generators(std::uint32_t n);

// ---------------------------------------------------------------------------
// Element sets and subgroups.

/// Set of matrices of one level; dense bitmap for small levels.
class MatrixSet {
 public:
  explicit MatrixSet(std::uint32_t n);
  std::uint32_t level() const noexcept { return n_; }
  /// True if newly inserted.
  bool insert(const MatrixModN& g);
  bool contains(const MatrixModN& g) const;
  std::size_t size() const noexcept { return size_; }

 private:
  std::uint32_t n_;
  std::size_t size_ = 0;
  std::vector<bool> dense_;
  std::unordered_set<std::uint64_t> sparse_;
};

class SubgroupModN {
 public:
  /// Elements must already form a group (contain I, be closed).
  SubgroupModN(std::uint32_t n, std::vector<MatrixModN> elements);

  std::uint32_t level() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  /// Elements in lexicographic order.
  const std::vector<MatrixModN>& elements() const noexcept { return elements_; }
  bool contains(const MatrixModN& g) const;
  std::uint64_t index() const { return gl2_order(n_) / order(); }
  bool is_full() const { return order() == gl2_order(n_); }
  /// Image under reduction to a level m dividing N.
  SubgroupModN reduce(std::uint32_t m) const;
  bool operator==(const SubgroupModN& o) const { return n_ == o.n_ && elements_ == o.elements_; }

 private:
  std::uint32_t n_;
  std::vector<MatrixModN> elements_;
  MatrixSet members_;
};

/// Smallest subgroup containing the generators (all of level n).
SubgroupModN subgroup_closure(std::uint32_t n, const std::vector<MatrixModN>& generators);

/// Grows the closure breadth-first, calling on_new_element for each element
/// reached (identity first) and stopping as soon as it returns true. Returns
/// the elements reached; the whole closure when the callback never fires.
struct PartialClosure {
  std::vector<MatrixModN> elements;
  bool stopped_early = false;
};
PartialClosure grow_closure(std::uint32_t n, const std::vector<MatrixModN>& generators,
                            const std::function<bool(const MatrixModN&)>& on_new_element);

/// Smallest normal subgroup of the group generated by `ambient` that
/// contains the seeds.
SubgroupModN normal_closure(std::uint32_t n, const std::vector<MatrixModN>& seeds,
                            const std::vector<MatrixModN>& ambient);

/// [GL2(Z/NZ), GL2(Z/NZ)]. Throws LevelTooLarge above the bound.
SubgroupModN commutator_subgroup(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);

/// Whole group, SL2 and ker(epsilon) as explicit subgroups.
SubgroupModN full_group(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);
SubgroupModN special_linear(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);
SubgroupModN epsilon_kernel(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);

bool represents_pair(const SubgroupModN& g, std::uint32_t t, std::uint32_t d);
/// True when every (t, d) with d a unit in `dets` is represented by some
/// element of `elements`.
bool represents_all_pairs(std::uint32_t n, const std::vector<MatrixModN>& elements,
                          const std::vector<std::uint32_t>& dets);
/// All elements with trace t and determinant d.
std::vector<MatrixModN> g_td_set(std::uint32_t n, std::uint32_t t, std::uint32_t d,
                                 std::uint32_t bound = kDefaultEnumerationBound);

/// Homomorphisms GL2(Z/NZ) -> {+-1}, each as a table indexed like
/// gl2_elements(n). The trivial character comes first.
std::vector<std::vector<int>> real_characters(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);
/// Kernels of the nontrivial real characters.
std::vector<SubgroupModN> index_two_subgroups(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);

/// Subgroups of index exactly `index` containing g that are generated by g
/// and one further element (g itself included when its index matches).
std::vector<SubgroupModN> overgroups_with_index(const SubgroupModN& g, std::uint64_t index,
                                                std::uint32_t bound = kDefaultEnumerationBound);

/// Units of the subgroup of (Z/NZ)^* generated by `values`.
std::vector<std::uint32_t> unit_subgroup(std::uint32_t n, const std::vector<std::uint32_t>& values);

// ---------------------------------------------------------------------------
// Prime levels beyond the enumeration bound.

struct PrimeClosureResult {
  bool full = false;
  /// Exact index of the closure in GL2(F_l).
  std::uint64_t index = 0;
};

/// Decides whether the matrices generate GL2(F_l), l >= 5 prime, through the
/// projective image in PGL2(F_l); the index is exact in both outcomes.
PrimeClosureResult closure_at_prime(std::uint32_t ell, const std::vector<MatrixModN>& generators);

// ---------------------------------------------------------------------------
// Conjugacy classes.

struct ClassDescriptor {
  std::uint32_t level = 1;
  std::uint32_t m = 1;  // largest divisor of N modulo which the class is scalar
  std::uint32_t lambda = 0;
  std::uint32_t tbar = 0;  // modulo N / m
  std::uint32_t dbar = 0;

  std::uint32_t quotient() const noexcept { return level / m; }
  /// det of any member, modulo N.
  std::uint32_t det() const;
  bool operator==(const ClassDescriptor&) const = default;
  std::string to_string() const;
};

/// Descriptor of the class containing g.
ClassDescriptor describe(const MatrixModN& g);
/// Every matrix of level N matching the descriptor (invertible or not).
std::vector<MatrixModN> descriptor_members(const ClassDescriptor& desc);
/// Membership test without enumeration.
bool matches_descriptor(const MatrixModN& g, const ClassDescriptor& desc);

struct ConjugacyClass {
  MatrixModN representative;  // lexicographically smallest member
  std::uint64_t size = 0;
  ClassDescriptor descriptor;
  std::vector<MatrixModN> members;  // lexicographic order
};

class ClassTable {
 public:
  std::uint32_t level() const noexcept { return n_; }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  /// Index of the class containing g (g of this level and invertible).
  std::size_t class_of(const MatrixModN& g) const;
  /// True when every descriptor reproduces its orbit exactly.
  bool descriptors_exact() const;

 private:
  friend ClassTable conjugacy_classes(std::uint32_t, std::uint32_t);
  std::uint32_t n_ = 1;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::int32_t> class_of_key_;
};

/// Process-wide class table for a level, built on first use (thread-safe).
std::shared_ptr<const ClassTable> shared_class_table(std::uint32_t n);

// ---------------------------------------------------------------------------
// Subgroups meeting prescribed conjugacy classes.
//
// A Frobenius matrix is only known up to conjugacy, so the image of Galois is
// constrained by which classes it meets, not by the group the sampled
// matrices happen to generate.

struct ClassCover {
  /// Some proper subgroup meets every listed class.
  bool proper = false;
  /// Largest index among the covering subgroups visited; 1 when none is proper.
  std::uint64_t max_index = 1;
  std::size_t subgroups_visited = 0;
  /// A covering subgroup of index max_index, when one is proper.
  std::optional<SubgroupModN> smallest;
};

/// Searches the subgroups of GL2(Z/NZ) that meet each listed class, up to
/// conjugacy. With stop_at_first_proper the search ends at the first proper
/// one; otherwise max_index is exact.
ClassCover class_cover(const ClassTable& table, const std::vector<std::size_t>& classes, bool stop_at_first_proper);

/// Serre's criterion at a prime l >= 5: true when the members include
/// s1 with tr^2 - 4 det a nonzero square and tr != 0, s2 with tr^2 - 4 det a
/// non-square and tr != 0, and s3 with u = tr^2 / det outside {0, 1, 2, 4}
/// and u^2 - 3u + 1 != 0. Any subgroup containing conjugates of all three
/// contains SL2(F_l). Only traces and determinants are used.
bool sl2_by_traces(std::uint32_t ell, const std::vector<MatrixModN>& members);

/// Conjugation orbits of GL2(Z/NZ), numbered by their first element in
/// lexicographic order. Throws LevelTooLarge above `bound`.
ClassTable conjugacy_classes(std::uint32_t n, std::uint32_t bound = kDefaultEnumerationBound);

}  // namespace serrelab
