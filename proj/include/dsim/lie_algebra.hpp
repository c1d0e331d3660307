#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dsim/linalg.hpp"

namespace dsim {

/// Orthonormal Hermitian traceless basis of su(N): Tr(G_a G_b) = 2 delta_ab.
///
/// Ordering: the symmetric pair generators first, then the antisymmetric
/// pair generators over the same pairs, then the N-1 diagonal generators.
/// Pair order is (0,1),(1,2),(0,2), then (0,m),(1,m),...,(m-1,m) for each
/// m = 3..N-1; this order is stable across versions. Antisymmetric pair
/// generators carry +i at entry (j,k) and -i at (k,j) for j < k. Diagonal
/// generator l (1-based) is sqrt(2/(l(l+1))) * (l|l><l| - sum_{j<l}|j><j|).
class GeneratorSet {
 public:
  /// Throws InvalidInput when n < 2 (no traceless basis below dimension 2).
  explicit GeneratorSet(int dimension);

  int dimension() const { return n_; }
  int count() const { return static_cast<int>(generators_.size()); }

  /// 0-based index; generator G_{alpha+1} in the 1-based naming convention.
  const MatrixC& operator[](int alpha) const { return generators_.at(alpha); }
  const std::vector<MatrixC>& matrices() const { return generators_; }

  /// Bypasses construction invariants. Exists so fault-injection harnesses
  /// can feed a deliberately broken basis through verify_algebra.
  static GeneratorSet unchecked(int dimension, std::vector<MatrixC> matrices);

 private:
  GeneratorSet() = default;
  int n_ = 0;
  std::vector<MatrixC> generators_;
};

/// Totally antisymmetric structure tensor with [G_a, G_b] = 2i sum_c f_abc G_c.
/// Stores only canonical i<j<k triples; any-order lookups apply the
/// permutation sign, repeated indices give zero.
class StructureTensor {
 public:
  using TripleMap = std::map<std::array<int, 3>, double>;

  StructureTensor(int dimension, TripleMap canonical)
      : dim_(dimension), entries_(std::move(canonical)) {}

  int dimension() const { return dim_; }

  /// f_{abc} for 0-based indices in any order.
  double value(int a, int b, int c) const;

  const TripleMap& canonical_entries() const { return entries_; }

 private:
  int dim_;
  TripleMap entries_;
};

GeneratorSet build_generators(int n);

/// f_{abc} = Tr([G_a, G_b] G_c) / (4i) for a < b < c; magnitudes below
/// 1e-12 are dropped.
StructureTensor structure_constants(const GeneratorSet& gens);

/// Outcome of the self-check over a generator set and a structure tensor.
struct AlgebraReport {
  double max_orthonormality_deviation = 0.0;  // |Tr(Ga Gb) - 2 delta_ab|
  double max_antisymmetry_violation = 0.0;    // sign relation across permutations
  double max_closure_residual = 0.0;          // |[Ga,Gb] - 2i sum_c f_abc Gc|_max
  // Populated for N = 4 only: comparison against the tabulated nonzero
  // su(4) constants of this basis.
  int reference_triples_expected = 0;
  int reference_triples_matched = 0;
  int unexpected_triples = 0;
  std::vector<std::string> failures;

  bool all_pass() const;
  std::string to_text() const;
};

AlgebraReport verify_algebra(const GeneratorSet& gens, const StructureTensor& f);

/// The 29 canonical nonzero structure constants of this su(4) basis,
/// 0-based indices. Reference data for verify_algebra; the dynamics always
/// use the computed tensor.
const std::vector<std::tuple<int, int, int, double>>& su4_reference_triples();

/// Projects a Hermitian matrix onto the basis: coeffs_a = Tr(m G_a),
/// trace_part = Tr(m). Throws InvalidInput when m deviates from Hermitian
/// by more than 1e-10 or a projection has imaginary residue above 1e-12.
std::pair<double, Eigen::VectorXd> decompose(const MatrixC& m,
                                             const GeneratorSet& gens);

/// Inverse of decompose: (trace_part/N) I + (1/2) sum_a coeffs_a G_a.
MatrixC recompose(double trace_part, const Eigen::VectorXd& coeffs,
                  const GeneratorSet& gens);

/// JSON document {"n", "generators", "structure_constants"} with each
/// generator as a row-major list of [re, im] entries and canonical triples
/// in lexicographic order using 1-based indices.
std::string algebra_json(const GeneratorSet& gens, const StructureTensor& f);

}  // namespace dsim
