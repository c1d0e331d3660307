#include "dsim/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace dsim {

namespace {

constexpr double kDropTol = 1e-12;
constexpr double kPassTol = 1e-10;

// (0,1),(1,2),(0,2), then every pair ending at m for m = 3..n-1.
std::vector<std::pair<int, int>> pair_order(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.push_back({0, 1});
  if (n >= 3) {
    pairs.push_back({1, 2});
    pairs.push_back({0, 2});
  }
  for (int m = 3; m < n; ++m)
    for (int j = 0; j < m; ++j) pairs.push_back({j, m});
  return pairs;
}

// Parity of the permutation sorting a distinct triple ascending; 0 when a
// repeated index makes the tensor entry vanish identically.
int permutation_sign(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  int sign = 1;
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (b > c) { std::swap(b, c); sign = -sign; }
  if (a > b) { std::swap(a, b); sign = -sign; }
  return sign;
}

}  // namespace

GeneratorSet::GeneratorSet(int dimension) : n_(dimension) {
  if (dimension < 2)
    throw InvalidInput("generator set requires dimension >= 2, got " +
                       std::to_string(dimension));
  const auto pairs = pair_order(n_);
  const Complex i{0.0, 1.0};
  for (auto [j, k] : pairs) {
    MatrixC g = MatrixC::Zero(n_, n_);
    g(j, k) = 1.0;
    g(k, j) = 1.0;
    generators_.push_back(std::move(g));
  }
  for (auto [j, k] : pairs) {
    MatrixC g = MatrixC::Zero(n_, n_);
    g(j, k) = i;
    g(k, j) = -i;
    generators_.push_back(std::move(g));
  }
  for (int l = 1; l < n_; ++l) {
    MatrixC g = MatrixC::Zero(n_, n_);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = -scale;
    g(l, l) = scale * l;
    generators_.push_back(std::move(g));
  }
}

GeneratorSet GeneratorSet::unchecked(int dimension,
                                     std::vector<MatrixC> matrices) {
  GeneratorSet gs;
  gs.n_ = dimension;
  gs.generators_ = std::move(matrices);
  return gs;
}

GeneratorSet build_generators(int n) { return GeneratorSet(n); }

double StructureTensor::value(int a, int b, int c) const {
  const int sign = permutation_sign(a, b, c);
  if (sign == 0) return 0.0;
  std::array<int, 3> key{a, b, c};
  std::sort(key.begin(), key.end());
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : sign * it->second;
}

StructureTensor structure_constants(const GeneratorSet& gens) {
  const int d = gens.count();
  StructureTensor::TripleMap entries;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const MatrixC comm = gens[a] * gens[b] - gens[b] * gens[a];
      for (int c = b + 1; c < d; ++c) {
        const Complex tr = (comm * gens[c]).trace();
        const double f = (tr / Complex{0.0, 4.0}).real();
        if (std::abs(f) >= kDropTol) entries[{a, b, c}] = f;
      }
    }
  }
  return StructureTensor(gens.dimension() * gens.dimension() - 1,
                         std::move(entries));
}

const std::vector<std::tuple<int, int, int, double>>& su4_reference_triples() {
  static const double s3 = std::sqrt(3.0);
  static const double r23 = std::sqrt(2.0 / 3.0);
  // 0-based triples of the 29 surviving constants for this basis at N = 4.
  static const std::vector<std::tuple<int, int, int, double>> table = {
      {0, 1, 8, -0.5},     {0, 2, 7, -0.5},      {0, 3, 10, -0.5},
      {0, 4, 9, -0.5},     {0, 6, 12, 1.0},      {1, 2, 6, 0.5},
      {1, 4, 11, -0.5},    {1, 5, 10, -0.5},     {1, 7, 12, -0.5},
      {1, 7, 13, s3 / 2},  {2, 3, 11, -0.5},     {2, 5, 9, -0.5},
      {2, 8, 12, 0.5},     {2, 8, 13, s3 / 2},   {3, 4, 6, -0.5},
      {3, 5, 8, -0.5},     {3, 9, 12, 0.5},      {3, 9, 13, 0.5 / s3},
      {3, 9, 14, r23},     {4, 5, 7, -0.5},      {4, 10, 12, -0.5},
      {4, 10, 13, 0.5 / s3}, {4, 10, 14, r23},   {5, 11, 13, -1.0 / s3},
      {5, 11, 14, r23},    {6, 7, 8, 0.5},       {6, 9, 10, -0.5},
      {7, 10, 11, -0.5},   {8, 9, 11, -0.5},
  };
  return table;
}

AlgebraReport verify_algebra(const GeneratorSet& gens,
                             const StructureTensor& f) {
  AlgebraReport report;
  const int d = gens.count();

  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const double expected = (a == b) ? 2.0 : 0.0;
      const double dev = std::abs((gens[a] * gens[b]).trace().real() - expected) +
                         std::abs((gens[a] * gens[b]).trace().imag());
      report.max_orthonormality_deviation =
          std::max(report.max_orthonormality_deviation, dev);
    }

  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                  {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static const int signs[6] = {1, 1, 1, -1, -1, -1};
  for (const auto& [key, val] : f.canonical_entries()) {
    for (int p = 0; p < 6; ++p) {
      const double got = f.value(key[perms[p][0]], key[perms[p][1]], key[perms[p][2]]);
      report.max_antisymmetry_violation =
          std::max(report.max_antisymmetry_violation, std::abs(got - signs[p] * val));
    }
  }

  const Complex two_i{0.0, 2.0};
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      MatrixC residual = gens[a] * gens[b] - gens[b] * gens[a];
      for (int c = 0; c < d; ++c) {
        const double fabc = f.value(a, b, c);
        if (fabc != 0.0) residual -= two_i * fabc * gens[c];
      }
      report.max_closure_residual =
          std::max(report.max_closure_residual, max_abs(residual));
    }

  if (gens.dimension() == 4) {
    const auto& table = su4_reference_triples();
    report.reference_triples_expected = static_cast<int>(table.size());
    std::set<std::array<int, 3>> referenced;
    for (const auto& [i, j, k, v] : table) {
      referenced.insert({i, j, k});
      const double got = f.value(i, j, k);
      if (std::abs(got - v) <= kDropTol) {
        ++report.reference_triples_matched;
      } else {
        std::ostringstream os;
        os << "triple (" << i + 1 << "," << j + 1 << "," << k + 1
           << "): expected " << v << ", got " << got;
        report.failures.push_back(os.str());
      }
    }
    for (const auto& [key, val] : f.canonical_entries()) {
      if (!referenced.count(key)) {
        ++report.unexpected_triples;
        std::ostringstream os;
        os << "unexpected triple (" << key[0] + 1 << "," << key[1] + 1 << ","
           << key[2] + 1 << ") = " << val;
        report.failures.push_back(os.str());
      }
    }
  }

  return report;
}

bool AlgebraReport::all_pass() const {
  return max_orthonormality_deviation <= kPassTol &&
         max_antisymmetry_violation <= kPassTol &&
         max_closure_residual <= kPassTol &&
         reference_triples_matched == reference_triples_expected &&
         unexpected_triples == 0;
}

std::string AlgebraReport::to_text() const {
  std::ostringstream os;
  os.precision(4);
  os << "  orthonormality deviation: " << max_orthonormality_deviation << "\n"
     << "  antisymmetry violation:   " << max_antisymmetry_violation << "\n"
     << "  closure residual:         " << max_closure_residual << "\n";
  if (reference_triples_expected > 0) {
    os << "  " << reference_triples_matched << "/" << reference_triples_expected
       << " table triples matched, " << unexpected_triples << " unexpected\n";
  }
  for (const auto& line : failures) os << "  ! " << line << "\n";
  return os.str();
}

std::pair<double, Eigen::VectorXd> decompose(const MatrixC& m,
                                             const GeneratorSet& gens) {
  if (m.rows() != gens.dimension() || m.cols() != gens.dimension())
    throw InvalidInput("decompose: matrix size does not match generator dimension");
  if (!is_hermitian(m, 1e-10))
    throw InvalidInput("decompose: input matrix is not Hermitian within 1e-10");
  Eigen::VectorXd coeffs(gens.count());
  for (int a = 0; a < gens.count(); ++a) {
    const Complex c = (m * gens[a]).trace();
    if (std::abs(c.imag()) > 1e-12)
      throw InvalidInput("decompose: projection " + std::to_string(a + 1) +
                         " has imaginary residue above 1e-12");
    coeffs[a] = c.real();
  }
  return {m.trace().real(), coeffs};
}

MatrixC recompose(double trace_part, const Eigen::VectorXd& coeffs,
                  const GeneratorSet& gens) {
  if (coeffs.size() != gens.count())
    throw InvalidInput("recompose: expected " + std::to_string(gens.count()) +
                       " coefficients, got " + std::to_string(coeffs.size()));
  const int n = gens.dimension();
  MatrixC m = (trace_part / n) * MatrixC::Identity(n, n);
  for (int a = 0; a < gens.count(); ++a) m += 0.5 * coeffs[a] * gens[a];
  return m;
}

std::string algebra_json(const GeneratorSet& gens, const StructureTensor& f) {
  nlohmann::json doc;
  doc["n"] = gens.dimension();
  auto& gen_list = doc["generators"] = nlohmann::json::array();
  for (const auto& g : gens.matrices()) {
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        entries.push_back({g(r, c).real(), g(r, c).imag()});
    gen_list.push_back(std::move(entries));
  }
  auto& triples = doc["structure_constants"] = nlohmann::json::array();
  for (const auto& [key, val] : f.canonical_entries()) {
    triples.push_back({{"i", key[0] + 1}, {"j", key[1] + 1},
                       {"k", key[2] + 1}, {"f", val}});
  }
  return doc.dump(2);
}

}  // namespace dsim
