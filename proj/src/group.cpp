#include "selfsim/group.hpp"

#include <sstream>

#include "selfsim/error.hpp"

namespace selfsim {

bool GroupElement::is_identity() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

std::string GroupElement::to_string() const { return "(" + join_coords(coords) + ")"; }

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = g.coords.size();
  for (const auto& c : g.coords) h = h * 1000003ULL ^ hash_integer(c);
  return h;
}

// ---------------------------------------------------------------- GroupModel

GroupModel::GroupModel(Kind kind, std::size_t n) : kind_(kind), n_(n), dim_(0) {
  if (kind == Kind::AbelianZn) {
    dim_ = n;
    return;
  }
  index_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t gap = 1; gap < n; ++gap) {
    for (std::size_t i = 0; i + gap < n; ++i) {
      index_[i][i + gap] = entries_.size();
      entries_.emplace_back(i, i + gap);
    }
  }
  dim_ = entries_.size();
}

GroupModel GroupModel::abelian(std::size_t rank) {
  if (rank == 0) throw Error(ErrorCode::Usage, "abelian rank must be positive");
  return GroupModel(Kind::AbelianZn, rank);
}

GroupModel GroupModel::unitriangular(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::Usage, "unitriangular size must be at least 2");
  return GroupModel(Kind::Unitriangular, n);
}

std::string GroupModel::describe() const {
  return is_abelian() ? "Z^" + std::to_string(n_) : "UT_" + std::to_string(n_) + "(Z)";
}

GroupElement GroupModel::identity() const { return GroupElement{std::vector<Integer>(dim_)}; }

GroupElement GroupModel::element(std::vector<Integer> coords) const {
  GroupElement g{std::move(coords)};
  check(g);
  return g;
}

void GroupModel::check(const GroupElement& g) const {
  if (g.coords.size() != dim_) {
    throw Error(ErrorCode::ModelMismatch, "element " + g.to_string() + " has " + std::to_string(g.coords.size()) +
                                              " coordinates, " + describe() + " needs " + std::to_string(dim_));
  }
}

std::pair<std::size_t, std::size_t> GroupModel::entry_of(std::size_t coord) const {
  if (is_abelian()) throw Error(ErrorCode::Usage, "abelian coordinates are not matrix entries");
  return entries_.at(coord);
}

std::size_t GroupModel::coord_of(std::size_t row, std::size_t col) const {
  if (is_abelian() || row >= col || col >= n_) throw Error(ErrorCode::Usage, "not a strict upper-triangular entry");
  return index_[row][col];
}

template <typename T>
std::vector<T> GroupModel::mul_impl(const std::vector<T>& a, const std::vector<T>& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw Error(ErrorCode::ModelMismatch, "coordinate count mismatch in product");
  std::vector<T> c(dim_);
  for (std::size_t p = 0; p < dim_; ++p) c[p] = a[p] + b[p];
  if (is_abelian()) return c;
  for (std::size_t p = 0; p < dim_; ++p) {
    auto [i, j] = entries_[p];
    for (std::size_t k = i + 1; k < j; ++k) c[p] += a[index_[i][k]] * b[index_[k][j]];
  }
  return c;
}

template <typename T>
std::vector<T> GroupModel::inverse_impl(const std::vector<T>& a) const {
  if (a.size() != dim_) throw Error(ErrorCode::ModelMismatch, "coordinate count mismatch in inverse");
  std::vector<T> b(dim_);
  // Entries are ordered by gap, so b(k,j) is known before b(i,j).
  for (std::size_t p = 0; p < dim_; ++p) {
    b[p] = -a[p];
    if (is_abelian()) continue;
    auto [i, j] = entries_[p];
    for (std::size_t k = i + 1; k < j; ++k) b[p] -= a[index_[i][k]] * b[index_[k][j]];
  }
  return b;
}

GroupElement GroupModel::mul(const GroupElement& a, const GroupElement& b) const {
  return GroupElement{mul_impl(a.coords, b.coords)};
}

GroupElement GroupModel::inverse(const GroupElement& a) const { return GroupElement{inverse_impl(a.coords)}; }

RatVector GroupModel::mul(const RatVector& a, const RatVector& b) const { return mul_impl(a, b); }

RatVector GroupModel::inverse(const RatVector& a) const { return inverse_impl(a); }

GroupElement GroupModel::power(const GroupElement& a, long exponent) const {
  GroupElement base = exponent < 0 ? inverse(a) : a;
  unsigned long e = exponent < 0 ? 0UL - static_cast<unsigned long>(exponent) : static_cast<unsigned long>(exponent);
  GroupElement result = identity();
  while (e) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1UL;
    if (e) base = mul(base, base);
  }
  return result;
}

GroupElement GroupModel::commutator(const GroupElement& a, const GroupElement& b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

RatMatrix GroupModel::to_nilpotent_matrix(const RatVector& coords) const {
  RatMatrix m(n_, n_);
  for (std::size_t p = 0; p < dim_; ++p) m(entries_[p].first, entries_[p].second) = coords[p];
  return m;
}

RatVector GroupModel::from_nilpotent_matrix(const RatMatrix& m) const {
  RatVector v(dim_);
  for (std::size_t p = 0; p < dim_; ++p) v[p] = m(entries_[p].first, entries_[p].second);
  return v;
}

RatVector GroupModel::log_map(const RatVector& g) const {
  if (g.size() != dim_) throw Error(ErrorCode::ModelMismatch, "coordinate count mismatch in log");
  if (is_abelian()) return g;
  // log(I + N) = N - N^2/2 + N^3/3 - ..., finite since N^n = 0.
  RatMatrix nil = to_nilpotent_matrix(g);
  RatMatrix term = nil;
  RatMatrix sum(n_, n_);
  for (std::size_t k = 1; k < n_; ++k) {
    Rational c(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
    c.canonicalize();
    sum = sum + term.scaled(c);
    term = term * nil;
  }
  return from_nilpotent_matrix(sum);
}

LieVector GroupModel::log_map(const GroupElement& g) const {
  check(g);
  RatVector r(g.coords.begin(), g.coords.end());
  return LieVector{log_map(r)};
}

RatVector GroupModel::exp_rational(const LieVector& v) const {
  if (v.coords.size() != dim_) throw Error(ErrorCode::ModelMismatch, "coordinate count mismatch in exp");
  if (is_abelian()) return v.coords;
  // exp(X) - I = X + X^2/2! + ... + X^(n-1)/(n-1)!
  RatMatrix x = to_nilpotent_matrix(v.coords);
  RatMatrix term = x;
  RatMatrix sum(n_, n_);
  Integer factorial = 1;
  for (std::size_t k = 1; k < n_; ++k) {
    factorial *= static_cast<unsigned long>(k);
    sum = sum + term.scaled(Rational(Integer(1), factorial));
    term = term * x;
  }
  return from_nilpotent_matrix(sum);
}

GroupElement GroupModel::exp_map(const LieVector& v) const {
  RatVector r = exp_rational(v);
  GroupElement g{std::vector<Integer>(dim_)};
  for (std::size_t p = 0; p < dim_; ++p) {
    if (!is_integral(r[p])) throw Error(ErrorCode::NotInLattice, "exp(" + join_coords(v.coords) + ") = (" + join_coords(r) + ")");
    g.coords[p] = r[p].get_num();
  }
  return g;
}

std::vector<std::size_t> GroupModel::center_coordinates() const {
  if (is_abelian()) {
    std::vector<std::size_t> all(dim_);
    for (std::size_t i = 0; i < dim_; ++i) all[i] = i;
    return all;
  }
  return {index_[0][n_ - 1]};
}

// ---------------------------------------------------------------- SubgroupSpec

std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error(ErrorCode::InvalidSubgroup, "lattice basis must be square");
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t r = col;
    for (std::size_t i = r + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      if (a[r][col] == 0) {
        std::swap(a[r], a[i]);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][col].get_mpz_t(), a[i][col].get_mpz_t());
      Integer u = a[r][col] / g;
      Integer v = a[i][col] / g;
      for (std::size_t c = 0; c < n; ++c) {
        Integer top = s * a[r][c] + t * a[i][c];
        Integer bottom = u * a[i][c] - v * a[r][c];
        a[r][c] = top;
        a[i][c] = bottom;
      }
    }
    if (a[r][col] == 0) throw Error(ErrorCode::InvalidSubgroup, "lattice basis is singular (infinite index)");
    if (a[r][col] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t k = 0; k < r; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[k][col].get_mpz_t(), a[r][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t c = 0; c < n; ++c) a[k][c] -= q * a[r][c];
    }
  }
  return a;
}

SubgroupSpec SubgroupSpec::congruence(std::vector<Integer> moduli) {
  if (moduli.empty()) throw Error(ErrorCode::InvalidSubgroup, "moduli list is empty");
  for (const auto& m : moduli)
    if (m <= 0) throw Error(ErrorCode::InvalidSubgroup, "moduli must be positive");
  SubgroupSpec s;
  s.kind_ = Kind::CongruenceDiagonal;
  s.moduli_ = std::move(moduli);
  return s;
}

SubgroupSpec SubgroupSpec::lattice(std::vector<std::vector<Integer>> basis) {
  if (basis.empty()) throw Error(ErrorCode::InvalidSubgroup, "lattice basis is empty");
  SubgroupSpec s;
  s.kind_ = Kind::IntegerLattice;
  s.hnf_ = hermite_normal_form(basis);
  s.basis_ = std::move(basis);
  return s;
}

bool SubgroupSpec::contains(const GroupElement& g) const {
  if (kind_ == Kind::CongruenceDiagonal) {
    if (g.coords.size() != moduli_.size()) throw Error(ErrorCode::ModelMismatch, "element and subgroup sizes differ");
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      if (!mpz_divisible_p(g.coords[i].get_mpz_t(), moduli_[i].get_mpz_t())) return false;
    return true;
  }
  if (g.coords.size() != hnf_.size()) throw Error(ErrorCode::ModelMismatch, "element and subgroup sizes differ");
  std::vector<Integer> v = g.coords;
  for (std::size_t r = 0; r < hnf_.size(); ++r) {
    const Integer& pivot = hnf_[r][r];
    if (!mpz_divisible_p(v[r].get_mpz_t(), pivot.get_mpz_t())) return false;
    Integer q = v[r] / pivot;
    if (q == 0) continue;
    for (std::size_t c = r; c < v.size(); ++c) v[c] -= q * hnf_[r][c];
  }
  return true;
}

Integer SubgroupSpec::index() const {
  Integer idx = 1;
  if (kind_ == Kind::CongruenceDiagonal) {
    for (const auto& m : moduli_) idx *= m;
  } else {
    for (std::size_t r = 0; r < hnf_.size(); ++r) idx *= hnf_[r][r];
  }
  return idx;
}

std::vector<std::vector<Integer>> SubgroupSpec::coordinate_lattice() const {
  if (kind_ == Kind::IntegerLattice) return basis_;
  std::vector<std::vector<Integer>> rows(moduli_.size(), std::vector<Integer>(moduli_.size()));
  for (std::size_t i = 0; i < moduli_.size(); ++i) rows[i][i] = moduli_[i];
  return rows;
}

void SubgroupSpec::check_against(const GroupModel& model) const {
  const std::size_t dim = model.coordinate_count();
  if (kind_ == Kind::IntegerLattice) {
    if (!model.is_abelian()) throw Error(ErrorCode::InvalidSubgroup, "integer lattices are supported for the abelian model only");
    if (basis_.size() != dim) throw Error(ErrorCode::InvalidSubgroup, "lattice basis size does not match the rank");
    return;
  }
  if (moduli_.size() != dim) throw Error(ErrorCode::InvalidSubgroup, "need one modulus per coordinate");
  if (model.is_abelian()) return;
  // Products add m_ik m_kj multiples into entry (i,j); the set is closed under
  // products (and then inverses, by induction on the gap) iff m_ij | m_ik m_kj.
  const std::size_t n = model.size_parameter();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      for (std::size_t k = i + 1; k < j; ++k) {
        Integer prod = moduli_[model.coord_of(i, k)] * moduli_[model.coord_of(k, j)];
        if (!mpz_divisible_p(prod.get_mpz_t(), moduli_[model.coord_of(i, j)].get_mpz_t())) {
          throw Error(ErrorCode::InvalidSubgroup, "congruence set is not closed under products at entry (" +
                                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      }
    }
  }
}

GroupElement SubgroupSpec::sample(std::mt19937_64& rng, const GroupModel& model, long bound) const {
  std::uniform_int_distribution<long> dist(-bound, bound);
  const std::size_t dim = model.coordinate_count();
  GroupElement g = model.identity();
  if (kind_ == Kind::CongruenceDiagonal) {
    for (std::size_t i = 0; i < dim; ++i) g.coords[i] = moduli_[i] * dist(rng);
  } else {
    for (const auto& row : basis_) {
      long c = dist(rng);
      for (std::size_t i = 0; i < dim; ++i) g.coords[i] += row[i] * c;
    }
  }
  return g;
}

// ---------------------------------------------------------------- VirtualEndomorphism

RatMatrix lie_matrix_of(const GroupModel& model, const RatMatrix& phi_coords) {
  const std::size_t dim = model.coordinate_count();
  auto image = [&](const RatVector& lie) { return model.log_map(phi_coords * model.exp_rational(LieVector{lie})); };
  RatMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector e(dim);
    e[i] = 1;
    RatVector col = image(e);
    for (std::size_t r = 0; r < dim; ++r) m(r, i) = col[r];
  }
  // Linearity on pairwise basis sums and two dense combinations.
  std::vector<RatVector> probes;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      RatVector v(dim);
      v[i] = 1;
      v[j] = 1;
      probes.push_back(v);
    }
  }
  RatVector ones(dim), mixed(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    ones[i] = 1;
    mixed[i] = Rational(static_cast<long>(i % 2 ? -1 : 1) * static_cast<long>(i + 1), static_cast<unsigned long>(i + 2));
    mixed[i].canonicalize();
  }
  probes.push_back(ones);
  probes.push_back(mixed);
  for (const auto& v : probes) {
    if (image(v) != m * v) {
      throw Error(ErrorCode::NotAnAutomorphism,
                  "log . phi . exp is not linear at (" + join_coords(v) + "): phi is not a group homomorphism");
    }
  }
  return m;
}

VirtualEndomorphism::VirtualEndomorphism(GroupModel model, SubgroupSpec subgroup, RatMatrix phi_coords)
    : model_(std::move(model)), subgroup_(std::move(subgroup)), phi_(std::move(phi_coords)) {
  const std::size_t dim = model_.coordinate_count();
  if (phi_.rows() != dim || phi_.cols() != dim) {
    throw Error(ErrorCode::ModelMismatch, "phi must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  subgroup_.check_against(model_);
  try {
    lie_ = lie_matrix_of(model_, phi_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAnAutomorphism) throw;
    lie_failure_ = e.what();
  }
}

const RatMatrix& VirtualEndomorphism::lie_matrix() const {
  if (!lie_) throw Error(ErrorCode::NotAnAutomorphism, lie_failure_);
  return *lie_;
}

GroupElement VirtualEndomorphism::apply(const GroupElement& h) const {
  model_.check(h);
  if (!subgroup_.contains(h)) throw Error(ErrorCode::DomainError, h.to_string() + " is not in the domain subgroup H");
  RatVector img = phi_ * RatVector(h.coords.begin(), h.coords.end());
  GroupElement out = model_.identity();
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (!is_integral(img[i])) throw Error(ErrorCode::NotInLattice, "phi" + h.to_string() + " = (" + join_coords(img) + ")");
    out.coords[i] = img[i].get_num();
  }
  return out;
}

RatVector VirtualEndomorphism::apply_rational(const RatVector& g) const { return phi_ * g; }

// ---------------------------------------------------------------- validation

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.exact ? " [exact]" : " [probabilistic]");
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

namespace {

ValidationCheck check_integrality(const VirtualEndomorphism& phi) {
  ValidationCheck c{"integrality", true, true, ""};
  for (const auto& gen : phi.subgroup().coordinate_lattice()) {
    RatVector img = phi.phi_coords() * RatVector(gen.begin(), gen.end());
    for (const auto& x : img) {
      if (!is_integral(x)) {
        c.passed = false;
        c.detail = "phi(" + join_coords(gen) + ") = (" + join_coords(img) + ") is not integral";
        return c;
      }
    }
  }
  return c;
}

// phi is coordinate-linear and the group law is (bilinear + linear) in the
// coordinates, so phi(ab) = phi(a)phi(b) on the Zariski-dense lattice H holds iff
// the bilinear coefficient tensors agree.
ValidationCheck check_homomorphism(const VirtualEndomorphism& phi) {
  ValidationCheck c{"homomorphism", true, true, ""};
  const auto& model = phi.model();
  if (model.is_abelian()) return c;
  const auto& p = phi.phi_coords();
  const std::size_t dim = model.coordinate_count();
  const std::size_t n = model.size_parameter();
  for (std::size_t r = 0; r < dim; ++r) {
    auto [ri, rj] = model.entry_of(r);
    for (std::size_t a = 0; a < dim; ++a) {
      auto [ai, ak] = model.entry_of(a);
      for (std::size_t b = 0; b < dim; ++b) {
        auto [bk, bj] = model.entry_of(b);
        Rational lhs = 0;
        if (ak == bk) lhs = p(r, model.coord_of(ai, bj));
        Rational rhs = 0;
        for (std::size_t k = ri + 1; k < rj; ++k) rhs += p(model.coord_of(ri, k), a) * p(model.coord_of(k, rj), b);
        if (lhs != rhs) {
          c.passed = false;
          c.detail = "coefficient of a_" + std::to_string(a + 1) + " b_" + std::to_string(b + 1) + " in coordinate " +
                     std::to_string(r + 1) + ": phi(ab) has " + lhs.get_str() + ", phi(a)phi(b) has " + rhs.get_str();
          return c;
        }
      }
    }
  }
  (void)n;
  return c;
}

}  // namespace

ValidationReport validate_endomorphism(const VirtualEndomorphism& phi, std::uint64_t seed) {
  ValidationReport report;
  const auto& model = phi.model();
  report.checks.push_back(check_integrality(phi));
  report.checks.push_back(check_homomorphism(phi));

  ValidationCheck lin{"lie-linearity", phi.has_lie_matrix(), true, phi.lie_matrix_failure()};
  report.checks.push_back(lin);

  ValidationCheck comm{"log-commutation", true, false, ""};
  if (!phi.has_lie_matrix()) {
    comm.passed = false;
    comm.detail = "no Lie-algebra matrix";
  } else {
    std::mt19937_64 rng(seed);
    const auto& m = phi.lie_matrix();
    for (int s = 0; s < 1000 && comm.passed; ++s) {
      GroupElement h = phi.subgroup().sample(rng, model, 1000);
      RatVector lhs = m * model.log_map(h).coords;
      RatVector rhs = model.log_map(phi.apply_rational(RatVector(h.coords.begin(), h.coords.end())));
      if (lhs != rhs) {
        comm.passed = false;
        comm.detail = "M log(h) != log(phi(h)) at h = " + h.to_string();
      }
    }
    comm.detail = comm.passed ? "1000 samples, coordinates up to 10^3 in H" : comm.detail;
  }
  report.checks.push_back(comm);

  const Rational det = phi.has_lie_matrix() ? phi.lie_matrix().determinant() : phi.phi_coords().determinant();
  ValidationCheck inj{"injectivity", det != 0, true, "det = " + det.get_str()};
  report.checks.push_back(inj);

  ValidationCheck surj{"surjectivity", true, true, ""};
  {
    const auto gens = phi.subgroup().coordinate_lattice();
    const std::size_t dim = model.coordinate_count();
    RatMatrix images(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      RatVector img = phi.phi_coords() * RatVector(gens[c].begin(), gens[c].end());
      for (std::size_t r = 0; r < dim; ++r) images(r, c) = img[r];
    }
    bool integral = true;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) integral = integral && is_integral(images(r, c));
    Rational d = images.determinant();
    surj.passed = integral && (d == 1 || d == -1);
    surj.detail = "det phi(H generators) = " + d.get_str();
  }
  report.checks.push_back(surj);

  ValidationCheck idx{"index", false, true, ""};
  if (det != 0) {
    Rational inv = 1 / abs(det);
    Integer expected = phi.subgroup().index();
    idx.passed = inv == Rational(expected);
    idx.detail = "[G:H] = " + expected.get_str() + ", 1/|det| = " + inv.get_str();
  } else {
    idx.detail = "determinant is zero";
  }
  report.checks.push_back(idx);
  return report;
}

Integer index(const SubgroupSpec& subgroup, const VirtualEndomorphism& phi) {
  Integer idx = subgroup.index();
  Rational det = phi.lie_matrix().determinant();
  if (det == 0 || Rational(idx) != 1 / abs(det)) {
    throw Error(ErrorCode::InconsistentEndomorphism,
                "[G:H] = " + idx.get_str() + " but det(lie matrix) = " + det.get_str());
  }
  return idx;
}

TransversalCheck validate_transversal(const GroupModel& model, const DigitSet& digits, const SubgroupSpec& subgroup) {
  TransversalCheck out;
  const Integer idx = subgroup.index();
  if (Integer(static_cast<unsigned long>(digits.size())) != idx) {
    out.reason = "digit set has " + std::to_string(digits.size()) + " elements but [G:H] = " + idx.get_str();
    return out;
  }
  for (const auto& r : digits.reps) {
    if (r.coords.size() != model.coordinate_count()) {
      out.reason = "representative " + r.to_string() + " has the wrong coordinate count";
      return out;
    }
  }
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const GroupElement inv = model.inverse(digits.reps[j]);
    for (std::size_t i = 0; i < j; ++i) {
      if (subgroup.contains(model.mul(inv, digits.reps[i]))) {
        out.certificate = std::make_pair(i, j);
        out.reason = "representatives " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " lie in the same coset";
        return out;
      }
    }
  }
  out.valid = true;
  return out;
}

}  // namespace selfsim
