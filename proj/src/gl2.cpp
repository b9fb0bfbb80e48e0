#include "serrelab/gl2.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace serrelab {

namespace {

void require_level(std::uint32_t n) {
  if (n < 1 || n > kMaxWordModulus) throw Error(Errc::InvalidArgument, "level out of range");
}

void require_bound(std::uint32_t n, std::uint32_t bound) {
  require_level(n);
  if (n > bound) {
    throw Error(Errc::LevelTooLarge,
                "level " + std::to_string(n) + " exceeds the enumeration bound " + std::to_string(bound));
  }
}

void require_same_level(const MatrixModN& x, const MatrixModN& y) {
  if (x.level() != y.level()) throw Error(Errc::InvalidArgument, "matrices of different levels");
}

std::uint32_t mod_u(std::int64_t v, std::uint32_t n) { return static_cast<std::uint32_t>(reduce_mod(v, n)); }

}  // namespace

// ---------------------------------------------------------------------------
// MatrixModN

MatrixModN::MatrixModN(std::uint32_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  require_level(n);
  n_ = n;
  a_ = mod_u(a, n);
  b_ = mod_u(b, n);
  c_ = mod_u(c, n);
  d_ = mod_u(d, n);
}

MatrixModN MatrixModN::identity(std::uint32_t n) { return {n, 1, 0, 0, 1}; }
MatrixModN MatrixModN::scalar(std::uint32_t n, std::int64_t lambda) { return {n, lambda, 0, 0, lambda}; }
MatrixModN MatrixModN::from(const IntMatrix2& m, std::uint32_t n) { return {n, m.a, m.b, m.c, m.d}; }

std::uint32_t MatrixModN::det() const noexcept {
  const std::uint64_t ad = std::uint64_t{a_} * d_ % n_;
  const std::uint64_t bc = std::uint64_t{b_} * c_ % n_;
  return static_cast<std::uint32_t>((ad + n_ - bc) % n_);
}

MatrixModN MatrixModN::inverse() const {
  const std::uint64_t inv = inv_mod(det(), n_);
  MatrixModN out = *this;
  out.a_ = static_cast<std::uint32_t>(mul_mod(d_, inv, n_));
  out.b_ = static_cast<std::uint32_t>(mul_mod((n_ - b_) % n_, inv, n_));
  out.c_ = static_cast<std::uint32_t>(mul_mod((n_ - c_) % n_, inv, n_));
  out.d_ = static_cast<std::uint32_t>(mul_mod(a_, inv, n_));
  return out;
}

MatrixModN MatrixModN::pow(std::uint64_t e) const {
  MatrixModN result = identity(n_);
  MatrixModN base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

MatrixModN MatrixModN::reduce(std::uint32_t m) const {
  if (m == 0 || n_ % m != 0) throw Error(Errc::InvalidArgument, "reduction level must divide N");
  return {m, a_, b_, c_, d_};
}

std::uint64_t MatrixModN::key() const noexcept {
  const std::uint64_t n = n_;
  return ((a_ * n + b_) * n + c_) * n + d_;
}

MatrixModN MatrixModN::from_key(std::uint32_t n, std::uint64_t key) {
  MatrixModN g;
  g.n_ = n;
  g.d_ = static_cast<std::uint32_t>(key % n);
  key /= n;
  g.c_ = static_cast<std::uint32_t>(key % n);
  key /= n;
  g.b_ = static_cast<std::uint32_t>(key % n);
  g.a_ = static_cast<std::uint32_t>(key / n);
  return g;
}

MatrixModN operator*(const MatrixModN& x, const MatrixModN& y) {
  require_same_level(x, y);
  const std::uint64_t n = x.n_;
  MatrixModN out;
  out.n_ = x.n_;
  out.a_ = static_cast<std::uint32_t>((std::uint64_t{x.a_} * y.a_ + std::uint64_t{x.b_} * y.c_) % n);
  out.b_ = static_cast<std::uint32_t>((std::uint64_t{x.a_} * y.b_ + std::uint64_t{x.b_} * y.d_) % n);
  out.c_ = static_cast<std::uint32_t>((std::uint64_t{x.c_} * y.a_ + std::uint64_t{x.d_} * y.c_) % n);
  out.d_ = static_cast<std::uint32_t>((std::uint64_t{x.c_} * y.b_ + std::uint64_t{x.d_} * y.d_) % n);
  return out;
}

MatrixModN operator+(const MatrixModN& x, const MatrixModN& y) {
  require_same_level(x, y);
  return {x.n_, std::int64_t{x.a_} + y.a_, std::int64_t{x.b_} + y.b_, std::int64_t{x.c_} + y.c_,
          std::int64_t{x.d_} + y.d_};
}

std::string MatrixModN::to_string() const {
  std::ostringstream os;
  os << "((" << a_ << "," << b_ << "),(" << c_ << "," << d_ << ")) mod " << n_;
  return os.str();
}

// ---------------------------------------------------------------------------

std::uint64_t gl2_order(std::uint32_t n) {
  require_level(n);
  std::uint64_t order = 1;
  for (auto [p, e] : factorize(n)) {
    std::uint64_t pk = 1;
    for (int i = 1; i < e; ++i) pk *= p;
    // |GL2(Z/p^e)| = p^(4(e-1)) (p^2 - 1)(p^2 - p)
    order *= pk * pk * pk * pk * (p * p - 1) * (p * p - p);
  }
  return order;
}

std::uint64_t sl2_order(std::uint32_t n) { return gl2_order(n) / euler_phi(n); }

int epsilon_char(const MatrixModN& g) {
  if (g.level() % 2 != 0) throw Error(Errc::OddLevel, "epsilon needs an even level");
  const MatrixModN h = g.reduce(2);
  // Involutions of S3 are the transpositions: trace 0 mod 2 and not I.
  return (h.trace() == 0 && h != MatrixModN::identity(2)) ? -1 : 1;
}

std::vector<MatrixModN> gl2_elements(std::uint32_t n, std::uint32_t bound) {
  require_bound(n, bound);
  std::vector<MatrixModN> out;
  out.reserve(gl2_order(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          MatrixModN g(n, a, b, c, d);
          if (g.is_invertible()) out.push_back(g);
        }
  return out;
}

std::vector<std::uint32_t> unit_subgroup(std::uint32_t n, const std::vector<std::uint32_t>& values) {
  require_level(n);
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> out{static_cast<std::uint32_t>(1 % n)};
  seen[1 % n] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::uint32_t v : values) {
      const auto next = static_cast<std::uint32_t>(mul_mod(out[i], v % n, n));
      if (!seen[next]) {
        seen[next] = true;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatrixModN> gl2_generators(std::uint32_t n) {
  require_level(n);
  std::vector<MatrixModN> gens{MatrixModN(n, 1, 1, 0, 1), MatrixModN(n, 1, 0, 1, 1)};
  // diag(u, 1) for a generating set of the units.
  std::vector<std::uint32_t> unit_gens;
  std::size_t reached = 1;
  for (std::uint32_t u = 2; u < n; ++u) {
    if (gcd_u64(u, n) != 1) continue;
    auto candidate = unit_gens;
    candidate.push_back(u);
    const std::size_t size = unit_subgroup(n, candidate).size();
    if (size > reached) {
      unit_gens = std::move(candidate);
      reached = size;
    }
  }
  for (std::uint32_t u : unit_gens) gens.emplace_back(n, u, 0, 0, 1);
  return gens;
}

// ---------------------------------------------------------------------------
// MatrixSet / SubgroupModN

MatrixSet::MatrixSet(std::uint32_t n) : n_(n) {
  require_level(n);
  if (n >= kMaxSetLevel) throw Error(Errc::LevelTooLarge, "level too large for element sets");
  const std::uint64_t n4 = std::uint64_t{n} * n * n * n;
  if (n4 <= (std::uint64_t{1} << 24)) dense_.assign(n4, false);
}

bool MatrixSet::insert(const MatrixModN& g) {
  bool added;
  if (!dense_.empty()) {
    auto ref = dense_[g.key()];
    added = !ref;
    ref = true;
  } else {
    added = sparse_.insert(g.key()).second;
  }
  size_ += added;
  return added;
}

bool MatrixSet::contains(const MatrixModN& g) const {
  if (g.level() != n_) return false;
  if (!dense_.empty()) return dense_[g.key()];
  return sparse_.count(g.key()) != 0;
}

SubgroupModN::SubgroupModN(std::uint32_t n, std::vector<MatrixModN> elements)
    : n_(n), elements_(std::move(elements)), members_(n) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (const auto& g : elements_) {
    if (g.level() != n) throw Error(Errc::InvalidArgument, "subgroup element of another level");
    members_.insert(g);
  }
}

bool SubgroupModN::contains(const MatrixModN& g) const { return members_.contains(g); }

SubgroupModN SubgroupModN::reduce(std::uint32_t m) const {
  std::vector<MatrixModN> out;
  MatrixSet seen(m);
  for (const auto& g : elements_) {
    MatrixModN h = g.reduce(m);
    if (seen.insert(h)) out.push_back(h);
  }
  return SubgroupModN(m, std::move(out));
}

PartialClosure grow_closure(std::uint32_t n, const std::vector<MatrixModN>& generators,
                            const std::function<bool(const MatrixModN&)>& on_new_element) {
  PartialClosure out;
  MatrixSet seen(n);
  const MatrixModN id = MatrixModN::identity(n);
  seen.insert(id);
  out.elements.push_back(id);
  if (on_new_element && on_new_element(id)) {
    out.stopped_early = true;
    return out;
  }
  std::vector<MatrixModN> gens;
  for (const auto& g : generators) {
    if (g.level() != n) throw Error(Errc::InvalidArgument, "generator of another level");
    if (!g.is_invertible()) throw Error(Errc::InvalidArgument, "generator is not invertible");
    if (g != id && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (const auto& g : gens) {
      MatrixModN next = out.elements[i] * g;
      if (!seen.insert(next)) continue;
      out.elements.push_back(next);
      if (on_new_element && on_new_element(next)) {
        out.stopped_early = true;
        return out;
      }
    }
  }
  return out;
}

SubgroupModN subgroup_closure(std::uint32_t n, const std::vector<MatrixModN>& generators) {
  return SubgroupModN(n, grow_closure(n, generators, nullptr).elements);
}

SubgroupModN normal_closure(std::uint32_t n, const std::vector<MatrixModN>& seeds,
                            const std::vector<MatrixModN>& ambient) {
  std::vector<MatrixModN> gens = seeds;
  std::vector<MatrixModN> ambient_inv;
  for (const auto& a : ambient) ambient_inv.push_back(a.inverse());
  SubgroupModN h = subgroup_closure(n, gens);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t count = gens.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < ambient.size(); ++j) {
        MatrixModN conj = ambient[j] * gens[i] * ambient_inv[j];
        if (!h.contains(conj)) {
          gens.push_back(conj);
          h = subgroup_closure(n, gens);
          changed = true;
        }
      }
    }
  }
  return h;
}

SubgroupModN commutator_subgroup(std::uint32_t n, std::uint32_t bound) {
  require_bound(n, bound);
  const auto gens = gl2_generators(n);
  std::vector<MatrixModN> seeds;
  for (const auto& x : gens)
    for (const auto& y : gens) seeds.push_back(x * y * x.inverse() * y.inverse());
  return normal_closure(n, seeds, gens);
}

SubgroupModN full_group(std::uint32_t n, std::uint32_t bound) { return SubgroupModN(n, gl2_elements(n, bound)); }

SubgroupModN special_linear(std::uint32_t n, std::uint32_t bound) {
  auto all = gl2_elements(n, bound);
  std::erase_if(all, [n](const MatrixModN& g) { return g.det() != 1 % n; });
  return SubgroupModN(n, std::move(all));
}

SubgroupModN epsilon_kernel(std::uint32_t n, std::uint32_t bound) {
  if (n % 2 != 0) throw Error(Errc::OddLevel, "epsilon needs an even level");
  auto all = gl2_elements(n, bound);
  std::erase_if(all, [](const MatrixModN& g) { return epsilon_char(g) != 1; });
  return SubgroupModN(n, std::move(all));
}

bool represents_pair(const SubgroupModN& g, std::uint32_t t, std::uint32_t d) {
  const std::uint32_t n = g.level();
  t %= n;
  d %= n;
  return std::any_of(g.elements().begin(), g.elements().end(),
                     [&](const MatrixModN& x) { return x.trace() == t && x.det() == d; });
}

bool represents_all_pairs(std::uint32_t n, const std::vector<MatrixModN>& elements,
                          const std::vector<std::uint32_t>& dets) {
  std::vector<bool> seen(std::size_t{n} * n, false);
  for (const auto& g : elements) seen[std::size_t{g.trace()} * n + g.det()] = true;
  for (std::uint32_t t = 0; t < n; ++t)
    for (std::uint32_t d : dets)
      if (!seen[std::size_t{t} * n + d % n]) return false;
  return true;
}

std::vector<MatrixModN> g_td_set(std::uint32_t n, std::uint32_t t, std::uint32_t d, std::uint32_t bound) {
  auto all = gl2_elements(n, bound);
  t %= n;
  d %= n;
  std::erase_if(all, [&](const MatrixModN& g) { return g.trace() != t || g.det() != d; });
  return all;
}

std::vector<std::vector<int>> real_characters(std::uint32_t n, std::uint32_t bound) {
  const auto elements = gl2_elements(n, bound);
  const auto gens = gl2_generators(n);
  std::vector<std::int32_t> position(std::size_t{n} * n * n * n, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) position[elements[i].key()] = static_cast<std::int32_t>(i);
  const std::size_t id_pos = static_cast<std::size_t>(position[MatrixModN::identity(n).key()]);

  std::vector<std::vector<int>> out;
  // A sign on each generator extends to a character iff the extension along
  // the Cayley graph is consistent.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gens.size()); ++mask) {
    std::vector<int> value(elements.size(), 0);
    value[id_pos] = 1;
    std::vector<std::size_t> queue{id_pos};
    bool consistent = true;
    for (std::size_t qi = 0; qi < queue.size() && consistent; ++qi) {
      const std::size_t cur = queue[qi];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const int sign = (mask >> j) & 1 ? -1 : 1;
        const auto next = static_cast<std::size_t>(position[(elements[cur] * gens[j]).key()]);
        const int v = value[cur] * sign;
        if (value[next] == 0) {
          value[next] = v;
          queue.push_back(next);
        } else if (value[next] != v) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) out.push_back(std::move(value));
  }
  return out;
}

std::vector<SubgroupModN> index_two_subgroups(std::uint32_t n, std::uint32_t bound) {
  const auto elements = gl2_elements(n, bound);
  std::vector<SubgroupModN> out;
  for (const auto& chi : real_characters(n, bound)) {
    std::vector<MatrixModN> kernel;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (chi[i] == 1) kernel.push_back(elements[i]);
    if (kernel.size() == elements.size()) continue;
    out.emplace_back(n, std::move(kernel));
  }
  return out;
}

namespace {

std::vector<MatrixModN> small_generating_set(const SubgroupModN& g) {
  std::vector<MatrixModN> gens;
  SubgroupModN reached = subgroup_closure(g.level(), gens);
  for (const auto& x : g.elements()) {
    if (reached.contains(x)) continue;
    gens.push_back(x);
    reached = subgroup_closure(g.level(), gens);
    if (reached.order() == g.order()) break;
  }
  return gens;
}

}  // namespace

std::vector<SubgroupModN> overgroups_with_index(const SubgroupModN& g, std::uint64_t index, std::uint32_t bound) {
  const std::uint32_t n = g.level();
  std::vector<SubgroupModN> out;
  if (g.index() == index) out.push_back(g);
  if (g.index() <= index) return out;
  const auto base = small_generating_set(g);
  for (const auto& x : gl2_elements(n, bound)) {
    if (g.contains(x)) continue;
    auto gens = base;
    gens.push_back(x);
    SubgroupModN h = subgroup_closure(n, gens);
    if (h.index() != index) continue;
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prime levels

namespace {

// Representative of the projective class: first nonzero entry scaled to 1.
MatrixModN projective_normal_form(const MatrixModN& g) {
  const std::uint32_t ell = g.level();
  const std::uint32_t entries[4] = {g.a(), g.b(), g.c(), g.d()};
  std::uint32_t lead = 0;
  for (std::uint32_t e : entries) {
    if (e != 0) {
      lead = e;
      break;
    }
  }
  const std::uint64_t inv = inv_mod(lead, ell);
  return MatrixModN(ell, static_cast<std::int64_t>(mul_mod(g.a(), inv, ell)),
                    static_cast<std::int64_t>(mul_mod(g.b(), inv, ell)),
                    static_cast<std::int64_t>(mul_mod(g.c(), inv, ell)),
                    static_cast<std::int64_t>(mul_mod(g.d(), inv, ell)));
}

}  // namespace

PrimeClosureResult closure_at_prime(std::uint32_t ell, const std::vector<MatrixModN>& generators) {
  if (ell < 5 || !is_prime(ell)) throw Error(Errc::InvalidArgument, "closure_at_prime needs a prime >= 5");
  std::vector<std::uint32_t> dets;
  std::vector<MatrixModN> projective_gens;
  for (const auto& g : generators) {
    if (g.level() != ell) throw Error(Errc::InvalidArgument, "generator of another level");
    dets.push_back(g.det());
    projective_gens.push_back(projective_normal_form(g));
  }
  const std::uint64_t det_order = unit_subgroup(ell, dets).size();
  const std::uint64_t l = ell;
  // Proper subgroups of PGL2(F_l) not containing PSL2 are Borel, dihedral or
  // exceptional (A4, S4, A5), so anything larger contains PSL2.
  const std::uint64_t threshold = std::max({l * (l - 1), 2 * (l + 1), std::uint64_t{60}});

  MatrixSet seen(ell);
  std::vector<MatrixModN> reached{MatrixModN::identity(ell)};
  seen.insert(reached.front());
  bool contains_psl2 = false;
  for (std::size_t i = 0; i < reached.size() && !contains_psl2; ++i) {
    for (const auto& g : projective_gens) {
      MatrixModN next = projective_normal_form(reached[i] * g);
      if (!seen.insert(next)) continue;
      reached.push_back(next);
      if (reached.size() > threshold) {
        contains_psl2 = true;
        break;
      }
    }
  }
  if (!contains_psl2) {
    const std::uint64_t psl2 = l * (l * l - 1) / 2;
    std::uint64_t square_det = 0;
    for (const auto& g : reached)
      if (pow_mod(g.det(), (l - 1) / 2, l) == 1) ++square_det;
    contains_psl2 = square_det == psl2;
  }
  PrimeClosureResult out;
  if (contains_psl2) {
    // A subgroup whose projective image contains PSL2 contains SL2 (l >= 5).
    out.full = det_order == l - 1;
    out.index = (l - 1) / det_order;
    return out;
  }
  const SubgroupModN linear = subgroup_closure(ell, generators);
  out.full = false;
  out.index = linear.index();
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy classes

std::uint32_t ClassDescriptor::det() const {
  const std::uint64_t n = level;
  const std::uint64_t lam = lambda;
  return static_cast<std::uint32_t>((lam * lam + std::uint64_t{m} * lam % n * tbar + std::uint64_t{m} * m % n * dbar) % n);
}

std::string ClassDescriptor::to_string() const {
  std::ostringstream os;
  os << "N=" << level << " M=" << m << " lambda=" << lambda << " Tbar=" << tbar << " Dbar=" << dbar;
  return os.str();
}

ClassDescriptor describe(const MatrixModN& g) {
  const std::uint32_t n = g.level();
  ClassDescriptor out;
  out.level = n;
  const auto divs = divisors(n);
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const auto m = static_cast<std::uint32_t>(*it);
    if (g.b() % m == 0 && g.c() % m == 0 && (g.a() + n - g.d()) % m == 0) {
      out.m = m;
      break;
    }
  }
  out.lambda = g.a() % out.m;
  const std::uint32_t q = n / out.m;
  const MatrixModN a(q, (g.a() - out.lambda) / out.m, g.b() / out.m, g.c() / out.m, (g.d() - out.lambda) / out.m);
  out.tbar = a.trace();
  out.dbar = a.det();
  return out;
}

bool matches_descriptor(const MatrixModN& g, const ClassDescriptor& desc) { return describe(g) == desc; }

std::vector<MatrixModN> descriptor_members(const ClassDescriptor& desc) {
  const std::uint32_t n = desc.level;
  const std::uint32_t q = desc.quotient();
  std::vector<std::uint64_t> primes;
  for (auto [p, e] : factorize(q)) primes.push_back(p);
  std::vector<MatrixModN> out;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          const MatrixModN x(q, a, b, c, d);
          if (x.trace() != desc.tbar % q || x.det() != desc.dbar % q) continue;
          bool scalar_somewhere = false;
          for (std::uint64_t p : primes) {
            if (b % p == 0 && c % p == 0 && (a + p * q - d) % p == 0) scalar_somewhere = true;
          }
          if (scalar_somewhere) continue;
          const std::int64_t m = desc.m;
          out.emplace_back(n, desc.lambda + m * a, m * b, m * c, desc.lambda + m * d);
        }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ClassTable::class_of(const MatrixModN& g) const {
  if (g.level() != n_) throw Error(Errc::InvalidArgument, "matrix of another level");
  const std::int32_t idx = class_of_key_[g.key()];
  if (idx < 0) throw Error(Errc::InvalidArgument, "matrix is not invertible");
  return static_cast<std::size_t>(idx);
}

bool ClassTable::descriptors_exact() const {
  return std::all_of(classes_.begin(), classes_.end(),
                     [](const ConjugacyClass& c) { return descriptor_members(c.descriptor) == c.members; });
}

ClassTable conjugacy_classes(std::uint32_t n, std::uint32_t bound) {
  const auto elements = gl2_elements(n, bound);
  auto gens = gl2_generators(n);
  std::vector<std::pair<MatrixModN, MatrixModN>> conj;
  for (const auto& h : gens) conj.emplace_back(h, h.inverse());

  ClassTable table;
  table.n_ = n;
  table.class_of_key_.assign(std::size_t{n} * n * n * n, -1);
  for (const auto& g : elements) {
    if (table.class_of_key_[g.key()] >= 0) continue;
    const auto idx = static_cast<std::int32_t>(table.classes_.size());
    std::vector<MatrixModN> orbit{g};
    table.class_of_key_[g.key()] = idx;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& [h, h_inv] : conj) {
        MatrixModN next = h * orbit[i] * h_inv;
        if (table.class_of_key_[next.key()] >= 0) continue;
        table.class_of_key_[next.key()] = idx;
        orbit.push_back(next);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    ConjugacyClass cls{orbit.front(), orbit.size(), describe(orbit.front()), std::move(orbit)};
    table.classes_.push_back(std::move(cls));
  }
  return table;
}

std::shared_ptr<const ClassTable> shared_class_table(std::uint32_t n) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const ClassTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const ClassTable>(conjugacy_classes(n));
  return slot;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const ClassTable& table, std::vector<std::size_t> targets, bool stop)
      : table_(table), n_(table.level()), group_order_(gl2_order(table.level())), targets_(std::move(targets)),
        stop_(stop) {
    for (const auto& cls : table.classes())
      for (const auto& g : cls.members) group_.push_back(g);
  }

  ClassCover run() {
    // Conjugating the whole search fixes the first chosen element.
    const std::size_t first = smallest_unmet(std::vector<char>(table_.classes().size(), 0));
    if (first == kNone) {
      // No classes to meet: the trivial group covers.
      if (group_order_ > 1) {
        result_.proper = true;
        result_.max_index = group_order_;
        result_.smallest.emplace(n_, std::vector<MatrixModN>{MatrixModN::identity(n_)});
      }
      return result_;
    }
    visit({table_.classes()[first].representative});
    return result_;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t smallest_unmet(const std::vector<char>& met) const {
    std::size_t best = kNone;
    for (std::size_t c : targets_) {
      if (met[c]) continue;
      if (best == kNone || table_.classes()[c].size < table_.classes()[best].size) best = c;
    }
    return best;
  }

  void visit(const std::vector<MatrixModN>& gens) {
    if (done_) return;
    const auto elements = grow_closure(n_, gens, nullptr).elements;
    if (elements.size() == group_order_) return;
    std::vector<std::uint64_t> keys;
    keys.reserve(elements.size());
    for (const auto& g : elements) keys.push_back(g.key());
    std::sort(keys.begin(), keys.end());
    if (!visited_.insert(std::move(keys)).second) return;
    ++result_.subgroups_visited;

    std::vector<char> met(table_.classes().size(), 0);
    MatrixSet members(n_);
    for (const auto& g : elements) {
      met[table_.class_of(g)] = 1;
      members.insert(g);
    }
    const std::size_t next = smallest_unmet(met);
    if (next == kNone) {
      const std::uint64_t index = group_order_ / elements.size();
      if (!result_.proper || index > result_.max_index) {
        result_.max_index = index;
        result_.smallest.emplace(n_, elements);
      }
      result_.proper = true;
      if (stop_) done_ = true;
      return;
    }

    // Branch over the class modulo conjugation by the normalizer.
    std::vector<MatrixModN> normalizer;
    for (const auto& x : group_) {
      const MatrixModN x_inv = x.inverse();
      bool normalizes = true;
      for (const auto& h : gens) {
        if (!members.contains(x * h * x_inv)) {
          normalizes = false;
          break;
        }
      }
      if (normalizes) normalizer.push_back(x);
    }
    MatrixSet covered(n_);
    for (const auto& c : table_.classes()[next].members) {
      if (covered.contains(c)) continue;
      for (const auto& x : normalizer) covered.insert(x * c * x.inverse());
      std::vector<MatrixModN> extended = gens;
      extended.push_back(c);
      visit(extended);
      if (done_) return;
    }
  }

  const ClassTable& table_;
  std::uint32_t n_;
  std::uint64_t group_order_;
  std::vector<std::size_t> targets_;
  bool stop_;
  bool done_ = false;
  std::vector<MatrixModN> group_;
  std::set<std::vector<std::uint64_t>> visited_;
  ClassCover result_;
};

}  // namespace

ClassCover class_cover(const ClassTable& table, const std::vector<std::size_t>& classes, bool stop_at_first_proper) {
  std::vector<std::size_t> targets = classes;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (std::size_t c : targets)
    if (c >= table.classes().size()) throw Error(Errc::InvalidArgument, "class index out of range");
  return CoverSearch(table, std::move(targets), stop_at_first_proper).run();
}

bool sl2_by_traces(std::uint32_t ell, const std::vector<MatrixModN>& members) {
  if (ell < 5 || !is_prime(ell)) throw Error(Errc::InvalidArgument, "the trace criterion needs a prime >= 5");
  const std::uint64_t l = ell;
  bool split = false, nonsplit = false, generic = false;
  for (const auto& g : members) {
    if (g.level() != ell) throw Error(Errc::InvalidArgument, "matrix of another level");
    const std::uint64_t t = g.trace(), d = g.det();
    if (d == 0) throw Error(Errc::InvalidArgument, "matrix is not invertible");
    const std::uint64_t disc = (t * t % l + l * 4 - 4 * d % l) % l;
    if (t != 0 && disc != 0) {
      if (pow_mod(disc, (l - 1) / 2, l) == 1) split = true;
      else nonsplit = true;
    }
    const std::uint64_t u = t * t % l * inv_mod(d, l) % l;
    const std::uint64_t quad = (u * u % l + 3 * l - 3 * u % l + 1) % l;
    if (u != 0 && u != 1 && u != 2 && u != 4 && quad != 0) generic = true;
  }
  return split && nonsplit && generic;
}

}  // namespace serrelab
