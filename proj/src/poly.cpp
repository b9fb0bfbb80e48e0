#include "serrelab/poly.hpp"

#include <sstream>

namespace serrelab {

namespace {

void require_same_field(const PolyModP& a, const PolyModP& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(Errc::MismatchedCharacteristic, "polynomials over F_" + std::to_string(a.modulus()) +
                                                     " and F_" + std::to_string(b.modulus()));
  }
}

}  // namespace

PolyModP::PolyModP(std::uint64_t p) : p_(p) {
  if (p < 2 || p > kMaxWordModulus) {
    throw Error(Errc::InvalidArgument, "polynomial modulus out of range: " + std::to_string(p));
  }
}

PolyModP::PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs) : PolyModP(p) {
  c_ = std::move(coeffs);
  for (auto& c : c_) c %= p_;
  trim();
}

PolyModP::PolyModP(std::uint64_t p, std::initializer_list<std::int64_t> coeffs) : PolyModP(p) {
  c_.reserve(coeffs.size());
  for (std::int64_t c : coeffs) c_.push_back(reduce_mod(c, p_));
  trim();
}

PolyModP PolyModP::constant(std::uint64_t p, std::uint64_t c) { return PolyModP(p, std::vector<std::uint64_t>{c}); }

PolyModP PolyModP::monomial(std::uint64_t p, std::size_t degree, std::uint64_t c) {
  std::vector<std::uint64_t> v(degree + 1, 0);
  v[degree] = c;
  return PolyModP(p, std::move(v));
}

void PolyModP::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t PolyModP::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
  return acc;
}

PolyModP PolyModP::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading(), p_));
}

PolyModP PolyModP::derivative() const {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * (i % p_) % p_);
  return PolyModP(p_, std::move(d));
}

PolyModP PolyModP::scaled(std::uint64_t k) const {
  std::vector<std::uint64_t> v(c_);
  k %= p_;
  for (auto& c : v) c = c * k % p_;
  return PolyModP(p_, std::move(v));
}

PolyModP& PolyModP::operator+=(const PolyModP& o) {
  require_same_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[i] += o.c_[i];
    if (c_[i] >= p_) c_[i] -= p_;
  }
  trim();
  return *this;
}

PolyModP& PolyModP::operator-=(const PolyModP& o) {
  require_same_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
  }
  trim();
  return *this;
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return PolyModP(a.p_);
  // Products are below 2^62; a 128-bit accumulator absorbs any row length.
  std::vector<unsigned __int128> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const std::uint64_t ai = a.c_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(ai) * b.c_[j];
  }
  std::vector<std::uint64_t> out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<std::uint64_t>(acc[k] % a.p_);
  return PolyModP(a.p_, std::move(out));
}

std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  const std::uint64_t p = a.modulus();
  std::vector<std::uint64_t> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  if (a.degree() < db) return {PolyModP(p), a};
  const std::uint64_t inv_lead = inv_mod(b.leading(), p);
  std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const auto bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    const std::uint64_t c = r[static_cast<std::size_t>(i)] * inv_lead % p;
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    const std::uint64_t neg = p - c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = (slot + neg * bc[static_cast<std::size_t>(j)]) % p;
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {PolyModP(p, std::move(q)), PolyModP(p, std::move(r))};
}

PolyModP operator%(const PolyModP& a, const PolyModP& m) { return divmod(a, m).second; }

PolyModP gcd(PolyModP a, PolyModP b) {
  require_same_field(a, b);
  while (!b.is_zero()) {
    PolyModP r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyModP mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& m) { return (a * b) % m; }

std::optional<PolyModP> invmod(const PolyModP& a, const PolyModP& m) {
  require_same_field(a, m);
  const std::uint64_t p = m.modulus();
  PolyModP r0 = m, r1 = a % m;
  PolyModP t0(p), t1 = PolyModP::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    PolyModP t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.degree() != 0) return std::nullopt;
  return (t0.scaled(inv_mod(r0.leading(), p))) % m;
}

PolyModP poly_powmod(const PolyModP& base, const BigInt& e, const PolyModP& modulus) {
  require_same_field(base, modulus);
  if (modulus.degree() < 1) throw Error(Errc::InvalidArgument, "poly_powmod needs a modulus of degree >= 1");
  if (e < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  PolyModP result = PolyModP::constant(modulus.modulus(), 1) % modulus;
  const PolyModP b = base % modulus;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, modulus);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, modulus);
  }
  return result;
}

std::vector<std::uint64_t> roots_in_prime_field(const PolyModP& f) {
  std::vector<std::uint64_t> out;
  if (f.is_zero()) return out;
  for (std::uint64_t x = 0; x < f.modulus(); ++x) {
    if (f.eval(x) == 0) out.push_back(x);
  }
  return out;
}

std::string PolyModP::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i > 0) os << (c_[i] != 1 ? "*" : "") << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace serrelab
