#include "serrelab/serre.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace serrelab {

SerreNumber serre_number(const SquarefreeInt& w) {
  SerreNumber out;
  out.w = w;
  const BigInt abs_w = abs(w.value());
  BigInt r = w.value() % 4;
  if (r < 0) r += 4;
  out.d_w = r == 1 ? abs_w : 4 * abs_w;
  mpz_lcm_ui(out.m_w.get_mpz_t(), out.d_w.get_mpz_t(), 2);
  return out;
}

SerreNumber serre_number(const RationalCurve& e) {
  const RationalCurve model = canonical_model(e.r, e.s);
  return serre_number(squarefree_part(model.disc));
}

bool serre_subgroup_contains(const SquarefreeInt& w, const MatrixModN& g) {
  const SerreNumber sn = serre_number(w);
  if (BigInt(g.level()) != sn.m_w) throw Error(Errc::InvalidArgument, "matrix level must be the Serre number");
  if (!g.is_invertible()) throw Error(Errc::InvalidArgument, "matrix is not invertible");
  return kronecker(w.value(), BigInt(g.det())) * epsilon_char(g) == 1;
}

std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::SurjectiveCertified: return "SurjectiveCertified";
    case CertificateStatus::ProperSubgroup: return "ProperSubgroup";
    case CertificateStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(ConditionState s) {
  switch (s) {
    case ConditionState::Pass: return "pass";
    case ConditionState::Fail: return "fail";
    case ConditionState::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedUpToB: return "CertifiedUpToB";
    case Verdict::NotCertified: return "NotCertified";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

FrobeniusSample::FrobeniusSample(const RationalCurve& e, std::uint64_t bound)
    : curve_(e), bound_(bound), data_(sample_frobenius(e.r, e.s, e.disc, bound)) {}

std::vector<MatrixModN> FrobeniusSample::generators(std::uint32_t n) const {
  std::vector<MatrixModN> out;
  for (const auto& fd : data_) {
    if (n % fd.p == 0) continue;
    out.push_back(MatrixModN::from(fd.sigma, n));
  }
  return out;
}

namespace {
// Prime levels up to this bound fall back to the exact class-cover search
// when the trace criterion is silent.
constexpr std::uint32_t kClassCoverPrimeLimit = 13;
}  // namespace

Certificate surjectivity_certificate(const FrobeniusSample& sample, std::uint32_t n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "certificate level must be >= 2");
  Certificate cert;
  cert.level = n;
  cert.prime_bound = sample.bound();
  const auto gens = sample.generators(n);
  cert.generators_used = gens.size();
  const bool large_prime = n >= 5 && is_prime(n);
  if (large_prime) {
    std::vector<std::uint32_t> dets;
    for (const auto& g : gens) dets.push_back(g.det());
    if (sl2_by_traces(n, gens) && unit_subgroup(n, dets).size() == n - 1) cert.closure_index = 1;
  } else if (n > kDefaultEnumerationBound) {
    throw Error(Errc::LevelTooLarge, "composite certificate level beyond the enumeration bound");
  }
  if (cert.closure_index == 0 && n <= (large_prime ? kClassCoverPrimeLimit : kDefaultEnumerationBound)) {
    const auto table = shared_class_table(n);
    std::vector<std::size_t> classes;
    for (const auto& g : gens) classes.push_back(table->class_of(g));
    cert.closure_index = class_cover(*table, classes, true).max_index;
  }
  cert.status = cert.closure_index == 1 ? CertificateStatus::SurjectiveCertified : CertificateStatus::Inconclusive;
  return cert;
}

Certificate surjectivity_certificate(const RationalCurve& e, std::uint32_t n, std::uint64_t bound) {
  return surjectivity_certificate(FrobeniusSample(e, bound), n);
}

std::vector<BigInt> integer_roots(const std::vector<BigInt>& coeffs) {
  std::vector<BigInt> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<BigInt> roots;
  if (c.size() < 2) return roots;
  if (c.back() != 1) throw Error(Errc::InvalidArgument, "integer_roots needs a monic polynomial");
  auto eval = [&](const BigInt& t) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  // Numerical roots (Weierstrass iteration) locate the candidates; every
  // candidate is then checked exactly.
  const std::size_t deg = c.size() - 1;
  using Complex = std::complex<long double>;
  std::vector<long double> a(deg + 1);
  for (std::size_t i = 0; i <= deg; ++i) a[i] = static_cast<long double>(c[i].get_d());
  long double radius = 1;
  for (std::size_t i = 0; i < deg; ++i) radius = std::max(radius, 1 + std::fabs(a[i]));
  std::vector<Complex> z(deg);
  const Complex seed(0.4L, 0.9L);
  for (std::size_t i = 0; i < deg; ++i) z[i] = std::pow(seed, static_cast<int>(i)) * radius * 0.5L;
  auto peval = [&](Complex x) {
    Complex acc = 0;
    for (std::size_t i = deg + 1; i-- > 0;) acc = acc * x + a[i];
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      Complex denom = 1;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) == 0) denom = 1e-30L;
      const Complex step = peval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (change < 1e-18L) break;
  }
  for (const auto& root : z) {
    const long double base = std::floor(root.real());
    for (int delta = -1; delta <= 2; ++delta) {
      const long double v = base + delta;
      if (!std::isfinite(v)) continue;
      BigInt t;
      mpz_set_d(t.get_mpz_t(), static_cast<double>(v));
      if (eval(t) == 0 && std::find(roots.begin(), roots.end(), t) == roots.end()) roots.push_back(t);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Condition 1 at l = 2 fails for sure when the 2-division cubic has a
// rational root or its discriminant is a square.
std::string two_division_witness(const RationalCurve& e) {
  const auto roots = integer_roots({e.s, e.r, 0, 1});
  if (!roots.empty()) return "x^3 + rx + s has the rational root " + roots.front().get_str();
  const BigInt cubic_disc = -4 * e.r * e.r * e.r - 27 * e.s * e.s;
  if (cubic_disc > 0 && mpz_perfect_square_p(cubic_disc.get_mpz_t())) {
    return "the discriminant is a square, so the mod-2 image lies in A3";
  }
  return {};
}

// Condition 2 fails when f1 has a rational root: the mod-4 image then lies in
// an index-4 subgroup.
std::string four_division_witness(const RationalCurve& e) {
  const BigInt& r = e.r;
  const BigInt& s = e.s;
  const BigInt r2 = r * r;
  const auto roots = integer_roots({81 * r2 * r2, 148 * r2 * r + 1728 * s * s, 54 * r2, -12 * r, 1});
  if (roots.empty()) return {};
  return "f1 has the rational root " + roots.front().get_str();
}

}  // namespace

SerreVerdict certify_serre_curve(const RationalCurve& input, std::uint64_t bound) {
  const RationalCurve e = canonical_model(input.r, input.s);
  SerreVerdict out;
  out.prime_bound = bound;
  out.serre = serre_number(squarefree_part(e.disc));
  const FrobeniusSample sample(e, bound);
  auto full = [&](std::uint32_t n) {
    const bool ok = surjectivity_certificate(sample, n).status == CertificateStatus::SurjectiveCertified;
    if (!ok) out.open_levels.push_back(n);
    return ok;
  };
  std::string witnesses[4];

  // 1. No exceptional primes l <= B.
  {
    bool all_full = true;
    for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(std::max<std::uint64_t>(bound, 2)))) {
      if (!full(ell)) all_full = false;
    }
    witnesses[0] = two_division_witness(e);
    if (!witnesses[0].empty()) {
      witnesses[0] = "exceptional at 2: " + witnesses[0];
      out.conditions[0] = ConditionState::Fail;
    } else {
      out.conditions[0] = all_full ? ConditionState::Pass : ConditionState::Unknown;
    }
  }
  // 2. Surjective at 4 and 9.
  {
    const bool ok4 = full(4);
    const bool ok9 = full(9);
    witnesses[1] = four_division_witness(e);
    if (!witnesses[1].empty()) {
      witnesses[1] = "exceptional at 4: " + witnesses[1];
      out.conditions[1] = ConditionState::Fail;
    } else {
      out.conditions[1] = ok4 && ok9 ? ConditionState::Pass : ConditionState::Unknown;
    }
  }
  // 3. Index at 8 is not 2: certified when the closure is everything.
  out.conditions[2] = full(8) ? ConditionState::Pass : ConditionState::Unknown;
  // 4. A prime > 3 divides M_W.
  {
    BigInt m = out.serre.m_w;
    for (unsigned long q : {2ul, 3ul})
      while (mpz_divisible_ui_p(m.get_mpz_t(), q)) m /= q;
    if (m > 1) {
      out.conditions[3] = ConditionState::Pass;
    } else {
      out.conditions[3] = ConditionState::Fail;
      witnesses[3] = "M_W = " + out.serre.m_w.get_str() + " has no prime factor > 3";
    }
  }

  for (int i = 0; i < 4; ++i) {
    if (out.conditions[i] == ConditionState::Fail) {
      out.verdict = Verdict::NotCertified;
      out.failed_condition = i + 1;
      out.witness = witnesses[i];
      return out;
    }
  }
  const bool all_pass = std::all_of(out.conditions.begin(), out.conditions.end(),
                                    [](ConditionState s) { return s == ConditionState::Pass; });
  out.verdict = all_pass ? Verdict::CertifiedUpToB : Verdict::Unknown;
  return out;
}

std::vector<std::uint32_t> minimal_exceptional_scan(const RationalCurve& input, std::uint32_t max_level,
                                                    std::uint64_t bound) {
  if (max_level > kDefaultEnumerationBound) {
    throw Error(Errc::LevelTooLarge, "minimal exceptional scan is limited to the enumeration bound");
  }
  const RationalCurve e = canonical_model(input.r, input.s);
  const FrobeniusSample sample(e, bound);
  std::vector<bool> full(max_level + 1, true);
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 2; n <= max_level; ++n) {
    full[n] = surjectivity_certificate(sample, n).status == CertificateStatus::SurjectiveCertified;
    if (full[n]) continue;
    bool divisors_full = true;
    for (std::uint64_t d : divisors(n))
      if (d > 1 && d < n && !full[d]) divisors_full = false;
    if (divisors_full) out.push_back(n);
  }
  return out;
}

}  // namespace serrelab
