#include "serrelab/experiments.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "serrelab/parallel.hpp"

namespace serrelab {

namespace {

BigInt round_nearest(const Rational& q) {
  // floor(q + 1/2)
  BigInt num = 2 * q.get_num() + q.get_den();
  BigInt den = 2 * q.get_den();
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::int64_t max_abs_trace(std::uint64_t p) {
  // Largest |t| with t^2 < 4p.
  auto t = static_cast<std::int64_t>(isqrt(4 * p));
  if (static_cast<std::uint64_t>(t * t) == 4 * p) --t;
  return t;
}

Rational weight_of(std::int64_t disc, const ClassNumberTable& table) { return table.weight(disc); }

// Sum over admissible conductors f coprime to `coprime_to` of the weighted
// orbit counts for discriminant `disc` = T^2 - 4D.
Rational conductor_sum(std::int64_t disc, std::uint64_t coprime_to, const ClassNumberTable& table) {
  Rational sum = 0;
  for (std::int64_t f = 1; f * f <= -disc; ++f) {
    if (gcd_u64(static_cast<std::uint64_t>(f), coprime_to) != 1) continue;
    if (disc % (f * f) != 0) continue;
    const std::int64_t reduced = disc / (f * f);
    const std::int64_t r = ((reduced % 4) + 4) % 4;
    if (r > 1) continue;
    sum += weight_of(reduced, table);
  }
  return sum;
}

}  // namespace

std::vector<std::uint64_t> omega_enumerate_all(std::uint64_t p, const ClassTable& table) {
  const std::uint32_t n = table.level();
  std::vector<std::uint64_t> counts(table.classes().size(), 0);
  if (p < 5 || !is_prime(p)) throw Error(Errc::BadCharacteristic, "need a prime p >= 5");
  if (n % p == 0) return counts;
  const LegendreTable chi(p);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> class_cache;
  for (std::uint64_t r = 0; r < p; ++r) {
    for (std::uint64_t s = 0; s < p; ++s) {
      if (is_singular_mod(p, r, s)) continue;
      const CurveFp e(p, static_cast<std::int64_t>(r), static_cast<std::int64_t>(s));
      const std::int64_t a = trace_of_frobenius(e, chi);
      const std::int64_t b = frobenius_index(e, a);
      auto [it, inserted] = class_cache.try_emplace({a, b}, 0);
      if (inserted) it->second = table.class_of(MatrixModN::from(frobenius_data(p, a, b).sigma, n));
      ++counts[it->second];
    }
  }
  return counts;
}

std::uint64_t omega_enumerate(std::uint64_t p, const ClassTable& table, std::size_t class_index) {
  return omega_enumerate_all(p, table).at(class_index);
}

BigInt omega_formula(std::uint64_t p, const ClassDescriptor& desc, const ClassNumberTable* table) {
  const std::uint32_t n = desc.level;
  if (p < 5 || !is_prime(p)) throw Error(Errc::BadCharacteristic, "need a prime p >= 5");
  if (p % n != desc.det() || n % p == 0) return 0;
  std::optional<ClassNumberTable> local;
  if (!table || table->max_abs() < 4 * p) {
    local.emplace(4 * p);
    table = &*local;
  }
  const auto m = static_cast<std::int64_t>(desc.m);
  const auto q = static_cast<std::int64_t>(desc.quotient());
  const auto lam = static_cast<std::int64_t>(desc.lambda);
  const auto pp = static_cast<std::int64_t>(p);
  const std::int64_t tmax = max_abs_trace(p);
  Rational sum = 0;
  for (std::int64_t t = -tmax; t <= tmax; ++t) {
    if (((t - 2 * lam) % m) != 0) continue;
    const std::int64_t big_t = (t - 2 * lam) / m;
    if (((big_t - static_cast<std::int64_t>(desc.tbar)) % q) != 0) continue;
    const std::int64_t num = pp - lam * lam - m * lam * big_t;
    if (num % (m * m) != 0) continue;
    const std::int64_t big_d = num / (m * m);
    if (((big_d - static_cast<std::int64_t>(desc.dbar)) % q) != 0) continue;
    sum += conductor_sum(big_t * big_t - 4 * big_d, static_cast<std::uint64_t>(q), *table);
  }
  Rational total = sum * Rational(static_cast<long>(p - 1), 2);
  total.canonicalize();
  if (total.get_den() != 1) throw Error(Errc::InvalidArgument, "class-number sum is not integral");
  return total.get_num();
}

Rational omega_main_term(std::uint64_t p, const ConjugacyClass& cls) {
  const std::uint32_t n = cls.descriptor.level;
  Rational out(BigInt(static_cast<unsigned long>(cls.size)) * BigInt(static_cast<unsigned long>(euler_phi(n))) *
                   BigInt(static_cast<unsigned long>(p)) * BigInt(static_cast<unsigned long>(p)),
               BigInt(static_cast<unsigned long>(gl2_order(n))));
  out.canonicalize();
  return out;
}

std::vector<OmegaReport> omega_reports(std::uint64_t p, const ClassTable& table, bool enumerate,
                                       const ClassNumberTable* class_numbers) {
  std::vector<std::uint64_t> counts;
  if (enumerate) counts = omega_enumerate_all(p, table);
  std::optional<ClassNumberTable> local;
  if (!class_numbers || class_numbers->max_abs() < 4 * p) {
    local.emplace(4 * p);
    class_numbers = &*local;
  }
  std::vector<OmegaReport> out;
  const std::uint32_t n = table.level();
  for (std::size_t i = 0; i < table.classes().size(); ++i) {
    const auto& cls = table.classes()[i];
    if (n % p == 0 || p % n != cls.descriptor.det()) continue;
    OmegaReport rep;
    rep.p = p;
    rep.class_index = i;
    rep.descriptor = cls.descriptor;
    rep.formula = omega_formula(p, cls.descriptor, class_numbers);
    rep.main_term = omega_main_term(p, cls);
    if (enumerate) rep.enumerated = counts[i];
    const BigInt count = enumerate ? BigInt(static_cast<unsigned long>(counts[i])) : rep.formula;
    rep.residual = count - round_nearest(rep.main_term);
    out.push_back(std::move(rep));
  }
  return out;
}

std::uint64_t deuring_count(std::uint64_t p, std::int64_t t, const OrderDisc& order) {
  const auto pp = static_cast<std::int64_t>(p);
  if (p < 5 || !is_prime(p)) throw Error(Errc::BadCharacteristic, "need a prime p >= 5");
  const std::int64_t disc = t * t - 4 * pp;
  if (disc >= 0) throw Error(Errc::InadmissibleOrder, "t^2 >= 4p");
  const std::int64_t delta = order.value();
  if (disc % delta != 0) throw Error(Errc::InadmissibleOrder, "order does not contain Z[phi]");
  const auto ratio = static_cast<std::uint64_t>(disc / delta);
  const std::uint64_t root = isqrt(ratio);
  if (root * root != ratio) throw Error(Errc::InadmissibleOrder, "order does not contain Z[phi]");
  if (t % pp == 0 && order.conductor() % pp == 0) {
    throw Error(Errc::InadmissibleOrder, "p divides the conductor of a supersingular order");
  }
  const std::uint64_t num = (p - 1) * class_number(order);
  const auto w = static_cast<std::uint64_t>(unit_count(order));
  if (num % w != 0) throw Error(Errc::InadmissibleOrder, "(p - 1) h / w is not integral");
  return num / w;
}

std::vector<std::uint64_t> trace_histogram(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw Error(Errc::BadCharacteristic, "need a prime p >= 5");
  const std::int64_t tmax = max_abs_trace(p);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(2 * tmax + 1), 0);
  const LegendreTable chi(p);
  for (std::uint64_t r = 0; r < p; ++r)
    for (std::uint64_t s = 0; s < p; ++s) {
      if (is_singular_mod(p, r, s)) continue;
      const std::int64_t a =
          trace_of_frobenius(CurveFp(p, static_cast<std::int64_t>(r), static_cast<std::int64_t>(s)), chi);
      ++out[static_cast<std::size_t>(a + tmax)];
    }
  return out;
}

EichlerReport eichler_mass(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw Error(Errc::BadCharacteristic, "need a prime p >= 5");
  const ClassNumberTable table(4 * p);
  const std::int64_t tmax = max_abs_trace(p);
  EichlerReport rep;
  rep.p = p;
  for (std::int64_t t = -tmax; t <= tmax; ++t) {
    rep.mass += conductor_sum(t * t - 4 * static_cast<std::int64_t>(p), 1, table);
  }
  rep.deviation = rep.mass - Rational(static_cast<long>(2 * p));
  return rep;
}

// ---------------------------------------------------------------------------

PiCount pi_e_count(const RationalCurve& e, std::uint64_t x, const ClassTable& table, std::size_t class_index) {
  const std::uint32_t n = table.level();
  PiCount out;
  if (x < 2) return out;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(x))) {
    if (p < 5 || n % p == 0 || mpz_divisible_ui_p(e.disc.get_mpz_t(), p)) {
      ++out.skipped;
      continue;
    }
    ++out.good;
    const FrobeniusData fd = sigma_matrix(CurveFp(p, e.r, e.s));
    if (table.class_of(MatrixModN::from(fd.sigma, n)) == class_index) ++out.count;
  }
  return out;
}

std::uint64_t primes_in_progression(std::uint64_t x, std::uint32_t n, std::uint32_t d) {
  if (x < 2) return 0;
  std::uint64_t count = 0;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(x)))
    if (p % n == d % n) ++count;
  return count;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "bounded_draw needs a positive bound");
  // Reject the first 2^64 mod bound raw values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= threshold) return v % bound;
  }
}

std::vector<MeanSquareReport> chebotarev_mean_square_all(std::uint64_t x, const ClassTable& table,
                                                         const std::vector<RationalCurve>& family,
                                                         const MeanSquareOptions& options) {
  if (family.empty()) throw Error(Errc::EmptyFamily, "the curve family is empty");
  const std::uint32_t n = table.level();
  const std::size_t classes = table.classes().size();

  std::vector<std::size_t> chosen;
  const bool sampled = family.size() > options.cap;
  if (sampled) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = 0; i < options.cap; ++i) chosen.push_back(bounded_draw(rng, family.size()));
  } else {
    chosen.resize(family.size());
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  }

  std::vector<std::vector<std::uint64_t>> per_curve(chosen.size());
  parallel_for(chosen.size(), options.threads, [&](std::size_t i) {
    const RationalCurve& e = family[chosen[i]];
    std::vector<std::uint64_t> counts(classes, 0);
    for (const auto& fd : sample_frobenius(e.r, e.s, e.disc, x, n)) {
      ++counts[table.class_of(MatrixModN::from(fd.sigma, n))];
    }
    per_curve[i] = std::move(counts);
  });

  const std::uint64_t order = gl2_order(n);
  const std::uint64_t phi = euler_phi(n);
  const BigInt n8 = [&] {
    BigInt v = 1;
    for (int i = 0; i < 8; ++i) v *= n;
    return v;
  }();
  std::vector<MeanSquareReport> out;
  for (std::size_t c = 0; c < classes; ++c) {
    const auto& cls = table.classes()[c];
    MeanSquareReport rep;
    rep.x = x;
    rep.level = n;
    rep.class_index = c;
    rep.descriptor = cls.descriptor;
    rep.family_size = family.size();
    rep.curves_used = chosen.size();
    rep.sampled = sampled;
    const std::uint64_t pi = primes_in_progression(x, n, cls.descriptor.det());
    rep.expected = Rational(BigInt(static_cast<unsigned long>(cls.size * phi)) * static_cast<unsigned long>(pi),
                            BigInt(static_cast<unsigned long>(order)));
    rep.expected.canonicalize();
    Rational total = 0;
    for (const auto& counts : per_curve) {
      const Rational dev = Rational(static_cast<unsigned long>(counts[c])) - rep.expected;
      total += dev * dev;
    }
    rep.mean_square = total / Rational(static_cast<unsigned long>(chosen.size()));
    rep.mean_square.canonicalize();
    rep.bound_ratio = rep.mean_square / Rational(n8 * static_cast<unsigned long>(x));
    rep.bound_ratio.canonicalize();
    out.push_back(std::move(rep));
  }
  return out;
}

MeanSquareReport chebotarev_mean_square(std::uint64_t x, const ClassTable& table, std::size_t class_index,
                                        const std::vector<RationalCurve>& family, const MeanSquareOptions& options) {
  if (class_index >= table.classes().size()) throw Error(Errc::InvalidArgument, "class index out of range");
  return chebotarev_mean_square_all(x, table, family, options).at(class_index);
}

EpsilonCensusReport epsilon_n_census(std::uint64_t x, std::uint32_t n, std::uint64_t bound, unsigned threads) {
  static constexpr std::uint32_t kLevels[] = {4, 6, 8, 9, 12, 24};
  if (std::find(std::begin(kLevels), std::end(kLevels), n) == std::end(kLevels)) {
    throw Error(Errc::InvalidArgument, "census level must be one of 4, 6, 8, 9, 12, 24");
  }
  const auto family = enumerate_family(x);
  std::vector<char> flagged(family.size(), 0);
  parallel_for(family.size(), threads, [&](std::size_t i) {
    const RationalCurve& e = family[i];
    std::vector<MatrixModN> gens;
    std::vector<std::uint32_t> dets;
    for (const auto& fd : sample_frobenius(e.r, e.s, e.disc, bound, n)) {
      gens.push_back(MatrixModN::from(fd.sigma, n));
      dets.push_back(gens.back().det());
    }
    const auto det_group = unit_subgroup(n, dets);
    std::vector<bool> wanted(std::size_t{n} * n, false);
    for (std::uint32_t d : det_group)
      for (std::uint32_t t = 0; t < n; ++t) wanted[std::size_t{t} * n + d] = true;
    std::size_t missing = std::size_t{n} * det_group.size();
    const auto closure = grow_closure(n, gens, [&](const MatrixModN& g) {
      const std::size_t key = std::size_t{g.trace()} * n + g.det();
      if (wanted[key]) {
        wanted[key] = false;
        --missing;
      }
      return missing == 0;
    });
    flagged[i] = closure.stopped_early ? 0 : 1;
  });
  EpsilonCensusReport rep;
  rep.x = x;
  rep.level = n;
  rep.prime_bound = bound;
  rep.total = family.size();
  rep.flagged = static_cast<std::uint64_t>(std::count(flagged.begin(), flagged.end(), 1));
  return rep;
}

CensusReport serre_census(std::uint64_t x, std::uint64_t bound, unsigned threads) {
  const auto family = enumerate_family(x);
  std::vector<SerreVerdict> verdicts(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) { verdicts[i] = certify_serre_curve(family[i], bound); });
  CensusReport rep;
  rep.x = x;
  rep.prime_bound = bound;
  rep.total = family.size();
  for (const auto& v : verdicts) {
    if (v.verdict == Verdict::CertifiedUpToB) ++rep.certified;
    for (int c = 0; c < 4; ++c) {
      if (v.conditions[c] != ConditionState::Pass) ++rep.failures_by_condition[c];
      if (v.conditions[c] == ConditionState::Fail) ++rep.witnessed_by_condition[c];
    }
  }
  return rep;
}

}  // namespace serrelab
