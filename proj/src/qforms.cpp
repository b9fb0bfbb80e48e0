#include "serrelab/qforms.hpp"

#include <numeric>
#include <sstream>

namespace serrelab {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_order_disc(std::int64_t d) {
  const std::int64_t r = ((d % 4) + 4) % 4;
  return d < 0 && (r == 0 || r == 1);
}

}  // namespace

std::int64_t QuadForm::discriminant() const {
  return checked_add(checked_mul(beta, beta), -checked_mul(4, checked_mul(alpha, gamma)));
}

bool QuadForm::is_primitive() const { return std::gcd(std::gcd(alpha, beta), gamma) == 1; }

bool QuadForm::is_reduced() const {
  if (!(-alpha < beta && beta <= alpha && alpha <= gamma)) return false;
  return !(alpha == gamma && beta < 0);
}

QuadForm QuadForm::transformed(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) const {
  // f(px + qy, rx + sy)
  auto m = checked_mul;
  auto add = checked_add;
  QuadForm out;
  out.alpha = add(add(m(alpha, m(p, p)), m(beta, m(p, r))), m(gamma, m(r, r)));
  out.beta = add(add(m(m(2, alpha), m(p, q)), m(beta, add(m(p, s), m(q, r)))), m(m(2, gamma), m(r, s)));
  out.gamma = add(add(m(alpha, m(q, q)), m(beta, m(q, s))), m(gamma, m(s, s)));
  return out;
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << "(" << alpha << ", " << beta << ", " << gamma << ")";
  return os.str();
}

OrderDisc::OrderDisc(std::int64_t delta) : delta_(delta) {
  if (!is_order_disc(delta)) {
    throw Error(Errc::InvalidArgument, std::to_string(delta) + " is not an imaginary quadratic discriminant");
  }
}

std::int64_t OrderDisc::fundamental() const {
  const std::int64_t sf = to_int64(squarefree_part(BigInt(delta_)).value());
  return ((sf % 4) + 4) % 4 == 1 ? sf : 4 * sf;
}

std::int64_t OrderDisc::conductor() const {
  return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(delta_ / fundamental())));
}

QuadForm reduce(QuadForm f) {
  const std::int64_t disc = f.discriminant();
  if (disc >= 0 || f.alpha <= 0) throw Error(Errc::IndefiniteForm, f.to_string() + " is not positive definite");
  for (;;) {
    // Translate beta into (-alpha, alpha].
    const std::int64_t k = floor_div(f.alpha - f.beta, 2 * f.alpha);
    f.beta = checked_add(f.beta, checked_mul(2 * k, f.alpha));
    f.gamma = (checked_mul(f.beta, f.beta) - disc) / (4 * f.alpha);
    if (f.alpha > f.gamma) {
      f = {f.gamma, -f.beta, f.alpha};
      continue;
    }
    if (f.alpha == f.gamma && f.beta < 0) f.beta = -f.beta;
    return f;
  }
}

std::uint64_t class_number(const OrderDisc& delta) {
  const std::int64_t d = delta.value();
  const std::int64_t abs_d = -d;
  std::uint64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= abs_d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - d) % 2) != 0) continue;
      const std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

int unit_count(const OrderDisc& delta) {
  if (delta.value() == -3) return 6;
  if (delta.value() == -4) return 4;
  return 2;
}

QuadForm matrix_to_form(const IntMatrix2& m) {
  const std::int64_t t = checked_add(m.a, m.d);
  const std::int64_t det = checked_add(checked_mul(m.a, m.d), -checked_mul(m.b, m.c));
  if (checked_add(checked_mul(t, t), -checked_mul(4, det)) >= 0) {
    throw Error(Errc::InvalidArgument, "matrix is not elliptic (trace^2 - 4 det >= 0)");
  }
  return {m.c, checked_add(m.d, -m.a), -m.b};
}

IntMatrix2 form_to_matrix(const QuadForm& f, std::int64_t t) {
  if (((t - f.beta) % 2) != 0) {
    throw Error(Errc::ParityMismatch, "trace " + std::to_string(t) + " and middle coefficient differ in parity");
  }
  return {(t - f.beta) / 2, -f.gamma, f.alpha, (t + f.beta) / 2};
}

Rational weighted_orbit_count(std::int64_t t, std::int64_t d, std::int64_t f) {
  const std::int64_t disc = checked_add(checked_mul(t, t), -checked_mul(4, d));
  if (disc >= 0) throw Error(Errc::InvalidArgument, "T^2 - 4D must be negative");
  if (f < 1 || disc % checked_mul(f, f) != 0 || !is_order_disc(disc / (f * f))) {
    throw Error(Errc::InvalidConductor, "invalid conductor " + std::to_string(f) + " for " + std::to_string(disc));
  }
  const OrderDisc order(disc / (f * f));
  Rational out(static_cast<long>(2 * class_number(order)), unit_count(order));
  out.canonicalize();
  return out;
}

ClassNumberTable::ClassNumberTable(std::uint64_t max_abs) : h_(max_abs + 1, 0) {
  const auto limit = static_cast<std::int64_t>(max_abs);
  for (std::int64_t a = 1; 3 * a * a <= limit; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      // 4ac - b^2 <= limit with c >= a
      for (std::int64_t c = a; 4 * a * c - b * b <= limit; ++c) {
        if (c == a && b < 0) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        ++h_[static_cast<std::size_t>(4 * a * c - b * b)];
      }
    }
  }
}

std::uint64_t ClassNumberTable::h(std::int64_t delta) const {
  const OrderDisc order(delta);
  const auto abs_d = static_cast<std::uint64_t>(-delta);
  if (abs_d < h_.size()) return h_[abs_d];
  return class_number(order);
}

Rational ClassNumberTable::weight(std::int64_t delta) const {
  const OrderDisc order(delta);
  Rational out(static_cast<long>(2 * h(delta)), unit_count(order));
  out.canonicalize();
  return out;
}

}  // namespace serrelab
