#include "iet/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "iet/error.hpp"

namespace iet {
namespace {

constexpr std::uint64_t kMaxRadicand = 1'000'000'000'000ULL;
// Relative error allowance of the cached approximation (several ulps).
constexpr double kApproxRelErr = 0x1p-48;
constexpr double kApproxAbsErr = 1e-300;
constexpr double kBoundSlack = 1.0 + 0x1p-40;

[[noreturn]] void fail_parse(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kParse, "malformed scalar '" + std::string(text) + "': " + why);
}

class Parser {
 public:
  explicit Parser(std::string_view original) : original_(original) {
    for (char c : original) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  Scalar run() {
    if (text_.empty()) fail_parse(original_, "empty");
    mpq_class a(0);
    mpq_class b(0);
    std::uint64_t d = 0;
    bool have_rational = false;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail_parse(original_, "expected '+' or '-' at offset " + std::to_string(pos_));
      }
      first = false;

      mpq_class coeff(1);
      bool has_coeff = false;
      if (!starts_with("sqrt(")) {
        coeff = unsigned_rational();
        has_coeff = true;
      }
      if (has_coeff && !peek('*')) {
        if (have_rational) fail_parse(original_, "more than one rational term");
        have_rational = true;
        a += sign * coeff;
        continue;
      }
      if (has_coeff) ++pos_;  // '*'
      if (!starts_with("sqrt(")) fail_parse(original_, "expected sqrt(");
      pos_ += 5;
      mpz_class radicand = unsigned_integer();
      if (!peek(')')) fail_parse(original_, "expected ')'");
      ++pos_;
      if (radicand > kMaxRadicand) fail_parse(original_, "radicand too large");
      std::uint64_t n = radicand.get_ui();
      if (n == 0) continue;
      auto [k, m] = extract_square(n);
      mpq_class term = sign * coeff * mpq_class(k);
      if (m == 1) {
        a += term;
        continue;
      }
      if (d != 0 && d != m) {
        throw Error(ErrorCode::kFieldMismatch,
                    "scalar '" + std::string(original_) + "' mixes sqrt(" + std::to_string(d) +
                        ") and sqrt(" + std::to_string(m) + ")");
      }
      d = m;
      b += term;
    }
    return Scalar(a, b, d);
  }

 private:
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool starts_with(std::string_view s) const { return text_.compare(pos_, s.size(), s) == 0; }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail_parse(original_, "expected digits at offset " + std::to_string(start));
    return text_.substr(start, pos_ - start);
  }

  mpz_class unsigned_integer() { return mpz_class(digits()); }

  mpq_class unsigned_rational() {
    mpz_class whole(digits());
    if (peek('/')) {
      ++pos_;
      mpz_class den(digits());
      if (den == 0) fail_parse(original_, "zero denominator");
      mpq_class q(whole, den);
      q.canonicalize();
      return q;
    }
    if (peek('.')) {
      ++pos_;
      std::string frac = digits();
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      mpq_class q(whole * scale + mpz_class(frac), scale);
      q.canonicalize();
      return q;
    }
    return mpq_class(whole);
  }

  std::string_view original_;
  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::pair<mpz_class, std::uint64_t> extract_square(std::uint64_t n) {
  if (n > kMaxRadicand) throw Error(ErrorCode::kParse, "radicand too large: " + std::to_string(n));
  mpz_class k(1);
  std::uint64_t m = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= static_cast<unsigned long>(p);
    if (e % 2 == 1) m *= p;
  }
  m *= n;
  return {k, m};
}

Scalar::Scalar(mpq_class q) : a_(std::move(q)) {
  a_.canonicalize();
  refresh();
}

Scalar::Scalar(mpq_class a, mpq_class b, std::uint64_t d) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (d == 0 || b_ == 0) {
    b_ = 0;
    d_ = 0;
  } else {
    auto [k, m] = extract_square(d);
    b_ *= k;
    if (m == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    } else {
      d_ = m;
    }
  }
  refresh();
}

Scalar Scalar::from_fraction(long num, long den) {
  if (den == 0) throw Error(ErrorCode::kDivisionByZero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::parse(std::string_view text) { return Parser(text).run(); }

std::string Scalar::render() const {
  if (d_ == 0) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str();
  if (sgn(b_) < 0) {
    out += '-';
    out += mpq_class(-b_).get_str();
  } else {
    if (!out.empty()) out += '+';
    out += b_.get_str();
  }
  out += "*sqrt(" + std::to_string(d_) + ")";
  return out;
}

double Scalar::to_double() const {
  constexpr mp_bitcnt_t kPrec = 256;
  mpf_class v(a_, kPrec);
  if (d_ != 0) {
    mpf_class root(static_cast<double>(d_), kPrec);
    root = sqrt(root);
    v += mpf_class(b_, kPrec) * root;
  }
  double t = v.get_d();  // truncates toward zero
  if (sgn(v) == 0) return 0.0;
  double away = std::nextafter(t, sgn(v) > 0 ? std::numeric_limits<double>::infinity()
                                              : -std::numeric_limits<double>::infinity());
  mpf_class dt = abs(v - mpf_class(t, kPrec));
  mpf_class da = abs(mpf_class(away, kPrec) - v);
  return da < dt ? away : t;
}

void Scalar::refresh() {
  double ad = a_.get_d();
  if (d_ == 0) {
    approx_ = ad;
    err_ = (sgn(a_) == 0) ? 0.0 : std::fabs(ad) * kApproxRelErr + kApproxAbsErr;
  } else {
    double bs = b_.get_d() * std::sqrt(static_cast<double>(d_));
    approx_ = ad + bs;
    err_ = (std::fabs(ad) + std::fabs(bs)) * kApproxRelErr + kApproxAbsErr;
  }
  if (!std::isfinite(approx_)) err_ = std::numeric_limits<double>::infinity();
}

void Scalar::normalize() {
  if (sgn(b_) == 0) d_ = 0;
  refresh();
}

std::uint64_t Scalar::common_radicand(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  throw Error(ErrorCode::kFieldMismatch, "cannot combine values over sqrt(" + std::to_string(x.d_) +
                                             ") and sqrt(" + std::to_string(y.d_) + ")");
}

int Scalar::sign() const {
  if (approx_ > err_) return 1;
  if (approx_ < -err_) return -1;
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  mpq_class a2 = a_ * a_;
  mpq_class b2d = b_ * b_ * static_cast<unsigned long>(d_);
  return cmp(a2, b2d) > 0 ? sa : sb;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  r.approx_ = -r.approx_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = common_radicand(*this, o);
  a_ += o.a_;
  if (o.d_ != 0) b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = common_radicand(*this, o);
  a_ -= o.a_;
  if (o.d_ != 0) b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  std::uint64_t d = common_radicand(*this, o);
  if (o.d_ == 0) {
    a_ *= o.a_;
    b_ *= o.a_;
  } else if (d_ == 0) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
  } else {
    mpq_class na = a_ * o.a_ + b_ * o.b_ * static_cast<unsigned long>(d);
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
  }
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  std::uint64_t d = common_radicand(*this, o);
  if (o.d_ == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
  } else {
    // multiply through by the conjugate of the divisor
    mpq_class den = o.a_ * o.a_ - o.b_ * o.b_ * static_cast<unsigned long>(d);
    mpq_class na = a_ * o.a_ - b_ * o.b_ * static_cast<unsigned long>(d);
    mpq_class nb = b_ * o.a_ - a_ * o.b_;
    a_ = na / den;
    b_ = nb / den;
  }
  d_ = d;
  normalize();
  return *this;
}

bool operator==(const Scalar& x, const Scalar& y) {
  Scalar::common_radicand(x, y);
  return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  Scalar::common_radicand(x, y);
  double diff = x.approx_ - y.approx_;
  double bound = (x.err_ + y.err_) * kBoundSlack;
  if (diff > bound) return std::strong_ordering::greater;
  if (diff < -bound) return std::strong_ordering::less;
  if (x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_) return std::strong_ordering::equal;
  return (x - y).sign() > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }
const Scalar& min(const Scalar& x, const Scalar& y) { return y < x ? y : x; }
const Scalar& max(const Scalar& x, const Scalar& y) { return x < y ? y : x; }

}  // namespace iet
