#include "sepkit/rat.hpp"

#include "sepkit/errors.hpp"

#include <cctype>
#include <cmath>

namespace sepkit {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

bool try_parse_rat(std::string_view text, Rat& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return false;

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Rat num, den;
    if (!try_parse_rat(text.substr(0, slash), num)) return false;
    if (!try_parse_rat(text.substr(slash + 1), den)) return false;
    if (den == 0) return false;
    out = num / den;
    return true;
  }

  bool neg = false;
  if (text.front() == '+' || text.front() == '-') {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = text.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) return false;
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
    text = text.substr(0, epos);
  }
  std::string_view ip = text, fp;
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    ip = text.substr(0, dot);
    fp = text.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) return false;
  if (!ip.empty() && !all_digits(ip)) return false;
  if (!fp.empty() && !all_digits(fp)) return false;

  std::string digits = std::string(ip) + std::string(fp);
  mpz_class mant(digits.empty() ? "0" : digits, 10);
  exp10 -= static_cast<long>(fp.size());
  Rat r(mant);
  if (exp10 > 0) r *= Rat(pow10(static_cast<unsigned long>(exp10)));
  if (exp10 < 0) r /= Rat(pow10(static_cast<unsigned long>(-exp10)));
  r.canonicalize();
  out = neg ? Rat(-r) : r;
  return true;
}

Rat parse_rat(std::string_view text) {
  Rat r;
  if (!try_parse_rat(text, r)) throw ParseError("not a number: '" + std::string(text) + "'");
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

// v = num/den > 0 represented exactly; produce the digit string of
// round_half_even(v * 10^shift) where shift is chosen so the integer has
// exactly `digits` digits.  `is_sqrt` evaluates sqrt(num/den) instead.
std::string render_positive(const mpz_class& num, const mpz_class& den, int digits, bool is_sqrt) {
  // Estimate decimal exponent from bit lengths, then correct.
  auto value_ge_pow10 = [&](long e) {
    // is v >= 10^e ?  (v = num/den or sqrt of it)
    mpz_class lhs = num, rhs = den;
    long ee = is_sqrt ? 2 * e : e;
    if (ee >= 0) rhs *= pow10(static_cast<unsigned long>(ee));
    else lhs *= pow10(static_cast<unsigned long>(-ee));
    return lhs >= rhs;
  };
  long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10));
  long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  long e = nb - db;
  if (is_sqrt) e = e / 2;
  while (!value_ge_pow10(e)) --e;
  while (value_ge_pow10(e + 1)) ++e;
  // 10^e <= v < 10^(e+1); want integer part of v*10^(digits-1-e)
  long shift = digits - 1 - e;
  // scaled = v * 10^shift  (or sqrt(num/den) * 10^shift)
  mpz_class sn = num, sd = den;
  long s2 = is_sqrt ? 2 * shift : shift;
  if (s2 >= 0) sn *= pow10(static_cast<unsigned long>(s2));
  else sd *= pow10(static_cast<unsigned long>(-s2));
  mpz_class q;
  bool exact = false;
  int cmp_half = 0;  // fractional part vs 1/2
  if (!is_sqrt) {
    mpz_class rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), sn.get_mpz_t(), sd.get_mpz_t());
    exact = rem == 0;
    mpz_class twice = 2 * rem;
    cmp_half = twice > sd ? 1 : (twice == sd ? 0 : -1);
  } else {
    mpz_class fl = sn / sd;
    mpz_sqrt(q.get_mpz_t(), fl.get_mpz_t());
    // exact if q^2 * sd == sn
    exact = q * q * sd == sn;
    // compare (q + 1/2)^2 with sn/sd  <=>  (2q+1)^2 * sd vs 4 sn
    mpz_class l = (2 * q + 1) * (2 * q + 1) * sd;
    mpz_class rr = 4 * sn;
    cmp_half = rr > l ? 1 : (rr == l ? 0 : -1);
  }
  if (!exact) {
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  }
  std::string ds = q.get_str();
  if (static_cast<int>(ds.size()) > digits) {  // rounding carried into a new digit
    ds.pop_back();
    --shift;
  }
  // place the decimal point: value = ds * 10^-shift
  std::string out;
  if (shift <= 0) {
    out = ds + std::string(static_cast<size_t>(-shift), '0');
  } else if (shift < static_cast<long>(ds.size())) {
    out = ds.substr(0, ds.size() - shift) + "." + ds.substr(ds.size() - shift);
  } else {
    out = "0." + std::string(static_cast<size_t>(shift - ds.size()), '0') + ds;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

}  // namespace

std::string decimal_str(const Rat& r, int digits) {
  if (r == 0) return "0";
  mpz_class num = abs(r.get_num());
  std::string s = render_positive(num, r.get_den(), digits, false);
  return r < 0 ? "-" + s : s;
}

std::string sqrt_decimal_str(const Rat& r, int digits) {
  if (r < 0) throw InvariantError("sqrt of negative value");
  if (r == 0) return "0";
  return render_positive(r.get_num(), r.get_den(), digits, true);
}

double to_double(const Rat& r) { return r.get_d(); }

Rat from_double(double v) {
  Rat r(v);
  r.canonicalize();
  return r;
}

int sign(const Rat& r) { return sgn(r); }

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

int ceil_log2(std::uint64_t v) {
  int e = 0;
  while ((std::uint64_t{1} << e) < v) ++e;
  return e;
}

}  // namespace sepkit
