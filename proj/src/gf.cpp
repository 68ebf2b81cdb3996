#include "vspart/gf.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "vspart/error.hpp"

namespace vspart {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > kLimit / base)
      throw Error(ErrorCode::TooLarge, "integer power overflows 62 bits");
    r *= base;
  }
  return r;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Digit-level multiplication used only while building the log tables.
struct RawMul {
  std::uint32_t p;
  std::uint32_t e;
  const std::vector<Elem>& modulus;

  std::vector<Elem> digits(Elem a) const {
    std::vector<Elem> d(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }

  Elem code(const std::vector<Elem>& d) const {
    Elem c = 0;
    for (std::uint32_t i = e; i-- > 0;) c = c * p + d[i];
    return c;
  }

  Elem operator()(Elem a, Elem b) const {
    auto da = digits(a);
    auto db = digits(b);
    std::vector<std::uint64_t> prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
      for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
    // Reduce with the monic modulus: x^e = -(m_0 + ... + m_{e-1} x^{e-1}).
    for (std::uint32_t k = 2 * e - 1; k >= e; --k) {
      std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < e; ++i) {
        std::uint64_t sub = (c * modulus[i]) % p;
        prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
      }
    }
    std::vector<Elem> out(e);
    for (std::uint32_t i = 0; i < e; ++i) out[i] = static_cast<Elem>(prod[i]);
    return code(out);
  }

  Elem pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k > 0) {
      if (k & 1) r = (*this)(r, a);
      a = (*this)(a, a);
      k >>= 1;
    }
    return r;
  }
};

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus)
    : p_(p), e_(e), q_(static_cast<std::uint32_t>(checked_pow(p, e))), modulus_(std::move(modulus)) {
  neg_table_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    Elem r = 0, scale = 1, x = a;
    for (std::uint32_t i = 0; i < e_; ++i) {
      Elem d = x % p_;
      x /= p_;
      r += ((p_ - d) % p_) * scale;
      scale *= p_;
    }
    neg_table_[a] = r;
  }
  if (p_ != 2 && q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = add_digits(a, b);
  }

  RawMul raw{p_, e_, modulus_};
  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  Elem g = 1;
  if (q_ > 2) {
    for (g = 2; g < q_; ++g) {
      bool generator = true;
      for (auto f : factors) {
        if (raw.pow(g, group / f) == 1) {
          generator = false;
          break;
        }
      }
      if (generator) break;
    }
    if (g == q_) throw Error(ErrorCode::Internal, "no primitive element found; modulus not irreducible");
  }
  primitive_ = g;
  exp_.resize(2 * group + 1);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = raw(x, g);
  }
  for (std::uint64_t i = group; i < exp_.size(); ++i) exp_[i] = exp_[i - group];
}

Elem Field::add_digits(Elem a, Elem b) const {
  if (e_ == 1) return (a + b) % p_;
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  const std::uint32_t group = q_ - 1;
  return exp_[(group - log_[a]) % group];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = q_ - 1;
  return exp_[(std::uint64_t{log_[a]} * (k % group)) % group];
}

namespace poly {

namespace {
void trim(Vector& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
}  // namespace

Vector rem(const Field& f, Vector a, std::span<const Elem> m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const Elem c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

Vector mul(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.empty() || b.empty()) return {};
  Vector out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

bool is_irreducible(const Field& f, std::span<const Elem> m) {
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  if (deg == 0) return false;
  const Vector mv(m.begin(), m.end());
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(f.q(), d);
    Vector div(d + 1, 0);
    div[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t x = idx;
      for (unsigned i = 0; i < d; ++i) {
        div[i] = static_cast<Elem>(x % f.q());
        x /= f.q();
      }
      if (rem(f, mv, div).empty()) return false;
    }
  }
  return true;
}

Vector least_irreducible(const Field& f, unsigned degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  const std::uint64_t count = checked_pow(f.q(), degree);
  Vector m(degree + 1, 0);
  m[degree] = 1;
  // Constant term is the most significant key, so it is the slowest digit.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t x = idx;
    for (unsigned i = degree; i-- > 0;) {
      m[i] = static_cast<Elem>(x % f.q());
      x /= f.q();
    }
    if (is_irreducible(f, m)) return m;
  }
  throw Error(ErrorCode::Internal, "no irreducible polynomial found");
}

}  // namespace poly

FieldPtr make_field(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorCode::FieldTooLarge, "p^e exceeds 2^20");
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, e}); it != cache.end()) return it->second;
  }

  FieldPtr built;
  if (e == 1) {
    built = std::make_shared<const Field>(p, 1, Vector{0, 1});
  } else {
    auto prime = make_field(p, 1);
    built = std::make_shared<const Field>(p, e, poly::least_irreducible(*prime, e));
  }
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(std::pair{p, e}, built);
  return it->second;
}

FieldPtr make_field_of_order(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power >= 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  if (q > kMaxFieldOrder) throw Error(ErrorCode::FieldTooLarge, "q exceeds 2^20");
  return make_field(static_cast<std::uint32_t>(p), e);
}

ExtensionField::ExtensionField(FieldPtr base, unsigned degree)
    : base_(std::move(base)), degree_(degree), order_(checked_pow(base_->q(), degree)) {
  if (degree_ == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (order_ > (std::uint64_t{1} << 24)) throw Error(ErrorCode::TooLarge, "extension field too large");
  modulus_ = poly::least_irreducible(*base_, degree_);
}

Vector ExtensionField::mul(std::span<const Elem> a, std::span<const Elem> b) const {
  Vector r = poly::rem(*base_, poly::mul(*base_, a, b), modulus_);
  r.resize(degree_, 0);
  return r;
}

Vector ExtensionField::element(std::uint64_t index) const {
  Vector v(degree_, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    v[i] = static_cast<Elem>(index % base_->q());
    index /= base_->q();
  }
  return v;
}

Vector ExtensionField::power_basis(unsigned j) const {
  Vector v(degree_, 0);
  v[j] = 1;
  return v;
}

std::uint64_t Space::encode(std::span<const Elem> v) const {
  std::uint64_t idx = 0;
  for (Elem c : v) idx = idx * field->q() + c;
  return idx;
}

Vector Space::decode(std::uint64_t index) const {
  Vector v(n, 0);
  for (unsigned i = n; i-- > 0;) {
    v[i] = static_cast<Elem>(index % field->q());
    index /= field->q();
  }
  return v;
}

Vector Space::unit(unsigned i) const {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

Vector Space::add(std::span<const Elem> a, std::span<const Elem> b) const {
  Vector r(n);
  for (unsigned i = 0; i < n; ++i) r[i] = field->add(a[i], b[i]);
  return r;
}

Vector Space::scale(Elem c, std::span<const Elem> a) const {
  Vector r(n);
  for (unsigned i = 0; i < n; ++i) r[i] = field->mul(c, a[i]);
  return r;
}

}  // namespace vspart
