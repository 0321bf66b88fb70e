#include "olt/field.hpp"

#include <memory>
#include <mutex>

#include "olt/errors.hpp"

namespace olt {

namespace {

// Irreducible moduli, bit i = coefficient of x^i.
constexpr unsigned kModuli[9] = {0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d};

}  // namespace

const BinaryField& BinaryField::get(int k) {
  static std::once_flag once;
  static std::unique_ptr<BinaryField> fields[9];
  std::call_once(once, [] {
    for (int d = 1; d <= 8; ++d) fields[d].reset(new BinaryField(d));
  });
  if (k < 1 || k > 8) throw DomainError("field degree must lie in 1..8");
  return *fields[k];
}

Elem BinaryField::mul_slow(Elem a, Elem b) const {
  unsigned r = 0, x = a;
  for (int i = 0; i < k_; ++i)
    if (b >> i & 1) r ^= x << i;
  for (int i = 2 * k_ - 2; i >= k_; --i)
    if (r >> i & 1) r ^= modulus_ << (i - k_);
  return static_cast<Elem>(r);
}

BinaryField::BinaryField(int k) : k_(k), modulus_(kModuli[k]) {
  const unsigned q = 1u << k;
  // find a primitive element by brute force
  for (unsigned g = (k == 1 ? 1 : 2); g < q; ++g) {
    unsigned x = 1, period = 0;
    do {
      x = mul_slow(static_cast<Elem>(x), static_cast<Elem>(g));
      ++period;
    } while (x != 1);
    if (period == q - 1) {
      generator_ = static_cast<Elem>(g);
      break;
    }
  }
  unsigned x = 1;
  for (unsigned i = 0; i < q - 1; ++i) {
    exp_[i] = static_cast<Elem>(x);
    log_[x] = static_cast<int>(i);
    x = mul_slow(static_cast<Elem>(x), generator_);
  }
  for (unsigned i = q - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (q - 1)];
}

Elem BinaryField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  const unsigned q1 = size() - 1;
  return exp_[(q1 - static_cast<unsigned>(log_[a])) % q1];
}

Elem BinaryField::pow(Elem a, unsigned e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const unsigned q1 = size() - 1;
  return exp_[static_cast<unsigned>((static_cast<unsigned long long>(log_[a]) * e) % q1)];
}

Elem BinaryField::frobenius(Elem a, int times) const {
  for (int i = 0; i < times; ++i) a = mul(a, a);
  return a;
}

Elem BinaryField::trace(Elem a) const {
  Elem t = 0, x = a;
  for (int i = 0; i < k_; ++i) {
    t ^= x;
    x = mul(x, x);
  }
  return t;
}

Embedding::Embedding(int j, int k) : j_(j), k_(k), table_(1u << j) {
  if (j < 1 || k < 1 || k > 8 || k % j != 0) throw DomainError("no embedding between these fields");
  if (j == k) {
    for (unsigned a = 0; a < table_.size(); ++a) table_[a] = static_cast<Elem>(a);
    return;
  }
  const BinaryField& big = BinaryField::get(k);
  const unsigned mod = BinaryField::get(j).modulus();
  // a root of the small modulus in the big field
  Elem root = 0;
  bool found = false;
  for (unsigned r = 0; r < big.size() && !found; ++r) {
    Elem v = 0, p = 1;
    for (int i = 0; i <= j; ++i) {
      if (mod >> i & 1) v ^= p;
      p = big.mul(p, static_cast<Elem>(r));
    }
    if (v == 0) {
      root = static_cast<Elem>(r);
      found = true;
    }
  }
  if (!found) throw IntegrityError("modulus has no root in the extension");
  std::vector<Elem> basis(j);
  Elem p = 1;
  for (int i = 0; i < j; ++i) {
    basis[i] = p;
    p = big.mul(p, root);
  }
  for (unsigned a = 0; a < table_.size(); ++a) {
    Elem v = 0;
    for (int i = 0; i < j; ++i)
      if (a >> i & 1) v ^= basis[i];
    table_[a] = v;
  }
}

}  // namespace olt
