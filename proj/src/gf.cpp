#include "kuniform/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace kuniform {

namespace {

// phase[a][b] = e with sigma_a sigma_b = i^e sigma_{a xor b}
constexpr int kPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

}  // namespace

PhasedLabel pauli_product(Symbol a, Symbol b) {
  return {kPhase[a][b], gf4_add(a, b)};
}

PauliWord word_product(const PauliWord& a, const PauliWord& b) {
  if (a.labels.size() != b.labels.size()) {
    throw std::invalid_argument("word_product: length mismatch");
  }
  PauliWord out;
  out.labels.resize(a.labels.size());
  int e = a.phase_exp + b.phase_exp;
  for (int i = 0; i < a.labels.size(); ++i) {
    auto [pe, lab] = pauli_product(a.labels[i], b.labels[i]);
    e += pe;
    out.labels[i] = lab;
  }
  out.phase_exp = ((e % 4) + 4) % 4;
  return out;
}

bool words_commute(const PauliWord& a, const PauliWord& b) {
  if (a.labels.size() != b.labels.size()) {
    throw std::invalid_argument("words_commute: length mismatch");
  }
  int odd = 0;
  for (int i = 0; i < a.labels.size(); ++i) {
    odd ^= anticommutes(a.labels[i], b.labels[i]) ? 1 : 0;
  }
  return odd == 0;
}

bool is_prime_power(int q, int* prime, int* exponent) {
  if (q < 2) return false;
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (p * p > q) p = q;
  int e = 0, x = q;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  if (x != 1) return false;
  if (prime) *prime = p;
  if (exponent) *exponent = e;
  return true;
}

namespace {

// fixed irreducible polynomials, coefficient of x^i at bit/digit i, leading
// term implicit: GF(4) x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+2x+2, GF(16) x^4+x+1
int reduction_digits(int q) {
  switch (q) {
    case 4: return 0b11;        // x+1
    case 8: return 0b011;       // x+1
    case 9: return 2 * 3 + 2;   // 2x+2
    case 16: return 0b0011;     // x+1
    default: throw std::logic_error("no polynomial for q");
  }
}

}  // namespace

GfTable::GfTable(int q) : q_(q) {
  int p = 0, e = 0;
  if (!is_prime_power(q, &p, &e) || q > 16) {
    throw std::invalid_argument("unsupported field order " + std::to_string(q));
  }
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);

  auto digits = [&](int v) {
    std::array<int, 4> d{};
    for (int i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto undigits = [&](const std::array<int, 4>& d) {
    int v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + d[i];
    return v;
  };

  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    auto dn = da;
    for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Symbol>(undigits(dn));
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      auto ds = da;
      for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = static_cast<Symbol>(undigits(ds));
    }
  }

  if (e == 1) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) mul_[a * q + b] = static_cast<Symbol>(a * b % p);
  } else {
    auto red = digits(reduction_digits(q));
    for (int a = 0; a < q; ++a) {
      auto da = digits(a);
      for (int b = 0; b < q; ++b) {
        auto db = digits(b);
        std::array<int, 8> prod{};
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        // reduce: x^e = -(reduction poly)
        for (int i = 2 * e - 2; i >= e; --i) {
          int c = prod[i];
          if (c == 0) continue;
          prod[i] = 0;
          for (int j = 0; j < e; ++j) {
            prod[i - e + j] = (prod[i - e + j] + c * (p - red[j])) % p;
          }
        }
        std::array<int, 4> out{};
        for (int i = 0; i < e; ++i) out[i] = prod[i];
        mul_[a * q + b] = static_cast<Symbol>(undigits(out));
      }
    }
  }

  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) == 1) {
        inv_[a] = static_cast<Symbol>(b);
        break;
      }
    }
  }
  check_axioms();
}

Symbol GfTable::inv(Symbol a) const {
  if (a == 0) throw std::domain_error("field inverse of zero");
  return inv_[a];
}

void GfTable::check_axioms() const {
  const int q = q_;
  auto fail = [&](const char* what) {
    throw std::logic_error(std::string("field axiom violated for q=") +
                           std::to_string(q) + ": " + what);
  };
  for (int a = 0; a < q; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a) fail("identity");
    if (add(a, neg(a)) != 0) fail("additive inverse");
    if (a != 0 && mul(a, inv_[a]) != 1) fail("multiplicative inverse");
    for (int b = 0; b < q; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) fail("commutativity");
      for (int c = 0; c < q; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) fail("add associativity");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("mul associativity");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("distributivity");
      }
    }
  }
}

const GfTable& GfTable::of(int q) {
  static std::mutex mu;
  static std::map<int, GfTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, GfTable(q)).first;
  return it->second;
}

GroupTable GroupTable::cyclic(int d) {
  if (d < 2 || d > 16) throw std::invalid_argument("group order out of range");
  return GroupTable(Kind::kCyclic, d, d);
}

GroupTable GroupTable::elementary(int q) {
  int p = 0;
  if (!is_prime_power(q, &p) || q > 16) {
    throw std::invalid_argument("elementary group needs a prime power order <= 16");
  }
  return GroupTable(Kind::kElementary, q, p);
}

GroupTable GroupTable::named(const std::string& name) {
  if (name.rfind("z", 0) == 0) return cyclic(std::stoi(name.substr(1)));
  if (name.rfind("gf", 0) == 0) return elementary(std::stoi(name.substr(2)));
  throw std::invalid_argument("unknown group name: " + name);
}

std::string GroupTable::name() const {
  return (kind_ == Kind::kCyclic ? "z" : "gf") + std::to_string(d_);
}

}  // namespace kuniform
